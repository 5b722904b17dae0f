#ifndef HAVT_LEMMAS_HPP
#define HAVT_LEMMAS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "havt/action.hpp"
#include "havt/group.hpp"

namespace havt {

// One executable check per computational claim about x, y, z and the local
// graph structure. Each check quantifies exhaustively over its stated
// domain and reports exact integer data; a failing check carries the first
// counterexample in index order.

enum class CheckStatus { pass, fail, skipped };

struct LemmaReport {
  std::string lemma_id;
  unsigned m = 0;
  CheckStatus status = CheckStatus::pass;
  std::map<std::string, std::int64_t> data;  // named exact counts
  std::map<std::string, std::string> text;   // method tags, big integers
  std::optional<std::string> witness;        // first counterexample
  double elapsed_sec = 0.0;

  bool passed() const { return status == CheckStatus::pass; }
};

struct CheckOptions {
  unsigned threads = 0;
  bool giant_test = false;
  std::uint64_t budget_points = 1ull << 26;
  unsigned bsgs_max_m = 2;             // exact chains for m up to here
  unsigned giant_max_m = 8;            // jordan route for m up to here
  unsigned double_coset_exhaustive_max_m = 3;
  std::uint64_t seed = 0x9a3c6e1785b24df0ull;
};

/// Stable check identifiers, in canonical report order.
const std::vector<std::string>& all_lemma_ids();

LemmaReport check_orders(const Evaluator& ev, const CheckOptions& opt = {});
LemmaReport check_alt_membership(const Evaluator& ev,
                                 const CheckOptions& opt = {});
LemmaReport check_x_inverse(const Evaluator& ev, const CheckOptions& opt = {});
LemmaReport check_ak_formula(const Evaluator& ev, const CheckOptions& opt = {});
LemmaReport check_z_tables(const Evaluator& ev, const CheckOptions& opt = {});
LemmaReport check_yz_tables(const Evaluator& ev, const CheckOptions& opt = {});
LemmaReport check_fix_xyxz(const Evaluator& ev, const CheckOptions& opt = {});
LemmaReport check_fix_intersections(const Evaluator& ev,
                                    const CheckOptions& opt = {});
LemmaReport check_word_set_intersection(const Evaluator& ev,
                                        const CheckOptions& opt = {});
LemmaReport check_mu_projection(const Evaluator& ev,
                                const CheckOptions& opt = {});
LemmaReport check_orbit_cover(const Evaluator& ev,
                              const CheckOptions& opt = {});
LemmaReport check_no_stable_subset(const Evaluator& ev,
                                   const CheckOptions& opt = {});
LemmaReport check_subgroup_rigidity(const Evaluator& ev,
                                    const CheckOptions& opt = {});
LemmaReport check_double_coset(const Evaluator& ev,
                               const CheckOptions& opt = {});
LemmaReport check_connection_distinct(const Evaluator& ev,
                                      const CheckOptions& opt = {});
LemmaReport check_generation(const Evaluator& ev,
                             const CheckOptions& opt = {});
LemmaReport check_nonnormal(const Evaluator& ev, const CheckOptions& opt = {});
LemmaReport check_prop3_cases(const Evaluator& ev,
                              const CheckOptions& opt = {});

/// Runs the selected checks (all of them for an empty selection) in
/// canonical order. Unknown ids raise ParamError before any work runs.
std::vector<LemmaReport> run_all(const Evaluator& ev,
                                 const std::vector<std::string>& selection,
                                 const CheckOptions& opt = {});

/// Helper behind check_subgroup_rigidity, exposed for its guard tests:
/// enumerates unions of orbits (of the group generated by `gens`) that
/// contain the identity point and are closed under multiplication.
std::vector<IndexSet> orbit_union_subgroups(const GroupParams& params,
                                            const std::vector<Perm>& gens,
                                            unsigned max_orbits = 20);

/// Returns an evaluator whose x or y table differs from the true action in
/// one transposition of images; used by the mutation-sensitivity tests.
Evaluator mutated_evaluator(const GroupParams& params, AtomKind which,
                            std::uint64_t seed);

}  // namespace havt

#endif
