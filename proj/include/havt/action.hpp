#ifndef HAVT_ACTION_HPP
#define HAVT_ACTION_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "havt/bitset.hpp"
#include "havt/group.hpp"

namespace havt {

// The permutations x, x^-1, y, z and right multiplications R(h) of H,
// composable into words that act on points without being materialized.
// Words apply left to right: the image of g under [s, t] is (g^s)^t.

enum class AtomKind : std::uint8_t { X, XInv, Y, Z, RightMul };

struct Atom {
  AtomKind kind = AtomKind::X;
  HElem arg;  // only meaningful for RightMul
};

struct ActionWord {
  unsigned m = 1;
  std::vector<Atom> atoms;

  static ActionWord empty(unsigned m) { return ActionWord{m, {}}; }
  static ActionWord of(unsigned m, std::initializer_list<AtomKind> kinds);
  static ActionWord right_mul(const HElem& h);

  ActionWord then(const ActionWord& w) const;
  ActionWord inverse() const;
  ActionWord pow(unsigned k) const;

  /// Serialization used in reports: "x X y z R(<element>)", uppercase X
  /// being the inverse of lowercase x.
  std::string str() const;
};

/// Closed-form (bit-level) actions. These are the production evaluators.
HElem apply_x(const GroupParams& p, const HElem& g);
HElem apply_x_inv(const GroupParams& p, const HElem& g);
HElem apply_phi(const GroupParams& p, const HElem& k);  // on K only
HElem apply_y(const GroupParams& p, const HElem& g);
HElem apply_z(const GroupParams& p, const HElem& g);

/// Generator-image expansion route: multiplies out the images of the
/// normal-form factors. Slower, structurally independent of the closed
/// forms; used as the oracle side of equivalence checks.
HElem apply_x_via_images(const GroupParams& p, const HElem& g);
HElem apply_x_inv_via_images(const GroupParams& p, const HElem& g);
HElem apply_phi_via_images(const GroupParams& p, const HElem& k);
HElem apply_y_via_images(const GroupParams& p, const HElem& g);
HElem apply_z_via_images(const GroupParams& p, const HElem& g);

enum class EvalRoute { closed_form, generator_images };

/// Evaluates atoms and words at points. Individual atoms can be overridden
/// with explicit image tables, which is how fault-injection tests feed
/// corrupted versions of x or y through the whole suite.
class Evaluator {
 public:
  explicit Evaluator(const GroupParams& p,
                     EvalRoute route = EvalRoute::closed_form)
      : p_(&p), route_(route) {}

  const GroupParams& params() const { return *p_; }

  /// Replaces x by an explicit table (x^-1 follows as its inverse).
  void override_x(std::vector<std::uint32_t> table);
  /// Replaces y by an explicit table. z tracks the override, since z is
  /// built from y between two right multiplications.
  void override_y(std::vector<std::uint32_t> table);
  bool has_overrides() const { return x_table_ || y_table_; }

  HElem apply(AtomKind kind, const HElem& g) const;
  HElem apply(const Atom& atom, const HElem& g) const;
  std::uint32_t apply_idx(const Atom& atom, std::uint32_t idx) const;

  HElem eval(const ActionWord& w, HElem g) const;
  std::uint32_t eval_idx(const ActionWord& w, std::uint32_t idx) const;

 private:
  const GroupParams* p_;
  EvalRoute route_;
  std::optional<std::vector<std::uint32_t>> x_table_, xinv_table_, y_table_;
};

/// Materialized bijection on [0, n).
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<std::uint32_t> images);
  static Perm identity(std::uint64_t n);

  std::uint64_t degree() const { return img_.size(); }
  std::uint32_t operator[](std::uint32_t p) const { return img_[p]; }
  const std::vector<std::uint32_t>& images() const { return img_; }

  /// this first, then q.
  Perm then(const Perm& q) const;
  Perm inverse() const;
  Perm pow(unsigned k) const;
  bool is_identity() const;

  int sign() const;               // +1 even, -1 odd
  std::uint64_t order() const;    // throws BudgetError on u64 overflow
  std::vector<std::uint64_t> cycle_lengths() const;
  IndexSet fixed_points() const;

  std::array<std::uint64_t, 2> hash128() const;

  friend bool operator==(const Perm& a, const Perm& b) {
    return a.img_ == b.img_;
  }
  friend bool lex_less(const Perm& a, const Perm& b) { return a.img_ < b.img_; }

 private:
  std::vector<std::uint32_t> img_;
};

struct EvalBudget {
  std::uint64_t max_points = 1ull << 26;
  unsigned threads = 0;  // 0 = hardware default
};

Perm materialize(const Evaluator& ev, const ActionWord& w,
                 const EvalBudget& budget = {});

/// Least r >= 1 with w^r = identity. Uses a visited-bitmap cycle walk, so
/// no permutation array is allocated.
std::uint64_t word_order(const Evaluator& ev, const ActionWord& w);

/// Sign of the word as a permutation, via point count minus cycle count.
int word_parity(const Evaluator& ev, const ActionWord& w);

IndexSet fixed_points(const Evaluator& ev, const ActionWord& w);

/// Streaming count of fixed points; parallelizes over index ranges.
std::uint64_t fixed_point_count(const Evaluator& ev, const ActionWord& w,
                                unsigned threads = 0);

IndexSet set_image(const IndexSet& s, const Evaluator& ev,
                   const ActionWord& w);

}  // namespace havt

#endif
