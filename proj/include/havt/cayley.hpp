#ifndef HAVT_CAYLEY_HPP
#define HAVT_CAYLEY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "havt/action.hpp"
#include "havt/group.hpp"

namespace havt {

// Local structure of Cay(G_1, S) for G_1 the point stabilizer of the
// identity inside the even permutations of H and S = {xy, (xy)^-1,
// xz, (xz)^-1}. Vertices are group elements (materialized permutations);
// u ~ v iff u^-1 v lies in S, so the neighbors of u are the products
// u then s. The orientation classes split S into D1 = {xy, xz} and
// D2 = {(xy)^-1, (xz)^-1}.

enum class Orientation : std::uint8_t { d1, d2 };

struct ConnectionSet {
  ActionWord w_xy, w_xy_inv, w_xz, w_xz_inv;
  Perm xy, xy_inv, xz, xz_inv;

  const Perm& step(std::size_t i) const {
    switch (i) {
      case 0: return xy;
      case 1: return xy_inv;
      case 2: return xz;
      default: return xz_inv;
    }
  }
  static Orientation orientation(std::size_t i) {
    return (i == 0 || i == 2) ? Orientation::d1 : Orientation::d2;
  }
  /// Images of the element b under xy, (xy)^-1, xz, (xz)^-1; these four
  /// being pairwise distinct certifies |S| = 4.
  std::array<HElem, 4> b_images(const GroupParams& p) const;
};

ConnectionSet connection_set(const Evaluator& ev);

struct Arc {
  std::uint32_t from = 0, to = 0;
  Orientation orientation = Orientation::d1;
};

struct LocalBall {
  std::vector<Perm> vertices;  // BFS order, layers sorted lexicographically
  std::vector<unsigned> depth;
  std::vector<Arc> arcs;  // every arc between ball vertices, from ascending
  unsigned max_depth = 0;

  std::uint32_t out_degree(std::uint32_t v, Orientation o) const;
  std::uint32_t in_degree(std::uint32_t v, Orientation o) const;
  std::uint32_t undirected_degree(std::uint32_t v) const;
};

LocalBall ball(const Evaluator& ev, unsigned depth,
               const EvalBudget& budget = {});

/// Deterministic DOT rendering: vertices labeled "<depth>:<hash8>", arcs
/// colored "d1"/"d2".
std::string dot_export(const LocalBall& ball);

struct AlternatingCycles {
  std::vector<Perm> c1, c2;  // walk order around each cycle
  bool closed_form_agrees = false;
  std::uint64_t common_vertices = 0;
};

/// The two alternating cycles through the edges {1, xy} and {1, (xy)^-1},
/// extracted by orientation-alternating walks and cross-checked against
/// the closed-form vertex lists.
AlternatingCycles alternating_cycles(const Evaluator& ev);

std::pair<unsigned, std::uint64_t> radius_and_attachment(const Evaluator& ev);

struct DoubleCosetResult {
  std::string method;  // "exhaustive" | "index-argument"
  std::uint64_t size_xy_double = 0;       // |R(H) xy R(H)|
  std::uint64_t size_xy_inv_double = 0;   // |R(H) (xy)^-1 R(H)|
  std::uint64_t union_size = 0;           // all four right cosets together
  bool equals_coset_union = false;        // double coset = R(H)xy u R(H)xz
  bool four_cosets_disjoint = false;
};

DoubleCosetResult double_coset_decomposition(const Evaluator& ev,
                                             unsigned exhaustive_max_m = 3,
                                             std::uint64_t spot_samples = 64);

struct NonnormalityWitness {
  IndexSet right_multipliers;   // elements g with R(g) in (xy)^-1 R(H) xy
  IndexSet conjugating_preimage;  // the h whose conjugates land in R(H)
};

/// Computes (xy)^-1 R(H) xy intersected with R(H). The right multipliers
/// form K, a proper subgroup, so R(H) is not normalized by xy.
NonnormalityWitness nonnormality_witness(const Evaluator& ev);

}  // namespace havt

#endif
