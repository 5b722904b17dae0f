// Acceptance suite: one line per criterion, exact values, pinned bounds.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "havt/cayley.hpp"
#include "havt/lemmas.hpp"
#include "havt/permgroup.hpp"
#include "havt/report.hpp"

using namespace havt;

namespace {

struct Criterion {
  int number;
  std::string title;
  std::function<bool(std::string&)> run;
};

double now_sec() {
  using Clock = std::chrono::steady_clock;
  static const Clock::time_point start = Clock::now();
  return std::chrono::duration<double>(Clock::now() - start).count();
}

ActionWord W(unsigned m, std::initializer_list<AtomKind> kinds) {
  return ActionWord::of(m, kinds);
}

bool expect(bool cond, std::string& detail, const std::string& what) {
  if (!cond && detail.empty()) detail = what;
  return cond;
}

// independent big-integer oracle: plain product loop, not the chain and
// not the gmp factorial primitive
mpz_class half_factorial_oracle(unsigned k) {
  mpz_class r = 1;
  for (unsigned i = 2; i <= k; ++i) r *= i;
  return r / 2;
}

bool criterion_orders(std::string& detail) {
  double t0 = now_sec();
  bool ok = true;
  for (unsigned m = 1; m <= 6; ++m) {
    GroupParams p = GroupParams::make(m);
    Evaluator ev(p);
    ok &= expect(word_order(ev, W(m, {AtomKind::X})) == 4, detail,
                 "|x| != 4 at m=" + std::to_string(m));
    ok &= expect(word_order(ev, W(m, {AtomKind::Y})) == 2, detail,
                 "|y| != 2 at m=" + std::to_string(m));
    ok &= expect(word_order(ev, W(m, {AtomKind::Z})) == 2, detail,
                 "|z| != 2 at m=" + std::to_string(m));
    ok &= expect(word_order(ev, W(m, {AtomKind::Y, AtomKind::Z})) == 6, detail,
                 "|yz| != 6 at m=" + std::to_string(m));
    for (AtomKind k : {AtomKind::X, AtomKind::Y, AtomKind::Z})
      ok &= expect(word_parity(ev, ActionWord{m, {Atom{k, {}}}}) == 1, detail,
                   "odd sign at m=" + std::to_string(m));
    std::mt19937_64 rng(1234 + m);
    std::uniform_int_distribution<std::uint32_t> pick(
        0, static_cast<std::uint32_t>(p.n - 1));
    for (int i = 0; i < 100; ++i) {
      HElem h = decode(pick(rng), m);
      ok &= expect(word_parity(ev, ActionWord::right_mul(h)) == 1, detail,
                   "odd R(h) at m=" + std::to_string(m));
    }
  }
  double elapsed = now_sec() - t0;
  ok &= expect(elapsed < 5.0, detail,
               "took " + std::to_string(elapsed) + "s, bound 5s");
  return ok;
}

bool criterion_fix_sets(std::string& detail) {
  bool ok = true;
  for (unsigned m = 1; m <= 4; ++m) {
    GroupParams p = GroupParams::make(m);
    Evaluator ev(p);
    ActionWord yz = W(m, {AtomKind::Y, AtomKind::Z});
    const struct {
      unsigned power;
      const char* name;
      unsigned log2;
    } rows[3] = {{1, "ab_c2_cd_E", m + 3},
                 {2, "ab_c_d_E", m + 4},
                 {3, "a_b_c2_cd_E", m + 5}};
    for (const auto& row : rows) {
      IndexSet fix = fixed_points(ev, yz.pow(row.power));
      ok &= expect(fix == p.named_set(row.name), detail,
                   std::string("Fix((yz)^") + std::to_string(row.power) +
                       ") set mismatch at m=" + std::to_string(m));
      ok &= expect(fix.count() == (1ull << row.log2), detail,
                   "fix size mismatch at m=" + std::to_string(m));
    }
  }
  return ok;
}

bool criterion_fix_xyxz(std::string& detail) {
  bool ok = true;
  for (unsigned m = 1; m <= 6; ++m) {
    GroupParams p = GroupParams::make(m);
    Evaluator ev(p);
    ActionWord w = W(m, {AtomKind::X, AtomKind::Y, AtomKind::X, AtomKind::Z});
    std::uint64_t count =
        fixed_point_count(ev, m % 2 == 0 ? w : w.pow(2));
    ok &= expect(count == 3, detail,
                 "count " + std::to_string(count) + " at m=" +
                     std::to_string(m));
  }
  return ok;
}

bool criterion_fix_intersections(std::string& detail) {
  bool ok = true;
  for (unsigned m = 1; m <= 4; ++m) {
    GroupParams p = GroupParams::make(m);
    Evaluator ev(p);
    LemmaReport r = check_fix_intersections(ev);
    ok &= expect(r.passed(), detail,
                 "intersection table failed at m=" + std::to_string(m) +
                     (r.witness ? ": " + *r.witness : ""));
  }
  return ok;
}

bool criterion_coset_tables(std::string& detail) {
  bool ok = true;
  for (unsigned m = 1; m <= 4; ++m) {
    GroupParams p = GroupParams::make(m);
    Evaluator ev(p);
    LemmaReport z = check_z_tables(ev);
    LemmaReport yz = check_yz_tables(ev);
    ok &= expect(z.passed() && z.data.at("cases") == 8ll * (1ll << (m + 3)),
                 detail, "z tables at m=" + std::to_string(m));
    ok &= expect(yz.passed() && yz.data.at("cases") == 12ll * (1ll << (m + 3)),
                 detail, "yz tables at m=" + std::to_string(m));
  }
  return ok;
}

bool criterion_word_sets(std::string& detail) {
  bool ok = true;
  for (unsigned m = 1; m <= 4; ++m) {
    GroupParams p = GroupParams::make(m);
    Evaluator ev(p);
    LemmaReport r = check_word_set_intersection(ev);
    ok &= expect(r.passed() && r.data.at("family_a_size") == 12 &&
                     r.data.at("family_b_size") == 12 &&
                     r.data.at("common") == 1,
                 detail, "word families at m=" + std::to_string(m));
  }
  return ok;
}

bool criterion_connectivity(std::string& detail) {
  bool ok = true;
  for (unsigned m = 1; m <= 3; ++m) {
    GroupParams p = GroupParams::make(m);
    Evaluator ev(p);
    ok &= expect(check_mu_projection(ev).passed(), detail,
                 "mu projection at m=" + std::to_string(m));
    ok &= expect(check_orbit_cover(ev).passed(), detail,
                 "orbit cover at m=" + std::to_string(m));
    ok &= expect(check_no_stable_subset(ev).passed(), detail,
                 "stable subset at m=" + std::to_string(m));
    ok &= expect(check_subgroup_rigidity(ev).passed(), detail,
                 "subgroup rigidity at m=" + std::to_string(m));
  }
  return ok;
}

bool criterion_generation(std::string& detail) {
  bool ok = true;
  {
    double t0 = now_sec();
    GroupParams p = GroupParams::make(1);
    Evaluator ev(p);
    std::vector<Perm> gens = {
        materialize(ev, W(1, {AtomKind::X, AtomKind::Y})),
        materialize(ev, W(1, {AtomKind::X, AtomKind::Z}))};
    BSGSChain chain = schreier_sims(gens, p.n);
    double elapsed = now_sec() - t0;
    ok &= expect(chain.order() == half_factorial_oracle(127), detail,
                 "m=1 chain order != 127!/2");
    ok &= expect(elapsed < 300.0, detail,
                 "m=1 chain took " + std::to_string(elapsed) + "s, bound 300s");
    detail += detail.empty() ? "" : "; ";
    detail += "m=1 method=bsgs-exact " + std::to_string(elapsed).substr(0, 5) +
              "s";
  }
  {
    double t0 = now_sec();
    GroupParams p = GroupParams::make(2);
    Evaluator ev(p);
    std::vector<Perm> gens = {
        materialize(ev, W(2, {AtomKind::X, AtomKind::Y})),
        materialize(ev, W(2, {AtomKind::X, AtomKind::Z}))};
    BSGSChain chain = schreier_sims(gens, p.n);
    double elapsed = now_sec() - t0;
    std::string fail;
    ok &= expect(chain.order() == half_factorial_oracle(255), fail,
                 "m=2 chain order != 255!/2");
    ok &= expect(elapsed < 1800.0, fail,
                 "m=2 chain took " + std::to_string(elapsed) + "s, bound 1800s");
    detail += (fail.empty() ? "" : fail + "; ") + std::string("; m=2 ") +
              "method=bsgs-exact " + std::to_string(elapsed).substr(0, 5) + "s";
  }
  return ok;
}

bool criterion_double_cosets(std::string& detail) {
  bool ok = true;
  for (unsigned m = 1; m <= 2; ++m) {
    GroupParams p = GroupParams::make(m);
    Evaluator ev(p);
    DoubleCosetResult dc = double_coset_decomposition(ev);
    ok &= expect(dc.method == "exhaustive", detail,
                 "not exhaustive at m=" + std::to_string(m));
    ok &= expect(dc.size_xy_double == (1ull << (m + 7)), detail,
                 "double coset size at m=" + std::to_string(m));
    ok &= expect(dc.equals_coset_union, detail,
                 "coset union mismatch at m=" + std::to_string(m));
    ok &= expect(dc.four_cosets_disjoint &&
                     dc.union_size == (1ull << (m + 8)),
                 detail, "four-coset partition at m=" + std::to_string(m));
  }
  return ok;
}

bool criterion_local_graph(std::string& detail) {
  bool ok = true;
  for (unsigned m = 1; m <= 4; ++m) {
    GroupParams p = GroupParams::make(m);
    Evaluator ev(p);
    AlternatingCycles cycles = alternating_cycles(ev);
    ok &= expect(cycles.c1.size() == 12 && cycles.c2.size() == 12, detail,
                 "cycle lengths at m=" + std::to_string(m));
    ok &= expect(cycles.common_vertices == 1 && cycles.closed_form_agrees,
                 detail, "cycle intersection at m=" + std::to_string(m));
    auto [radius, attachment] = radius_and_attachment(ev);
    ok &= expect(radius == 6 && attachment == 1, detail,
                 "radius/attachment at m=" + std::to_string(m));
    LocalBall b = ball(ev, 3);
    for (std::uint32_t v = 0; v < b.vertices.size(); ++v) {
      if (b.depth[v] >= 3) continue;
      ok &= expect(b.out_degree(v, Orientation::d1) == 2, detail,
                   "D1 out-degree at m=" + std::to_string(m));
    }
  }
  return ok;
}

bool criterion_nonnormality(std::string& detail) {
  bool ok = true;
  for (unsigned m = 1; m <= 3; ++m) {
    GroupParams p = GroupParams::make(m);
    Evaluator ev(p);
    NonnormalityWitness w = nonnormality_witness(ev);
    ok &= expect(w.right_multipliers == p.named_set("K"), detail,
                 "witness set != K at m=" + std::to_string(m));
  }
  return ok;
}

bool criterion_streaming(std::string& detail) {
  const unsigned m = 14;
  GroupParams p = GroupParams::make(m);
  Evaluator ev(p);
  double t0 = now_sec();
  std::uint64_t count =
      fixed_point_count(ev, W(m, {AtomKind::Y, AtomKind::Z}), 0);
  double elapsed = now_sec() - t0;
  bool ok = expect(count == (1ull << (m + 3)), detail,
                   "streaming count " + std::to_string(count));
  ok &= expect(elapsed < 5.0, detail,
               "took " + std::to_string(elapsed) + "s, bound 5s");
  detail += detail.empty() ? "" : "; ";
  detail += std::to_string(p.n) + " points in " +
            std::to_string(elapsed).substr(0, 6) + "s";
  return ok;
}

bool criterion_oracle_equivalence(std::string& detail) {
  bool ok = true;
  for (unsigned m = 1; m <= 4 && ok; ++m) {
    GroupParams p = GroupParams::make(m);
    for (std::uint32_t idx = 0; idx < p.n && ok; ++idx) {
      HElem g = decode(idx, m);
      ok &= expect(apply_x(p, g) == apply_x_via_images(p, g) &&
                       apply_x_inv(p, g) == apply_x_inv_via_images(p, g) &&
                       apply_y(p, g) == apply_y_via_images(p, g) &&
                       apply_z(p, g) == apply_z_via_images(p, g),
                   detail, "route divergence at m=" + std::to_string(m) +
                               " point " + render(g));
    }
  }
  for (unsigned m = 5; m <= 14 && ok; ++m) {
    GroupParams p = GroupParams::make(m);
    std::mt19937_64 rng(4321 + m);
    std::uniform_int_distribution<std::uint32_t> pick(
        0, static_cast<std::uint32_t>(p.n - 1));
    for (int i = 0; i < 100000 && ok; ++i) {
      HElem g = decode(pick(rng), m);
      ok &= expect(apply_x(p, g) == apply_x_via_images(p, g) &&
                       apply_x_inv(p, g) == apply_x_inv_via_images(p, g) &&
                       apply_y(p, g) == apply_y_via_images(p, g) &&
                       apply_z(p, g) == apply_z_via_images(p, g),
                   detail, "route divergence at m=" + std::to_string(m) +
                               " point " + render(g));
    }
  }
  return ok;
}

bool criterion_mutation_sensitivity(std::string& detail) {
  GroupParams p = GroupParams::make(1);
  const std::vector<std::string> fast_checks = {
      "orders",       "alt-membership", "x-inverse",
      "ay-formula",   "z-involution",   "yz-tables",
      "fix-xyxz",     "fix-intersections"};
  bool ok = true;
  std::mt19937_64 seeder(777);
  for (int trial = 0; trial < 20 && ok; ++trial) {
    AtomKind which = (trial % 2 == 0) ? AtomKind::X : AtomKind::Y;
    Evaluator bad = mutated_evaluator(p, which, seeder());
    bool tripped = false, witnessed = false;
    for (const LemmaReport& r : run_all(bad, fast_checks)) {
      if (r.status == CheckStatus::fail) {
        tripped = true;
        witnessed = witnessed || r.witness.has_value();
      }
    }
    ok &= expect(tripped && witnessed, detail,
                 "mutation trial " + std::to_string(trial) +
                     " escaped detection");
  }
  return ok;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "orders and signs of x, y, z, yz and 100 R(h), m=1..6, under 5s",
       criterion_orders},
      {2, "fix-set identities for yz, (yz)^2, (yz)^3, m=1..4",
       criterion_fix_sets},
      {3, "exactly 3 fixed points for xyxz (m even) / (xyxz)^2 (m odd), m=1..6",
       criterion_fix_xyxz},
      {4, "fix-intersection table items (a)-(g), m=1..4",
       criterion_fix_intersections},
      {5, "z and yz coset tables, exhaustive, m=1..4", criterion_coset_tables},
      {6, "12-element word families meet only in the identity, m=1..4",
       criterion_word_sets},
      {7, "connectivity lemmas, exhaustive, m=1..3", criterion_connectivity},
      {8, "BSGS order of <xy,xz> equals (2^(m+6)-1)!/2 for m=1,2",
       criterion_generation},
      {9, "double-coset decomposition by exhaustive enumeration, m=1,2",
       criterion_double_cosets},
      {10, "alternating cycles, radius 6, attachment 1, D1-regularity, m=1..4",
       criterion_local_graph},
      {11, "conjugation-membership set equals K, m=1..3",
       criterion_nonnormality},
      {12, "streaming |Fix(yz)| at m=14 under 5s without permutation arrays",
       criterion_streaming},
      {13, "closed forms match generator-image oracles, m=1..14",
       criterion_oracle_equivalence},
      {14, "20 single-image mutations of x or y each trip the suite",
       criterion_mutation_sensitivity},
  };

  int failures = 0;
  for (Criterion& c : criteria) {
    double t0 = now_sec();
    std::string detail;
    bool pass = false;
    try {
      pass = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double elapsed = now_sec() - t0;
    std::printf("%s  criterion %2d: %s (%.2fs)%s%s\n",
                pass ? "PASS" : "FAIL", c.number, c.title.c_str(), elapsed,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
