#include "havt/lemmas.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include "havt/cayley.hpp"
#include "havt/permgroup.hpp"

namespace havt {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

LemmaReport make_report(std::string id, unsigned m) {
  LemmaReport r;
  r.lemma_id = std::move(id);
  r.m = m;
  return r;
}

void fail_with(LemmaReport& r, std::string witness) {
  r.status = CheckStatus::fail;
  if (!r.witness) r.witness = std::move(witness);
}

void fail_at(LemmaReport& r, std::uint64_t idx, unsigned m) {
  fail_with(r, render(decode(static_cast<std::uint32_t>(idx), m)));
}

ActionWord W(const Evaluator& ev, std::initializer_list<AtomKind> kinds) {
  return ActionWord::of(ev.params().m, kinds);
}

// order claims: on mismatch, witness a point whose cycle length does not
// divide the claimed order, when one exists
void check_order_claim(LemmaReport& r, const Evaluator& ev,
                       const ActionWord& w, std::uint64_t expected,
                       const std::string& key) {
  std::uint64_t actual = word_order(ev, w);
  r.data["order_" + key] = static_cast<std::int64_t>(actual);
  if (actual == expected) return;
  const std::uint64_t n = ev.params().n;
  IndexSet seen(n);
  for (std::uint64_t s = 0; s < n; ++s) {
    if (seen.test(s)) continue;
    std::uint64_t len = 0;
    std::uint32_t v = static_cast<std::uint32_t>(s);
    while (!seen.test(v)) {
      seen.set(v);
      v = ev.eval_idx(w, v);
      ++len;
    }
    if (expected % len != 0) {
      fail_at(r, s, ev.params().m);
      r.text["order_" + key + "_note"] =
          "cycle of length " + std::to_string(len) + " at the witness";
      return;
    }
  }
  fail_with(r, "1");
  r.text["order_" + key + "_note"] = "all cycle lengths divide " +
                                     std::to_string(expected) +
                                     " but their lcm falls short";
}

void check_parity_claim(LemmaReport& r, const Evaluator& ev,
                        const ActionWord& w, const std::string& key) {
  int sign = word_parity(ev, w);
  r.data["parity_" + key] = sign;
  if (sign != 1) fail_with(r, "odd permutation: " + w.str());
}

HElem a2_of(unsigned m) { return elem_pow(gen_a(m), 2); }
HElem a3_of(unsigned m) { return elem_pow(gen_a(m), 3); }
HElem c2_of(unsigned m) { return elem_pow(gen_c(m), 2); }
HElem cd_of(unsigned m) { return mul(gen_c(m), gen_d(m)); }
HElem ab_of(unsigned m) { return mul(gen_a(m), gen_b(m)); }

}  // namespace

const std::vector<std::string>& all_lemma_ids() {
  static const std::vector<std::string> ids = {
      "orders",          "alt-membership",   "x-inverse",
      "ay-formula",      "z-involution",     "yz-tables",
      "fix-xyxz",        "fix-intersections", "word-set-intersection",
      "mu-projection",   "orbit-cover",      "no-stable-subset",
      "subgroup-rigidity", "double-coset",   "connection-distinct",
      "generation",      "nonnormal",        "prop3-cases"};
  return ids;
}

LemmaReport check_orders(const Evaluator& ev, const CheckOptions&) {
  auto t0 = Clock::now();
  const GroupParams& p = ev.params();
  LemmaReport r = make_report("orders", p.m);

  check_order_claim(r, ev, W(ev, {AtomKind::X}), 4, "x");
  check_order_claim(r, ev, W(ev, {AtomKind::Y}), 2, "y");
  check_order_claim(r, ev, W(ev, {AtomKind::Z}), 2, "z");
  check_order_claim(r, ev, W(ev, {AtomKind::Y, AtomKind::Z}), 6, "yz");
  check_parity_claim(r, ev, W(ev, {AtomKind::X}), "x");
  check_parity_claim(r, ev, W(ev, {AtomKind::Y}), "y");
  check_parity_claim(r, ev, W(ev, {AtomKind::Z}), "z");

  // x^-1 really inverts x on every point
  for (std::uint64_t i = 0; i < p.n && r.passed(); ++i) {
    auto idx = static_cast<std::uint32_t>(i);
    std::uint32_t fwd = ev.apply_idx(Atom{AtomKind::X, {}}, idx);
    if (ev.apply_idx(Atom{AtomKind::XInv, {}}, fwd) != idx) fail_at(r, i, p.m);
  }

  r.elapsed_sec = seconds_since(t0);
  return r;
}

LemmaReport check_alt_membership(const Evaluator& ev, const CheckOptions& opt) {
  auto t0 = Clock::now();
  const GroupParams& p = ev.params();
  LemmaReport r = make_report("alt-membership", p.m);

  check_parity_claim(r, ev, W(ev, {AtomKind::X}), "x");
  check_parity_claim(r, ev, W(ev, {AtomKind::Y}), "y");
  check_parity_claim(r, ev, W(ev, {AtomKind::Z}), "z");

  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::uint32_t> pick(
      1, static_cast<std::uint32_t>(p.n - 1));
  const int samples = 100;
  for (int i = 0; i < samples && r.passed(); ++i) {
    HElem h = decode(pick(rng), p.m);
    ActionWord w = ActionWord::right_mul(h);
    if (word_parity(ev, w) != 1) fail_with(r, render(h));
  }
  r.data["random_right_multiplications"] = samples;
  r.elapsed_sec = seconds_since(t0);
  return r;
}

LemmaReport check_x_inverse(const Evaluator& ev, const CheckOptions&) {
  auto t0 = Clock::now();
  const GroupParams& p = ev.params();
  const unsigned m = p.m;
  LemmaReport r = make_report("x-inverse", m);

  auto expect = [&](const HElem& g, const HElem& want) {
    if (!r.passed()) return;
    if (ev.apply(AtomKind::XInv, g) != want)
      fail_with(r, render(g) + " -> " + render(ev.apply(AtomKind::XInv, g)) +
                       ", expected " + render(want));
  };
  expect(gen_a(m), elem_pow(gen_c(m), 3));
  expect(gen_b(m), cd_of(m));
  expect(gen_c(m), gen_a(m));
  expect(gen_d(m), gen_b(m));
  for (unsigned i = 1; 2 * i <= m; ++i) {
    expect(gen_e(2 * i - 1, m), gen_e(2 * i - 1, m));
    expect(gen_e(2 * i, m),
           mul(mul(c2_of(m), gen_e(2 * i - 1, m)), gen_e(2 * i, m)));
  }
  if (m % 2 == 1) {
    // c^(2m) e_m = c^2 e_m for odd m
    expect(gen_e(m, m), mul(c2_of(m), gen_e(m, m)));
  }

  for (std::uint64_t i = 0; i < p.n && r.passed(); ++i) {
    auto idx = static_cast<std::uint32_t>(i);
    if (ev.apply_idx(Atom{AtomKind::X, {}},
                     ev.apply_idx(Atom{AtomKind::XInv, {}}, idx)) != idx)
      fail_at(r, i, m);
  }
  r.data["points_checked"] = static_cast<std::int64_t>(p.n);
  r.elapsed_sec = seconds_since(t0);
  return r;
}

LemmaReport check_ak_formula(const Evaluator& ev, const CheckOptions&) {
  auto t0 = Clock::now();
  const GroupParams& p = ev.params();
  const unsigned m = p.m;
  LemmaReport r = make_report("ay-formula", m);

  HElem head = mul(mul(mul(a3_of(m), gen_b(m)), gen_c(m)), gen_d(m));
  HElem tail = mul(mul(gen_e(2 * (m / 2) - 1, m), gen_e(2 * (m / 2), m)),
                   p.em_m);
  std::int64_t cases = 0;
  for (std::uint64_t i = 0; i < p.n; ++i) {
    HElem k = decode(static_cast<std::uint32_t>(i), m);
    if (!p.in_K(k)) continue;
    ++cases;
    HElem lhs = ev.apply(AtomKind::Y, mul(gen_a(m), k));
    HElem rhs = mul(mul(head, ev.apply(AtomKind::Y, k)), tail);
    if (lhs != rhs) {
      fail_with(r, render(k));
      break;
    }
  }
  r.data["cases"] = cases;
  r.elapsed_sec = seconds_since(t0);
  return r;
}

LemmaReport check_z_tables(const Evaluator& ev, const CheckOptions&) {
  auto t0 = Clock::now();
  const GroupParams& p = ev.params();
  const unsigned m = p.m;
  LemmaReport r = make_report("z-involution", m);

  check_order_claim(r, ev, W(ev, {AtomKind::Z}), 2, "z");
  check_parity_claim(r, ev, W(ev, {AtomKind::Z}), "z");

  HElem a2 = a2_of(m), b = gen_b(m), cd = cd_of(m), f = p.f;
  HElem cd_emm = mul(cd, p.em_m);
  IndexSet cdE = p.named_set("c_d_E");
  std::int64_t cases = 0;
  cdE.for_each([&](std::uint64_t gi) {
    if (!r.passed()) return;
    HElem g = decode(static_cast<std::uint32_t>(gi), m);
    HElem gy = ev.apply(AtomKind::Y, g);
    const std::pair<HElem, HElem> rows[8] = {
        {g, mul(mul(cd, gy), cd)},
        {mul(b, g), mul(mul(mul(b, cd), gy), cd)},
        {mul(a2, g), mul(mul(mul(mul(a2, b), cd), gy), cd)},
        {mul(mul(a2, b), g), mul(mul(mul(a2, cd), gy), cd)},
        {mul(f, g), mul(mul(f, gy), cd_emm)},
        {mul(mul(f, b), g), mul(mul(mul(f, b), gy), cd_emm)},
        {mul(mul(f, a2), g), mul(mul(mul(mul(f, a2), b), gy), cd_emm)},
        {mul(mul(mul(f, a2), b), g), mul(mul(mul(f, a2), gy), cd_emm)},
    };
    for (const auto& [arg, want] : rows) {
      ++cases;
      if (ev.apply(AtomKind::Z, arg) != want) {
        fail_with(r, render(arg));
        return;
      }
    }
  });
  r.data["cases"] = cases;
  r.elapsed_sec = seconds_since(t0);
  return r;
}

LemmaReport check_yz_tables(const Evaluator& ev, const CheckOptions&) {
  auto t0 = Clock::now();
  const GroupParams& p = ev.params();
  const unsigned m = p.m;
  LemmaReport r = make_report("yz-tables", m);

  check_order_claim(r, ev, W(ev, {AtomKind::Y, AtomKind::Z}), 6, "yz");

  HElem a = gen_a(m), a2 = a2_of(m), a3 = a3_of(m), b = gen_b(m);
  HElem cd = cd_of(m), f = p.f;
  auto conj = [&](const HElem& g) { return mul(mul(cd, g), cd); };
  IndexSet cdE = p.named_set("c_d_E");
  std::int64_t cases = 0;
  cdE.for_each([&](std::uint64_t gi) {
    if (!r.passed()) return;
    HElem g = decode(static_cast<std::uint32_t>(gi), m);
    const std::pair<HElem, HElem> rows[12] = {
        {g, conj(g)},
        {mul(b, g), mul(mul(a2, b), conj(g))},
        {mul(a2, g), mul(b, conj(g))},
        {mul(mul(a2, b), g), mul(a2, conj(g))},
        {mul(f, g), mul(f, conj(g))},
        {mul(mul(f, b), g), mul(mul(f, mul(a2, b)), conj(g))},
        {mul(mul(f, a2), g), mul(mul(f, b), conj(g))},
        {mul(mul(mul(f, a2), b), g), mul(mul(f, a2), conj(g))},
        {mul(a, g), mul(a3, conj(g))},
        {mul(mul(a, b), g), mul(mul(a, b), conj(g))},
        {mul(a3, g), mul(mul(a3, b), conj(g))},
        {mul(mul(a3, b), g), mul(a, conj(g))},
    };
    for (const auto& [arg, want] : rows) {
      ++cases;
      if (ev.apply(AtomKind::Z, ev.apply(AtomKind::Y, arg)) != want) {
        fail_with(r, render(arg));
        return;
      }
    }
  });
  r.data["cases"] = cases;

  struct FixClaim {
    const char* key;
    unsigned power;
    const char* subgroup;
    unsigned log2_size;
  };
  const FixClaim claims[3] = {{"fix_yz", 1, "ab_c2_cd_E", m + 3},
                              {"fix_yz2", 2, "ab_c_d_E", m + 4},
                              {"fix_yz3", 3, "a_b_c2_cd_E", m + 5}};
  ActionWord yz = W(ev, {AtomKind::Y, AtomKind::Z});
  for (const auto& claim : claims) {
    IndexSet fix = fixed_points(ev, yz.pow(claim.power));
    r.data[claim.key] = static_cast<std::int64_t>(fix.count());
    IndexSet want = p.named_set(claim.subgroup);
    if (!(fix == want) || fix.count() != (1ull << claim.log2_size)) {
      if (auto d = fix.first_difference(want)) fail_at(r, *d, m);
      else fail_with(r, "1");
    }
  }
  r.elapsed_sec = seconds_since(t0);
  return r;
}

LemmaReport check_fix_xyxz(const Evaluator& ev, const CheckOptions& opt) {
  auto t0 = Clock::now();
  const GroupParams& p = ev.params();
  LemmaReport r = make_report("fix-xyxz", p.m);

  ActionWord xyxz =
      W(ev, {AtomKind::X, AtomKind::Y, AtomKind::X, AtomKind::Z});
  std::uint64_t fix1 = fixed_point_count(ev, xyxz, opt.threads);
  std::uint64_t fix2 = fixed_point_count(ev, xyxz.pow(2), opt.threads);
  r.data["fix_xyxz"] = static_cast<std::int64_t>(fix1);
  r.data["fix_xyxz_squared"] = static_cast<std::int64_t>(fix2);
  std::uint64_t relevant = (p.m % 2 == 0) ? fix1 : fix2;
  r.text["claimed_word"] = (p.m % 2 == 0) ? xyxz.str() : xyxz.pow(2).str();
  if (relevant != 3) {
    IndexSet fix = fixed_points(ev, p.m % 2 == 0 ? xyxz : xyxz.pow(2));
    if (auto first = fix.first_set()) fail_at(r, *first, p.m);
    else fail_with(r, "1");
  }
  r.elapsed_sec = seconds_since(t0);
  return r;
}

namespace {

struct IntersectionValues {
  std::uint64_t a = 0, b = 0, c = 0, pair_first = 0, pair_second = 0;
};

IntersectionValues fix_intersection_values(const Evaluator& ev) {
  const unsigned m = ev.params().m;
  IntersectionValues v;
  ActionWord yz = W(ev, {AtomKind::Y, AtomKind::Z});
  ActionWord zy = W(ev, {AtomKind::Z, AtomKind::Y});
  IndexSet fix_yz = fixed_points(ev, yz);

  v.a = fix_yz.intersection_count(set_image(
      fix_yz, ev,
      W(ev, {AtomKind::X, AtomKind::Y, AtomKind::Z, AtomKind::XInv})));
  IndexSet fx = set_image(fix_yz, ev, W(ev, {AtomKind::XInv}));
  v.b = fx.intersection_count(set_image(
      fix_yz, ev, W(ev, {AtomKind::XInv, AtomKind::Y, AtomKind::Z})));
  v.c = fx.intersection_count(set_image(
      fix_yz, ev, W(ev, {AtomKind::XInv, AtomKind::Z, AtomKind::Y})));

  ActionWord xyxz = W(ev, {AtomKind::X, AtomKind::Y, AtomKind::X, AtomKind::Z});
  ActionWord xzxy = W(ev, {AtomKind::X, AtomKind::Z, AtomKind::X, AtomKind::Y});
  ActionWord xy = W(ev, {AtomKind::X, AtomKind::Y});
  ActionWord xz = W(ev, {AtomKind::X, AtomKind::Z});
  if (m % 2 == 0) {
    v.pair_first =
        set_image(fix_yz, ev, xz)
            .intersection_count(set_image(fixed_points(ev, xyxz), ev,
                                          xy.inverse().then(xz.inverse())));
    v.pair_second =
        set_image(fixed_points(ev, zy), ev, xy)
            .intersection_count(set_image(fixed_points(ev, xzxy), ev,
                                          xz.inverse().then(xy.inverse())));
  } else {
    v.pair_first = fix_yz.intersection_count(
        set_image(fixed_points(ev, xyxz.pow(2)), ev, xy.pow(2).then(xz.pow(2))));
    v.pair_second = fixed_points(ev, zy).intersection_count(
        set_image(fixed_points(ev, xzxy.pow(2)), ev, xz.pow(2).then(xy.pow(2))));
  }
  return v;
}

}  // namespace

LemmaReport check_fix_intersections(const Evaluator& ev, const CheckOptions&) {
  auto t0 = Clock::now();
  const unsigned m = ev.params().m;
  LemmaReport r = make_report("fix-intersections", m);

  IntersectionValues v = fix_intersection_values(ev);
  r.data["a"] = static_cast<std::int64_t>(v.a);
  r.data["b"] = static_cast<std::int64_t>(v.b);
  r.data["c"] = static_cast<std::int64_t>(v.c);
  r.data["pair_first"] = static_cast<std::int64_t>(v.pair_first);
  r.data["pair_second"] = static_cast<std::int64_t>(v.pair_second);
  r.data["m_mod_4"] = m % 4;

  std::uint64_t want_first = (m % 4 == 0 || m % 4 == 1) ? 1 : 2;
  if (v.a != (1ull << (m + 3))) fail_with(r, "item (a) count mismatch");
  if (v.b != (1ull << (m + 1))) fail_with(r, "item (b) count mismatch");
  if (v.c != (1ull << (m + 1))) fail_with(r, "item (c) count mismatch");
  if (v.pair_first != want_first || v.pair_second != 3 - want_first)
    fail_with(r, "class pair mismatch for m mod 4 = " + std::to_string(m % 4));
  r.elapsed_sec = seconds_since(t0);
  return r;
}

LemmaReport check_word_set_intersection(const Evaluator& ev,
                                        const CheckOptions&) {
  auto t0 = Clock::now();
  const GroupParams& p = ev.params();
  LemmaReport r = make_report("word-set-intersection", p.m);

  Perm px = materialize(ev, W(ev, {AtomKind::X}));
  Perm pxi = materialize(ev, W(ev, {AtomKind::XInv}));
  Perm py = materialize(ev, W(ev, {AtomKind::Y}));
  Perm pyz = materialize(ev, W(ev, {AtomKind::Y, AtomKind::Z}));

  auto dedup = [](std::vector<Perm> v) {
    std::sort(v.begin(), v.end(),
              [](const Perm& a, const Perm& b) { return lex_less(a, b); });
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };

  std::vector<Perm> fam_a, fam_b;
  Perm acc_a = px;                     // x (yz)^i
  Perm acc_b = Perm::identity(p.n);    // (yz)^j
  for (int i = 0; i < 6; ++i) {
    fam_a.push_back(acc_a.then(pxi));
    fam_a.push_back(acc_a.then(py));
    fam_b.push_back(acc_b);
    fam_b.push_back(acc_b.then(py).then(pxi));
    acc_a = acc_a.then(pyz);
    acc_b = acc_b.then(pyz);
  }
  fam_a = dedup(std::move(fam_a));
  fam_b = dedup(std::move(fam_b));

  std::vector<Perm> common;
  for (const Perm& qa : fam_a)
    for (const Perm& qb : fam_b)
      if (qa == qb) common.push_back(qa);

  r.data["family_a_size"] = static_cast<std::int64_t>(fam_a.size());
  r.data["family_b_size"] = static_cast<std::int64_t>(fam_b.size());
  r.data["common"] = static_cast<std::int64_t>(common.size());
  bool ok = fam_a.size() == 12 && fam_b.size() == 12 && common.size() == 1 &&
            common.front().is_identity();
  if (!ok) fail_with(r, "families do not meet in exactly the identity");
  r.elapsed_sec = seconds_since(t0);
  return r;
}

LemmaReport check_mu_projection(const Evaluator& ev, const CheckOptions&) {
  auto t0 = Clock::now();
  const GroupParams& p = ev.params();
  const unsigned m = p.m;
  LemmaReport r = make_report("mu-projection", m);

  Perm pxy = materialize(ev, W(ev, {AtomKind::X, AtomKind::Y}));
  Perm pxz = materialize(ev, W(ev, {AtomKind::X, AtomKind::Z}));
  std::vector<Perm> gens = {pxy, pxz};

  IndexSet abcdE = p.named_set("coset_abcdE");
  const unsigned v_bits = 2 * (m / 2);
  const std::uint32_t v_mask = (v_bits == 0) ? 0 : ((1u << v_bits) - 1);
  HElem ab = ab_of(m);

  std::int64_t cosets = 0;
  p.named_set("coset_cdE").for_each([&](std::uint64_t gi) {
    if (!r.passed()) return;
    ++cosets;
    HElem g = decode(static_cast<std::uint32_t>(gi), m);
    std::uint32_t start = encode(mul(ab, g));
    IndexSet hit(1ull << v_bits);
    for (std::uint32_t v : orbit_of(gens, start)) {
      if (abcdE.test(v)) hit.set(decode(v, m).e & v_mask);
    }
    if (hit.count() != (1ull << v_bits)) {
      fail_with(r, render(mul(ab, g)));
      for (std::uint64_t miss = 0; miss < (1ull << v_bits); ++miss)
        if (!hit.test(miss)) {
          HElem missing = identity_elem(m);
          missing.e = static_cast<std::uint32_t>(miss);
          r.text["missing_projection"] = render(missing);
          break;
        }
    }
  });
  r.data["cosets_checked"] = cosets;
  r.data["v_size"] = static_cast<std::int64_t>(1ull << v_bits);
  r.elapsed_sec = seconds_since(t0);
  return r;
}

LemmaReport check_orbit_cover(const Evaluator& ev, const CheckOptions&) {
  auto t0 = Clock::now();
  const GroupParams& p = ev.params();
  LemmaReport r = make_report("orbit-cover", p.m);

  Perm pxy = materialize(ev, W(ev, {AtomKind::X, AtomKind::Y}));
  Perm pxz = materialize(ev, W(ev, {AtomKind::X, AtomKind::Z}));

  // orbit closure of the coset abcdE under <xy, xz>
  IndexSet covered(p.n);
  std::vector<std::uint32_t> queue;
  p.named_set("coset_abcdE").for_each([&](std::uint64_t i) {
    covered.set(i);
    queue.push_back(static_cast<std::uint32_t>(i));
  });
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const Perm* g : {&pxy, &pxz}) {
      std::uint32_t w = (*g)[queue[head]];
      if (!covered.test(w)) {
        covered.set(w);
        queue.push_back(w);
      }
    }
  }
  r.data["covered"] = static_cast<std::int64_t>(covered.count());

  IndexSet c2E = p.named_set("c2_E");
  for (std::uint64_t i = 0; i < p.n && r.passed(); ++i)
    if (!c2E.test(i) && !covered.test(i)) fail_at(r, i, p.m);
  r.elapsed_sec = seconds_since(t0);
  return r;
}

LemmaReport check_no_stable_subset(const Evaluator& ev, const CheckOptions&) {
  auto t0 = Clock::now();
  const GroupParams& p = ev.params();
  LemmaReport r = make_report("no-stable-subset", p.m);

  Perm pxy = materialize(ev, W(ev, {AtomKind::X, AtomKind::Y}));
  IndexSet target = p.named_set("c2_E");
  target.reset(0);  // exclude the identity

  // a stabilized subset would be a union of <xy>-cycles inside the target
  std::vector<bool> seen(p.n, false);
  std::int64_t cycles = 0;
  for (std::uint32_t s = 0; s < p.n && r.passed(); ++s) {
    if (seen[s]) continue;
    ++cycles;
    bool inside = true;
    std::uint32_t v = s;
    while (!seen[v]) {
      seen[v] = true;
      if (!target.test(v)) inside = false;
      v = pxy[v];
    }
    if (inside) fail_at(r, s, p.m);
  }
  r.data["xy_cycles"] = cycles;
  r.elapsed_sec = seconds_since(t0);
  return r;
}

std::vector<IndexSet> orbit_union_subgroups(const GroupParams& params,
                                            const std::vector<Perm>& gens,
                                            unsigned max_orbits) {
  if (gens.empty())
    throw ParamError(
        "orbit-union enumeration needs the acting generators; an empty set "
        "would make every subgroup qualify");
  OrbitPartition part = orbits(std::span<const Perm>(gens), params.n);
  const std::uint32_t k = part.num_orbits();
  if (k > max_orbits)
    throw BudgetError("too many orbits (" + std::to_string(k) +
                      ") for subset enumeration");

  // product closure on orbit labels: table[i][j] = orbits hit by O_i * O_j
  std::vector<std::vector<std::uint32_t>> members(k);
  for (std::uint32_t v = 0; v < params.n; ++v)
    members[part.orbit_id[v]].push_back(v);
  std::vector<std::vector<std::uint32_t>> table(k,
                                                std::vector<std::uint32_t>(k, 0));
  for (std::uint32_t i = 0; i < k; ++i)
    for (std::uint32_t j = 0; j < k; ++j)
      for (std::uint32_t u : members[i])
        for (std::uint32_t v : members[j]) {
          HElem prod = mul(decode(u, params.m), decode(v, params.m));
          table[i][j] |= 1u << part.orbit_id[encode(prod)];
        }

  const std::uint32_t id_orbit = part.orbit_id[0];
  std::vector<IndexSet> result;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    if (!(mask & (1u << id_orbit))) continue;
    bool closed = true;
    for (std::uint32_t i = 0; i < k && closed; ++i) {
      if (!(mask & (1u << i))) continue;
      for (std::uint32_t j = 0; j < k && closed; ++j) {
        if (!(mask & (1u << j))) continue;
        if (table[i][j] & ~mask) closed = false;
      }
    }
    if (!closed) continue;
    IndexSet s(params.n);
    for (std::uint32_t i = 0; i < k; ++i)
      if (mask & (1u << i))
        for (std::uint32_t v : members[i]) s.set(v);
    result.push_back(std::move(s));
  }
  return result;
}

namespace {

// some checks scan all of H x H; keep them inside the point budget
void require_quadratic_budget(const GroupParams& p, const CheckOptions& opt,
                              const char* what) {
  if (p.n * p.n > opt.budget_points)
    throw BudgetError(std::string(what) + " scans " + std::to_string(p.n) +
                      "^2 pairs, beyond the point budget");
}

}  // namespace

LemmaReport check_subgroup_rigidity(const Evaluator& ev,
                                    const CheckOptions& opt) {
  auto t0 = Clock::now();
  const GroupParams& p = ev.params();
  require_quadratic_budget(p, opt, "subgroup-rigidity");
  LemmaReport r = make_report("subgroup-rigidity", p.m);

  std::vector<Perm> gens = {materialize(ev, W(ev, {AtomKind::X, AtomKind::Y})),
                            materialize(ev, W(ev, {AtomKind::X, AtomKind::Z}))};
  OrbitPartition part = orbits(std::span<const Perm>(gens), p.n);
  r.data["orbits"] = part.num_orbits();

  std::vector<IndexSet> unions = orbit_union_subgroups(p, gens);
  r.data["closed_orbit_unions"] = static_cast<std::int64_t>(unions.size());
  IndexSet trivial(p.n);
  trivial.set(0);
  IndexSet full = IndexSet::full(p.n);
  for (const IndexSet& s : unions) {
    if (s == trivial || s == full) continue;
    std::uint64_t w = 1;
    s.for_each([&](std::uint64_t i) {
      if (w == 1 && i != 0) w = i;
    });
    fail_at(r, w, p.m);
  }
  if (unions.size() != 2) fail_with(r, "1");
  r.elapsed_sec = seconds_since(t0);
  return r;
}

LemmaReport check_double_coset(const Evaluator& ev, const CheckOptions& opt) {
  auto t0 = Clock::now();
  const GroupParams& p = ev.params();
  require_quadratic_budget(p, opt, "double-coset");
  LemmaReport r = make_report("double-coset", p.m);

  DoubleCosetResult dc = double_coset_decomposition(
      ev, opt.double_coset_exhaustive_max_m);
  r.text["method"] = dc.method;
  r.data["double_coset_size"] = static_cast<std::int64_t>(dc.size_xy_double);
  r.data["inverse_double_coset_size"] =
      static_cast<std::int64_t>(dc.size_xy_inv_double);
  r.data["union_size"] = static_cast<std::int64_t>(dc.union_size);

  std::uint64_t want = 1ull << (p.m + 7);
  if (dc.size_xy_double != want || dc.size_xy_inv_double != want)
    fail_with(r, "double coset size is not 2^(m+7)");
  if (!dc.equals_coset_union)
    fail_with(r, "double coset differs from the two-coset union");
  if (!dc.four_cosets_disjoint || dc.union_size != 2 * want)
    fail_with(r, "the four right cosets do not partition their union");
  r.elapsed_sec = seconds_since(t0);
  return r;
}

LemmaReport check_connection_distinct(const Evaluator& ev,
                                      const CheckOptions&) {
  auto t0 = Clock::now();
  const GroupParams& p = ev.params();
  const unsigned m = p.m;
  LemmaReport r = make_report("connection-distinct", m);

  ConnectionSet s = connection_set(ev);
  auto imgs = s.b_images(p);
  const HElem want[4] = {gen_d(m), c2_of(m), mul(c2_of(m), gen_d(m)),
                         cd_of(m)};
  const char* names[4] = {"xy", "xy_inv", "xz", "xz_inv"};
  for (int i = 0; i < 4; ++i) {
    r.text[std::string("b_under_") + names[i]] = render(imgs[i]);
    if (!(imgs[i] == want[i]))
      fail_with(r, "b image under " + std::string(names[i]) + " is " +
                       render(imgs[i]) + ", expected " + render(want[i]));
  }

  const Perm* perms[4] = {&s.xy, &s.xy_inv, &s.xz, &s.xz_inv};
  std::int64_t distinct_pairs = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (*perms[i] == *perms[j])
        fail_with(r, std::string(names[i]) + " equals " + names[j]);
      else
        ++distinct_pairs;
    }
  r.data["distinct_pairs"] = distinct_pairs;

  // inverse-closed, and every member fixes the identity point
  if (!(materialize(ev, s.w_xy_inv) == s.xy.inverse()) ||
      !(materialize(ev, s.w_xz_inv) == s.xz.inverse()))
    fail_with(r, "inverse words do not match permutation inverses");
  for (int i = 0; i < 4; ++i)
    if ((*perms[i])[0] != 0)
      fail_with(r, std::string(names[i]) + " moves the identity point");
  r.elapsed_sec = seconds_since(t0);
  return r;
}

LemmaReport check_generation(const Evaluator& ev, const CheckOptions& opt) {
  auto t0 = Clock::now();
  const GroupParams& p = ev.params();
  LemmaReport r = make_report("generation", p.m);

  if (p.m > opt.bsgs_max_m && !(opt.giant_test && p.m <= opt.giant_max_m)) {
    r.status = CheckStatus::skipped;
    r.text["skip_reason"] =
        p.m <= opt.giant_max_m
            ? "degree beyond the exact-chain policy; rerun with the giant test"
            : "degree beyond both certification policies";
    r.elapsed_sec = seconds_since(t0);
    return r;
  }

  std::vector<Perm> gens = {materialize(ev, W(ev, {AtomKind::X, AtomKind::Y})),
                            materialize(ev, W(ev, {AtomKind::X, AtomKind::Z}))};
  CertifyOptions copt;
  copt.seed = opt.seed;
  if (p.m <= opt.bsgs_max_m) {
    copt.bsgs_degree_cap = p.n;
    copt.giant_test = false;
  } else {
    copt.bsgs_degree_cap = 0;
    copt.giant_test = true;
  }
  AlternatingCert cert =
      certify_alternating(std::span<const Perm>(gens), 0, copt);
  r.text["method"] = cert.method;
  if (cert.order != 0) r.text["order"] = cert.order.get_str();
  if (cert.jordan_prime) r.data["jordan_prime"] = cert.jordan_prime;
  r.text["expected_order"] = half_factorial(p.n - 1).get_str();
  if (!cert.alternating)
    fail_with(r, "<xy, xz> is not the full alternating group on the " +
                     std::to_string(p.n - 1) + " non-fixed points");
  r.elapsed_sec = seconds_since(t0);
  return r;
}

LemmaReport check_nonnormal(const Evaluator& ev, const CheckOptions& opt) {
  auto t0 = Clock::now();
  const GroupParams& p = ev.params();
  require_quadratic_budget(p, opt, "nonnormal");
  LemmaReport r = make_report("nonnormal", p.m);

  NonnormalityWitness w = nonnormality_witness(ev);
  r.data["right_multipliers"] =
      static_cast<std::int64_t>(w.right_multipliers.count());
  r.data["conjugating_subgroup_size"] =
      static_cast<std::int64_t>(w.conjugating_preimage.count());

  IndexSet K = p.named_set("K");
  if (!(w.right_multipliers == K)) {
    if (auto d = w.right_multipliers.first_difference(K)) fail_at(r, *d, p.m);
    else fail_with(r, "1");
  }
  if (w.right_multipliers.count() != (1ull << (p.m + 5)))
    fail_with(r, "witness subgroup does not have index 2");
  r.elapsed_sec = seconds_since(t0);
  return r;
}

LemmaReport check_prop3_cases(const Evaluator& ev, const CheckOptions& opt) {
  auto t0 = Clock::now();
  const GroupParams& p = ev.params();
  LemmaReport r = make_report("prop3-cases", p.m);

  // Distinguishing invariants: a vertex-set symmetry swapping the two
  // orientation classes would force these counts to coincide.
  ActionWord yz = W(ev, {AtomKind::Y, AtomKind::Z});
  ActionWord xyxz =
      W(ev, {AtomKind::X, AtomKind::Y, AtomKind::X, AtomKind::Z});
  std::uint64_t f_yz = fixed_point_count(ev, yz, opt.threads);
  std::uint64_t f_yz2 = fixed_point_count(ev, yz.pow(2), opt.threads);
  std::uint64_t f_xyxz = fixed_point_count(ev, xyxz, opt.threads);
  std::uint64_t f_xyxz2 = fixed_point_count(ev, xyxz.pow(2), opt.threads);
  r.data["fix_yz"] = static_cast<std::int64_t>(f_yz);
  r.data["fix_yz2"] = static_cast<std::int64_t>(f_yz2);
  r.data["fix_xyxz"] = static_cast<std::int64_t>(f_xyxz);
  r.data["fix_xyxz2"] = static_cast<std::int64_t>(f_xyxz2);
  if (f_yz == f_xyxz && f_yz2 == f_xyxz2)
    fail_with(r, "fixed-point profiles of yz and xyxz coincide");

  IntersectionValues v = fix_intersection_values(ev);
  r.data["a"] = static_cast<std::int64_t>(v.a);
  r.data["b"] = static_cast<std::int64_t>(v.b);
  r.data["c"] = static_cast<std::int64_t>(v.c);
  r.data["pair_first"] = static_cast<std::int64_t>(v.pair_first);
  r.data["pair_second"] = static_cast<std::int64_t>(v.pair_second);
  if (v.a == v.b || v.a == v.c)
    fail_with(r, "items (a) and (b)/(c) do not separate");
  if (v.pair_first == v.pair_second)
    fail_with(r, "class pair is symmetric");
  r.elapsed_sec = seconds_since(t0);
  return r;
}

std::vector<LemmaReport> run_all(const Evaluator& ev,
                                 const std::vector<std::string>& selection,
                                 const CheckOptions& opt) {
  const auto& ids = all_lemma_ids();
  std::vector<std::string> wanted = selection;
  if (wanted.empty() || (wanted.size() == 1 && wanted[0] == "all"))
    wanted = ids;
  for (const std::string& id : wanted)
    if (std::find(ids.begin(), ids.end(), id) == ids.end())
      throw ParamError("unknown lemma id: " + id);

  using CheckFn = LemmaReport (*)(const Evaluator&, const CheckOptions&);
  static const std::map<std::string, CheckFn> dispatch = {
      {"orders", check_orders},
      {"alt-membership", check_alt_membership},
      {"x-inverse", check_x_inverse},
      {"ay-formula", check_ak_formula},
      {"z-involution", check_z_tables},
      {"yz-tables", check_yz_tables},
      {"fix-xyxz", check_fix_xyxz},
      {"fix-intersections", check_fix_intersections},
      {"word-set-intersection", check_word_set_intersection},
      {"mu-projection", check_mu_projection},
      {"orbit-cover", check_orbit_cover},
      {"no-stable-subset", check_no_stable_subset},
      {"subgroup-rigidity", check_subgroup_rigidity},
      {"double-coset", check_double_coset},
      {"connection-distinct", check_connection_distinct},
      {"generation", check_generation},
      {"nonnormal", check_nonnormal},
      {"prop3-cases", check_prop3_cases}};

  std::vector<LemmaReport> reports;
  for (const std::string& id : ids) {
    if (std::find(wanted.begin(), wanted.end(), id) == wanted.end()) continue;
    try {
      reports.push_back(dispatch.at(id)(ev, opt));
    } catch (const BudgetError& e) {
      LemmaReport r = make_report(id, ev.params().m);
      r.status = CheckStatus::skipped;
      r.text["skip_reason"] = e.what();
      reports.push_back(std::move(r));
    }
  }
  return reports;
}

Evaluator mutated_evaluator(const GroupParams& params, AtomKind which,
                            std::uint64_t seed) {
  if (which != AtomKind::X && which != AtomKind::Y)
    throw ParamError("only x and y support table mutation");
  Evaluator clean(params);
  std::vector<std::uint32_t> table(params.n);
  for (std::uint64_t i = 0; i < params.n; ++i)
    table[i] = clean.apply_idx(Atom{which, {}}, static_cast<std::uint32_t>(i));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(
      0, static_cast<std::uint32_t>(params.n - 1));
  std::uint32_t i = pick(rng), j = pick(rng);
  while (j == i) j = pick(rng);
  std::swap(table[i], table[j]);
  Evaluator out(params);
  if (which == AtomKind::X)
    out.override_x(std::move(table));
  else
    out.override_y(std::move(table));
  return out;
}

}  // namespace havt
