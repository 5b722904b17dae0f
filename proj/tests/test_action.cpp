#include <doctest.h>

#include <random>

#include "havt/action.hpp"

using namespace havt;

namespace {

Evaluator ev_of(const GroupParams& p) { return Evaluator(p); }

ActionWord W(unsigned m, std::initializer_list<AtomKind> kinds) {
  return ActionWord::of(m, kinds);
}

}  // namespace

TEST_CASE("x on generators") {
  GroupParams p = GroupParams::make(2);
  CHECK(apply_x(p, gen_a(2)) == gen_c(2));
  CHECK(apply_x(p, gen_b(2)) == gen_d(2));
  CHECK(apply_x(p, gen_c(2)) == elem_pow(gen_a(2), 3));
  CHECK(apply_x(p, gen_d(2)) == mul(gen_a(2), gen_b(2)));
  CHECK(apply_x(p, gen_e(1, 2)) == gen_e(1, 2));
  CHECK(apply_x(p, gen_e(2, 2)) == parse("a^2*e1*e2", 2));
  // homomorphism on a product
  CHECK(apply_x(p, mul(gen_a(2), gen_b(2))) == mul(gen_c(2), gen_d(2)));
  // odd m: e_m picks up a square
  GroupParams p3 = GroupParams::make(3);
  CHECK(apply_x(p3, gen_e(3, 3)) == parse("a^2*e3", 3));
}

TEST_CASE("x inverse on generators") {
  GroupParams p = GroupParams::make(2);
  CHECK(apply_x_inv(p, gen_a(2)) == elem_pow(gen_c(2), 3));
  CHECK(apply_x_inv(p, gen_b(2)) == mul(gen_c(2), gen_d(2)));
  CHECK(apply_x_inv(p, gen_c(2)) == gen_a(2));
  CHECK(apply_x_inv(p, gen_d(2)) == gen_b(2));
  CHECK(apply_x_inv(p, gen_e(2, 2)) == parse("c^2*e1*e2", 2));
}

TEST_CASE("x is a homomorphism and x_inv inverts it") {
  for (unsigned m : {1u, 2u, 3u, 4u}) {
    GroupParams p = GroupParams::make(m);
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<std::uint32_t> pick(0, (1u << (m + 6)) - 1);
    for (int i = 0; i < 2500; ++i) {
      HElem g = decode(pick(rng), m), h = decode(pick(rng), m);
      CHECK(apply_x(p, mul(g, h)) == mul(apply_x(p, g), apply_x(p, h)));
      CHECK(apply_x_inv(p, mul(g, h)) ==
            mul(apply_x_inv(p, g), apply_x_inv(p, h)));
    }
    for (std::uint32_t idx = 0; idx < p.n; ++idx) {
      HElem g = decode(idx, m);
      CHECK(apply_x_inv(p, apply_x(p, g)) == g);
      CHECK(apply_x(p, apply_x_inv(p, g)) == g);
    }
  }
}

TEST_CASE("phi is an involution of K and respects products") {
  for (unsigned m : {1u, 2u, 3u, 4u, 5u}) {
    GroupParams p = GroupParams::make(m);
    CHECK(apply_phi(p, elem_pow(gen_a(m), 2)) == gen_b(m));
    CHECK(apply_phi(p, gen_b(m)) == elem_pow(gen_a(m), 2));
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::uint32_t> pick(0, (1u << (m + 6)) - 1);
    int done = 0;
    while (done < 2000) {
      HElem g = decode(pick(rng), m), h = decode(pick(rng), m);
      if (!p.in_K(g) || !p.in_K(h)) continue;
      ++done;
      CHECK(apply_phi(p, mul(g, h)) == mul(apply_phi(p, g), apply_phi(p, h)));
      CHECK(apply_phi(p, apply_phi(p, g)) == g);
    }
  }
}

TEST_CASE("y on examples") {
  GroupParams p1 = GroupParams::make(1);
  CHECK(apply_y(p1, elem_pow(gen_a(1), 2)) == gen_b(1));
  // f = a b e1 for m = 1 and f^y = f c d e1 = a b c d
  CHECK(apply_y(p1, p1.f) == parse("a*b*c*d", 1));
  // y maps K onto K and fK onto fK
  for (unsigned m : {1u, 2u, 3u}) {
    GroupParams p = GroupParams::make(m);
    for (std::uint32_t idx = 0; idx < p.n; ++idx) {
      HElem g = decode(idx, m);
      CHECK(p.in_K(apply_y(p, g)) == p.in_K(g));
    }
  }
}

TEST_CASE("z fixes the identity and matches the coset formulas") {
  for (unsigned m : {1u, 2u}) {
    GroupParams p = GroupParams::make(m);
    CHECK(apply_z(p, identity_elem(m)) == identity_elem(m));
    HElem cd = mul(gen_c(m), gen_d(m));
    HElem fa2b = mul(mul(p.f, elem_pow(gen_a(m), 2)), gen_b(m));
    IndexSet cdE = p.named_set("c_d_E");
    cdE.for_each([&](std::uint64_t gi) {
      HElem g = decode(static_cast<std::uint32_t>(gi), m);
      HElem gy = apply_y(p, g);
      CHECK(apply_z(p, g) == mul(mul(cd, gy), cd));
      CHECK(apply_z(p, mul(fa2b, g)) ==
            mul(mul(mul(mul(p.f, elem_pow(gen_a(m), 2)), gy), cd), p.em_m));
    });
  }
}

TEST_CASE("closed forms agree with generator-image expansion") {
  for (unsigned m = 1; m <= 4; ++m) {
    GroupParams p = GroupParams::make(m);
    for (std::uint32_t idx = 0; idx < p.n; ++idx) {
      HElem g = decode(idx, m);
      CHECK(apply_x(p, g) == apply_x_via_images(p, g));
      CHECK(apply_x_inv(p, g) == apply_x_inv_via_images(p, g));
      CHECK(apply_y(p, g) == apply_y_via_images(p, g));
      CHECK(apply_z(p, g) == apply_z_via_images(p, g));
    }
  }
  // spot checks at larger m
  for (unsigned m : {7u, 11u}) {
    GroupParams p = GroupParams::make(m);
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<std::uint32_t> pick(
        0, static_cast<std::uint32_t>(p.n - 1));
    for (int i = 0; i < 5000; ++i) {
      HElem g = decode(pick(rng), m);
      CHECK(apply_x(p, g) == apply_x_via_images(p, g));
      CHECK(apply_x_inv(p, g) == apply_x_inv_via_images(p, g));
      CHECK(apply_y(p, g) == apply_y_via_images(p, g));
      CHECK(apply_z(p, g) == apply_z_via_images(p, g));
    }
  }
}

TEST_CASE("word evaluation") {
  unsigned m = 2;
  GroupParams p = GroupParams::make(m);
  Evaluator ev = ev_of(p);

  for (std::uint32_t idx = 0; idx < p.n; ++idx)
    CHECK(ev.eval_idx(W(m, {AtomKind::X, AtomKind::XInv}), idx) == idx);

  // (bg)^(yz) = a^2 b cd g cd on <c,d,E>
  HElem cd = mul(gen_c(m), gen_d(m));
  HElem head = mul(elem_pow(gen_a(m), 2), gen_b(m));
  p.named_set("c_d_E").for_each([&](std::uint64_t gi) {
    HElem g = decode(static_cast<std::uint32_t>(gi), m);
    CHECK(ev.eval(W(m, {AtomKind::Y, AtomKind::Z}), mul(gen_b(m), g)) ==
          mul(mul(mul(head, cd), g), cd));
  });

  HElem h1 = parse("a*c^2", m), h2 = parse("b*e2", m);
  ActionWord rr = ActionWord::right_mul(h1).then(ActionWord::right_mul(h2));
  HElem g = parse("a^3*d*e1", m);
  CHECK(ev.eval(rr, g) == mul(mul(g, h1), h2));
}

TEST_CASE("materialize, order, parity") {
  for (unsigned m = 1; m <= 4; ++m) {
    GroupParams p = GroupParams::make(m);
    Evaluator ev = ev_of(p);
    Perm px = materialize(ev, W(m, {AtomKind::X}));
    std::vector<bool> hit(p.n, false);
    for (std::uint32_t i = 0; i < p.n; ++i) hit[px[i]] = true;
    for (std::uint32_t i = 0; i < p.n; ++i) CHECK(hit[i]);

    CHECK(materialize(ev, ActionWord::empty(m)).is_identity());
    CHECK(materialize(ev, W(m, {AtomKind::Y, AtomKind::Z})).order() == 6);
    CHECK(word_order(ev, W(m, {AtomKind::X})) == 4);
    CHECK(word_order(ev, W(m, {AtomKind::Y})) == 2);
    CHECK(word_order(ev, W(m, {AtomKind::Z})) == 2);
    CHECK(word_parity(ev, W(m, {AtomKind::X})) == 1);
    CHECK(word_parity(ev, W(m, {AtomKind::Y})) == 1);
    CHECK(word_parity(ev, ActionWord::empty(m)) == 1);
  }
  // parity of right multiplications
  GroupParams p = GroupParams::make(2);
  Evaluator ev = ev_of(p);
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<std::uint32_t> pick(0, (1u << 8) - 1);
  for (int i = 0; i < 100; ++i) {
    ActionWord w = ActionWord::right_mul(decode(pick(rng), 2));
    CHECK(word_parity(ev, w) == 1);
  }
}

TEST_CASE("materialization budget") {
  GroupParams p = GroupParams::make(4);
  Evaluator ev = ev_of(p);
  EvalBudget tight;
  tight.max_points = 16;
  CHECK_THROWS_AS(materialize(ev, W(4, {AtomKind::X}), tight), BudgetError);
}

TEST_CASE("fixed points and set images") {
  for (unsigned m = 1; m <= 4; ++m) {
    GroupParams p = GroupParams::make(m);
    Evaluator ev = ev_of(p);
    ActionWord yz = W(m, {AtomKind::Y, AtomKind::Z});

    IndexSet fix = fixed_points(ev, yz);
    CHECK(fix == p.named_set("ab_c2_cd_E"));
    CHECK(fix.count() == (1ull << (m + 3)));
    CHECK(fixed_point_count(ev, yz, 2) == (1ull << (m + 3)));

    IndexSet fix2 = fixed_points(ev, yz.pow(2));
    CHECK(fix2 == p.named_set("ab_c_d_E"));
    CHECK(fix2.count() == (1ull << (m + 4)));

    IndexSet fix3 = fixed_points(ev, yz.pow(3));
    CHECK(fix3 == p.named_set("a_b_c2_cd_E"));
    CHECK(fix3.count() == (1ull << (m + 5)));

    // set images preserve size; the empty word is the identity map
    CHECK(set_image(fix, ev, ActionWord::empty(m)) == fix);
    ActionWord conj =
        W(m, {AtomKind::X, AtomKind::Y, AtomKind::Z, AtomKind::XInv});
    IndexSet img = set_image(fix, ev, conj);
    CHECK(img.count() == fix.count());
    CHECK(fix.intersection_count(img) == (1ull << (m + 3)));

    IndexSet left = set_image(fix, ev, W(m, {AtomKind::XInv}));
    IndexSet right =
        set_image(fix, ev, W(m, {AtomKind::XInv, AtomKind::Y, AtomKind::Z}));
    CHECK(left.intersection_count(right) == (1ull << (m + 1)));
  }
}

TEST_CASE("fixed count of the xyxz word per parity of m") {
  for (unsigned m = 1; m <= 6; ++m) {
    GroupParams p = GroupParams::make(m);
    Evaluator ev = ev_of(p);
    ActionWord w =
        W(m, {AtomKind::X, AtomKind::Y, AtomKind::X, AtomKind::Z});
    if (m % 2 == 0)
      CHECK(fixed_point_count(ev, w) == 3);
    else
      CHECK(fixed_point_count(ev, w.pow(2)) == 3);
  }
}

TEST_CASE("word inverse and serialization") {
  unsigned m = 2;
  GroupParams p = GroupParams::make(m);
  Evaluator ev = ev_of(p);
  ActionWord xy = W(m, {AtomKind::X, AtomKind::Y});
  Perm pm = materialize(ev, xy);
  CHECK(materialize(ev, xy.inverse()) == pm.inverse());

  ActionWord w = W(m, {AtomKind::X, AtomKind::Y, AtomKind::XInv, AtomKind::Z})
                     .then(ActionWord::right_mul(parse("a^2*b", m)));
  CHECK(w.str() == "x y X z R(a^2*b)");
  CHECK(ActionWord::empty(m).str() == "<empty>");
  ActionWord rw = ActionWord::right_mul(gen_a(m));
  CHECK(rw.inverse().str() == "R(a^3)");
}

TEST_CASE("atom overrides reroute evaluation") {
  unsigned m = 1;
  GroupParams p = GroupParams::make(m);
  Evaluator clean(p);
  std::vector<std::uint32_t> table(p.n);
  for (std::uint32_t i = 0; i < p.n; ++i)
    table[i] = clean.apply_idx(Atom{AtomKind::Y, {}}, i);
  std::swap(table[3], table[90]);

  Evaluator mutated(p);
  mutated.override_y(table);
  CHECK(mutated.has_overrides());
  int diffs = 0;
  for (std::uint32_t i = 0; i < p.n; ++i)
    if (mutated.apply_idx(Atom{AtomKind::Y, {}}, i) !=
        clean.apply_idx(Atom{AtomKind::Y, {}}, i))
      ++diffs;
  CHECK(diffs == 2);
  // z is built from y, so it inherits the corruption
  bool z_differs = false;
  for (std::uint32_t i = 0; i < p.n; ++i)
    if (mutated.apply_idx(Atom{AtomKind::Z, {}}, i) !=
        clean.apply_idx(Atom{AtomKind::Z, {}}, i))
      z_differs = true;
  CHECK(z_differs);
}

TEST_CASE("generator-image route drives an evaluator") {
  unsigned m = 3;
  GroupParams p = GroupParams::make(m);
  Evaluator fast(p, EvalRoute::closed_form);
  Evaluator slow(p, EvalRoute::generator_images);
  ActionWord w = W(m, {AtomKind::X, AtomKind::Y, AtomKind::Z, AtomKind::XInv});
  for (std::uint32_t i = 0; i < p.n; ++i)
    CHECK(fast.eval_idx(w, i) == slow.eval_idx(w, i));
}
