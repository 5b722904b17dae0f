#include <doctest.h>

#include "havt/permgroup.hpp"

using namespace havt;

namespace {

struct Fixture {
  GroupParams p;
  Evaluator ev;
  Perm xy, xz;
  explicit Fixture(unsigned m)
      : p(GroupParams::make(m)),
        ev(p),
        xy(materialize(ev, ActionWord::of(m, {AtomKind::X, AtomKind::Y}))),
        xz(materialize(ev, ActionWord::of(m, {AtomKind::X, AtomKind::Z}))) {}
};

Perm right_mul_perm(const GroupParams& p, const HElem& h) {
  std::vector<std::uint32_t> img(p.n);
  for (std::uint32_t u = 0; u < p.n; ++u)
    img[u] = encode(mul(decode(u, p.m), h));
  return Perm(std::move(img));
}

}  // namespace

TEST_CASE("orbit structure of <xy, xz>") {
  Fixture f(1);
  std::vector<Perm> gens = {f.xy, f.xz};
  OrbitPartition part = orbits(gens, f.p.n);
  CHECK(part.num_orbits() == 2);
  CHECK(part.orbit_size[part.orbit_id[0]] == 1);  // the identity point
  CHECK(part.orbit_size[1 - part.orbit_id[0]] == 127);
}

TEST_CASE("orbits of degenerate generator sets") {
  GroupParams p = GroupParams::make(1);
  OrbitPartition none = orbits({}, p.n);
  CHECK(none.num_orbits() == p.n);

  Perm ra = right_mul_perm(p, gen_a(1));
  std::vector<Perm> gens = {ra};
  OrbitPartition part = orbits(gens, p.n);
  CHECK(part.orbit_size[part.orbit_id[0]] == 4);  // {1, a, a^2, a^3}
  // singleton orbits are exactly the points fixed by all generators
  for (std::uint32_t v = 0; v < p.n; ++v)
    CHECK((part.orbit_size[part.orbit_id[v]] == 1) == (ra[v] == v));
}

TEST_CASE("minimal blocks of a cyclic right multiplication") {
  GroupParams p = GroupParams::make(1);
  Perm ra = right_mul_perm(p, gen_a(1));
  std::vector<Perm> gens = {ra};
  // within the orbit {1, a, a^2, a^3}, the pair (1, a^2) generates a
  // 2-block system
  BlockSystem sys = minimal_blocks(gens, 0, encode(elem_pow(gen_a(1), 2)));
  CHECK(sys.domain_size == 4);
  CHECK(sys.num_blocks == 2);
  CHECK(sys.block_of[0] == sys.block_of[encode(elem_pow(gen_a(1), 2))]);
  // block size divides the group order
  CHECK(sys.domain_size % sys.num_blocks == 0);

  CHECK_THROWS_AS(minimal_blocks(gens, 0, encode(gen_b(1))), ParamError);
}

TEST_CASE("<R(H), xy> is primitive for m=1") {
  Fixture f(1);
  std::vector<Perm> gens;
  gens.push_back(f.xy);
  gens.push_back(right_mul_perm(f.p, gen_a(1)));
  gens.push_back(right_mul_perm(f.p, gen_b(1)));
  gens.push_back(right_mul_perm(f.p, gen_c(1)));
  gens.push_back(right_mul_perm(f.p, gen_d(1)));
  gens.push_back(right_mul_perm(f.p, gen_e(1, 1)));
  for (std::uint32_t beta = 1; beta < f.p.n; ++beta)
    CHECK(minimal_blocks(gens, 0, beta).trivial());
  std::vector<std::uint32_t> domain(f.p.n);
  for (std::uint32_t i = 0; i < f.p.n; ++i) domain[i] = i;
  CHECK(is_primitive(gens, domain));
}

TEST_CASE("schreier_sims on small groups") {
  GroupParams p = GroupParams::make(1);
  Perm ra = right_mul_perm(p, gen_a(1));
  std::vector<Perm> cyclic = {ra};
  BSGSChain chain = schreier_sims(cyclic, p.n);
  CHECK(chain.order() == 4);
  CHECK(chain.contains(ra));
  CHECK(chain.contains(ra.then(ra)));
  CHECK(chain.contains(Perm::identity(p.n)));
  CHECK_FALSE(chain.contains(right_mul_perm(p, gen_b(1))));

  std::vector<Perm> empty;
  CHECK(schreier_sims(empty, 16).order() == 1);
}

TEST_CASE("chain order is invariant under generator shuffling") {
  GroupParams p = GroupParams::make(1);
  std::vector<Perm> gens = {right_mul_perm(p, gen_a(1)),
                            right_mul_perm(p, gen_b(1)),
                            right_mul_perm(p, gen_e(1, 1))};
  mpz_class o1 = schreier_sims(gens, p.n).order();
  std::swap(gens[0], gens[2]);
  std::swap(gens[0], gens[1]);
  mpz_class o2 = schreier_sims(gens, p.n).order();
  CHECK(o1 == o2);
  CHECK(o1 == 16);  // <a> x <b> x <e1> acting regularly on itself
}

TEST_CASE("degree budget is enforced") {
  GroupParams p = GroupParams::make(1);
  std::vector<Perm> gens = {right_mul_perm(p, gen_a(1))};
  BSGSOptions opts;
  opts.max_degree = 64;
  CHECK_THROWS_AS(schreier_sims(gens, p.n, opts), BudgetError);
}

TEST_CASE("chain certifies <xy,xz> = Alt on the non-fixed points, m=1") {
  Fixture f(1);
  std::vector<Perm> gens = {f.xy, f.xz};
  BSGSChain chain = schreier_sims(gens, f.p.n);
  // independent oracle: 127!/2 by direct big-integer product
  mpz_class want = 1;
  for (unsigned k = 2; k <= 127; ++k) want *= k;
  want /= 2;
  CHECK(chain.order() == want);
  CHECK(chain.order() == half_factorial(127));

  // membership in the certified chain
  Perm yz = f.xy.inverse().then(f.xz);
  CHECK(chain.contains(yz));
  CHECK(is_member(chain, Perm::identity(f.p.n)));
}

TEST_CASE("certify_alternating routes") {
  Fixture f(1);
  std::vector<Perm> gens = {f.xy, f.xz};

  CertifyOptions bsgs_route;
  bsgs_route.bsgs_degree_cap = f.p.n;
  AlternatingCert cert = certify_alternating(gens, 0, bsgs_route);
  CHECK(cert.alternating);
  CHECK(cert.method == "bsgs-exact");
  CHECK(cert.order == half_factorial(127));

  CertifyOptions jordan_route;
  jordan_route.bsgs_degree_cap = 0;
  jordan_route.giant_test = true;
  AlternatingCert jcert = certify_alternating(gens, 0, jordan_route);
  CHECK(jcert.alternating);
  CHECK(jcert.method == "jordan");
  CHECK(jcert.jordan_prime > 63);
  CHECK(jcert.jordan_prime <= 124);
  CHECK(jcert.order == half_factorial(127));

  // a cyclic group that fixes the identity point is not the full
  // alternating group: transitivity already fails
  std::vector<Perm> small = {f.xy};
  AlternatingCert neg = certify_alternating(small, 0, bsgs_route);
  CHECK_FALSE(neg.alternating);

  // generators must fix the distinguished point
  std::vector<Perm> moving = {right_mul_perm(f.p, gen_a(1))};
  CHECK_THROWS_AS(certify_alternating(moving, 0, bsgs_route), ParamError);

  // budget exceeded without the giant flag
  CertifyOptions capped;
  capped.bsgs_degree_cap = 16;
  capped.giant_test = false;
  CHECK_THROWS_AS(certify_alternating(gens, 0, capped), BudgetError);
}

TEST_CASE("half_factorial matches gmp factorial") {
  CHECK(half_factorial(5) == 60);
  CHECK(factorial(10) == 3628800);
  CHECK(half_factorial(127) == factorial(127) / 2);
}
