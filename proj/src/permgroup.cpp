#include "havt/permgroup.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>

namespace havt {

OrbitPartition orbits(std::span<const Perm> gens, std::uint64_t degree) {
  for (const Perm& g : gens)
    if (g.degree() != degree) throw ParamError("generator degree mismatch");
  OrbitPartition part;
  part.orbit_id.assign(degree, ~0u);
  std::deque<std::uint32_t> queue;
  for (std::uint32_t s = 0; s < degree; ++s) {
    if (part.orbit_id[s] != ~0u) continue;
    std::uint32_t id = part.num_orbits();
    part.representative.push_back(s);
    part.orbit_size.push_back(0);
    part.orbit_id[s] = id;
    queue.push_back(s);
    while (!queue.empty()) {
      std::uint32_t v = queue.front();
      queue.pop_front();
      ++part.orbit_size[id];
      for (const Perm& g : gens) {
        std::uint32_t w = g[v];
        if (part.orbit_id[w] == ~0u) {
          part.orbit_id[w] = id;
          queue.push_back(w);
        }
      }
    }
  }
  return part;
}

std::vector<std::uint32_t> orbit_of(std::span<const Perm> gens,
                                    std::uint32_t start) {
  std::vector<std::uint32_t> orbit{start};
  if (gens.empty()) return orbit;
  std::vector<bool> seen(gens.front().degree(), false);
  seen[start] = true;
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (const Perm& g : gens) {
      std::uint32_t w = g[orbit[i]];
      if (!seen[w]) {
        seen[w] = true;
        orbit.push_back(w);
      }
    }
  }
  return orbit;
}

namespace {

struct DSU {
  std::vector<std::uint32_t> parent;
  explicit DSU(std::uint64_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  // returns {kept root, absorbed root} or nothing when already joined
  std::optional<std::pair<std::uint32_t, std::uint32_t>> unite(
      std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return std::nullopt;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return std::make_pair(a, b);
  }
};

}  // namespace

BlockSystem minimal_blocks(std::span<const Perm> gens, std::uint32_t alpha,
                           std::uint32_t beta) {
  if (gens.empty()) throw ParamError("minimal_blocks needs generators");
  const std::uint64_t degree = gens.front().degree();
  if (alpha == beta) throw ParamError("seed points must differ");
  std::vector<std::uint32_t> domain = orbit_of(gens, alpha);
  std::vector<bool> in_domain(degree, false);
  for (auto v : domain) in_domain[v] = true;
  if (!in_domain[beta])
    throw ParamError("seed points lie in different orbits (intransitive)");

  DSU dsu(degree);
  std::deque<std::pair<std::uint32_t, std::uint32_t>> queue;
  dsu.unite(alpha, beta);
  queue.emplace_back(alpha, beta);
  while (!queue.empty()) {
    auto [u, v] = queue.front();
    queue.pop_front();
    for (const Perm& g : gens) {
      if (auto merged = dsu.unite(g[u], g[v])) queue.push_back(*merged);
    }
  }

  BlockSystem sys;
  sys.block_of.assign(degree, -1);
  sys.domain_size = static_cast<std::uint32_t>(domain.size());
  std::vector<std::int32_t> label(degree, -1);
  for (auto v : domain) {
    std::uint32_t r = dsu.find(v);
    if (label[r] < 0) label[r] = static_cast<std::int32_t>(sys.num_blocks++);
    sys.block_of[v] = label[r];
  }
  return sys;
}

bool is_primitive(std::span<const Perm> gens,
                  const std::vector<std::uint32_t>& domain) {
  if (domain.size() < 2) return true;
  std::vector<std::uint32_t> orb = orbit_of(gens, domain[0]);
  if (orb.size() != domain.size())
    throw ParamError("action is not transitive on the given domain");
  for (std::size_t i = 1; i < domain.size(); ++i) {
    if (!minimal_blocks(gens, domain[0], domain[i]).trivial()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Schreier-Sims

namespace {

using Images = std::vector<std::uint32_t>;

std::uint32_t first_moved(const Images& p) {
  for (std::uint32_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return i;
  return static_cast<std::uint32_t>(p.size());
}

struct LevelBuild {
  std::uint32_t beta = 0;
  std::vector<std::uint32_t> gen_ids;
  std::vector<std::uint32_t> orbit;
  std::vector<std::int32_t> pos;
  std::vector<Images> transversal;
  std::vector<Images> transversal_inv;
  // unprocessed (orbit slot, slot into gen_ids) pairs
  std::deque<std::pair<std::uint32_t, std::uint32_t>> pending;
};

class ChainBuilder {
 public:
  ChainBuilder(std::uint64_t degree) : degree_(degree) {}

  std::vector<Images> pool;
  std::vector<LevelBuild> levels;

  void add_level(std::uint32_t beta) {
    LevelBuild lv;
    lv.beta = beta;
    lv.pos.assign(degree_, -1);
    lv.pos[beta] = 0;
    lv.orbit.push_back(beta);
    Images id(degree_);
    std::iota(id.begin(), id.end(), 0u);
    lv.transversal.push_back(id);
    lv.transversal_inv.push_back(std::move(id));
    levels.push_back(std::move(lv));
  }

  void add_gen_to_level(std::size_t t, std::uint32_t gen_id) {
    LevelBuild& lv = levels[t];
    std::uint32_t slot = static_cast<std::uint32_t>(lv.gen_ids.size());
    lv.gen_ids.push_back(gen_id);
    for (std::uint32_t op = 0; op < lv.orbit.size(); ++op)
      lv.pending.emplace_back(op, slot);
  }

  // Reduces `h` through levels [from, ...). Returns the level where the
  // reduction stopped; on full reduction to the identity returns nothing.
  std::optional<std::size_t> sift(Images& h, std::size_t from) {
    scratch_.resize(degree_);
    for (std::size_t t = from; t < levels.size(); ++t) {
      const LevelBuild& lv = levels[t];
      std::uint32_t p = h[lv.beta];
      if (lv.pos[p] < 0) return t;
      const Images& u_inv = lv.transversal_inv[lv.pos[p]];
      for (std::uint64_t i = 0; i < degree_; ++i) scratch_[i] = u_inv[h[i]];
      h.swap(scratch_);
    }
    if (first_moved(h) < degree_) return levels.size();
    return std::nullopt;
  }

  // Sifts `h` and, if a nontrivial residue remains, installs it as a new
  // strong generator on levels [from, stop]. Returns true when something
  // was added.
  bool insert(Images h, std::size_t from) {
    auto stop = sift(h, from);
    if (!stop) return false;
    if (*stop == levels.size()) add_level(first_moved(h));
    std::uint32_t id = static_cast<std::uint32_t>(pool.size());
    pool.push_back(std::move(h));
    for (std::size_t t = from; t <= *stop; ++t) add_gen_to_level(t, id);
    return true;
  }

  // Processes one pending pair of the given level: either extends the
  // fundamental orbit or sifts the pair's Schreier generator. Returns the
  // deeper level to revisit when a strong generator was installed.
  std::optional<std::size_t> step(std::size_t t) {
    LevelBuild& lv = levels[t];
    auto [op, gp] = lv.pending.front();
    const Images& s = pool[lv.gen_ids[gp]];
    std::uint32_t p = lv.orbit[op];
    std::uint32_t q = s[p];
    if (lv.pos[q] < 0) {
      // new orbit point; its transversal element makes the pair trivial
      const Images& u_p = lv.transversal[op];
      Images u_q(degree_), u_q_inv(degree_);
      for (std::uint64_t i = 0; i < degree_; ++i) u_q[i] = s[u_p[i]];
      for (std::uint64_t i = 0; i < degree_; ++i) u_q_inv[u_q[i]] = static_cast<std::uint32_t>(i);
      lv.pos[q] = static_cast<std::int32_t>(lv.orbit.size());
      lv.orbit.push_back(q);
      lv.transversal.push_back(std::move(u_q));
      lv.transversal_inv.push_back(std::move(u_q_inv));
      std::uint32_t nop = static_cast<std::uint32_t>(lv.orbit.size() - 1);
      for (std::uint32_t g = 0; g < lv.gen_ids.size(); ++g)
        lv.pending.emplace_back(nop, g);
      lv.pending.pop_front();
      return std::nullopt;
    }
    // Schreier generator u_p * s * u_q^-1
    const Images& u_p = lv.transversal[op];
    const Images& u_q_inv = lv.transversal_inv[lv.pos[q]];
    Images sg(degree_);
    bool trivial = true;
    for (std::uint64_t i = 0; i < degree_; ++i) {
      sg[i] = u_q_inv[s[u_p[i]]];
      if (sg[i] != i) trivial = false;
    }
    if (trivial) {
      lv.pending.pop_front();
      return std::nullopt;
    }
    if (insert(std::move(sg), t + 1)) {
      // leave the pair queued; it is re-verified once deeper levels settle
      return levels.size() - 1;
    }
    lv.pending.pop_front();
    return std::nullopt;
  }

  std::uint64_t degree() const { return degree_; }

 private:
  std::uint64_t degree_;
  Images scratch_;
};

}  // namespace

BSGSChain schreier_sims(std::span<const Perm> gens, std::uint64_t degree,
                        const BSGSOptions& opts) {
  if (degree > opts.max_degree)
    throw BudgetError("degree " + std::to_string(degree) +
                      " exceeds the chain budget " +
                      std::to_string(opts.max_degree) +
                      "; consider the giant certification path");
  for (const Perm& g : gens)
    if (g.degree() != degree) throw ParamError("generator degree mismatch");

  ChainBuilder b(degree);
  for (const Perm& g : gens)
    if (!g.is_identity()) b.insert(g.images(), 0);

  if (opts.accelerate && !b.pool.empty()) {
    // Random subproducts reach deep stabilizers early, which keeps the
    // verification loop from rebuilding levels over and over. Everything
    // they add is still verified below.
    std::mt19937_64 rng(opts.seed);
    unsigned clean_streak = 0;
    for (unsigned round = 0; round < 512 && clean_streak < 16; ++round) {
      std::uniform_int_distribution<std::size_t> pick(0, b.pool.size() - 1);
      std::uniform_int_distribution<int> len_dist(8, 24);
      Images prod(degree);
      std::iota(prod.begin(), prod.end(), 0u);
      int len = len_dist(rng);
      for (int i = 0; i < len; ++i) {
        const Images& s = b.pool[pick(rng)];
        for (std::uint64_t j = 0; j < degree; ++j) prod[j] = s[prod[j]];
      }
      if (b.insert(std::move(prod), 0))
        clean_streak = 0;
      else
        ++clean_streak;
    }
  }

  // Deterministic completion: drain pending pairs deepest-first so sifts
  // run against settled lower levels.
  while (true) {
    std::size_t t = b.levels.size();
    for (std::size_t i = b.levels.size(); i-- > 0;) {
      if (!b.levels[i].pending.empty()) {
        t = i;
        break;
      }
    }
    if (t == b.levels.size()) break;
    while (t < b.levels.size() && !b.levels[t].pending.empty()) {
      if (auto deeper = b.step(t)) t = *deeper;
    }
  }

  BSGSChain chain;
  chain.degree_ = degree;
  chain.order_ = 1;
  for (auto& lv : b.levels) {
    chain.base_.push_back(lv.beta);
    chain.order_ *= static_cast<unsigned long>(lv.orbit.size());
    BSGSChain::Level out;
    out.beta = lv.beta;
    out.orbit = std::move(lv.orbit);
    out.pos = std::move(lv.pos);
    out.transversal = std::move(lv.transversal);
    out.transversal_inv = std::move(lv.transversal_inv);
    chain.levels_.push_back(std::move(out));
  }
  for (auto& img : b.pool) chain.pool_.emplace_back(std::move(img));
  // Completion invariant: every strong generator must sift to the identity.
  for (const Perm& g : chain.pool_)
    if (!chain.contains(g))
      throw std::logic_error("chain completion invariant violated");
  return chain;
}

std::vector<std::uint32_t> BSGSChain::fundamental_orbit_lengths() const {
  std::vector<std::uint32_t> lens;
  for (const Level& lv : levels_)
    lens.push_back(static_cast<std::uint32_t>(lv.orbit.size()));
  return lens;
}

bool BSGSChain::contains(const Perm& p) const {
  if (p.degree() != degree_) throw ParamError("degree mismatch");
  std::vector<std::uint32_t> cur = p.images();
  std::vector<std::uint32_t> next(degree_);
  for (const Level& lv : levels_) {
    std::uint32_t q = cur[lv.beta];
    if (lv.pos[q] < 0) return false;
    const auto& u_inv = lv.transversal_inv[lv.pos[q]];
    for (std::uint64_t i = 0; i < degree_; ++i) next[i] = u_inv[cur[i]];
    std::swap(cur, next);
  }
  for (std::uint32_t i = 0; i < degree_; ++i)
    if (cur[i] != i) return false;
  return true;
}

// ---------------------------------------------------------------------------
// alternating-group certification

mpz_class factorial(std::uint64_t k) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

mpz_class half_factorial(std::uint64_t k) { return factorial(k) / 2; }

namespace {

void prime_factor_exponents(std::uint64_t x, std::vector<unsigned>& out_primes,
                            std::vector<unsigned>& out_exps) {
  for (std::uint64_t q = 2; q * q <= x; ++q) {
    if (x % q) continue;
    unsigned e = 0;
    while (x % q == 0) {
      x /= q;
      ++e;
    }
    out_primes.push_back(static_cast<unsigned>(q));
    out_exps.push_back(e);
  }
  if (x > 1) {
    out_primes.push_back(static_cast<unsigned>(x));
    out_exps.push_back(1);
  }
}

bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t q = 2; q * q <= x; ++q)
    if (x % q == 0) return false;
  return true;
}

}  // namespace

AlternatingCert certify_alternating(std::span<const Perm> gens,
                                    std::uint32_t fixed,
                                    const CertifyOptions& opts) {
  if (gens.empty()) throw ParamError("certify_alternating needs generators");
  const std::uint64_t degree = gens.front().degree();
  for (const Perm& g : gens) {
    if (g.degree() != degree) throw ParamError("generator degree mismatch");
    if (g[fixed] != fixed)
      throw ParamError("generator does not fix the required point");
  }
  AlternatingCert cert;
  for (const Perm& g : gens) {
    if (g.sign() != 1) {
      cert.method = "parity";  // an odd generator rules the claim out
      return cert;
    }
  }
  const std::uint64_t n_moved = degree - 1;

  // transitivity on the points other than `fixed` is necessary
  std::uint32_t start = (fixed == 0) ? 1 : 0;
  if (orbit_of(gens, start).size() != n_moved) {
    cert.method = "orbit";
    return cert;
  }

  if (degree <= opts.bsgs_degree_cap) {
    BSGSOptions bo;
    bo.max_degree = degree;
    BSGSChain chain = schreier_sims(gens, degree, bo);
    cert.order = chain.order();
    cert.method = "bsgs-exact";
    cert.alternating = (cert.order == half_factorial(n_moved));
    return cert;
  }
  if (!opts.giant_test)
    throw BudgetError("degree " + std::to_string(degree) +
                      " exceeds the exact-chain cap; enable the giant test");

  std::vector<std::uint32_t> domain;
  for (std::uint32_t v = 0; v < degree; ++v)
    if (v != fixed) domain.push_back(v);
  if (!is_primitive(gens, domain)) {
    cert.method = "blocks";
    return cert;
  }

  // Hunt for an element with a prime cycle of length p in (N/2, N-3]; its
  // power by the lcm of the remaining cycle lengths is a p-cycle, and a
  // primitive group containing a p-cycle with p <= N-3 contains Alt(N).
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  for (unsigned attempt = 0; attempt < opts.max_random_words; ++attempt) {
    Perm g = gens[pick(rng)];
    int len = 8 + static_cast<int>(attempt % 24);
    for (int i = 0; i < len; ++i) g = g.then(gens[pick(rng)]);

    std::vector<std::uint64_t> lengths = g.cycle_lengths();
    std::uint64_t p = 0;
    for (std::uint64_t L : lengths)
      if (L > n_moved / 2 && L <= n_moved - 3 && is_prime(L)) p = L;
    if (p == 0) continue;

    // exponent = lcm of all other cycle lengths, as a prime-power table
    std::vector<unsigned> primes, exps;
    for (std::uint64_t L : lengths) {
      if (L == p) continue;
      std::vector<unsigned> qs, es;
      prime_factor_exponents(L, qs, es);
      for (std::size_t i = 0; i < qs.size(); ++i) {
        bool found = false;
        for (std::size_t j = 0; j < primes.size(); ++j) {
          if (primes[j] == qs[i]) {
            exps[j] = std::max(exps[j], es[i]);
            found = true;
          }
        }
        if (!found) {
          primes.push_back(qs[i]);
          exps.push_back(es[i]);
        }
      }
    }
    Perm h = g;
    for (std::size_t j = 0; j < primes.size(); ++j) {
      std::uint64_t q_pow = 1;
      for (unsigned e = 0; e < exps[j]; ++e) q_pow *= primes[j];
      Perm base = h;
      h = Perm::identity(degree);
      // h := base^(q^e) by repeated squaring over the small exponent
      std::uint64_t e = q_pow;
      Perm sq = base;
      while (e) {
        if (e & 1) h = h.then(sq);
        sq = sq.then(sq);
        e >>= 1;
      }
    }
    // verify the power is exactly a p-cycle
    std::uint64_t moved = 0;
    for (std::uint32_t v = 0; v < degree; ++v)
      if (h[v] != v) ++moved;
    if (moved != p) continue;
    std::uint32_t v0 = first_moved(h.images());
    std::uint64_t steps = 0;
    std::uint32_t v = v0;
    do {
      v = h[v];
      ++steps;
    } while (v != v0 && steps <= p);
    if (steps != p) continue;

    cert.alternating = true;
    cert.method = "jordan";
    cert.jordan_prime = static_cast<unsigned>(p);
    cert.order = half_factorial(n_moved);
    return cert;
  }
  throw std::runtime_error(
      "giant test exhausted its random-word budget without a witness");
}

}  // namespace havt
