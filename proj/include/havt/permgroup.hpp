#ifndef HAVT_PERMGROUP_HPP
#define HAVT_PERMGROUP_HPP

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "havt/action.hpp"

namespace havt {

struct OrbitPartition {
  std::vector<std::uint32_t> orbit_id;        // per point
  std::vector<std::uint32_t> orbit_size;      // per orbit
  std::vector<std::uint32_t> representative;  // smallest point per orbit
  std::uint32_t num_orbits() const {
    return static_cast<std::uint32_t>(orbit_size.size());
  }
};

OrbitPartition orbits(std::span<const Perm> gens, std::uint64_t degree);

std::vector<std::uint32_t> orbit_of(std::span<const Perm> gens,
                                    std::uint32_t start);

struct BlockSystem {
  std::vector<std::int32_t> block_of;  // -1 for points outside the domain
  std::uint32_t num_blocks = 0;
  std::uint32_t domain_size = 0;
  /// One block covering the whole domain.
  bool trivial() const { return num_blocks == 1; }
};

/// Minimal block system of the action on the orbit of `alpha` whose block
/// containing `alpha` also contains `beta`. Throws if `beta` lies outside
/// the orbit of `alpha` (intransitive seed).
BlockSystem minimal_blocks(std::span<const Perm> gens, std::uint32_t alpha,
                           std::uint32_t beta);

/// True when every seed pair (domain[0], beta) collapses to the one-block
/// system. Requires the action to be transitive on `domain`.
bool is_primitive(std::span<const Perm> gens,
                  const std::vector<std::uint32_t>& domain);

struct BSGSOptions {
  std::uint64_t max_degree = 1ull << 10;
  bool accelerate = true;  // random pre-seeding; the deterministic pass
                           // still verifies every Schreier generator
  std::uint64_t seed = 0x9a3c6e1785b24df0ull;
};

/// Base, strong generating set and explicit transversals. `order` is the
/// product of the fundamental orbit lengths; on completion every Schreier
/// generator has been sifted to the identity, so the product is exact.
class BSGSChain {
 public:
  std::uint64_t degree() const { return degree_; }
  const std::vector<std::uint32_t>& base() const { return base_; }
  const std::vector<Perm>& strong_generators() const { return pool_; }
  const mpz_class& order() const { return order_; }
  std::vector<std::uint32_t> fundamental_orbit_lengths() const;

  bool contains(const Perm& p) const;

 private:
  friend BSGSChain schreier_sims(std::span<const Perm>, std::uint64_t,
                                 const BSGSOptions&);
  struct Level {
    std::uint32_t beta = 0;
    std::vector<std::uint32_t> orbit;                      // discovery order
    std::vector<std::int32_t> pos;                         // point -> orbit slot
    std::vector<std::vector<std::uint32_t>> transversal;   // beta^u = point
    std::vector<std::vector<std::uint32_t>> transversal_inv;
  };
  std::uint64_t degree_ = 0;
  std::vector<std::uint32_t> base_;
  std::vector<Perm> pool_;
  std::vector<Level> levels_;
  mpz_class order_ = 1;
};

BSGSChain schreier_sims(std::span<const Perm> gens, std::uint64_t degree,
                        const BSGSOptions& opts = {});

inline bool is_member(const BSGSChain& chain, const Perm& p) {
  return chain.contains(p);
}

struct AlternatingCert {
  bool alternating = false;
  std::string method;  // bsgs-exact | jordan | parity | orbit | blocks
  mpz_class order = 0; // exact order when the chain route ran, else the
                       // certified alternating order
  unsigned jordan_prime = 0;
};

struct CertifyOptions {
  std::uint64_t bsgs_degree_cap = 1ull << 8;
  bool giant_test = false;
  std::uint64_t seed = 0x9a3c6e1785b24df0ull;
  unsigned max_random_words = 4096;
};

/// Decides whether <gens> equals the full alternating group on the points
/// other than `fixed`. Every generator must fix `fixed`. The exact-chain
/// route runs up to the degree cap; past it the Jordan route (transitive +
/// primitive + a prime cycle of length p <= N-3) runs when enabled.
AlternatingCert certify_alternating(std::span<const Perm> gens,
                                    std::uint32_t fixed,
                                    const CertifyOptions& opts = {});

mpz_class factorial(std::uint64_t k);
mpz_class half_factorial(std::uint64_t k);  // k!/2

}  // namespace havt

#endif
