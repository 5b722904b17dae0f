#ifndef HAVT_GROUP_HPP
#define HAVT_GROUP_HPP

#include <cstdint>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "havt/bitset.hpp"

namespace havt {

// Exact arithmetic on H = <a,b | a^4 = b^2 = (ab)^2 = 1>
//                       x <c,d | c^4 = d^2 = (cd)^2 = 1>
//                       x <e_1> x ... x <e_m>,
// i.e. D8 x D8 x C2^m, with |H| = 2^(m+6).
//
// Every element has a unique normal form a^i b^j c^k d^l e, encoded as the
// index  i + 4j + 8k + 32l + 64*e  with bit t-1 of e the exponent of e_t.

class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HElem {
  std::uint8_t a = 0;   // exponent of a, mod 4
  std::uint8_t b = 0;   // exponent of b, mod 2
  std::uint8_t c = 0;   // exponent of c, mod 4
  std::uint8_t d = 0;   // exponent of d, mod 2
  std::uint32_t e = 0;  // bit t-1 = exponent of e_t
  std::uint8_t m = 1;   // number of e generators, shared by all factors

  friend bool operator==(const HElem&, const HElem&) = default;
};

constexpr unsigned kMaxM = 24;  // keeps indices within 32 bits with headroom

HElem identity_elem(unsigned m);
HElem gen_a(unsigned m);
HElem gen_b(unsigned m);
HElem gen_c(unsigned m);
HElem gen_d(unsigned m);
/// e_t; by convention e_t = identity for t <= 0.
HElem gen_e(int t, unsigned m);

HElem mul(const HElem& g, const HElem& h);
HElem inv(const HElem& g);
HElem elem_pow(const HElem& g, int k);

std::uint32_t encode(const HElem& g);
HElem decode(std::uint32_t idx, unsigned m);

/// Grammar: "1", or '*'-separated factors a|b|c|d|e<t>, each with an
/// optional ^<int>; factors multiply left to right.
HElem parse(std::string_view text, unsigned m);
/// Canonical form: a-power, b, c-power, d, e's ascending; identity is "1".
std::string render(const HElem& g);

/// Subgroup generated by `gens`, as a bit set over the index space.
IndexSet closure(const std::vector<HElem>& gens, unsigned m);

/// Generating set plus lazily computed element set.
class SubgroupSpec {
 public:
  SubgroupSpec(std::vector<HElem> gens, unsigned m)
      : gens_(std::move(gens)), m_(m) {}

  const std::vector<HElem>& generators() const { return gens_; }
  unsigned m() const { return m_; }

  const IndexSet& elements() const {
    std::call_once(once_, [this] { set_ = closure(gens_, m_); });
    return *set_;
  }

 private:
  std::vector<HElem> gens_;
  unsigned m_;
  mutable std::once_flag once_;
  mutable std::optional<IndexSet> set_;
};

/// The integer m plus everything derived from it that the rest of the
/// suite needs: the point count, the distinguished elements f and e_m^m,
/// per-generator image data for the automorphisms x, x^-1 and phi, and
/// the named subgroups and cosets.
struct GroupParams {
  unsigned m = 1;
  std::uint64_t n = 0;  // 2^(m+6)

  HElem f;         // ab * e1 e3 e5 ...   (odd-indexed e's up to m)
  HElem em_m;      // e_m when m is odd, identity when m is even
  HElem f_cd_emm;  // f*c*d*e_m^m, the fixed right factor of z

  // masks over e-bit positions (bit t-1 <-> e_t)
  std::uint32_t e_mask = 0;        // m low bits
  std::uint32_t even_t_mask = 0;   // bits of even t
  std::uint32_t central_mask = 0;  // e-bits whose x-image carries a square

  // generator images, used by the generator-expansion evaluators
  std::vector<HElem> x_e_img;     // [t] = image of e_t under x, 1-based
  std::vector<HElem> xinv_e_img;  // [t] = image of e_t under x^-1
  std::vector<HElem> phi_e_img;   // [t] = image of e_t under phi

  // image of e_t under phi as a plain e-bit mask (phi fixes E setwise)
  std::vector<std::uint32_t> phi_e_bits;

  static GroupParams make(unsigned m);

  bool in_K(const HElem& g) const { return g.a % 2 == 0; }

  /// Known set names: K, E, V, c2_E, c_d_E, ab_c2_cd_E, ab_c_d_E,
  /// a_b_c2_cd_E, coset_abcdE, coset_cdE.
  static const std::vector<std::string>& named_set_names();
  std::vector<HElem> generators_of(std::string_view name) const;
  IndexSet named_set(std::string_view name) const;
};

}  // namespace havt

#endif
