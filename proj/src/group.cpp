#include "havt/group.hpp"

#include <cctype>
#include <charconv>
#include <deque>

namespace havt {

namespace {

void require_same_m(const HElem& g, const HElem& h) {
  if (g.m != h.m)
    throw ParamError("elements from different groups (m=" +
                     std::to_string(g.m) + " vs m=" + std::to_string(h.m) +
                     ")");
}

void require_m(unsigned m) {
  if (m < 1 || m > kMaxM)
    throw ParamError("m must be in [1, " + std::to_string(kMaxM) + "]");
}

}  // namespace

HElem identity_elem(unsigned m) {
  require_m(m);
  HElem g;
  g.m = static_cast<std::uint8_t>(m);
  return g;
}

HElem gen_a(unsigned m) {
  HElem g = identity_elem(m);
  g.a = 1;
  return g;
}

HElem gen_b(unsigned m) {
  HElem g = identity_elem(m);
  g.b = 1;
  return g;
}

HElem gen_c(unsigned m) {
  HElem g = identity_elem(m);
  g.c = 1;
  return g;
}

HElem gen_d(unsigned m) {
  HElem g = identity_elem(m);
  g.d = 1;
  return g;
}

HElem gen_e(int t, unsigned m) {
  HElem g = identity_elem(m);
  if (t <= 0) return g;  // e_t = 1 for t <= 0
  if (static_cast<unsigned>(t) > m)
    throw ParamError("e_" + std::to_string(t) + " does not exist for m=" +
                     std::to_string(m));
  g.e = 1u << (t - 1);
  return g;
}

// In each dihedral factor, y x = x^-1 y for the order-4 generator x and the
// involution y, so exponents compose as  i' = i1 + (-1)^j1 i2 (mod 4).
HElem mul(const HElem& g, const HElem& h) {
  require_same_m(g, h);
  HElem r;
  r.m = g.m;
  r.a = static_cast<std::uint8_t>((g.a + (g.b ? 4 - h.a : h.a)) & 3);
  r.b = g.b ^ h.b;
  r.c = static_cast<std::uint8_t>((g.c + (g.d ? 4 - h.c : h.c)) & 3);
  r.d = g.d ^ h.d;
  r.e = g.e ^ h.e;
  return r;
}

HElem inv(const HElem& g) {
  HElem r = g;
  // a^i b and c^k d are involutions; otherwise negate the rotation part
  r.a = static_cast<std::uint8_t>(g.b ? g.a : (4 - g.a) & 3);
  r.c = static_cast<std::uint8_t>(g.d ? g.c : (4 - g.c) & 3);
  return r;
}

HElem elem_pow(const HElem& g, int k) {
  // every element of H has order dividing 4
  int reps = ((k % 4) + 4) % 4;
  HElem r = identity_elem(g.m);
  for (int i = 0; i < reps; ++i) r = mul(r, g);
  return r;
}

std::uint32_t encode(const HElem& g) {
  return static_cast<std::uint32_t>(g.a) | (static_cast<std::uint32_t>(g.b) << 2) |
         (static_cast<std::uint32_t>(g.c) << 3) |
         (static_cast<std::uint32_t>(g.d) << 5) | (g.e << 6);
}

HElem decode(std::uint32_t idx, unsigned m) {
  require_m(m);
  if (idx >= (1ull << (m + 6)))
    throw ParamError("index " + std::to_string(idx) + " out of range for m=" +
                     std::to_string(m));
  HElem g;
  g.m = static_cast<std::uint8_t>(m);
  g.a = idx & 3;
  g.b = (idx >> 2) & 1;
  g.c = (idx >> 3) & 3;
  g.d = (idx >> 5) & 1;
  g.e = idx >> 6;
  return g;
}

HElem parse(std::string_view text, unsigned m) {
  require_m(m);
  if (text.empty()) throw ParseError("empty element string");
  if (text == "1") return identity_elem(m);

  HElem result = identity_elem(m);
  std::size_t pos = 0;
  while (pos < text.size()) {
    char gc = text[pos++];
    HElem base;
    if (gc == 'a')
      base = gen_a(m);
    else if (gc == 'b')
      base = gen_b(m);
    else if (gc == 'c')
      base = gen_c(m);
    else if (gc == 'd')
      base = gen_d(m);
    else if (gc == 'e') {
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
      if (pos == start) throw ParseError("generator 'e' needs an index");
      int t = 0;
      auto [p, ec] = std::from_chars(text.data() + start, text.data() + pos, t);
      if (ec != std::errc()) throw ParseError("bad e index");
      if (t < 1) throw ParseError("e index must be >= 1");
      if (static_cast<unsigned>(t) > m)
        throw ParseError("e" + std::to_string(t) + " out of range for m=" +
                         std::to_string(m));
      base = gen_e(t, m);
    } else {
      throw ParseError(std::string("unknown generator '") + gc + "'");
    }

    int exp = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      std::size_t start = pos;
      if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
      auto [p, ec] = std::from_chars(text.data() + start, text.data() + pos, exp);
      if (ec != std::errc() || p != text.data() + pos || pos == start)
        throw ParseError("malformed exponent");
    }
    result = mul(result, elem_pow(base, exp));

    if (pos < text.size()) {
      if (text[pos] != '*') throw ParseError("expected '*' between factors");
      ++pos;
      if (pos == text.size()) throw ParseError("trailing '*'");
    }
  }
  return result;
}

std::string render(const HElem& g) {
  std::string out;
  auto add = [&out](const std::string& s) {
    if (!out.empty()) out += '*';
    out += s;
  };
  if (g.a == 1)
    add("a");
  else if (g.a > 1)
    add("a^" + std::to_string(g.a));
  if (g.b) add("b");
  if (g.c == 1)
    add("c");
  else if (g.c > 1)
    add("c^" + std::to_string(g.c));
  if (g.d) add("d");
  for (unsigned t = 1; t <= g.m; ++t)
    if ((g.e >> (t - 1)) & 1) add("e" + std::to_string(t));
  return out.empty() ? "1" : out;
}

IndexSet closure(const std::vector<HElem>& gens, unsigned m) {
  require_m(m);
  IndexSet seen(1ull << (m + 6));
  std::deque<HElem> frontier;
  seen.set(0);
  frontier.push_back(identity_elem(m));
  while (!frontier.empty()) {
    HElem g = frontier.front();
    frontier.pop_front();
    for (const HElem& s : gens) {
      HElem w = mul(g, s);
      std::uint32_t idx = encode(w);
      if (!seen.test(idx)) {
        seen.set(idx);
        frontier.push_back(w);
      }
    }
  }
  return seen;
}

GroupParams GroupParams::make(unsigned m) {
  require_m(m);
  GroupParams p;
  p.m = m;
  p.n = 1ull << (m + 6);

  p.f = mul(gen_a(m), gen_b(m));
  for (unsigned i = 1; 2 * i - 1 <= m; ++i) p.f = mul(p.f, gen_e(2 * i - 1, m));
  p.em_m = (m % 2 == 1) ? gen_e(m, m) : identity_elem(m);
  p.f_cd_emm = mul(mul(mul(p.f, gen_c(m)), gen_d(m)), p.em_m);

  p.e_mask = (m >= 32) ? ~0u : ((1u << m) - 1);
  for (unsigned t = 2; t <= m; t += 2) p.even_t_mask |= 1u << (t - 1);
  p.central_mask = p.even_t_mask;
  if (m % 2 == 1) p.central_mask |= 1u << (m - 1);

  p.x_e_img.resize(m + 1);
  p.xinv_e_img.resize(m + 1);
  p.phi_e_img.resize(m + 1);
  p.phi_e_bits.resize(m + 1);
  HElem a2 = elem_pow(gen_a(m), 2);
  HElem c2 = elem_pow(gen_c(m), 2);
  for (unsigned t = 1; t <= m; ++t) {
    int ti = static_cast<int>(t);
    if (t % 2 == 1) {
      if (t == m && m % 2 == 1) {
        p.x_e_img[t] = mul(a2, gen_e(ti, m));
        // c^(2m) = c^2 for odd m
        p.xinv_e_img[t] = mul(c2, gen_e(ti, m));
        p.phi_e_img[t] = gen_e(ti, m);
      } else {
        p.x_e_img[t] = gen_e(ti, m);
        p.xinv_e_img[t] = gen_e(ti, m);
        p.phi_e_img[t] =
            mul(mul(gen_e(ti - 2, m), gen_e(ti - 1, m)), gen_e(ti + 1, m));
      }
    } else {
      p.x_e_img[t] = mul(mul(a2, gen_e(ti - 1, m)), gen_e(ti, m));
      p.xinv_e_img[t] = mul(mul(c2, gen_e(ti - 1, m)), gen_e(ti, m));
      p.phi_e_img[t] =
          mul(mul(gen_e(ti - 3, m), gen_e(ti - 2, m)), gen_e(ti - 1, m));
    }
    p.phi_e_bits[t] = p.phi_e_img[t].e;
  }
  return p;
}

const std::vector<std::string>& GroupParams::named_set_names() {
  static const std::vector<std::string> names = {
      "K",        "E",        "V",           "c2_E",       "c_d_E",
      "ab_c2_cd_E", "ab_c_d_E", "a_b_c2_cd_E", "coset_abcdE", "coset_cdE"};
  return names;
}

std::vector<HElem> GroupParams::generators_of(std::string_view name) const {
  std::vector<HElem> e_gens;
  for (unsigned t = 1; t <= m; ++t) e_gens.push_back(gen_e(t, m));
  HElem a2 = elem_pow(gen_a(m), 2);
  HElem c2 = elem_pow(gen_c(m), 2);
  HElem ab = mul(gen_a(m), gen_b(m));
  HElem cd = mul(gen_c(m), gen_d(m));

  std::vector<HElem> gens;
  if (name == "K") {
    gens = {a2, gen_b(m), gen_c(m), gen_d(m)};
  } else if (name == "E") {
    // nothing beyond the e's
  } else if (name == "V") {
    e_gens.clear();
    for (unsigned t = 1; t <= 2 * (m / 2); ++t) e_gens.push_back(gen_e(t, m));
  } else if (name == "c2_E") {
    gens = {c2};
  } else if (name == "c_d_E") {
    gens = {gen_c(m), gen_d(m)};
  } else if (name == "ab_c2_cd_E") {
    gens = {ab, c2, cd};
  } else if (name == "ab_c_d_E") {
    gens = {ab, gen_c(m), gen_d(m)};
  } else if (name == "a_b_c2_cd_E") {
    gens = {gen_a(m), gen_b(m), c2, cd};
  } else {
    throw ParamError("unknown subgroup name: " + std::string(name));
  }
  gens.insert(gens.end(), e_gens.begin(), e_gens.end());
  return gens;
}

IndexSet GroupParams::named_set(std::string_view name) const {
  if (name == "coset_abcdE" || name == "coset_cdE") {
    HElem rep = mul(gen_c(m), gen_d(m));
    if (name == "coset_abcdE") rep = mul(mul(gen_a(m), gen_b(m)), rep);
    IndexSet s(n);
    for (std::uint32_t bits = 0; bits < (1u << m); ++bits) {
      HElem g = identity_elem(m);
      g.e = bits;
      s.set(encode(mul(rep, g)));
    }
    return s;
  }
  return closure(generators_of(name), m);
}

}  // namespace havt
