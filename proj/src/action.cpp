#include "havt/action.hpp"

#include <numeric>
#include <stdexcept>
#include <thread>

namespace havt {

ActionWord ActionWord::of(unsigned m, std::initializer_list<AtomKind> kinds) {
  ActionWord w;
  w.m = m;
  for (AtomKind k : kinds) {
    if (k == AtomKind::RightMul)
      throw ParamError("RightMul atom needs an element; use right_mul()");
    w.atoms.push_back(Atom{k, identity_elem(m)});
  }
  return w;
}

ActionWord ActionWord::right_mul(const HElem& h) {
  ActionWord w;
  w.m = h.m;
  w.atoms.push_back(Atom{AtomKind::RightMul, h});
  return w;
}

ActionWord ActionWord::then(const ActionWord& w) const {
  if (m != w.m) throw ParamError("word composition across different m");
  ActionWord r = *this;
  r.atoms.insert(r.atoms.end(), w.atoms.begin(), w.atoms.end());
  return r;
}

ActionWord ActionWord::inverse() const {
  ActionWord r;
  r.m = m;
  r.atoms.reserve(atoms.size());
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) {
    Atom a = *it;
    switch (a.kind) {
      case AtomKind::X:
        a.kind = AtomKind::XInv;
        break;
      case AtomKind::XInv:
        a.kind = AtomKind::X;
        break;
      case AtomKind::Y:
      case AtomKind::Z:
        break;  // involutions
      case AtomKind::RightMul:
        a.arg = inv(a.arg);
        break;
    }
    r.atoms.push_back(a);
  }
  return r;
}

ActionWord ActionWord::pow(unsigned k) const {
  ActionWord r = ActionWord::empty(m);
  for (unsigned i = 0; i < k; ++i) r = r.then(*this);
  return r;
}

std::string ActionWord::str() const {
  std::string s;
  for (const Atom& a : atoms) {
    if (!s.empty()) s += ' ';
    switch (a.kind) {
      case AtomKind::X:
        s += 'x';
        break;
      case AtomKind::XInv:
        s += 'X';
        break;
      case AtomKind::Y:
        s += 'y';
        break;
      case AtomKind::Z:
        s += 'z';
        break;
      case AtomKind::RightMul:
        s += "R(" + render(a.arg) + ")";
        break;
    }
  }
  return s.empty() ? "<empty>" : s;
}

// ---------------------------------------------------------------------------
// closed forms
//
// x sends a->c, b->d, c->a^3, d->ab, fixes odd-indexed e's, and maps
// e_2i -> a^2 e_{2i-1} e_2i (plus e_m -> a^2 e_m for odd m). Since a^2 is
// central, the squares contributed by e-images collect into one exponent.

HElem apply_x(const GroupParams& p, const HElem& g) {
  unsigned squares = std::popcount(g.e & p.central_mask);
  std::uint32_t even_bits = g.e & p.even_t_mask;
  HElem r;
  r.m = g.m;
  r.a = static_cast<std::uint8_t>((3 * g.c + g.d + 2 * squares) & 3);
  r.b = g.d;
  r.c = g.a;
  r.d = g.b;
  r.e = (g.e & ~p.even_t_mask) ^ even_bits ^ (even_bits >> 1);
  return r;
}

HElem apply_x_inv(const GroupParams& p, const HElem& g) {
  unsigned squares = std::popcount(g.e & p.central_mask);
  std::uint32_t even_bits = g.e & p.even_t_mask;
  HElem r;
  r.m = g.m;
  r.a = g.c;
  r.b = g.d;
  r.c = static_cast<std::uint8_t>((3 * g.a + g.b + 2 * squares) & 3);
  r.d = g.b;
  r.e = (g.e & ~p.even_t_mask) ^ even_bits ^ (even_bits >> 1);
  return r;
}

HElem apply_phi(const GroupParams& p, const HElem& k) {
  // swaps a^2 <-> b and acts F2-linearly on the e-bits
  HElem r;
  r.m = k.m;
  r.a = static_cast<std::uint8_t>(2 * k.b);
  r.b = static_cast<std::uint8_t>(k.a >> 1);
  r.c = k.c;
  r.d = k.d;
  std::uint32_t e = 0, bits = k.e;
  while (bits) {
    e ^= p.phi_e_bits[std::countr_zero(bits) + 1];
    bits &= bits - 1;
  }
  r.e = e;
  return r;
}

HElem apply_y(const GroupParams& p, const HElem& g) {
  if (p.in_K(g)) return apply_phi(p, g);
  HElem k = mul(inv(p.f), g);
  return mul(p.f_cd_emm, apply_phi(p, k));
}

HElem apply_z(const GroupParams& p, const HElem& g) {
  return mul(apply_y(p, mul(g, p.f)), p.f_cd_emm);
}

// ---------------------------------------------------------------------------
// generator-image expansion route

HElem apply_x_via_images(const GroupParams& p, const HElem& g) {
  unsigned m = p.m;
  HElem r = elem_pow(gen_c(m), g.a);
  r = mul(r, elem_pow(gen_d(m), g.b));
  r = mul(r, elem_pow(elem_pow(gen_a(m), 3), g.c));
  if (g.d) r = mul(r, mul(gen_a(m), gen_b(m)));
  for (unsigned t = 1; t <= m; ++t)
    if ((g.e >> (t - 1)) & 1) r = mul(r, p.x_e_img[t]);
  return r;
}

HElem apply_x_inv_via_images(const GroupParams& p, const HElem& g) {
  unsigned m = p.m;
  HElem r = elem_pow(elem_pow(gen_c(m), 3), g.a);
  if (g.b) r = mul(r, mul(gen_c(m), gen_d(m)));
  r = mul(r, elem_pow(gen_a(m), g.c));
  r = mul(r, elem_pow(gen_b(m), g.d));
  for (unsigned t = 1; t <= m; ++t)
    if ((g.e >> (t - 1)) & 1) r = mul(r, p.xinv_e_img[t]);
  return r;
}

HElem apply_phi_via_images(const GroupParams& p, const HElem& k) {
  if (!p.in_K(k)) throw ParamError("phi is only defined on K");
  unsigned m = p.m;
  HElem r = elem_pow(gen_b(m), k.a / 2);
  r = mul(r, elem_pow(elem_pow(gen_a(m), 2), k.b));
  r = mul(r, elem_pow(gen_c(m), k.c));
  r = mul(r, elem_pow(gen_d(m), k.d));
  for (unsigned t = 1; t <= m; ++t)
    if ((k.e >> (t - 1)) & 1) r = mul(r, p.phi_e_img[t]);
  return r;
}

HElem apply_y_via_images(const GroupParams& p, const HElem& g) {
  if (p.in_K(g)) return apply_phi_via_images(p, g);
  HElem k = mul(inv(p.f), g);
  HElem r = mul(mul(p.f, gen_c(p.m)), gen_d(p.m));
  r = mul(r, apply_phi_via_images(p, k));
  return mul(r, p.em_m);
}

HElem apply_z_via_images(const GroupParams& p, const HElem& g) {
  HElem tail = mul(mul(mul(p.f, gen_c(p.m)), gen_d(p.m)), p.em_m);
  return mul(apply_y_via_images(p, mul(g, p.f)), tail);
}

// ---------------------------------------------------------------------------
// Evaluator

void Evaluator::override_x(std::vector<std::uint32_t> table) {
  if (table.size() != p_->n) throw ParamError("override table has wrong size");
  std::vector<std::uint32_t> inv_table(table.size());
  for (std::uint32_t i = 0; i < table.size(); ++i) inv_table[table[i]] = i;
  x_table_ = std::move(table);
  xinv_table_ = std::move(inv_table);
}

void Evaluator::override_y(std::vector<std::uint32_t> table) {
  if (table.size() != p_->n) throw ParamError("override table has wrong size");
  y_table_ = std::move(table);
}

HElem Evaluator::apply(AtomKind kind, const HElem& g) const {
  const GroupParams& p = *p_;
  switch (kind) {
    case AtomKind::X:
      if (x_table_) return decode((*x_table_)[encode(g)], p.m);
      return route_ == EvalRoute::closed_form ? apply_x(p, g)
                                              : apply_x_via_images(p, g);
    case AtomKind::XInv:
      if (xinv_table_) return decode((*xinv_table_)[encode(g)], p.m);
      return route_ == EvalRoute::closed_form ? apply_x_inv(p, g)
                                              : apply_x_inv_via_images(p, g);
    case AtomKind::Y:
      if (y_table_) return decode((*y_table_)[encode(g)], p.m);
      return route_ == EvalRoute::closed_form ? apply_y(p, g)
                                              : apply_y_via_images(p, g);
    case AtomKind::Z:
      // z = R(f) y R(f c d e_m^m); routing through Y keeps overrides and
      // route selection in effect
      return mul(apply(AtomKind::Y, mul(g, p.f)), p.f_cd_emm);
    case AtomKind::RightMul:
      throw ParamError("RightMul atom requires an argument");
  }
  throw ParamError("bad atom kind");
}

HElem Evaluator::apply(const Atom& atom, const HElem& g) const {
  if (atom.kind == AtomKind::RightMul) return mul(g, atom.arg);
  return apply(atom.kind, g);
}

std::uint32_t Evaluator::apply_idx(const Atom& atom, std::uint32_t idx) const {
  return encode(apply(atom, decode(idx, p_->m)));
}

HElem Evaluator::eval(const ActionWord& w, HElem g) const {
  if (w.m != p_->m) throw ParamError("word m does not match evaluator");
  for (const Atom& a : w.atoms) g = apply(a, g);
  return g;
}

std::uint32_t Evaluator::eval_idx(const ActionWord& w, std::uint32_t idx) const {
  return encode(eval(w, decode(idx, p_->m)));
}

// ---------------------------------------------------------------------------
// Perm

Perm::Perm(std::vector<std::uint32_t> images) : img_(std::move(images)) {
#ifndef NDEBUG
  std::vector<bool> seen(img_.size(), false);
  for (auto v : img_) {
    if (v >= img_.size() || seen[v])
      throw ParamError("image array is not a bijection");
    seen[v] = true;
  }
#endif
}

Perm Perm::identity(std::uint64_t n) {
  std::vector<std::uint32_t> img(n);
  std::iota(img.begin(), img.end(), 0u);
  return Perm(std::move(img));
}

Perm Perm::then(const Perm& q) const {
  if (degree() != q.degree()) throw ParamError("degree mismatch");
  std::vector<std::uint32_t> out(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) out[i] = q.img_[img_[i]];
  return Perm(std::move(out));
}

Perm Perm::inverse() const {
  std::vector<std::uint32_t> out(img_.size());
  for (std::uint32_t i = 0; i < img_.size(); ++i) out[img_[i]] = i;
  return Perm(std::move(out));
}

Perm Perm::pow(unsigned k) const {
  Perm r = identity(degree());
  for (unsigned i = 0; i < k; ++i) r = r.then(*this);
  return r;
}

bool Perm::is_identity() const {
  for (std::uint32_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

std::vector<std::uint64_t> Perm::cycle_lengths() const {
  std::vector<std::uint64_t> lengths;
  std::vector<bool> seen(img_.size(), false);
  for (std::uint32_t s = 0; s < img_.size(); ++s) {
    if (seen[s]) continue;
    std::uint64_t len = 0;
    for (std::uint32_t v = s; !seen[v]; v = img_[v]) {
      seen[v] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  return lengths;
}

int Perm::sign() const {
  std::uint64_t cycles = cycle_lengths().size();
  return ((img_.size() - cycles) % 2 == 0) ? 1 : -1;
}

namespace {

std::uint64_t lcm_checked(std::uint64_t a, std::uint64_t b) {
  std::uint64_t g = std::gcd(a, b);
  unsigned __int128 l = static_cast<unsigned __int128>(a / g) * b;
  if (l > ~0ull) throw std::overflow_error("permutation order exceeds 64 bits");
  return static_cast<std::uint64_t>(l);
}

}  // namespace

std::uint64_t Perm::order() const {
  std::uint64_t o = 1;
  for (std::uint64_t len : cycle_lengths()) o = lcm_checked(o, len);
  return o;
}

IndexSet Perm::fixed_points() const {
  IndexSet s(img_.size());
  for (std::uint32_t i = 0; i < img_.size(); ++i)
    if (img_[i] == i) s.set(i);
  return s;
}

std::array<std::uint64_t, 2> Perm::hash128() const {
  // two independent mixing lanes over the image array
  std::uint64_t h1 = 0x9e3779b97f4a7c15ull, h2 = 0xc2b2ae3d27d4eb4full;
  for (std::uint32_t v : img_) {
    h1 = (h1 ^ v) * 0xff51afd7ed558ccdull;
    h1 ^= h1 >> 33;
    h2 = (h2 + v) * 0x9e3779b97f4a7c15ull;
    h2 ^= h2 >> 29;
  }
  h1 ^= img_.size();
  h2 += img_.size();
  return {h1, h2};
}

// ---------------------------------------------------------------------------
// word-level operations

Perm materialize(const Evaluator& ev, const ActionWord& w,
                 const EvalBudget& budget) {
  const std::uint64_t n = ev.params().n;
  if (n > budget.max_points)
    throw BudgetError(
        "materializing " + std::to_string(n) +
        " points exceeds the budget; use the streaming operations instead");
  std::vector<std::uint32_t> img(n);
  for (std::uint64_t i = 0; i < n; ++i)
    img[i] = ev.eval_idx(w, static_cast<std::uint32_t>(i));
  return Perm(std::move(img));
}

std::uint64_t word_order(const Evaluator& ev, const ActionWord& w) {
  const std::uint64_t n = ev.params().n;
  IndexSet seen(n);
  std::uint64_t o = 1;
  for (std::uint64_t s = 0; s < n; ++s) {
    if (seen.test(s)) continue;
    std::uint64_t len = 0;
    std::uint32_t v = static_cast<std::uint32_t>(s);
    while (!seen.test(v)) {
      seen.set(v);
      v = ev.eval_idx(w, v);
      ++len;
    }
    o = lcm_checked(o, len);
  }
  return o;
}

int word_parity(const Evaluator& ev, const ActionWord& w) {
  const std::uint64_t n = ev.params().n;
  IndexSet seen(n);
  std::uint64_t cycles = 0;
  for (std::uint64_t s = 0; s < n; ++s) {
    if (seen.test(s)) continue;
    ++cycles;
    std::uint32_t v = static_cast<std::uint32_t>(s);
    while (!seen.test(v)) {
      seen.set(v);
      v = ev.eval_idx(w, v);
    }
  }
  return ((n - cycles) % 2 == 0) ? 1 : -1;
}

IndexSet fixed_points(const Evaluator& ev, const ActionWord& w) {
  const std::uint64_t n = ev.params().n;
  IndexSet s(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    auto idx = static_cast<std::uint32_t>(i);
    if (ev.eval_idx(w, idx) == idx) s.set(idx);
  }
  return s;
}

std::uint64_t fixed_point_count(const Evaluator& ev, const ActionWord& w,
                                unsigned threads) {
  const std::uint64_t n = ev.params().n;
  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads <= 1 || n < (1u << 16)) {
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      auto idx = static_cast<std::uint32_t>(i);
      if (ev.eval_idx(w, idx) == idx) ++count;
    }
    return count;
  }
  std::vector<std::uint64_t> partial(threads, 0);
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      std::uint64_t lo = t * chunk, hi = std::min(n, lo + chunk);
      std::uint64_t count = 0;
      for (std::uint64_t i = lo; i < hi; ++i) {
        auto idx = static_cast<std::uint32_t>(i);
        if (ev.eval_idx(w, idx) == idx) ++count;
      }
      partial[t] = count;
    });
  }
  for (auto& th : pool) th.join();
  std::uint64_t total = 0;
  for (auto c : partial) total += c;
  return total;
}

IndexSet set_image(const IndexSet& s, const Evaluator& ev,
                   const ActionWord& w) {
  IndexSet out(s.universe());
  s.for_each([&](std::uint64_t i) {
    out.set(ev.eval_idx(w, static_cast<std::uint32_t>(i)));
  });
  return out;
}

}  // namespace havt
