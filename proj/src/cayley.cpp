#include "havt/cayley.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace havt {

namespace {

struct PermHashTable {
  // 128-bit content hash with full comparison on collision
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
  const std::vector<Perm>* store = nullptr;

  explicit PermHashTable(const std::vector<Perm>& s) : store(&s) {}

  static std::uint64_t key(const Perm& p) {
    auto h = p.hash128();
    return h[0] ^ (h[1] * 0x2545f4914f6cdd1dull);
  }

  std::int64_t find(const Perm& p) const {
    auto it = buckets.find(key(p));
    if (it == buckets.end()) return -1;
    for (std::uint32_t idx : it->second)
      if ((*store)[idx] == p) return idx;
    return -1;
  }

  void add(const Perm& p, std::uint32_t idx) {
    buckets[key(p)].push_back(idx);
  }
};

}  // namespace

std::array<HElem, 4> ConnectionSet::b_images(const GroupParams& p) const {
  std::uint32_t b = encode(gen_b(p.m));
  return {decode(xy[b], p.m), decode(xy_inv[b], p.m), decode(xz[b], p.m),
          decode(xz_inv[b], p.m)};
}

ConnectionSet connection_set(const Evaluator& ev) {
  const unsigned m = ev.params().m;
  ConnectionSet s;
  s.w_xy = ActionWord::of(m, {AtomKind::X, AtomKind::Y});
  s.w_xz = ActionWord::of(m, {AtomKind::X, AtomKind::Z});
  s.w_xy_inv = s.w_xy.inverse();
  s.w_xz_inv = s.w_xz.inverse();
  s.xy = materialize(ev, s.w_xy);
  s.xz = materialize(ev, s.w_xz);
  s.xy_inv = s.xy.inverse();
  s.xz_inv = s.xz.inverse();
  return s;
}

LocalBall ball(const Evaluator& ev, unsigned depth, const EvalBudget& budget) {
  const std::uint64_t n = ev.params().n;
  // frontier growth is at most 4 * 3^(d-1)
  std::uint64_t bound = 1, frontier = 4;
  for (unsigned d = 1; d <= depth; ++d) {
    bound += frontier;
    frontier *= 3;
  }
  if (bound * n > budget.max_points)
    throw BudgetError("ball of depth " + std::to_string(depth) +
                      " may exceed the point budget");

  ConnectionSet s = connection_set(ev);
  LocalBall out;
  out.max_depth = depth;
  out.vertices.push_back(Perm::identity(n));
  out.depth.push_back(0);
  PermHashTable table(out.vertices);
  table.add(out.vertices[0], 0);

  std::vector<std::uint32_t> layer{0};
  for (unsigned d = 1; d <= depth && !layer.empty(); ++d) {
    std::vector<Perm> found;
    PermHashTable layer_table(found);
    for (std::uint32_t v : layer) {
      for (std::size_t i = 0; i < 4; ++i) {
        Perm w = out.vertices[v].then(s.step(i));
        if (table.find(w) >= 0 || layer_table.find(w) >= 0) continue;
        found.push_back(std::move(w));
        layer_table.add(found.back(),
                        static_cast<std::uint32_t>(found.size() - 1));
      }
    }
    std::sort(found.begin(), found.end(),
              [](const Perm& a, const Perm& b) { return lex_less(a, b); });
    layer.clear();
    for (Perm& w : found) {
      std::uint32_t idx = static_cast<std::uint32_t>(out.vertices.size());
      out.vertices.push_back(std::move(w));
      out.depth.push_back(d);
      table.add(out.vertices.back(), idx);
      layer.push_back(idx);
    }
  }

  for (std::uint32_t v = 0; v < out.vertices.size(); ++v) {
    for (std::size_t i = 0; i < 4; ++i) {
      Perm w = out.vertices[v].then(s.step(i));
      std::int64_t idx = table.find(w);
      if (idx >= 0)
        out.arcs.push_back(Arc{v, static_cast<std::uint32_t>(idx),
                               ConnectionSet::orientation(i)});
    }
  }
  return out;
}

std::uint32_t LocalBall::out_degree(std::uint32_t v, Orientation o) const {
  std::uint32_t c = 0;
  for (const Arc& a : arcs)
    if (a.from == v && a.orientation == o) ++c;
  return c;
}

std::uint32_t LocalBall::in_degree(std::uint32_t v, Orientation o) const {
  std::uint32_t c = 0;
  for (const Arc& a : arcs)
    if (a.to == v && a.orientation == o) ++c;
  return c;
}

std::uint32_t LocalBall::undirected_degree(std::uint32_t v) const {
  // each undirected edge at v appears once as a D1 arc and once as a D2 arc
  std::uint32_t c = 0;
  for (const Arc& a : arcs)
    if (a.from == v || a.to == v) ++c;
  return c / 2;
}

std::string dot_export(const LocalBall& ball) {
  static const char hex[] = "0123456789abcdef";
  std::string out = "digraph cayley_ball {\n";
  for (std::uint32_t v = 0; v < ball.vertices.size(); ++v) {
    auto h = ball.vertices[v].hash128();
    std::string tag;
    for (int i = 7; i >= 0; --i) tag += hex[(h[0] >> (4 * i)) & 15];
    out += "  v" + std::to_string(v) + " [label=\"" +
           std::to_string(ball.depth[v]) + ":" + tag + "\"];\n";
  }
  for (const Arc& a : ball.arcs) {
    out += "  v" + std::to_string(a.from) + " -> v" + std::to_string(a.to) +
           " [color=\"" + (a.orientation == Orientation::d1 ? "d1" : "d2") +
           "\"];\n";
  }
  out += "}\n";
  return out;
}

AlternatingCycles alternating_cycles(const Evaluator& ev) {
  const std::uint64_t n = ev.params().n;
  ConnectionSet s = connection_set(ev);

  // Walk the cycle through the given first step, alternating a forward D1
  // step with a backward one (a D2 step), never backtracking. The vertex
  // arrived at by one orientation always sees the previous vertex among the
  // two candidates of the other orientation, so the next vertex is forced.
  auto walk = [&](bool start_forward) {
    std::vector<Perm> cycle;
    Perm start = Perm::identity(n);
    Perm cur = start, prev;
    bool forward = start_forward, have_prev = false;
    while (true) {
      cycle.push_back(cur);
      Perm cand1 = cur.then(forward ? s.xy : s.xy_inv);
      Perm next = (have_prev && cand1 == prev)
                      ? cur.then(forward ? s.xz : s.xz_inv)
                      : std::move(cand1);
      prev = std::move(cur);
      have_prev = true;
      cur = std::move(next);
      forward = !forward;
      if (cur == start || cycle.size() > 256) break;  // runaway guard
    }
    return cycle;
  };

  AlternatingCycles out;
  out.c1 = walk(true);    // through the edge {1, xy}
  out.c2 = walk(false);   // through the edge {1, (xy)^-1}

  // closed-form lists: {x (yz)^i x^-1, x (yz)^i y} and {(yz)^j, (yz)^j y x^-1}
  const unsigned m = ev.params().m;
  Perm px = materialize(ev, ActionWord::of(m, {AtomKind::X}));
  Perm pxi = materialize(ev, ActionWord::of(m, {AtomKind::XInv}));
  Perm py = materialize(ev, ActionWord::of(m, {AtomKind::Y}));
  Perm pyz = materialize(ev, ActionWord::of(m, {AtomKind::Y, AtomKind::Z}));

  auto as_set = [](std::vector<Perm> v) {
    std::sort(v.begin(), v.end(),
              [](const Perm& a, const Perm& b) { return lex_less(a, b); });
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };

  std::vector<Perm> closed1, closed2;
  Perm acc1 = px;                  // x (yz)^i
  Perm acc2 = Perm::identity(n);   // (yz)^j
  for (int i = 0; i < 6; ++i) {
    closed1.push_back(acc1.then(pxi));
    closed1.push_back(acc1.then(py));
    closed2.push_back(acc2);
    closed2.push_back(acc2.then(py).then(pxi));
    acc1 = acc1.then(pyz);
    acc2 = acc2.then(pyz);
  }

  std::vector<Perm> w1 = as_set(out.c1), w2 = as_set(out.c2);
  out.closed_form_agrees =
      (w1 == as_set(std::move(closed1))) && (w2 == as_set(std::move(closed2)));

  std::uint64_t common = 0;
  for (const Perm& a : w1)
    for (const Perm& b : w2)
      if (a == b) ++common;
  out.common_vertices = common;
  return out;
}

std::pair<unsigned, std::uint64_t> radius_and_attachment(const Evaluator& ev) {
  AlternatingCycles cycles = alternating_cycles(ev);
  return {static_cast<unsigned>(cycles.c1.size() / 2), cycles.common_vertices};
}

namespace {

// images of R(h) as a raw array
std::vector<std::uint32_t> right_mul_images(const GroupParams& p,
                                            const HElem& h) {
  std::vector<std::uint32_t> img(p.n);
  for (std::uint64_t u = 0; u < p.n; ++u)
    img[u] = encode(mul(decode(static_cast<std::uint32_t>(u), p.m), h));
  return img;
}

}  // namespace

DoubleCosetResult double_coset_decomposition(const Evaluator& ev,
                                             unsigned exhaustive_max_m,
                                             std::uint64_t spot_samples) {
  const GroupParams& p = ev.params();
  const std::uint64_t n = p.n;
  ConnectionSet s = connection_set(ev);
  DoubleCosetResult out;

  // the four right cosets R(H)w, each of size |H| = n
  std::vector<Perm> coset_reps = {s.xy, s.xy_inv, s.xz, s.xz_inv};
  auto right_coset = [&](const Perm& w) {
    std::vector<Perm> coset;
    coset.reserve(n);
    for (std::uint64_t h = 0; h < n; ++h) {
      Perm rh(right_mul_images(p, decode(static_cast<std::uint32_t>(h), p.m)));
      coset.push_back(rh.then(w));
    }
    return coset;
  };

  if (p.m <= exhaustive_max_m) {
    out.method = "exhaustive";
    std::vector<Perm> cxy = right_coset(s.xy), cxz = right_coset(s.xz);
    std::vector<Perm> cxyi = right_coset(s.xy_inv), cxzi = right_coset(s.xz_inv);

    // enumerate R(h1) w R(h2) over all pairs, checking the result against
    // the union of the two given right cosets
    auto enumerate_double = [&](const Perm& w, const std::vector<Perm>& ca,
                                const std::vector<Perm>& cb,
                                std::uint64_t& size_out) {
      std::vector<Perm> dc_store;
      PermHashTable dc(dc_store);
      for (std::uint64_t h1 = 0; h1 < n; ++h1) {
        Perm left(
            right_mul_images(p, decode(static_cast<std::uint32_t>(h1), p.m)));
        Perm lw = left.then(w);
        for (std::uint64_t h2 = 0; h2 < n; ++h2) {
          std::vector<std::uint32_t> img(n);
          const auto& base = lw.images();
          HElem h2e = decode(static_cast<std::uint32_t>(h2), p.m);
          for (std::uint64_t u = 0; u < n; ++u)
            img[u] = encode(mul(decode(base[u], p.m), h2e));
          Perm q(std::move(img));
          if (dc.find(q) < 0) {
            dc_store.push_back(std::move(q));
            dc.add(dc_store.back(),
                   static_cast<std::uint32_t>(dc_store.size() - 1));
          }
        }
      }
      size_out = dc_store.size();
      bool contained = true;
      for (const Perm& q : ca)
        if (dc.find(q) < 0) contained = false;
      for (const Perm& q : cb)
        if (dc.find(q) < 0) contained = false;
      return contained && size_out == 2 * n;
    };
    bool fwd = enumerate_double(s.xy, cxy, cxz, out.size_xy_double);
    bool rev = enumerate_double(s.xy_inv, cxyi, cxzi, out.size_xy_inv_double);
    out.equals_coset_union = fwd && rev;

    std::vector<Perm> store;
    PermHashTable table(store);
    auto add_all = [&](const std::vector<Perm>& perms) {
      for (const Perm& q : perms) {
        if (table.find(q) < 0) {
          store.push_back(q);
          table.add(store.back(), static_cast<std::uint32_t>(store.size() - 1));
        }
      }
    };
    add_all(cxy);
    std::uint64_t s1 = store.size();
    add_all(cxyi);
    std::uint64_t s2 = store.size();
    add_all(cxz);
    std::uint64_t s3 = store.size();
    add_all(cxzi);
    out.union_size = store.size();
    out.four_cosets_disjoint =
        (s1 == n) && (s2 == 2 * n) && (s3 == 3 * n) && (out.union_size == 4 * n);
    return out;
  }

  // Index argument: (xy)^-1 R(H) xy meets R(H) in R(K), which has index 2,
  // so |R(H) xy R(H)| = 2 |R(H)|. The containment R(H)xz within the double
  // coset reduces to one product identity: since x R(f) = R(f^(x^-1)) x,
  // xz = R(f^(x^-1)) xy R(f c d e_m^m).
  out.method = "index-argument";
  NonnormalityWitness w = nonnormality_witness(ev);
  bool index_two = (w.right_multipliers.count() * 2 == n);
  Perm lhs(right_mul_images(p, apply_x_inv(p, p.f)));
  lhs = lhs.then(s.xy).then(Perm(right_mul_images(p, p.f_cd_emm)));
  bool xz_in_double = (lhs == s.xz);
  out.size_xy_double = index_two ? 2 * n : 0;
  out.size_xy_inv_double = out.size_xy_double;
  out.union_size = 4 * n;

  auto in_right_coset = [&](const Perm& q, const Perm& wrep) {
    Perm t = q.then(wrep.inverse());
    Perm rg(right_mul_images(p, decode(t[0], p.m)));
    return t == rg;
  };
  bool spot_ok = true;
  std::uint64_t stride = std::max<std::uint64_t>(1, (n * n) / std::max<std::uint64_t>(1, spot_samples));
  std::uint64_t pair = 0;
  for (std::uint64_t count = 0; count < spot_samples; ++count, pair += stride) {
    std::uint64_t h1 = pair / n % n, h2 = pair % n;
    Perm q(right_mul_images(p, decode(static_cast<std::uint32_t>(h1), p.m)));
    q = q.then(s.xy)
         .then(Perm(right_mul_images(p, decode(static_cast<std::uint32_t>(h2), p.m))));
    if (!in_right_coset(q, s.xy) && !in_right_coset(q, s.xz)) spot_ok = false;
  }
  out.equals_coset_union = index_two && xz_in_double && spot_ok;

  bool disjoint = true;
  for (std::size_t i = 0; i < 4 && disjoint; ++i)
    for (std::size_t j = i + 1; j < 4 && disjoint; ++j) {
      Perm t = coset_reps[i].then(coset_reps[j].inverse());
      Perm rg(right_mul_images(p, decode(t[0], p.m)));
      if (t == rg) disjoint = false;  // cosets coincide
    }
  out.four_cosets_disjoint = disjoint;
  return out;
}

NonnormalityWitness nonnormality_witness(const Evaluator& ev) {
  const GroupParams& p = ev.params();
  const std::uint64_t n = p.n;
  ConnectionSet s = connection_set(ev);
  const auto& xy = s.xy.images();
  const auto& xy_inv = s.xy_inv.images();

  NonnormalityWitness out{IndexSet(n), IndexSet(n)};
  std::vector<std::uint32_t> sigma(n);
  for (std::uint64_t h = 0; h < n; ++h) {
    HElem he = decode(static_cast<std::uint32_t>(h), p.m);
    for (std::uint64_t u = 0; u < n; ++u)
      sigma[u] = xy[encode(mul(decode(xy_inv[u], p.m), he))];
    // sigma is a right multiplication iff it equals R(sigma(1))
    HElem g0 = decode(sigma[0], p.m);
    bool is_rmul = true;
    for (std::uint64_t u = 0; u < n && is_rmul; ++u)
      if (sigma[u] != encode(mul(decode(static_cast<std::uint32_t>(u), p.m), g0)))
        is_rmul = false;
    if (is_rmul) {
      out.right_multipliers.set(sigma[0]);
      out.conjugating_preimage.set(h);
    }
  }
  return out;
}

}  // namespace havt
