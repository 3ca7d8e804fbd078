#include "dom_impl.hpp"

#include <algorithm>

namespace famalyze {

namespace {

int_t dot(const hvec &a, const hvec &b) {
  int_t s = 0;
  for (size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

bool is_zero(const hvec &v) {
  for (const auto &x : v)
    if (x != 0)
      return false;
  return true;
}

void scale_down(hvec &v) {
  int_t g = 0;
  for (const auto &x : v)
    g = gcd_abs(g, x);
  if (g > 1)
    for (auto &x : v)
      x /= g;
}

// lines are direction-free: first nonzero component positive
void canon_line(hvec &v) {
  scale_down(v);
  for (const auto &x : v) {
    if (x == 0)
      continue;
    if (x < 0)
      for (auto &y : v)
        y = -y;
    break;
  }
}

// sp*x - sx*piv with the result gcd-reduced
hvec eliminate(const int_t &sp, const hvec &x, const int_t &sx, const hvec &piv) {
  hvec r(x.size());
  for (size_t i = 0; i < x.size(); ++i)
    r[i] = sp * x[i] - sx * piv[i];
  scale_down(r);
  return r;
}

struct bitset_t {
  std::vector<uint64_t> w;
  void set(int i) {
    size_t word = static_cast<size_t>(i) / 64;
    if (word >= w.size())
      w.resize(word + 1, 0);
    w[word] |= uint64_t(1) << (i % 64);
  }
  bool subset_of(const bitset_t &o) const {
    for (size_t i = 0; i < w.size(); ++i) {
      uint64_t other = i < o.w.size() ? o.w[i] : 0;
      if (w[i] & ~other)
        return false;
    }
    return true;
  }
  static bitset_t intersect(const bitset_t &a, const bitset_t &b) {
    bitset_t r;
    size_t n = std::min(a.w.size(), b.w.size());
    r.w.resize(n);
    for (size_t i = 0; i < n; ++i)
      r.w[i] = a.w[i] & b.w[i];
    return r;
  }
};

// Incremental double description of a polyhedral cone in Q^d.
// Invariants: lines saturate every added row; only adjacent ray pairs are
// combined; rays are kept gcd-reduced and duplicate-free.
struct dd_state {
  int d;
  std::vector<hvec> lines;
  struct ray_t {
    hvec v;
    bitset_t sat; // rows this ray saturates
  };
  std::vector<ray_t> rays;
  std::vector<hvec> rows;

  explicit dd_state(int dim) : d(dim) {
    for (int i = 0; i < d; ++i) {
      hvec e(static_cast<size_t>(d), 0);
      e[static_cast<size_t>(i)] = 1;
      lines.push_back(std::move(e));
    }
  }

  bool has_ray(const hvec &v) const {
    for (const auto &r : rays)
      if (r.v == v)
        return true;
    return false;
  }

  bitset_t exact_sat(const hvec &v) const {
    bitset_t s;
    for (size_t i = 0; i < rows.size(); ++i)
      if (dot(rows[i], v) == 0)
        s.set(static_cast<int>(i));
    return s;
  }

  void add_ineq(const hvec &a) {
    int row_id = static_cast<int>(rows.size());
    rows.push_back(a);
    // a line crossing the hyperplane pivots everything onto it
    for (size_t li = 0; li < lines.size(); ++li) {
      int_t s = dot(a, lines[li]);
      if (s == 0)
        continue;
      hvec piv = std::move(lines[li]);
      lines.erase(lines.begin() + static_cast<long>(li));
      if (s < 0) {
        for (auto &x : piv)
          x = -x;
        s = -s;
      }
      for (auto &l : lines) {
        int_t sl = dot(a, l);
        if (sl != 0) {
          l = eliminate(s, l, sl, piv);
          canon_line(l);
        }
      }
      for (auto &r : rays) {
        int_t sr = dot(a, r.v);
        if (sr != 0)
          r.v = eliminate(s, r.v, sr, piv);
        r.sat.set(row_id);
      }
      ray_t nr;
      nr.v = std::move(piv);
      scale_down(nr.v);
      for (int i = 0; i < row_id; ++i)
        nr.sat.set(i); // was a line: saturates all earlier rows
      rays.push_back(std::move(nr));
      return;
    }
    std::vector<int> pos, zero, neg;
    std::vector<int_t> ds(rays.size());
    for (size_t i = 0; i < rays.size(); ++i) {
      ds[i] = dot(a, rays[i].v);
      if (ds[i] > 0)
        pos.push_back(static_cast<int>(i));
      else if (ds[i] == 0)
        zero.push_back(static_cast<int>(i));
      else
        neg.push_back(static_cast<int>(i));
    }
    for (int i : zero)
      rays[static_cast<size_t>(i)].sat.set(row_id);
    if (neg.empty())
      return;
    std::vector<ray_t> fresh;
    for (int p : pos) {
      for (int n : neg) {
        bitset_t common = bitset_t::intersect(rays[static_cast<size_t>(p)].sat,
                                              rays[static_cast<size_t>(n)].sat);
        bool adjacent = true;
        for (size_t r3 = 0; r3 < rays.size(); ++r3) {
          if (static_cast<int>(r3) == p || static_cast<int>(r3) == n)
            continue;
          if (common.subset_of(rays[r3].sat)) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent)
          continue;
        hvec w(static_cast<size_t>(d));
        const hvec &vp = rays[static_cast<size_t>(p)].v;
        const hvec &vn = rays[static_cast<size_t>(n)].v;
        for (size_t i = 0; i < w.size(); ++i)
          w[i] = ds[static_cast<size_t>(p)] * vn[i] - ds[static_cast<size_t>(n)] * vp[i];
        scale_down(w);
        if (is_zero(w))
          continue;
        ray_t nr;
        nr.v = std::move(w);
        fresh.push_back(std::move(nr));
      }
    }
    std::vector<ray_t> kept;
    for (int i : pos)
      kept.push_back(std::move(rays[static_cast<size_t>(i)]));
    for (int i : zero)
      kept.push_back(std::move(rays[static_cast<size_t>(i)]));
    rays = std::move(kept);
    for (auto &nr : fresh) {
      if (has_ray(nr.v))
        continue;
      nr.sat = exact_sat(nr.v);
      rays.push_back(std::move(nr));
    }
  }

  void add_eq(const hvec &a) {
    add_ineq(a);
    hvec m(a.size());
    for (size_t i = 0; i < a.size(); ++i)
      m[i] = -a[i];
    add_ineq(m);
  }
};

struct genset {
  std::vector<hvec> rays, lines;
};

genset primal(int d, const std::vector<hvec> &ineq, const std::vector<hvec> &eq) {
  dd_state st(d);
  hvec lam(static_cast<size_t>(d), 0);
  lam[0] = 1;
  st.add_ineq(lam);
  for (const auto &r : eq)
    st.add_eq(r);
  for (const auto &r : ineq)
    st.add_ineq(r);
  genset g;
  g.lines = st.lines;
  for (auto &r : st.rays)
    g.rays.push_back(std::move(r.v));
  return g;
}

// constraints of the cone spanned by gens = gens of the dual cone
genset dual(int d, const std::vector<hvec> &rays, const std::vector<hvec> &lines) {
  dd_state st(d);
  for (const auto &l : lines)
    st.add_eq(l);
  for (const auto &r : rays)
    st.add_ineq(r);
  genset g;
  g.lines = st.lines;
  for (auto &r : st.rays)
    g.rays.push_back(std::move(r.v));
  return g;
}

bool coef_part_zero(const hvec &row) {
  for (size_t i = 1; i < row.size(); ++i)
    if (row[i] != 0)
      return false;
  return true;
}

// integer tightening of an inequality row: divide the coefficient part by
// its gcd and floor the constant. Returns true when the row changed.
bool tighten_row(hvec &row) {
  int_t g = 0;
  for (size_t i = 1; i < row.size(); ++i)
    g = gcd_abs(g, row[i]);
  if (g <= 1)
    return false;
  hvec old = row;
  row[0] = floor_div(row[0], g);
  for (size_t i = 1; i < row.size(); ++i)
    row[i] /= g;
  return row != old;
}

enum class row_norm { ok, empty, drop };

row_norm norm_ineq(hvec &row) {
  if (coef_part_zero(row))
    return row[0] < 0 ? row_norm::empty : row_norm::drop;
  tighten_row(row);
  return row_norm::ok;
}

row_norm norm_eq(hvec &row) {
  if (coef_part_zero(row))
    return row[0] != 0 ? row_norm::empty : row_norm::drop;
  int_t g = 0;
  for (size_t i = 1; i < row.size(); ++i)
    g = gcd_abs(g, row[i]);
  if (g > 1) {
    if (row[0] % g != 0)
      return row_norm::empty; // no integer solution on the hyperplane
    for (auto &x : row)
      x /= g;
  }
  canon_line(row);
  return row_norm::ok;
}

bool has_point(const genset &g) {
  for (const auto &r : g.rays)
    if (r[0] > 0)
      return true;
  return false;
}

} // namespace

poly_impl poly_impl::top(int n) {
  poly_impl p;
  p.nv = n;
  hvec lam(static_cast<size_t>(n) + 1, 0);
  lam[0] = 1;
  p.rays.push_back(std::move(lam));
  for (int i = 1; i <= n; ++i) {
    hvec e(static_cast<size_t>(n) + 1, 0);
    e[static_cast<size_t>(i)] = 1;
    p.lines.push_back(std::move(e));
  }
  return p;
}

poly_impl poly_impl::bottom(int n) {
  poly_impl p;
  p.bot = true;
  p.nv = n;
  return p;
}

poly_impl poly_from_rows(int n, std::vector<hvec> ineq, std::vector<hvec> eq) {
  int d = n + 1;
  for (int pass = 0; pass < 8; ++pass) {
    std::vector<hvec> ci, ce;
    for (auto &r : ineq) {
      switch (norm_ineq(r)) {
      case row_norm::empty: return poly_impl::bottom(n);
      case row_norm::drop: break;
      case row_norm::ok: ci.push_back(std::move(r)); break;
      }
    }
    for (auto &r : eq) {
      switch (norm_eq(r)) {
      case row_norm::empty: return poly_impl::bottom(n);
      case row_norm::drop: break;
      case row_norm::ok: ce.push_back(std::move(r)); break;
      }
    }
    genset g = primal(d, ci, ce);
    if (!has_point(g))
      return poly_impl::bottom(n);
    genset cons = dual(d, g.rays, g.lines);
    // dual rays are the irredundant inequalities, dual lines the equalities
    std::vector<hvec> min_ineq, min_eq;
    bool changed = false;
    for (auto &r : cons.rays) {
      if (coef_part_zero(r))
        continue; // the trivial lambda >= 0 row
      changed |= tighten_row(r);
      min_ineq.push_back(std::move(r));
    }
    for (auto &r : cons.lines) {
      switch (norm_eq(r)) {
      case row_norm::empty: return poly_impl::bottom(n);
      case row_norm::drop: changed = true; break;
      case row_norm::ok: min_eq.push_back(std::move(r)); break;
      }
    }
    if (!changed || pass == 7) {
      poly_impl p;
      p.nv = n;
      p.ineq = std::move(min_ineq);
      p.eq = std::move(min_eq);
      p.rays = std::move(g.rays);
      p.lines = std::move(g.lines);
      return p;
    }
    ineq = std::move(min_ineq);
    eq = std::move(min_eq);
  }
  return poly_impl::bottom(n); // unreachable
}

poly_impl poly_from_gens(int n, std::vector<hvec> rays, std::vector<hvec> lines) {
  bool any_point = false;
  for (const auto &r : rays)
    if (r[0] > 0)
      any_point = true;
  if (!any_point)
    return poly_impl::bottom(n);
  genset cons = dual(n + 1, rays, lines);
  std::vector<hvec> ineq, eq;
  for (auto &r : cons.rays) {
    if (!coef_part_zero(r))
      ineq.push_back(std::move(r));
  }
  for (auto &r : cons.lines)
    eq.push_back(std::move(r));
  return poly_from_rows(n, std::move(ineq), std::move(eq));
}

bool poly_leq(const poly_impl &a, const poly_impl &b) {
  if (a.bot)
    return true;
  if (b.bot)
    return false;
  for (const auto &r : a.rays) {
    for (const auto &c : b.ineq)
      if (dot(c, r) < 0)
        return false;
    for (const auto &c : b.eq)
      if (dot(c, r) != 0)
        return false;
  }
  for (const auto &l : a.lines) {
    for (const auto &c : b.ineq)
      if (dot(c, l) != 0)
        return false;
    for (const auto &c : b.eq)
      if (dot(c, l) != 0)
        return false;
  }
  return true;
}

poly_impl poly_join(const poly_impl &a, const poly_impl &b) {
  if (a.bot)
    return b;
  if (b.bot)
    return a;
  std::vector<hvec> rays = a.rays, lines = a.lines;
  rays.insert(rays.end(), b.rays.begin(), b.rays.end());
  lines.insert(lines.end(), b.lines.begin(), b.lines.end());
  return poly_from_gens(a.nv, std::move(rays), std::move(lines));
}

poly_impl poly_meet(const poly_impl &a, const poly_impl &b) {
  if (a.bot)
    return a;
  if (b.bot)
    return b;
  std::vector<hvec> ineq = a.ineq, eq = a.eq;
  ineq.insert(ineq.end(), b.ineq.begin(), b.ineq.end());
  eq.insert(eq.end(), b.eq.begin(), b.eq.end());
  return poly_from_rows(a.nv, std::move(ineq), std::move(eq));
}

poly_impl poly_widen(const poly_impl &a, const poly_impl &b) {
  if (a.bot)
    return b;
  if (b.bot)
    return a;
  auto satisfied = [&](const hvec &row) {
    for (const auto &r : b.rays)
      if (dot(row, r) < 0)
        return false;
    for (const auto &l : b.lines)
      if (dot(row, l) != 0)
        return false;
    return true;
  };
  std::vector<hvec> keep;
  for (const auto &r : a.ineq)
    if (satisfied(r))
      keep.push_back(r);
  for (const auto &r : a.eq) {
    hvec m(r.size());
    for (size_t i = 0; i < r.size(); ++i)
      m[i] = -r[i];
    if (satisfied(r))
      keep.push_back(r);
    if (satisfied(m))
      keep.push_back(std::move(m));
  }
  return poly_from_rows(a.nv, std::move(keep), {});
}

poly_impl poly_havoc(const poly_impl &a, int var) {
  if (a.bot)
    return a;
  std::vector<hvec> lines = a.lines;
  hvec e(static_cast<size_t>(a.nv) + 1, 0);
  e[static_cast<size_t>(var) + 1] = 1;
  lines.push_back(std::move(e));
  return poly_from_gens(a.nv, a.rays, std::move(lines));
}

poly_impl poly_assign(const poly_impl &a, int var, const lin_form &f) {
  if (a.bot)
    return a;
  if (f.cst.is_empty())
    return poly_impl::bottom(a.nv);
  size_t vi = static_cast<size_t>(var) + 1;
  // base image with the low end of the constant; the rest of the interval
  // is restored as a Minkowski segment / ray / line along e_var
  bool lo_fin = f.cst.lo.is_finite(), hi_fin = f.cst.hi.is_finite();
  int_t base = lo_fin ? f.cst.lo.v : (hi_fin ? f.cst.hi.v : int_t(0));
  auto image = [&](const hvec &g) {
    hvec r = g;
    int_t nv = base * g[0];
    for (const auto &[j, c] : f.coef)
      nv += c * g[static_cast<size_t>(j) + 1];
    r[vi] = nv;
    scale_down(r);
    return r;
  };
  std::vector<hvec> rays, lines;
  for (const auto &l : a.lines) {
    hvec g = image(l);
    if (is_zero(g))
      continue; // the assigned variable absorbed this degree of freedom
    canon_line(g);
    lines.push_back(std::move(g));
  }
  for (const auto &r : a.rays) {
    hvec g = image(r);
    if (!is_zero(g))
      rays.push_back(std::move(g));
  }
  if (lo_fin && hi_fin && f.cst.lo < f.cst.hi) {
    int_t width = f.cst.hi.v - f.cst.lo.v;
    size_t npoints = rays.size();
    for (size_t i = 0; i < npoints; ++i) {
      if (rays[i][0] > 0) {
        hvec g = rays[i];
        g[vi] += width * g[0];
        scale_down(g);
        rays.push_back(std::move(g));
      }
    }
  } else if (!lo_fin || !hi_fin) {
    hvec e(static_cast<size_t>(a.nv) + 1, 0);
    e[vi] = 1;
    if (!lo_fin && !hi_fin) {
      lines.push_back(std::move(e));
    } else if (!hi_fin) {
      rays.push_back(std::move(e));
    } else {
      for (auto &x : e)
        x = -x;
      e[vi] = -1;
      rays.push_back(std::move(e));
    }
  }
  return poly_from_gens(a.nv, std::move(rays), std::move(lines));
}

itv poly_impl::var_bounds(int k) const {
  if (bot)
    return itv::empty();
  size_t vi = static_cast<size_t>(k) + 1;
  for (const auto &l : lines)
    if (l[vi] != 0)
      return itv::top();
  itv r = itv::empty();
  bool lo_inf = false, hi_inf = false;
  // best rational value among vertices, tracked as num/den with den > 0
  int_t lo_n, lo_d = 0, hi_n, hi_d = 0;
  for (const auto &g : rays) {
    if (g[0] == 0) {
      if (g[vi] > 0)
        hi_inf = true;
      else if (g[vi] < 0)
        lo_inf = true;
      continue;
    }
    const int_t &num = g[vi];
    const int_t &den = g[0];
    if (lo_d == 0 || num * lo_d < lo_n * den) {
      lo_n = num;
      lo_d = den;
    }
    if (hi_d == 0 || num * hi_d > hi_n * den) {
      hi_n = num;
      hi_d = den;
    }
  }
  if (lo_d == 0)
    return itv::empty(); // no vertex: empty (callers reached via !bot won't)
  r.lo = lo_inf ? ext_int::neg_inf() : ext_int(ceil_div(lo_n, lo_d));
  r.hi = hi_inf ? ext_int::pos_inf() : ext_int(floor_div(hi_n, hi_d));
  return r;
}

bool poly_contains(const poly_impl &a, std::span<const int_t> p) {
  if (a.bot)
    return false;
  hvec y(static_cast<size_t>(a.nv) + 1);
  y[0] = 1;
  for (int i = 0; i < a.nv; ++i)
    y[static_cast<size_t>(i) + 1] = p[static_cast<size_t>(i)];
  for (const auto &c : a.ineq)
    if (dot(c, y) < 0)
      return false;
  for (const auto &c : a.eq)
    if (dot(c, y) != 0)
      return false;
  return true;
}

} // namespace famalyze
