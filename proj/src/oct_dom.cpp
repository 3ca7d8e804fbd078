#include "dom_impl.hpp"

namespace famalyze {

namespace {

constexpr int bar(int i) { return i ^ 1; }

ext_int half_floor(const ext_int &a) {
  if (!a.is_finite())
    return a;
  return ext_int(floor_div(a.v, 2));
}

// Tight closure for integer octagons: strong closure interleaving the
// strengthening step, then tightening unary bounds to even values and
// strengthening once more. Sets bot on an inconsistent matrix.
bool close_dbm(std::vector<ext_int> &m, int nv) {
  int d = 2 * nv;
  auto at = [&](int i, int j) -> ext_int & {
    return m[static_cast<size_t>(i) * static_cast<size_t>(d) + static_cast<size_t>(j)];
  };
  auto relax = [&](int i, int j, const ext_int &w) {
    if (w < at(i, j))
      at(i, j) = w;
  };
  for (int k = 0; k < nv; ++k) {
    int kp = 2 * k, km = 2 * k + 1;
    for (int i = 0; i < d; ++i) {
      const ext_int ikp = at(i, kp), ikm = at(i, km);
      for (int j = 0; j < d; ++j) {
        relax(i, j, ikp + at(kp, j));
        relax(i, j, ikm + at(km, j));
        relax(i, j, ikp + at(kp, km) + at(km, j));
        relax(i, j, ikm + at(km, kp) + at(kp, j));
      }
    }
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        relax(i, j, half_floor(at(i, bar(i))) + half_floor(at(bar(j), j)));
  }
  for (int i = 0; i < d; ++i) {
    ext_int &u = at(i, bar(i));
    if (u.is_finite())
      u = ext_int(2 * floor_div(u.v, 2));
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      relax(i, j, half_floor(at(i, bar(i))) + half_floor(at(bar(j), j)));
  for (int i = 0; i < d; ++i) {
    if (at(i, i) < ext_int(0))
      return false;
    at(i, i) = ext_int(0);
    if (at(i, bar(i)) + at(bar(i), i) < ext_int(0))
      return false;
  }
  return true;
}

std::vector<ext_int> top_matrix(int nv) {
  int d = 2 * nv;
  std::vector<ext_int> m(static_cast<size_t>(d) * static_cast<size_t>(d),
                         ext_int::pos_inf());
  for (int i = 0; i < d; ++i)
    m[static_cast<size_t>(i) * static_cast<size_t>(d) + static_cast<size_t>(i)] = ext_int(0);
  return m;
}

// write bound V_j - V_i <= c together with its coherent mirror
void put(std::vector<ext_int> &m, int nv, int i, int j, const ext_int &c) {
  int d = 2 * nv;
  auto at = [&](int a, int b) -> ext_int & {
    return m[static_cast<size_t>(a) * static_cast<size_t>(d) + static_cast<size_t>(b)];
  };
  if (c < at(i, j))
    at(i, j) = c;
  if (c < at(bar(j), bar(i)))
    at(bar(j), bar(i)) = c;
}

} // namespace

oct_impl oct_impl::top(int n) {
  oct_impl o;
  o.nv = n;
  o.raw = top_matrix(n);
  o.closed = o.raw;
  return o;
}

oct_impl oct_impl::bottom(int n) {
  oct_impl o;
  o.bot = true;
  o.nv = n;
  return o;
}

oct_impl oct_impl::from_raw(int n, std::vector<ext_int> raw) {
  oct_impl o;
  o.nv = n;
  o.closed = raw;
  if (!close_dbm(o.closed, n))
    return bottom(n);
  o.raw = std::move(raw);
  return o;
}

itv oct_impl::var_bounds(int k) const {
  if (bot)
    return itv::empty();
  itv r;
  const ext_int &up = at(closed, 2 * k + 1, 2 * k); //  2x <= c
  const ext_int &dn = at(closed, 2 * k, 2 * k + 1); // -2x <= c
  if (up.is_finite())
    r.hi = ext_int(floor_div(up.v, 2));
  if (dn.is_finite())
    r.lo = ext_int(-floor_div(dn.v, 2));
  return r;
}

bool oct_leq(const oct_impl &a, const oct_impl &b) {
  if (a.bot)
    return true;
  if (b.bot)
    return false;
  for (size_t i = 0; i < a.closed.size(); ++i)
    if (b.closed[i] < a.closed[i])
      return false;
  return true;
}

oct_impl oct_join(const oct_impl &a, const oct_impl &b) {
  if (a.bot)
    return b;
  if (b.bot)
    return a;
  oct_impl r;
  r.nv = a.nv;
  r.closed.resize(a.closed.size());
  for (size_t i = 0; i < a.closed.size(); ++i)
    r.closed[i] = max(a.closed[i], b.closed[i]);
  // entrywise max of strongly closed matrices is strongly closed
  r.raw = r.closed;
  return r;
}

oct_impl oct_meet(const oct_impl &a, const oct_impl &b) {
  if (a.bot)
    return a;
  if (b.bot)
    return b;
  std::vector<ext_int> m(a.closed.size());
  for (size_t i = 0; i < m.size(); ++i)
    m[i] = min(a.closed[i], b.closed[i]);
  return oct_impl::from_raw(a.nv, std::move(m));
}

oct_impl oct_widen(const oct_impl &a, const oct_impl &b) {
  if (a.bot)
    return b;
  if (b.bot)
    return a;
  oct_impl r;
  r.nv = a.nv;
  r.raw.resize(a.raw.size());
  for (size_t i = 0; i < a.raw.size(); ++i)
    r.raw[i] = a.raw[i] < b.closed[i] ? ext_int::pos_inf() : a.raw[i];
  r.closed = r.raw;
  if (!close_dbm(r.closed, r.nv))
    return oct_impl::bottom(a.nv);
  return r;
}

oct_impl oct_narrow(const oct_impl &a, const oct_impl &b) {
  if (a.bot || b.bot)
    return a.bot ? a : b;
  std::vector<ext_int> m(a.raw.size());
  for (size_t i = 0; i < m.size(); ++i)
    m[i] = a.raw[i].is_pos_inf() ? b.closed[i] : a.raw[i];
  return oct_impl::from_raw(a.nv, std::move(m));
}

oct_impl oct_havoc(const oct_impl &a, int var) {
  if (a.bot)
    return a;
  oct_impl r = a;
  int d = r.dim();
  auto clear = [&](std::vector<ext_int> &m) {
    for (int row : {2 * var, 2 * var + 1})
      for (int j = 0; j < d; ++j) {
        m[static_cast<size_t>(row) * static_cast<size_t>(d) + static_cast<size_t>(j)] =
            row == j ? ext_int(0) : ext_int::pos_inf();
        m[static_cast<size_t>(j) * static_cast<size_t>(d) + static_cast<size_t>(row)] =
            row == j ? ext_int(0) : ext_int::pos_inf();
      }
  };
  clear(r.closed); // forgetting preserves closure
  r.raw = r.closed;
  return r;
}

// residual evaluation of an affine form over the closed DBM; forms that
// reduce to +/-v or +/-v -/+ w read the dedicated entries for precision
static itv eval_form(const oct_impl &o, const lin_form &f) {
  if (f.coef.size() == 1) {
    auto [v, c] = *f.coef.begin();
    if (c == 1 || c == -1) {
      itv b = o.var_bounds(v);
      return itv_add(c == 1 ? b : itv_neg(b), f.cst);
    }
  }
  if (f.coef.size() == 2) {
    auto it = f.coef.begin();
    auto [x, cx] = *it++;
    auto [y, cy] = *it;
    if ((cx == 1 || cx == -1) && (cy == 1 || cy == -1)) {
      // bound cx*x + cy*y from the pairwise entries
      auto entry_ub = [&](int i, int j) { return o.at(o.closed, i, j); };
      ext_int up, dn; // up: cx*x+cy*y <= up; dn: -(cx*x+cy*y) <= dn
      if (cx == 1 && cy == 1) {
        up = entry_ub(2 * x + 1, 2 * y); //  x + y
        dn = entry_ub(2 * x, 2 * y + 1); // -x - y
      } else if (cx == 1 && cy == -1) {
        up = entry_ub(2 * y, 2 * x);     //  x - y
        dn = entry_ub(2 * x, 2 * y);     //  y - x
      } else if (cx == -1 && cy == 1) {
        up = entry_ub(2 * x, 2 * y);
        dn = entry_ub(2 * y, 2 * x);
      } else {
        up = entry_ub(2 * x, 2 * y + 1);
        dn = entry_ub(2 * x + 1, 2 * y);
      }
      itv pair{-dn, up};
      itv indep = itv_add(itv_mul(o.var_bounds(x), itv::point(cx)),
                          itv_mul(o.var_bounds(y), itv::point(cy)));
      return itv_add(itv_meet(pair, indep), f.cst);
    }
  }
  itv acc = f.cst;
  for (const auto &[v, c] : f.coef)
    acc = itv_add(acc, itv_mul(o.var_bounds(v), itv::point(c)));
  return acc;
}

oct_impl oct_assign(const oct_impl &a, int var, const lin_form &f) {
  if (a.bot)
    return a;
  itv val = eval_form(a, f);
  // relations between the new value and every other variable, computed
  // before the old value is forgotten
  int n = a.nv;
  std::vector<itv> diff(static_cast<size_t>(n)), sum(static_cast<size_t>(n));
  for (int y = 0; y < n; ++y) {
    if (y == var)
      continue;
    lin_form fm = f, fp = f;
    auto upd = [&](lin_form &g, int delta) {
      auto [it, fresh] = g.coef.emplace(y, delta);
      if (!fresh && (it->second += delta) == 0)
        g.coef.erase(it);
    };
    upd(fm, -1); // e - y
    upd(fp, +1); // e + y
    diff[static_cast<size_t>(y)] = eval_form(a, fm);
    sum[static_cast<size_t>(y)] = eval_form(a, fp);
  }
  oct_impl h = oct_havoc(a, var);
  std::vector<ext_int> m = std::move(h.closed);
  if (val.is_empty())
    return oct_impl::bottom(n);
  if (val.hi.is_finite())
    put(m, n, 2 * var + 1, 2 * var, ext_int(2 * val.hi.v));
  if (val.lo.is_finite())
    put(m, n, 2 * var, 2 * var + 1, ext_int(-2 * val.lo.v));
  for (int y = 0; y < n; ++y) {
    if (y == var)
      continue;
    const itv &dm = diff[static_cast<size_t>(y)]; // bounds of x - y
    const itv &sp = sum[static_cast<size_t>(y)];  // bounds of x + y
    if (dm.hi.is_finite())
      put(m, n, 2 * y, 2 * var, dm.hi); // x - y <= hi
    if (dm.lo.is_finite())
      put(m, n, 2 * var, 2 * y, -dm.lo); // y - x <= -lo
    if (sp.hi.is_finite())
      put(m, n, 2 * y + 1, 2 * var, sp.hi); // x + y <= hi
    if (sp.lo.is_finite())
      put(m, n, 2 * var, 2 * y + 1, -sp.lo); // -x - y <= -lo
  }
  return oct_impl::from_raw(n, std::move(m));
}

bool oct_constrain(std::vector<ext_int> &m, int n, const lin_constraint &c) {
  // c: sum coef + cst >= 0 with unit coefficients on at most two variables
  const auto &coef = c.e.coef;
  if (coef.empty())
    return true; // trivial handled by caller
  if (coef.size() == 1) {
    auto [v, k] = *coef.begin();
    if (k == 1) { // v >= -cst  ==  -2v <= 2*cst
      put(m, n, 2 * v, 2 * v + 1, ext_int(2 * c.e.cst));
      return true;
    }
    if (k == -1) { // v <= cst
      put(m, n, 2 * v + 1, 2 * v, ext_int(2 * c.e.cst));
      return true;
    }
    return false;
  }
  if (coef.size() == 2) {
    auto it = coef.begin();
    auto [x, cx] = *it++;
    auto [y, cy] = *it;
    if ((cx != 1 && cx != -1) || (cy != 1 && cy != -1))
      return false;
    // cx*x + cy*y >= -cst  ==  -(cx*x + cy*y) <= cst
    if (cx == 1 && cy == 1) // -x - y <= cst
      put(m, n, 2 * x, 2 * y + 1, ext_int(c.e.cst));
    else if (cx == 1 && cy == -1) // y - x <= cst
      put(m, n, 2 * x, 2 * y, ext_int(c.e.cst));
    else if (cx == -1 && cy == 1) // x - y <= cst
      put(m, n, 2 * y, 2 * x, ext_int(c.e.cst));
    else // x + y <= cst
      put(m, n, 2 * x + 1, 2 * y, ext_int(c.e.cst));
    return true;
  }
  return false;
}

std::vector<lin_constraint> oct_constraints(const oct_impl &a) {
  std::vector<lin_constraint> out;
  if (a.bot) {
    out.push_back(false_constraint());
    return out;
  }
  int n = a.nv;
  std::vector<itv> b(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    b[static_cast<size_t>(i)] = a.var_bounds(i);
  for (int i = 0; i < n; ++i) {
    const itv &x = b[static_cast<size_t>(i)];
    if (x.lo.is_finite()) {
      lin_expr e;
      e.add_term(i, 1);
      e.cst = -x.lo.v;
      out.push_back(canonicalize(std::move(e)));
    }
    if (x.hi.is_finite()) {
      lin_expr e;
      e.add_term(i, -1);
      e.cst = x.hi.v;
      out.push_back(canonicalize(std::move(e)));
    }
  }
  // pairwise entries not already implied by the unary bounds
  auto emit = [&](int i, const int_t &ci, int j, const int_t &cj, const ext_int &ub) {
    if (!ub.is_finite())
      return;
    itv impl_b = itv_add(itv_mul(b[static_cast<size_t>(i)], itv::point(ci)),
                         itv_mul(b[static_cast<size_t>(j)], itv::point(cj)));
    if (impl_b.hi.is_finite() && !(ub < impl_b.hi))
      return; // implied
    lin_expr e; // ci*x_i + cj*x_j <= ub
    e.add_term(i, -ci);
    e.add_term(j, -cj);
    e.cst = ub.v;
    out.push_back(canonicalize(std::move(e)));
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      emit(j, 1, i, -1, a.at(a.closed, 2 * i, 2 * j));     // x_j - x_i
      emit(i, 1, j, -1, a.at(a.closed, 2 * j, 2 * i));     // x_i - x_j
      emit(i, 1, j, 1, a.at(a.closed, 2 * i + 1, 2 * j));  // x_i + x_j
      emit(i, -1, j, -1, a.at(a.closed, 2 * i, 2 * j + 1)); // -x_i - x_j
    }
  return out;
}

bool oct_contains(const oct_impl &a, std::span<const int_t> p) {
  if (a.bot)
    return false;
  int n = a.nv;
  auto value = [&](int i) -> int_t { // V_i valuation
    const int_t &x = p[static_cast<size_t>(i / 2)];
    return i % 2 == 0 ? x : int_t(-x);
  };
  int d = 2 * n;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const ext_int &c = a.at(a.closed, i, j);
      if (c.is_finite() && value(j) - value(i) > c.v)
        return false;
    }
  return true;
}

} // namespace famalyze
