#include "dom_impl.hpp"

namespace famalyze {

itv itv_eval(const expr &e, const var_universe &u, const bounds_fn &bounds) {
  switch (e.k) {
  case expr::kind::num:
    return itv::point(e.lo);
  case expr::kind::ivl:
    return {ext_int(e.lo), ext_int(e.hi)};
  case expr::kind::var: {
    int i = u.index_of(e.name);
    if (i < 0)
      throw universe_mismatch("variable '" + e.name + "' not in universe");
    return bounds(i);
  }
  case expr::kind::bin: {
    itv a = itv_eval(*e.a, u, bounds);
    itv b = itv_eval(*e.b, u, bounds);
    switch (e.op) {
    case binop::add: return itv_add(a, b);
    case binop::sub: return itv_sub(a, b);
    case binop::mul: return itv_mul(a, b);
    }
    break;
  }
  case expr::kind::neg:
    return itv_neg(itv_eval(*e.a, u, bounds));
  }
  return itv::top();
}

lin_form linearize(const expr &e, const var_universe &u, const bounds_fn &bounds) {
  switch (e.k) {
  case expr::kind::num:
    return {{}, itv::point(e.lo), true};
  case expr::kind::ivl:
    return {{}, itv{ext_int(e.lo), ext_int(e.hi)}, true};
  case expr::kind::var: {
    int i = u.index_of(e.name);
    if (i < 0)
      throw universe_mismatch("variable '" + e.name + "' not in universe");
    lin_form f;
    f.coef.emplace(i, 1);
    return f;
  }
  case expr::kind::neg: {
    lin_form f = linearize(*e.a, u, bounds);
    for (auto &[v, c] : f.coef)
      c = -c;
    f.cst = itv_neg(f.cst);
    return f;
  }
  case expr::kind::bin: {
    lin_form a = linearize(*e.a, u, bounds);
    lin_form b = linearize(*e.b, u, bounds);
    if (e.op == binop::add || e.op == binop::sub) {
      lin_form r;
      r.exact = a.exact && b.exact;
      r.coef = std::move(a.coef);
      if (e.op == binop::add) {
        for (const auto &[v, c] : b.coef) {
          auto [it, fresh] = r.coef.emplace(v, c);
          if (!fresh && (it->second += c) == 0)
            r.coef.erase(it);
        }
        r.cst = itv_add(a.cst, b.cst);
      } else {
        for (const auto &[v, c] : b.coef) {
          auto [it, fresh] = r.coef.emplace(v, -c);
          if (!fresh && (it->second -= c) == 0)
            r.coef.erase(it);
        }
        r.cst = itv_sub(a.cst, b.cst);
      }
      return r;
    }
    // mul: a singleton constant scales the other side, anything else
    // collapses to an interval
    auto singleton = [](const lin_form &f) -> const int_t * {
      if (f.coef.empty() && f.cst.lo.is_finite() && f.cst.lo == f.cst.hi)
        return &f.cst.lo.v;
      return nullptr;
    };
    const int_t *ca = singleton(a);
    const int_t *cb = singleton(b);
    if (cb || ca) {
      lin_form &other = cb ? a : b;
      const int_t k = cb ? *cb : *ca;
      if (k == 0)
        return {{}, itv::point(0), other.exact};
      lin_form r;
      r.exact = other.exact;
      for (auto &[v, c] : other.coef)
        r.coef.emplace(v, c * k);
      r.cst = itv_mul(other.cst, itv::point(k));
      return r;
    }
    itv va = itv_eval(*e.a, u, bounds);
    itv vb = itv_eval(*e.b, u, bounds);
    return {{}, itv_mul(va, vb), false};
  }
  }
  return {{}, itv::top(), false};
}

namespace {

struct hc4 {
  const var_universe &u;
  std::vector<itv> &box;
  bool empty = false;

  itv forward(const expr &e) {
    switch (e.k) {
    case expr::kind::num:
      return itv::point(e.lo);
    case expr::kind::ivl:
      return {ext_int(e.lo), ext_int(e.hi)};
    case expr::kind::var:
      return box[static_cast<size_t>(u.index_of(e.name))];
    case expr::kind::bin: {
      itv a = forward(*e.a), b = forward(*e.b);
      switch (e.op) {
      case binop::add: return itv_add(a, b);
      case binop::sub: return itv_sub(a, b);
      case binop::mul: return itv_mul(a, b);
      }
      break;
    }
    case expr::kind::neg:
      return itv_neg(forward(*e.a));
    }
    return itv::top();
  }

  void backward(const expr &e, const itv &target) {
    if (empty)
      return;
    itv t = itv_meet(target, forward(e));
    if (t.is_empty()) {
      empty = true;
      return;
    }
    switch (e.k) {
    case expr::kind::num:
    case expr::kind::ivl:
      return; // meeting already checked feasibility
    case expr::kind::var: {
      size_t i = static_cast<size_t>(u.index_of(e.name));
      box[i] = itv_meet(box[i], t);
      if (box[i].is_empty())
        empty = true;
      return;
    }
    case expr::kind::bin: {
      itv fa = forward(*e.a), fb = forward(*e.b);
      switch (e.op) {
      case binop::add:
        backward(*e.a, itv_sub(t, fb));
        backward(*e.b, itv_sub(t, fa));
        return;
      case binop::sub:
        backward(*e.a, itv_add(t, fb));
        backward(*e.b, itv_sub(fa, t));
        return;
      case binop::mul: {
        if (auto q = itv_mul_inv(t, fb))
          backward(*e.a, *q);
        if (empty)
          return;
        if (auto q = itv_mul_inv(t, fa))
          backward(*e.b, *q);
        return;
      }
      }
      return;
    }
    case expr::kind::neg:
      backward(*e.a, itv_neg(t));
      return;
    }
  }
};

} // namespace

bool hc4_refine_ge0(const expr &g, const var_universe &u, std::vector<itv> &box) {
  hc4 h{u, box};
  itv root = h.forward(g);
  itv t = itv_meet(root, itv{ext_int(0), ext_int::pos_inf()});
  if (t.is_empty())
    return false;
  h.backward(g, t);
  return !h.empty;
}

void box_impl::normalize() {
  if (bot)
    return;
  for (const auto &x : v)
    if (x.is_empty()) {
      bot = true;
      for (auto &y : v)
        y = itv::top();
      return;
    }
}

bool box_leq(const box_impl &a, const box_impl &b) {
  if (a.bot)
    return true;
  if (b.bot)
    return false;
  for (int i = 0; i < a.n(); ++i)
    if (!itv_leq(a.v[static_cast<size_t>(i)], b.v[static_cast<size_t>(i)]))
      return false;
  return true;
}

box_impl box_join(const box_impl &a, const box_impl &b) {
  if (a.bot)
    return b;
  if (b.bot)
    return a;
  box_impl r = a;
  for (int i = 0; i < a.n(); ++i)
    r.v[static_cast<size_t>(i)] = itv_join(a.v[static_cast<size_t>(i)], b.v[static_cast<size_t>(i)]);
  return r;
}

box_impl box_meet(const box_impl &a, const box_impl &b) {
  if (a.bot)
    return a;
  if (b.bot)
    return b;
  box_impl r = a;
  for (int i = 0; i < a.n(); ++i)
    r.v[static_cast<size_t>(i)] = itv_meet(a.v[static_cast<size_t>(i)], b.v[static_cast<size_t>(i)]);
  r.normalize();
  return r;
}

box_impl box_widen(const box_impl &a, const box_impl &b) {
  if (a.bot)
    return b;
  if (b.bot)
    return a;
  box_impl r = a;
  for (int i = 0; i < a.n(); ++i) {
    const itv &x = a.v[static_cast<size_t>(i)];
    const itv &y = b.v[static_cast<size_t>(i)];
    itv &o = r.v[static_cast<size_t>(i)];
    o.lo = y.lo < x.lo ? ext_int::neg_inf() : x.lo;
    o.hi = x.hi < y.hi ? ext_int::pos_inf() : x.hi;
  }
  return r;
}

box_impl box_narrow(const box_impl &a, const box_impl &b) {
  if (a.bot || b.bot)
    return a.bot ? a : b;
  box_impl r = a;
  for (int i = 0; i < a.n(); ++i) {
    const itv &x = a.v[static_cast<size_t>(i)];
    const itv &y = b.v[static_cast<size_t>(i)];
    itv &o = r.v[static_cast<size_t>(i)];
    o.lo = x.lo.is_neg_inf() ? y.lo : x.lo;
    o.hi = x.hi.is_pos_inf() ? y.hi : x.hi;
  }
  r.normalize();
  return r;
}

} // namespace famalyze
