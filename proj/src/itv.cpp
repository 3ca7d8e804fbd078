#include "famalyze/absdom.hpp"

namespace famalyze {

const char *to_string(domain_kind k) {
  switch (k) {
  case domain_kind::interval: return "interval";
  case domain_kind::octagon: return "octagon";
  case domain_kind::polyhedra: return "polyhedra";
  }
  return "?";
}

std::optional<domain_kind> parse_domain(const std::string &s) {
  if (s == "interval" || s == "int" || s == "box")
    return domain_kind::interval;
  if (s == "octagon" || s == "oct")
    return domain_kind::octagon;
  if (s == "polyhedra" || s == "poly" || s == "polyhedron")
    return domain_kind::polyhedra;
  return std::nullopt;
}

itv itv_join(const itv &a, const itv &b) {
  if (a.is_empty())
    return b;
  if (b.is_empty())
    return a;
  return {min(a.lo, b.lo), max(a.hi, b.hi)};
}

itv itv_meet(const itv &a, const itv &b) {
  if (a.is_empty() || b.is_empty())
    return itv::empty();
  return {max(a.lo, b.lo), min(a.hi, b.hi)};
}

itv itv_add(const itv &a, const itv &b) {
  if (a.is_empty() || b.is_empty())
    return itv::empty();
  return {a.lo + b.lo, a.hi + b.hi};
}

itv itv_neg(const itv &a) {
  if (a.is_empty())
    return itv::empty();
  return {-a.hi, -a.lo};
}

itv itv_sub(const itv &a, const itv &b) { return itv_add(a, itv_neg(b)); }

itv itv_mul(const itv &a, const itv &b) {
  if (a.is_empty() || b.is_empty())
    return itv::empty();
  ext_int c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
  return {min(min(c1, c2), min(c3, c4)), max(max(c1, c2), max(c3, c4))};
}

bool itv_leq(const itv &a, const itv &b) {
  if (a.is_empty())
    return true;
  if (b.is_empty())
    return false;
  return !(a.lo < b.lo) && !(b.hi < a.hi);
}

namespace {

ext_int ediv_floor(const ext_int &a, const int_t &b) {
  if (!a.is_finite())
    return b > 0 ? a : -a;
  return ext_int(floor_div(a.v, b));
}

ext_int ediv_ceil(const ext_int &a, const int_t &b) {
  if (!a.is_finite())
    return b > 0 ? a : -a;
  return ext_int(ceil_div(a.v, b));
}

// feasible u with u*v in t for some v in f, f subset of [1,+oo)
itv div_range_pos(const itv &t, const itv &f) {
  // f.lo >= 1; f.hi may be +oo
  ext_int lo, hi;
  if (t.lo.is_neg_inf()) {
    lo = ext_int::neg_inf();
  } else if (t.lo.v > 0) {
    lo = f.hi.is_pos_inf() ? ext_int(1) : ediv_ceil(t.lo, f.hi.v);
  } else {
    lo = ediv_ceil(t.lo, f.lo.v);
  }
  if (t.hi.is_pos_inf()) {
    hi = ext_int::pos_inf();
  } else if (t.hi.v < 0) {
    hi = f.hi.is_pos_inf() ? ext_int(-1) : ediv_floor(t.hi, f.hi.v);
  } else {
    hi = ediv_floor(t.hi, f.lo.v);
  }
  return {lo, hi};
}

} // namespace

std::optional<itv> itv_mul_inv(const itv &t, const itv &f) {
  if (t.is_empty() || f.is_empty())
    return itv::empty();
  bool f_zero = f.contains(0);
  bool t_zero = t.contains(0);
  if (f_zero && t_zero)
    return std::nullopt; // any u works via v = 0
  itv acc = itv::empty();
  itv fp = itv_meet(f, itv{ext_int(1), ext_int::pos_inf()});
  if (!fp.is_empty())
    acc = itv_join(acc, div_range_pos(t, fp));
  itv fn = itv_meet(f, itv{ext_int::neg_inf(), ext_int(-1)});
  if (!fn.is_empty())
    acc = itv_join(acc, itv_neg(div_range_pos(t, itv_neg(fn))));
  // v = 0 contributes only when 0 in t, which the early exit covered
  return acc;
}

} // namespace famalyze
