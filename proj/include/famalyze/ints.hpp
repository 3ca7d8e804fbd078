#pragma once

#include <cassert>
#include <compare>
#include <gmpxx.h>
#include <string>

namespace famalyze {

// All coefficient and bound arithmetic is arbitrary precision.
using int_t = mpz_class;

inline int_t gcd_abs(const int_t &a, const int_t &b) {
  int_t r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline int_t floor_div(const int_t &a, const int_t &b) {
  assert(b != 0);
  int_t q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline int_t ceil_div(const int_t &a, const int_t &b) {
  assert(b != 0);
  int_t q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Element of Z extended with -oo/+oo. Used for interval bounds and DBM
// entries; +oo + -oo is a programming error, not a value.
struct ext_int {
  int sgn = 0; // -1 = -oo, 0 = finite, +1 = +oo
  int_t v;

  ext_int() = default;
  ext_int(int_t x) : sgn(0), v(std::move(x)) {} // NOLINT(google-explicit-constructor)
  ext_int(long x) : sgn(0), v(x) {}             // NOLINT(google-explicit-constructor)

  static ext_int pos_inf() { return ext_int{+1, 0}; }
  static ext_int neg_inf() { return ext_int{-1, 0}; }

  bool is_finite() const { return sgn == 0; }
  bool is_pos_inf() const { return sgn > 0; }
  bool is_neg_inf() const { return sgn < 0; }

private:
  ext_int(int s, int_t x) : sgn(s), v(std::move(x)) {}
};

inline bool operator==(const ext_int &a, const ext_int &b) {
  if (a.sgn != b.sgn)
    return false;
  return a.sgn != 0 || a.v == b.v;
}

inline std::strong_ordering operator<=>(const ext_int &a, const ext_int &b) {
  if (a.sgn != b.sgn)
    return a.sgn <=> b.sgn;
  if (a.sgn != 0)
    return std::strong_ordering::equal;
  return a.v < b.v   ? std::strong_ordering::less
         : a.v > b.v ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
}

inline ext_int operator-(const ext_int &a) {
  if (a.is_pos_inf())
    return ext_int::neg_inf();
  if (a.is_neg_inf())
    return ext_int::pos_inf();
  return ext_int(-a.v);
}

inline ext_int operator+(const ext_int &a, const ext_int &b) {
  if (a.is_finite() && b.is_finite())
    return ext_int(a.v + b.v);
  assert(!(a.is_pos_inf() && b.is_neg_inf()));
  assert(!(a.is_neg_inf() && b.is_pos_inf()));
  return a.is_finite() ? b : a;
}

inline ext_int operator-(const ext_int &a, const ext_int &b) { return a + (-b); }

// Interval-semantics product: 0 * oo = 0.
inline ext_int operator*(const ext_int &a, const ext_int &b) {
  if (a.is_finite() && b.is_finite())
    return ext_int(a.v * b.v);
  int sa = a.is_finite() ? sgn(a.v) : a.sgn;
  int sb = b.is_finite() ? sgn(b.v) : b.sgn;
  if (sa == 0 || sb == 0)
    return ext_int(0);
  return sa * sb > 0 ? ext_int::pos_inf() : ext_int::neg_inf();
}

inline const ext_int &min(const ext_int &a, const ext_int &b) { return b < a ? b : a; }
inline const ext_int &max(const ext_int &a, const ext_int &b) { return a < b ? b : a; }

inline std::string to_string(const ext_int &a) {
  if (a.is_pos_inf())
    return "+oo";
  if (a.is_neg_inf())
    return "-oo";
  return a.v.get_str();
}

} // namespace famalyze
