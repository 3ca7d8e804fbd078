#include "famalyze/linexpr.hpp"

#include <sstream>

namespace famalyze {

var_universe::var_universe(std::vector<std::string> names) {
  auto idx = std::make_shared<std::map<std::string, int>>();
  for (size_t i = 0; i < names.size(); ++i)
    (*idx)[names[i]] = static_cast<int>(i);
  names_ = std::make_shared<std::vector<std::string>>(std::move(names));
  index_ = std::move(idx);
}

int var_universe::index_of(const std::string &n) const {
  if (!index_)
    return -1;
  auto it = index_->find(n);
  return it == index_->end() ? -1 : it->second;
}

void lin_expr::add_term(int var, const int_t &c) {
  if (c == 0)
    return;
  auto it = coef.find(var);
  if (it == coef.end()) {
    coef.emplace(var, c);
  } else {
    it->second += c;
    if (it->second == 0)
      coef.erase(it);
  }
}

lin_constraint canonicalize(lin_expr e) {
  for (auto it = e.coef.begin(); it != e.coef.end();) {
    if (it->second == 0)
      it = e.coef.erase(it);
    else
      ++it;
  }
  if (e.coef.empty()) {
    // trivial: collapse to 0>=0 or the designated -1>=0
    e.cst = e.cst >= 0 ? 0 : -1;
    return lin_constraint{std::move(e)};
  }
  int_t g = 0;
  for (const auto &[v, c] : e.coef)
    g = gcd_abs(g, c);
  if (g > 1) {
    for (auto &[v, c] : e.coef)
      c /= g;
    // valid over Z: a*x >= -b  <=>  (a/g)*x >= ceil(-b/g)
    e.cst = floor_div(e.cst, g);
  }
  return lin_constraint{std::move(e)};
}

lin_constraint negate(const lin_constraint &c) {
  lin_expr e;
  for (const auto &[v, k] : c.e.coef)
    e.coef.emplace(v, -k);
  e.cst = -c.e.cst - 1;
  return canonicalize(std::move(e));
}

int cmp_constraint(const lin_constraint &a, const lin_constraint &b, int nvars) {
  static const int_t zero = 0;
  for (int i = nvars - 1; i >= 0; --i) {
    auto ia = a.e.coef.find(i);
    auto ib = b.e.coef.find(i);
    const int_t &ca = ia == a.e.coef.end() ? zero : ia->second;
    const int_t &cb = ib == b.e.coef.end() ? zero : ib->second;
    if (ca != cb)
      return ca < cb ? -1 : 1;
  }
  if (a.e.cst != b.e.cst)
    return a.e.cst < b.e.cst ? -1 : 1;
  return 0;
}

bool eval(const lin_constraint &c, std::span<const int_t> valuation) {
  int_t acc = c.e.cst;
  for (const auto &[v, k] : c.e.coef)
    acc += k * valuation[static_cast<size_t>(v)];
  return acc >= 0;
}

std::string render_expr(const lin_expr &e, const var_universe &u) {
  std::ostringstream os;
  bool first = true;
  for (const auto &[v, k] : e.coef) {
    if (first) {
      if (k == -1)
        os << "-";
      else if (k != 1)
        os << k.get_str();
    } else {
      os << (k > 0 ? "+" : "-");
      int_t a = abs(k);
      if (a != 1)
        os << int_t(a).get_str();
    }
    os << u.name(v);
    first = false;
  }
  if (first) {
    os << e.cst.get_str();
  } else if (e.cst != 0) {
    os << (e.cst > 0 ? "+" : "-") << int_t(abs(e.cst)).get_str();
  }
  return os.str();
}

std::string render(const lin_constraint &c, const var_universe &u) {
  return render_expr(c.e, u) + ">=0";
}

} // namespace famalyze
