#include "famalyze/tuple_dom.hpp"

#include "famalyze/diag.hpp"

namespace famalyze {

namespace {

void check_shape(const tuple_state &a, const tuple_state &b) {
  if (a.elems.size() != b.elems.size())
    throw shape_mismatch("tuple states of different width");
}

// componentwise map; the optional OpenMP split is the only concurrency in
// the baseline and is off unless explicitly requested
template <class F>
tuple_state map2(const tuple_state &a, const tuple_state &b, bool parallel, F f) {
  check_shape(a, b);
  tuple_state r;
  r.space = a.space;
  r.configs = a.configs;
  r.elems.resize(a.elems.size());
  long n = static_cast<long>(a.elems.size());
#ifdef FAMALYZE_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (parallel && n > 64)
#endif
  for (long i = 0; i < n; ++i)
    r.elems[static_cast<size_t>(i)] =
        f(a.elems[static_cast<size_t>(i)], b.elems[static_cast<size_t>(i)]);
  (void)parallel;
  return r;
}

template <class F> tuple_state map1(const tuple_state &a, bool parallel, F f) {
  tuple_state r;
  r.space = a.space;
  r.configs = a.configs;
  r.elems.resize(a.elems.size());
  long n = static_cast<long>(a.elems.size());
#ifdef FAMALYZE_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (parallel && n > 64)
#endif
  for (long i = 0; i < n; ++i)
    r.elems[static_cast<size_t>(i)] = f(a.elems[static_cast<size_t>(i)]);
  (void)parallel;
  return r;
}

} // namespace

tuple_state tuple_top(std::shared_ptr<const feature_space> sp,
                      std::shared_ptr<const std::vector<config>> ks, domain_kind leaf,
                      var_universe vars) {
  tuple_state s;
  s.space = std::move(sp);
  s.configs = std::move(ks);
  s.elems.assign(s.configs->size(), abstract_elem::top(leaf, std::move(vars)));
  return s;
}

tuple_state tuple_bottom_like(const tuple_state &s) {
  tuple_state r;
  r.space = s.space;
  r.configs = s.configs;
  if (!s.elems.empty()) {
    abstract_elem bot =
        abstract_elem::bottom(s.elems.front().kind(), s.elems.front().universe());
    r.elems.assign(s.elems.size(), bot);
  }
  return r;
}

bool tuple_leq(const tuple_state &a, const tuple_state &b) {
  check_shape(a, b);
  for (size_t i = 0; i < a.elems.size(); ++i)
    if (!leq(a.elems[i], b.elems[i]))
      return false;
  return true;
}

bool tuple_is_bottom(const tuple_state &s) {
  for (const auto &e : s.elems)
    if (!e.is_bottom())
      return false;
  return true;
}

tuple_state tuple_join(const tuple_state &a, const tuple_state &b, bool parallel) {
  return map2(a, b, parallel, [](const auto &x, const auto &y) { return join(x, y); });
}

tuple_state tuple_meet(const tuple_state &a, const tuple_state &b, bool parallel) {
  return map2(a, b, parallel, [](const auto &x, const auto &y) { return meet(x, y); });
}

tuple_state tuple_widen(const tuple_state &a, const tuple_state &b, bool parallel) {
  return map2(a, b, parallel, [](const auto &x, const auto &y) { return widen(x, y); });
}

tuple_state tuple_narrow(const tuple_state &a, const tuple_state &b, bool parallel) {
  return map2(a, b, parallel, [](const auto &x, const auto &y) { return narrow(x, y); });
}

tuple_state tuple_assign(const tuple_state &s, const std::string &var, const expr &e,
                         bool parallel) {
  return map1(s, parallel, [&](const auto &x) { return x.assign(var, e); });
}

tuple_state tuple_havoc(const tuple_state &s, const std::string &var, bool parallel) {
  return map1(s, parallel, [&](const auto &x) { return x.havoc(var); });
}

tuple_state tuple_filter(const tuple_state &s, const cond &c, bool parallel) {
  return map1(s, parallel, [&](const auto &x) { return x.filter(c); });
}

tuple_state tuple_feat_filter(const tuple_state &s, const cond &theta) {
  tuple_state r;
  r.space = s.space;
  r.configs = s.configs;
  r.elems.reserve(s.elems.size());
  abstract_elem bot;
  bool have_bot = false;
  for (size_t i = 0; i < s.elems.size(); ++i) {
    if (sat(*s.space, (*s.configs)[i], theta)) {
      r.elems.push_back(s.elems[i]);
    } else {
      if (!have_bot) {
        bot = abstract_elem::bottom(s.elems[i].kind(), s.elems[i].universe());
        have_bot = true;
      }
      r.elems.push_back(bot);
    }
  }
  return r;
}

} // namespace famalyze
