#include "famalyze/report.hpp"

#include <sstream>

namespace famalyze {

using nlohmann::json;

namespace {

json elem_to_json(const abstract_elem &a) {
  if (a.is_bottom())
    return "bottom";
  auto cs = a.to_constraints();
  if (cs.empty())
    return "top";
  json arr = json::array();
  for (const auto &c : cs)
    arr.push_back(render(c, a.universe()));
  return arr;
}

json options_to_json(const analysis_options &o) {
  return json{{"backend", to_string(o.backend)},
              {"leaf_domain", to_string(o.leaf_domain)},
              {"node_domain", to_string(o.node_domain)},
              {"widen_delay", o.widen_delay},
              {"narrow_iters", o.narrow_iters},
              {"enum_cap", o.enum_cap}};
}

} // namespace

json tree_to_json(const dtree_ptr &t, const tree_ctx &ctx) {
  if (t->is_leaf())
    return json{{"leaf", elem_to_json(t->leaf)}};
  return json{{"node", render(t->c, ctx.feats)},
              {"true", tree_to_json(t->l, ctx)},
              {"false", tree_to_json(t->r, ctx)}};
}

json tuple_to_json(const tuple_state &s) {
  json arr = json::array();
  for (size_t i = 0; i < s.elems.size(); ++i)
    arr.push_back(json{{"config", describe(*s.space, (*s.configs)[i])},
                       {"state", elem_to_json(s.elems[i])}});
  return arr;
}

json to_json(const invariant_map &inv, const std::string &program_name) {
  json locs = json::array();
  for (int label = 1; label <= inv.num_labels; ++label) {
    const auto &st = inv.at(label);
    json state;
    if (std::holds_alternative<tuple_state>(st))
      state = tuple_to_json(std::get<tuple_state>(st));
    else if (std::holds_alternative<dtree_ptr>(st))
      state = tree_to_json(std::get<dtree_ptr>(st), *inv.tctx);
    else if (std::holds_alternative<abstract_elem>(st))
      state = elem_to_json(std::get<abstract_elem>(st));
    else
      state = nullptr;
    locs.push_back(json{{"label", label}, {"state", std::move(state)}});
  }
  json asserts = json::array();
  for (const auto &[label, parts] : inv.asserts) {
    json ps = json::array();
    for (const auto &p : parts)
      ps.push_back(json{{"cond", p.cond_text}, {"verdict", to_string(p.verdict)}});
    asserts.push_back(json{{"label", label}, {"partitions", std::move(ps)}});
  }
  return json{{"program", program_name},
              {"options", options_to_json(inv.opts)},
              {"locations", std::move(locs)},
              {"asserts", std::move(asserts)}};
}

namespace {

void text_state(std::ostream &os, const location_state &st, const invariant_map &inv) {
  if (std::holds_alternative<tuple_state>(st)) {
    const auto &ts = std::get<tuple_state>(st);
    for (size_t i = 0; i < ts.elems.size(); ++i)
      os << "    [" << describe(*ts.space, (*ts.configs)[i]) << "]  "
         << ts.elems[i].render() << "\n";
  } else if (std::holds_alternative<dtree_ptr>(st)) {
    for (const auto &[text, leaf] : tree_partitions(std::get<dtree_ptr>(st), *inv.tctx))
      os << "    [" << text << "]  " << leaf.render() << "\n";
  } else if (std::holds_alternative<abstract_elem>(st)) {
    os << "    " << std::get<abstract_elem>(st).render() << "\n";
  } else {
    os << "    (not computed)\n";
  }
}

} // namespace

std::string text_report(const invariant_map &inv, const std::string &program_name) {
  std::ostringstream os;
  os << "program: " << program_name << "\n";
  os << "backend: " << to_string(inv.opts.backend)
     << ", leaf domain: " << to_string(inv.opts.leaf_domain);
  if (inv.opts.backend == backend_kind::tree)
    os << ", node domain: " << to_string(inv.opts.node_domain);
  os << "\n\n";
  for (int label = 1; label <= inv.num_labels; ++label) {
    os << "  location " << label << ":\n";
    text_state(os, inv.at(label), inv);
  }
  if (!inv.asserts.empty()) {
    os << "\nasserts:\n";
    for (const auto &[label, parts] : inv.asserts) {
      os << "  location " << label << ":\n";
      for (const auto &p : parts)
        os << "    [" << p.cond_text << "]  " << to_string(p.verdict) << "\n";
    }
  }
  return os.str();
}

std::string text_report(const compare_report &rep, bool affine) {
  std::ostringstream os;
  os << "oracle check: " << rep.n_equal << " equal, " << rep.n_over
     << " sound over-approximations, " << rep.n_unsound << " UNSOUND\n";
  size_t shown = 0;
  for (const auto &d : rep.diffs) {
    if (shown++ >= 20) {
      os << "  ... (" << rep.diffs.size() - 20 << " more)\n";
      break;
    }
    os << "  location " << d.label << " [" << d.config_text << "]: "
       << (d.cls == cmp_class::unsound ? "UNSOUND" : "over-approximation") << "\n";
  }
  if (rep.any_unsound())
    os << "result: FAIL (unsound cells)\n";
  else if (affine && !rep.all_equal())
    os << "result: FAIL (affine feature expressions must match exactly)\n";
  else
    os << "result: OK\n";
  return os.str();
}

} // namespace famalyze
