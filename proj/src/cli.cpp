#include "famalyze/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "famalyze/gen.hpp"
#include "famalyze/parse.hpp"
#include "famalyze/report.hpp"

namespace famalyze {

namespace {

struct common_opts {
  std::string backend = "tree";
  std::string leaf_domain = "polyhedra";
  std::string node_domain = "interval";
  unsigned widen_delay = 2;
  unsigned narrow_iters = 2;
  std::size_t enum_cap = 1000000;
  double timeout = 300.0;
  bool parallel = false;
};

void add_common(CLI::App *cmd, common_opts &o, bool with_backend) {
  if (with_backend)
    cmd->add_option("--lifted", o.backend, "lifted representation: tree|tuple|brute");
  cmd->add_option("--leaf-domain", o.leaf_domain,
                  "property domain for leaves/components: interval|octagon|polyhedra");
  cmd->add_option("--node-domain", o.node_domain,
                  "constraint domain for decision nodes: interval|octagon|polyhedra");
  cmd->add_option("--widen-delay", o.widen_delay, "joins before widening starts");
  cmd->add_option("--narrow-iters", o.narrow_iters, "descending iterations");
  cmd->add_option("--enum-cap", o.enum_cap, "configuration enumeration cap");
  cmd->add_option("--timeout", o.timeout, "wall-clock budget in seconds");
  cmd->add_flag("--parallel", o.parallel,
                "evaluate tuple components in parallel (not for timing runs)");
}

analysis_options make_options(const common_opts &o, std::ostream &err, bool &ok) {
  analysis_options a;
  ok = true;
  if (auto b = parse_backend(o.backend)) {
    a.backend = *b;
  } else {
    err << "unknown backend '" << o.backend << "'\n";
    ok = false;
  }
  if (auto d = parse_domain(o.leaf_domain)) {
    a.leaf_domain = *d;
  } else {
    err << "unknown leaf domain '" << o.leaf_domain << "'\n";
    ok = false;
  }
  if (auto d = parse_domain(o.node_domain)) {
    a.node_domain = *d;
  } else {
    err << "unknown node domain '" << o.node_domain << "'\n";
    ok = false;
  }
  a.widen_delay = o.widen_delay;
  a.narrow_iters = o.narrow_iters;
  a.enum_cap = o.enum_cap;
  a.parallel = o.parallel;
  a.deadline = std::chrono::steady_clock::now() +
               std::chrono::milliseconds(static_cast<long>(o.timeout * 1000));
  return a;
}

std::string read_file(const std::string &path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f)
    throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct bench_record {
  std::string program_id;
  int n = 0, k = 0;
  std::string backend;
  std::string domains;
  double wall_time = 0.0;
  std::string outcome = "ok"; // ok | timeout | cap
  long size = 0;              // leaf count (tree) or tuple width
};

// one timed cell; parse time excluded, analysis + compression included
bench_record bench_cell(const program &p, int n, int k, backend_kind backend,
                        const analysis_options &base, double timeout_s, int repeat) {
  bench_record rec;
  rec.program_id = "test_" + std::to_string(n) + "_" + std::to_string(k);
  rec.n = n;
  rec.k = k;
  rec.backend = to_string(backend);
  rec.domains = std::string(to_string(base.leaf_domain)) + "/" +
                to_string(base.node_domain);
  double total = 0.0;
  for (int r = 0; r < repeat; ++r) {
    analysis_options opts = base;
    opts.backend = backend;
    auto t0 = std::chrono::steady_clock::now();
    opts.deadline = t0 + std::chrono::milliseconds(static_cast<long>(timeout_s * 1000));
    try {
      invariant_map inv = analyze(p, opts);
      auto t1 = std::chrono::steady_clock::now();
      total += std::chrono::duration<double>(t1 - t0).count();
      const auto &final_state = inv.at(inv.num_labels);
      if (std::holds_alternative<dtree_ptr>(final_state))
        rec.size = leaf_count(std::get<dtree_ptr>(final_state));
      else if (std::holds_alternative<tuple_state>(final_state))
        rec.size = static_cast<long>(std::get<tuple_state>(final_state).width());
    } catch (const timeout_error &) {
      rec.outcome = "timeout";
      rec.wall_time = timeout_s;
      return rec;
    } catch (const cap_exceeded &) {
      rec.outcome = "cap";
      return rec;
    }
  }
  rec.wall_time = total / repeat;
  return rec;
}

bool check_format(const std::string &format, std::ostream &err) {
  if (format == "text" || format == "json")
    return true;
  err << "unknown format '" << format << "' (expected text|json)\n";
  return false;
}

int cmd_analyze(const std::string &path, const common_opts &copts,
                const std::string &format, std::ostream &out, std::ostream &err) {
  bool ok = true;
  analysis_options opts = make_options(copts, err, ok);
  if (!ok || !check_format(format, err))
    return 2;
  program p;
  try {
    p = parse(read_file(path));
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    invariant_map inv = analyze(p, opts);
    if (format == "json")
      out << to_json(inv, path).dump(2) << "\n";
    else
      out << text_report(inv, path);
    return inv.all_asserts_valid() ? 0 : 1;
  } catch (const cap_exceeded &e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const timeout_error &e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

int cmd_oracle_check(const std::string &path, const common_opts &copts,
                     const std::string &format, std::ostream &out, std::ostream &err) {
  bool ok = true;
  analysis_options opts = make_options(copts, err, ok);
  if (!ok || !check_format(format, err))
    return 2;
  opts.backend = backend_kind::tree;
  program p;
  try {
    p = parse(read_file(path));
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    invariant_map inv = analyze(p, opts);
    oracle_result oracle = analyze_brute(p, opts);
    compare_report rep = compare(inv, oracle);
    bool affine = all_feat_exprs_affine(p);
    if (format == "json") {
      nlohmann::json diffs = nlohmann::json::array();
      for (const auto &d : rep.diffs)
        diffs.push_back({{"label", d.label},
                         {"config", d.config_text},
                         {"class", d.cls == cmp_class::unsound ? "UNSOUND" : "over"}});
      out << nlohmann::json{{"equal", rep.n_equal},
                            {"over", rep.n_over},
                            {"unsound", rep.n_unsound},
                            {"affine", affine},
                            {"diffs", std::move(diffs)}}
                 .dump(2)
          << "\n";
    } else {
      out << text_report(rep, affine);
    }
    if (rep.any_unsound())
      return 1;
    if (affine && !rep.all_equal())
      return 1;
    return 0;
  } catch (const cap_exceeded &e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const timeout_error &e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

int cmd_bench(const std::string &grid, int repeat, const common_opts &copts,
              const std::string &format, std::ostream &out, std::ostream &err) {
  bool ok = true;
  analysis_options base = make_options(copts, err, ok);
  if (!ok || !check_format(format, err))
    return 2;
  std::vector<std::pair<int, int>> cells;
  std::stringstream ss(grid);
  std::string cell;
  while (std::getline(ss, cell, ';')) {
    if (cell.empty())
      continue;
    int n = 0, k = 0;
    char comma = 0;
    std::stringstream cs(cell);
    if (!(cs >> n >> comma >> k) || comma != ',' || n < 1 || k < 1) {
      err << "bad grid cell '" << cell << "' (expected n,k)\n";
      return 2;
    }
    cells.emplace_back(n, k);
  }
  if (cells.empty()) {
    err << "empty grid\n";
    return 2;
  }
  std::vector<bench_record> records;
  for (auto [n, k] : cells) {
    program p = parse(gen_test(n, k));
    for (backend_kind b : {backend_kind::tuple, backend_kind::tree})
      records.push_back(bench_cell(p, n, k, b, base, copts.timeout, repeat));
  }
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &r : records)
      arr.push_back({{"program", r.program_id},
                     {"n", r.n},
                     {"k", r.k},
                     {"backend", r.backend},
                     {"domains", r.domains},
                     {"wall_time", r.wall_time},
                     {"outcome", r.outcome},
                     {"size", r.size}});
    out << arr.dump(2) << "\n";
    return 0;
  }
  out << std::left << std::setw(12) << "program" << std::setw(8) << "backend"
      << std::setw(20) << "domains" << std::setw(12) << "time(s)" << std::setw(10)
      << "outcome" << "size\n";
  for (const auto &r : records) {
    std::ostringstream t;
    t << std::fixed << std::setprecision(3) << r.wall_time;
    out << std::left << std::setw(12) << r.program_id << std::setw(8) << r.backend
        << std::setw(20) << r.domains << std::setw(12)
        << (r.outcome == "ok" ? t.str() : "-") << std::setw(10) << r.outcome
        << r.size << "\n";
  }
  out << "\nspeedup (tuple vs tree):\n";
  for (size_t i = 0; i + 1 < records.size(); i += 2) {
    const auto &tu = records[i];
    const auto &tr = records[i + 1];
    out << "  " << tu.program_id << ": ";
    if (tr.outcome != "ok")
      out << "tree " << tr.outcome << "\n";
    else if (tu.outcome != "ok")
      out << "infeasible for tuples (" << tu.outcome << "), tree " << std::fixed
          << std::setprecision(3) << tr.wall_time << " s\n";
    else
      out << std::fixed << std::setprecision(1)
          << (tr.wall_time > 0 ? tu.wall_time / tr.wall_time : 0.0) << "x\n";
  }
  return 0;
}

} // namespace

int cli_main(std::vector<std::string> args, std::ostream &out, std::ostream &err) {
  CLI::App app{"family-based numerical invariant analyzer"};
  app.require_subcommand(1);

  // analyze
  auto *an = app.add_subcommand("analyze", "analyze a program family");
  std::string an_path;
  std::string an_format = "text";
  common_opts an_opts;
  an->add_option("file", an_path, "input file ('-' for stdin)")->required();
  an->add_option("--format", an_format, "text|json");
  add_common(an, an_opts, true);

  // gen-test
  auto *gt = app.add_subcommand("gen-test", "emit a scalability test family");
  int gt_n = 1, gt_k = 1;
  std::string gt_out;
  gt->add_option("--n", gt_n, "number of features")->required();
  gt->add_option("--k", gt_k, "domain size per feature")->required();
  gt->add_option("--out", gt_out, "output path (default stdout)");

  // bench
  auto *be = app.add_subcommand("bench", "time tuple vs tree backends on test families");
  std::string be_grid;
  int be_repeat = 1;
  std::string be_format = "text";
  common_opts be_opts;
  be->add_option("--grid", be_grid, "cells n1,k1;n2,k2;...")->required();
  be->add_option("--repeat", be_repeat, "repetitions per cell (averaged)");
  be->add_option("--format", be_format, "text|json");
  add_common(be, be_opts, false);

  // oracle-check
  auto *oc = app.add_subcommand("oracle-check",
                                "run tree and brute-force backends and compare");
  std::string oc_path;
  std::string oc_format = "text";
  common_opts oc_opts;
  oc->add_option("file", oc_path, "input file ('-' for stdin)")->required();
  oc->add_option("--format", oc_format, "text|json");
  add_common(oc, oc_opts, false);

  std::vector<const char *> argv;
  argv.push_back("famalyze");
  for (const auto &a : args)
    argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (an->parsed())
      return cmd_analyze(an_path, an_opts, an_format, out, err);
    if (gt->parsed()) {
      if (gt_n < 1 || gt_k < 1) {
        err << "gen-test requires n >= 1 and k >= 1\n";
        return 2;
      }
      std::string text = gen_test(gt_n, gt_k);
      if (gt_out.empty()) {
        out << text;
      } else {
        std::ofstream f(gt_out);
        if (!f) {
          err << "cannot write '" << gt_out << "'\n";
          return 2;
        }
        f << text;
      }
      return 0;
    }
    if (be->parsed())
      return cmd_bench(be_grid, be_repeat < 1 ? 1 : be_repeat, be_opts, be_format, out,
                       err);
    if (oc->parsed())
      return cmd_oracle_check(oc_path, oc_opts, oc_format, out, err);
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

} // namespace famalyze
