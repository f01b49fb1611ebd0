#include "pspec/cli.hpp"

#include "pspec/harness.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace pspec {

namespace {

struct Options {
  std::string r = "3";
  std::string k = "2";
  std::string n;
  std::vector<double> p{1.0};
  std::string classes;
  std::string input;
  std::string out;
  std::string csv;
  int max_k = 4;
  int window = 20;
  int n_max = 12;
  int count = 500;
  int random = 0;
  std::uint64_t seed = 0;
  int restarts = 16;
};

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto r = parse_range(item);
    if (r.lo != r.hi) throw RangeError("--classes: expected a comma-separated list of sizes");
    sizes.push_back(r.lo);
  }
  if (sizes.empty()) throw RangeError("--classes: empty list");
  return sizes;
}

SolverConfig solver_config(const Options& o) {
  SolverConfig cfg;
  cfg.seed = o.seed;
  cfg.restarts = o.restarts;
  cfg.validate();
  return cfg;
}

int single_value(const std::string& text, const char* flag) {
  const auto r = parse_range(text);
  if (r.lo != r.hi) throw RangeError(std::string(flag) + ": expected a single value");
  return r.lo;
}

UniformHypergraph load_graph(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw RangeError("input file not found: " + path);
  return read_hypergraph(path);
}

UniformHypergraph graph_from_options(const Options& o) {
  if (!o.input.empty()) return load_graph(o.input);
  if (!o.classes.empty()) return build_complete_chromatic(ClassTuple(single_value(o.r, "--r"), parse_sizes(o.classes)));
  throw RangeError("expected --input or --classes");
}

void emit(const VerificationReport& report, const Options& o, std::ostream& out) {
  if (!o.out.empty()) report.write(o.out);
  const auto j = report.to_json();
  out << report.scenario << ": " << j["summary"].dump() << '\n';
  for (const auto& row : report.rows)
    if (row.value("verdict", std::string()) != "pass") out << "  " << row["verdict"].get<std::string>() << ": "
                                                            << row.value("witness", nlohmann::json()).dump() << '\n';
}

int verdict_code(const VerificationReport& report) { return report.all_pass() ? kExitPass : kExitFailure; }

int cmd_lambda(const Options& o, std::ostream& out) {
  const auto cfg = solver_config(o);
  nlohmann::json j{{"schema", kReportSchema}, {"scenario", "lambda"}, {"seed", o.seed}, {"rows", nlohmann::json::array()}};
  out << std::setprecision(12);
  for (double p : o.p) {
    SpectralResult res;
    if (!o.classes.empty() && o.input.empty())
      res = lambda_p_classes(ClassTuple(single_value(o.r, "--r"), parse_sizes(o.classes)), p, cfg);
    else
      res = lambda_p_dense(graph_from_options(o), p, cfg);
    out << "p=" << p << " lambda=" << res.lambda << " residual=" << res.residual
        << " converged=" << (res.converged ? "yes" : "no") << '\n';
    j["rows"].push_back({{"p", p},
                         {"lambda", res.lambda},
                         {"residual", res.residual},
                         {"converged", res.converged},
                         {"class_values", res.class_values}});
  }
  if (!o.out.empty()) std::ofstream(o.out) << j.dump(2) << '\n';
  return kExitPass;
}

int cmd_verify_main(const Options& o, std::ostream& out) {
  const auto cfg = solver_config(o);
  const auto r = parse_range(o.r), k = parse_range(o.k);
  VerificationReport report;
  if (o.n.empty()) {
    report = verify_main_sweep(r, k, o.n_max, o.p, cfg);
  } else {
    const auto n = parse_range(o.n);
    report.scenario = "verify-main";
    report.seed = cfg.seed;
    report.parameters = {{"r", {r.lo, r.hi}}, {"k", {k.lo, k.hi}}, {"n", {n.lo, n.hi}}, {"p", o.p}};
    for (int rr : r.values())
      for (int kk : k.values())
        for (int nn : n.values()) {
          if (nn <= (rr - 1) * kk) continue;
          for (auto& row : verify_main(rr, kk, nn, o.p, cfg).rows) report.rows.push_back(std::move(row));
        }
  }
  emit(report, o, out);
  return verdict_code(report);
}

int cmd_verify_evaluation(const Options& o, std::ostream& out, std::ostream& err) {
  const auto r = parse_range(o.r), k = parse_range(o.k);
  if (r.lo < 2 || k.lo < 2) throw RangeError("verify-evaluation: requires r >= 2 and k >= 2");
  if (r.hi > 8 || k.hi > 6 || o.window > 20)
    err << "warning: beyond the default grid; the S_m convolution grows like n^r\n";
  std::vector<EvaluationRow> rows;
  const auto report = verify_evaluation(r, k, o.window, o.p, solver_config(o), &rows);
  if (!o.csv.empty()) std::ofstream(o.csv) << evaluation_csv(rows);
  emit(report, o, out);
  return verdict_code(report);
}

int cmd_verify_lemmas(const Options& o, std::ostream& out) {
  const auto report = verify_lemmas(o.seed, o.count);
  emit(report, o, out);
  return verdict_code(report);
}

int cmd_anti_wilf(const Options& o, std::ostream& out) {
  const auto cfg = solver_config(o);
  const int k = single_value(o.k, "--k");
  if (o.random > 0) {
    VerificationReport report;
    report.scenario = "anti-wilf";
    report.seed = o.seed;
    report.parameters = {{"random", o.random}, {"p", o.p}};
    for (double p : o.p) {
      const auto s = anti_wilf_random_suite(o.seed, o.random, 9, p, cfg);
      nlohmann::json row{{"p", p},
                         {"instances", s.instances},
                         {"certificates", s.certificates},
                         {"false_certificates", s.false_certificates},
                         {"verdict", s.false_certificates == 0 ? "pass" : "fail"}};
      if (s.false_certificates) row["witness"] = s.first_failure;
      report.rows.push_back(std::move(row));
    }
    emit(report, o, out);
    return verdict_code(report);
  }
  const auto g = graph_from_options(o);
  VerificationReport report;
  report.scenario = "anti-wilf";
  report.seed = o.seed;
  report.parameters = {{"r", g.r()}, {"n", g.n()}, {"k", k}, {"p", o.p}};
  for (double p : o.p) {
    const auto c = anti_wilf(g, k, p, cfg);
    nlohmann::json row{{"p", p},
                       {"lambda", c.lambda},
                       {"threshold", c.threshold},
                       {"certificate", c.certified ? "chi >= " + std::to_string(k + 1) : "none"},
                       {"verdict", c.consistent ? "pass" : "fail"}};
    if (c.brute_force_chi)
      row["brute_force_chi"] = *c.brute_force_chi;
    else if (g.n() <= kMaxBruteForceOrder)
      row["brute_force_chi"] = "> " + std::to_string(k + 1);
    if (!c.note.empty()) row["note"] = c.note;
    if (!c.consistent) row["witness"] = {{"lambda", c.lambda}, {"threshold", c.threshold}};
    out << std::setprecision(12) << "p=" << p << " lambda=" << c.lambda << " threshold=" << c.threshold
        << " certificate=" << row["certificate"].get<std::string>() << '\n';
    report.rows.push_back(std::move(row));
  }
  emit(report, o, out);
  return verdict_code(report);
}

int cmd_chi(const Options& o, std::ostream& out) {
  const auto g = load_graph(o.input);
  const auto chi = weak_chromatic_number(g, o.max_k);
  if (chi)
    out << "chi=" << *chi << '\n';
  else
    out << "chi>" << o.max_k << '\n';
  if (!o.out.empty())
    std::ofstream(o.out) << nlohmann::json{{"schema", kReportSchema}, {"scenario", "chi"}, {"max_k", o.max_k},
                                           {"chi", chi ? nlohmann::json(*chi) : nlohmann::json(nullptr)}}
                                .dump(2)
                         << '\n';
  return kExitPass;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"p-spectral radius of complete k-chromatic hypergraphs: solver and verifiers"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "seed for every randomized component");
    sub->add_option("--out", o.out, "JSON report path");
  };
  auto* lambda = app.add_subcommand("lambda", "p-spectral radius of a graph or class tuple");
  lambda->add_option("--classes", o.classes, "class sizes, e.g. 4,3");
  lambda->add_option("--input", o.input, "hypergraph JSON");
  lambda->add_option("--r", o.r, "uniformity for --classes");
  lambda->add_option("--p", o.p, "exponents")->delimiter(',');
  lambda->add_option("--restarts", o.restarts, "solver restarts");
  add_common(lambda);

  auto* vmain = app.add_subcommand("verify-main", "balanced tuple is the unique maximizer");
  vmain->add_option("--r", o.r, "uniformity range (default 3..4)");
  vmain->add_option("--k", o.k, "class count range (default 2..3)");
  vmain->add_option("--n", o.n, "order range (default: every admissible n <= --n-max)");
  vmain->add_option("--n-max", o.n_max, "largest order in the default sweep");
  vmain->add_option("--p", o.p, "exponents (default 1,1.5,2,3)")->delimiter(',');
  vmain->add_option("--restarts", o.restarts, "solver restarts");
  add_common(vmain);

  auto* veval = app.add_subcommand("verify-evaluation", "exact certification of the balanced value");
  veval->add_option("--r", o.r, "uniformity range (default 3..8)");
  veval->add_option("--k", o.k, "class count range (default 2..6)");
  veval->add_option("--window", o.window, "orders (r-1)k < n <= (r-1)k + window");
  veval->add_option("--p", o.p, "exponents for the solver comparison")->delimiter(',');
  veval->add_option("--csv", o.csv, "CSV report path");
  add_common(veval);

  auto* vlem = app.add_subcommand("verify-lemmas", "seeded randomized lemma suites");
  vlem->add_option("--count", o.count, "instances per suite");
  add_common(vlem);

  auto* aw = app.add_subcommand("anti-wilf", "spectral lower bound on the chromatic number");
  aw->add_option("--input", o.input, "hypergraph JSON");
  aw->add_option("--classes", o.classes, "class sizes of a complete chromatic graph");
  aw->add_option("--r", o.r, "uniformity for --classes");
  aw->add_option("--k", o.k, "color count k");
  aw->add_option("--p", o.p, "exponents")->delimiter(',');
  aw->add_option("--random", o.random, "run this many random 3-graphs instead");
  aw->add_option("--restarts", o.restarts, "solver restarts");
  add_common(aw);

  auto* chi = app.add_subcommand("chi", "brute-force weak chromatic number");
  chi->add_option("--input", o.input, "hypergraph JSON")->required();
  chi->add_option("--max-k", o.max_k, "largest color count tried");
  add_common(chi);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  if (*vmain) {
    if (!vmain->count("--r")) o.r = "3..4";
    if (!vmain->count("--k")) o.k = "2..3";
    if (!vmain->count("--p")) o.p = {1.0, 1.5, 2.0, 3.0};
  }
  if (*veval) {
    if (!veval->count("--r")) o.r = "3..8";
    if (!veval->count("--k")) o.k = "2..6";
  }

  try {
    if (*lambda) return cmd_lambda(o, out);
    if (*vmain) return cmd_verify_main(o, out);
    if (*veval) return cmd_verify_evaluation(o, out, err);
    if (*vlem) return cmd_verify_lemmas(o, out);
    if (*aw) return cmd_anti_wilf(o, out);
    if (*chi) return cmd_chi(o, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace pspec
