#include "pspec/harness.hpp"

#include "pspec/lemmas.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

namespace pspec {

using nlohmann::json;

namespace {

const char* basis_for(int r) { return r == 3 ? "r=3 via quoted result" : "direct"; }

int parse_int(const std::string& s) {
  int v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw RangeError("parse_range: not an integer: '" + s + "'");
  return v;
}

// p = num/den with den <= 12, when p has such a form.
std::optional<std::pair<int, int>> small_fraction(double p) {
  for (int den = 1; den <= 12; ++den) {
    const double num = p * den;
    if (std::abs(num - std::round(num)) < 1e-12) return std::pair{static_cast<int>(std::round(num)), den};
  }
  return std::nullopt;
}

std::string opt_string(const std::optional<Rational>& v) { return v ? to_string(*v) : ""; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + '"';
}

json layer_json(const std::vector<LayerDelta>& layers) {
  json out = json::array();
  for (const auto& l : layers) out.push_back({{"kind", l.kind}, {"rank", l.rank}, {"delta", l.delta}});
  return out;
}

}  // namespace

std::vector<int> IntRange::values() const {
  std::vector<int> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

IntRange parse_range(const std::string& text) {
  const auto dots = text.find("..");
  IntRange r;
  if (dots == std::string::npos) {
    r.lo = r.hi = parse_int(text);
  } else {
    r.lo = parse_int(text.substr(0, dots));
    r.hi = parse_int(text.substr(dots + 2));
  }
  if (r.lo > r.hi) throw RangeError("parse_range: empty range '" + text + "'");
  return r;
}

std::vector<std::vector<int>> enumerate_tuples(int n, int k) {
  if (k < 1 || n < k) throw RangeError("enumerate_tuples: requires n >= k >= 1");
  std::vector<std::vector<int>> out;
  std::vector<int> parts;
  // remaining total, parts still to place, largest allowed part
  std::function<void(int, int, int)> rec = [&](int remaining, int slots, int cap) {
    if (slots == 0) {
      if (remaining == 0) out.push_back(parts);
      return;
    }
    for (int v = std::min(cap, remaining - (slots - 1)); v >= 1; --v) {
      if (v * slots < remaining) break;
      parts.push_back(v);
      rec(remaining - v, slots - 1, v);
      parts.pop_back();
    }
  };
  rec(n, k, n);
  return out;
}

int VerificationReport::count(const std::string& verdict) const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(), [&](const json& row) {
    return row.value("verdict", std::string()) == verdict;
  }));
}

bool VerificationReport::all_pass() const { return count("pass") == static_cast<int>(rows.size()); }

json VerificationReport::to_json() const {
  json j;
  j["schema"] = kReportSchema;
  j["scenario"] = scenario;
  j["tool_version"] = kToolVersion;
  j["seed"] = seed;
  j["parameters"] = parameters;
  j["rows"] = rows;
  j["summary"] = {{"total", rows.size()},
                  {"pass", count("pass")},
                  {"fail", count("fail")},
                  {"inconclusive", count("inconclusive")}};
  return j;
}

void VerificationReport::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report to " + path);
  out << to_json().dump(2) << '\n';
}

VerificationReport verify_main(int r, int k, int n, const std::vector<double>& p_list, const SolverConfig& cfg) {
  if (n <= (r - 1) * k) throw RangeError("verify_main: requires n > (r-1)k");
  if (n > kMaxMainOrder) throw CapacityError("verify_main: n exceeds the solver budget");
  VerificationReport report;
  report.scenario = "verify-main";
  report.seed = cfg.seed;
  report.parameters = {{"r", r}, {"k", k}, {"n", n}, {"p", p_list}};

  const auto partitions = enumerate_tuples(n, k);
  for (double p : p_list) {
    json row{{"r", r}, {"k", k}, {"n", n}, {"p", p}, {"basis", basis_for(r)}};
    std::vector<std::string> problems;
    bool inconclusive = false;

    struct Solved {
      ClassTuple tuple;
      SpectralResult res;
    };
    std::vector<Solved> solved;
    for (const auto& sizes : partitions) {
      ClassTuple t(r, sizes);
      solved.push_back({t, lambda_p_classes(t, p, cfg)});
    }

    json tuples = json::array();
    const Solved* balanced = nullptr;
    const Solved* best_other = nullptr;
    for (const auto& s : solved) {
      tuples.push_back({{"sizes", s.tuple.sizes()},
                        {"lambda", s.res.lambda},
                        {"residual", s.res.residual},
                        {"converged", s.res.converged}});
      if (s.tuple.balanced())
        balanced = &s;
      else if (!best_other || s.res.lambda > best_other->res.lambda)
        best_other = &s;
    }
    row["tuples"] = tuples;
    row["balanced"] = balanced->tuple.sizes();

    const Solved* winner = balanced;
    if (best_other && best_other->res.lambda > balanced->res.lambda) winner = best_other;
    row["winner"] = winner->tuple.sizes();
    const double margin = best_other ? balanced->res.lambda - best_other->res.lambda : 0.0;
    row["margin"] = margin;
    if (best_other) {
      if (margin < -kArgmaxMargin)
        problems.push_back("unbalanced tuple " + winner->tuple.label() + " wins");
      else if (margin < kArgmaxMargin)
        inconclusive = true;
      if (!balanced->res.converged || !best_other->res.converged) inconclusive = true;
    }

    if (p > 1.0) {
      const auto rep = structural_check_values(balanced->tuple, p, balanced->res.class_values);
      row["structural"] = {{"s1", rep.s1}, {"s2", rep.s2}, {"s3", rep.s3}, {"transfer", rep.transfer}};
      if (!rep.all()) problems.push_back("structural hypotheses fail on the balanced tuple");
    }

    bool ordering_ok = true;
    for (const auto& s : solved) {
      const auto oc = ordering_check(s.tuple, p, s.res.class_values);
      if (!(oc.opposite_order && oc.mass_order)) {
        ordering_ok = false;
        problems.push_back("ordering fails on " + s.tuple.label() + ": " + oc.witness);
      }
    }
    row["ordering"] = ordering_ok;

    json moves = json::array();
    int hyp_moves = 0, hyp_strict = 0, outside_decreases = 0;
    for (const auto& s : solved) {
      if (s.tuple.gap() < 2) continue;
      const auto sm = smoothing_compare_values(s.tuple, p, s.res.class_values);
      moves.push_back({{"sizes", sm.sizes},
                       {"new_sizes", sm.new_sizes},
                       {"old", sm.old_value},
                       {"new", sm.new_value},
                       {"precondition", sm.precondition},
                       {"strict", sm.strict},
                       {"breakdown", layer_json(sm.breakdown)},
                       {"breakdown_consistent", sm.breakdown_consistent},
                       {"diagnostics", sm.diagnostics}});
      if (!sm.breakdown_consistent) problems.push_back("layer breakdown inconsistent on " + s.tuple.label());
      if (sm.precondition) {
        ++hyp_moves;
        if (sm.strict)
          ++hyp_strict;
        else
          problems.push_back("smoothing does not increase on " + s.tuple.label());
      } else if (!sm.strict) {
        ++outside_decreases;
      }
    }
    row["smoothing"] = moves;
    row["smoothing_summary"] = {{"moves", moves.size()},
                                {"under_hypotheses", hyp_moves},
                                {"strict_under_hypotheses", hyp_strict},
                                {"non_increasing_outside_hypotheses", outside_decreases}};

    if (!problems.empty()) {
      row["verdict"] = "fail";
      row["witness"] = {{"winner", winner->tuple.sizes()}, {"margin", margin}, {"problems", problems}};
    } else if (inconclusive) {
      row["verdict"] = "inconclusive";
      row["witness"] = {{"winner", winner->tuple.sizes()}, {"margin", margin}};
    } else {
      row["verdict"] = "pass";
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

VerificationReport verify_main_sweep(const IntRange& r, const IntRange& k, int n_max, const std::vector<double>& p_list,
                                     const SolverConfig& cfg) {
  VerificationReport report;
  report.scenario = "verify-main";
  report.seed = cfg.seed;
  report.parameters = {{"r", {r.lo, r.hi}}, {"k", {k.lo, k.hi}}, {"n_max", n_max}, {"p", p_list}};
  for (int rr : r.values())
    for (int kk : k.values())
      for (int n = (rr - 1) * kk + 1; n <= n_max; ++n) {
        auto part = verify_main(rr, kk, n, p_list, cfg);
        for (auto& row : part.rows) report.rows.push_back(std::move(row));
      }
  return report;
}

EvaluationRow evaluate_instance(int r, int k, int n, const std::vector<double>& p_list, const SolverConfig& cfg) {
  const auto ctx = make_context(r, k, n);
  EvaluationRow row;
  row.r = r;
  row.k = k;
  row.n = n;
  row.t = ctx.t;
  std::vector<std::string> problems;
  json detail{{"r", r}, {"k", k}, {"n", n}, {"t", ctx.t}, {"C", to_string(ctx.C)}};

  if (ctx.divisible()) {
    row.note = "equality case, Bernstein pipeline skipped";
  } else {
    const auto gamma = gamma_coeffs(ctx);
    json g = json::array();
    for (const auto& v : gamma) g.push_back(to_string(v));
    detail["gamma"] = g;
    row.min_gamma = *std::min_element(gamma.begin(), gamma.end());
    for (int m = 0; m <= r; ++m)
      if (gamma[static_cast<std::size_t>(m)] <= 0)
        problems.push_back("Gamma_" + std::to_string(m) + " = " + to_string(gamma[static_cast<std::size_t>(m)]));
    const bool oracle = gamma == gamma_oracle(ctx);
    detail["gamma_oracle_match"] = oracle;
    if (!oracle) problems.push_back("closed-form Gamma differs from the expanded polynomial");
    const bool sampled = target_positive_on_grid(ctx);
    detail["target_positive_on_grid"] = sampled;
    if (!sampled) problems.push_back("P(s) not positive on the sample grid");

    const auto d = endpoint_defects(ctx);
    row.d_all = d.d_all;
    row.d_mono = d.d_mono;
    row.margin = d.margin;
    if (d.margin <= 0) problems.push_back("endpoint margin " + to_string(d.margin));

    const auto stab = stability_bound(ctx), mono = mono_bound(ctx);
    detail["stability_bound"] = to_string(stab);
    detail["mono_bound"] = to_string(mono);
    if (d.d_all < stab) problems.push_back("D_all below the stability bound");
    if (d.d_mono > mono) problems.push_back("D_mono above the interpolation bound");
    const auto var = variance_identity(ctx);
    detail["variance"] = to_string(var.spread);
    if (!var.equal) problems.push_back("variance identity fails");
    const auto se = scalar_endpoint_check(r, ctx.q);
    detail["scalar_endpoint_margin"] = to_string(se.margin);
    if (!se.pass) problems.push_back("scalar endpoint estimate fails");
    const bool cmp = comparison_check(ctx);
    detail["comparison"] = cmp;
    if (!cmp) problems.push_back("comparison inequality fails");

    const auto loc = localize_check(ctx);
    detail["localize"] = {{"pass", loc.pass}, {"min_left", to_double(loc.min_left)}, {"max_right", to_double(loc.max_right)}};
    if (!loc.pass) problems.push_back("F' sign pattern fails at x = " + to_string(loc.witness));
    const auto dc = derivative_cross_check(ctx);
    detail["derivative_cross_check"] = dc.max_error;
    if (!dc.pass) problems.push_back("F' disagrees with central differences");
  }

  json bounds = json::array();
  for (double p : p_list) {
    const auto b = evaluation_bound(ctx, p, cfg);
    json entry{{"p", p}, {"bound", b.bound}, {"lambda", b.lambda}, {"margin", b.margin}, {"pass", b.pass}};
    if (const auto frac = small_fraction(p)) {
      const bool h = holder_consistency(ctx, frac->first, frac->second);
      entry["holder_consistent"] = h;
      if (!h) problems.push_back("Hoelder reduction inconsistent at p = " + std::to_string(p));
    }
    bounds.push_back(entry);
    if (!b.pass)
      problems.push_back((b.divisible ? "equality not attained" : "strict margin missing") + std::string(" at p = ") +
                         std::to_string(p));
  }
  detail["bounds"] = bounds;

  row.verdict = problems.empty() ? "pass" : "fail";
  detail["verdict"] = row.verdict;
  if (!row.note.empty()) detail["note"] = row.note;
  if (!problems.empty()) detail["witness"] = {{"r", r}, {"k", k}, {"n", n}, {"problems", problems}};
  if (row.min_gamma) {
    detail["min_gamma"] = to_string(*row.min_gamma);
    detail["D_all"] = to_string(*row.d_all);
    detail["D_mono"] = to_string(*row.d_mono);
    detail["margin"] = to_string(*row.margin);
  }
  row.detail = std::move(detail);
  return row;
}

VerificationReport verify_evaluation(const IntRange& r, const IntRange& k, int window, const std::vector<double>& p_list,
                                     const SolverConfig& cfg, std::vector<EvaluationRow>* rows_out) {
  if (window < 1) throw RangeError("verify_evaluation: window must be positive");
  VerificationReport report;
  report.scenario = "verify-evaluation";
  report.seed = cfg.seed;
  report.parameters = {{"r", {r.lo, r.hi}}, {"k", {k.lo, k.hi}}, {"window", window}, {"p", p_list}};
  for (int rr : r.values()) {
    if (rr >= 3 && rr <= 12) {
      const auto cert = differential_certificate(rr);
      json row{{"kind", "differential-certificate"},
               {"r", rr},
               {"nonnegative", cert.nonnegative},
               {"matches_direct", cert.matches_direct},
               {"e3_zero", cert.e3_zero},
               {"max_numeric_excess", cert.max_numeric_excess},
               {"verdict", cert.pass() ? "pass" : "fail"}};
      json coeffs = json::array();
      for (const auto& c : cert.coefficients) coeffs.push_back(to_string(c));
      row["coefficients"] = coeffs;
      if (!cert.pass()) row["witness"] = {{"r", rr}};
      report.rows.push_back(std::move(row));
    }
    for (int kk : k.values())
      for (int n = (rr - 1) * kk + 1; n <= (rr - 1) * kk + window; ++n) {
        auto inst = evaluate_instance(rr, kk, n, p_list, cfg);
        json j = inst.detail;
        j["kind"] = "instance";
        report.rows.push_back(std::move(j));
        if (rows_out) rows_out->push_back(std::move(inst));
      }
  }
  return report;
}

std::string evaluation_csv(const std::vector<EvaluationRow>& rows) {
  std::ostringstream out;
  out << kEvaluationCsvHeader << '\n';
  for (const auto& row : rows)
    out << row.r << ',' << row.k << ',' << row.n << ',' << row.t << ',' << opt_string(row.min_gamma) << ','
        << opt_string(row.d_all) << ',' << opt_string(row.d_mono) << ',' << opt_string(row.margin) << ','
        << row.verdict << ',' << csv_field(row.note) << '\n';
  return out.str();
}

AntiWilfCertificate anti_wilf(const UniformHypergraph& g, int k, double p, const SolverConfig& cfg) {
  const int r = g.r(), n = g.n();
  if (k < 1 || n <= (r - 1) * k) throw RangeError("anti_wilf: requires n > (r-1)k");
  AntiWilfCertificate cert;
  double fact = 1;
  for (int i = 2; i <= r; ++i) fact *= i;
  cert.threshold = fact * to_double(balanced_edge_bound(r, k, n)) * std::pow(static_cast<double>(n), -r / p);
  const auto res = lambda_p_dense(g, p, cfg);
  cert.lambda = g.size() ? polyform(g, normalize_lp(res.weights, p)) : 0.0;
  cert.certified = cert.lambda > cert.threshold * (1.0 + kCertificateSlack);
  if (r == 3) cert.note = basis_for(r);
  if (n <= kMaxBruteForceOrder) {
    cert.brute_force_chi = weak_chromatic_number(g, k + 1);
    const bool k_colorable = cert.brute_force_chi && *cert.brute_force_chi <= k;
    cert.consistent = !(cert.certified && k_colorable);
  }
  return cert;
}

AntiWilfSuite anti_wilf_random_suite(std::uint64_t seed, int count, int n_max, double p, const SolverConfig& cfg) {
  AntiWilfSuite suite;
  std::seed_seq seq{seed, std::uint64_t{0xA17}};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int r = 3;
  for (int i = 0; i < count; ++i) {
    const int k = 2 + static_cast<int>(rng() % 2);
    const int n_lo = (r - 1) * k + 1;
    if (n_lo > n_max) continue;
    const int n = n_lo + static_cast<int>(rng() % static_cast<std::uint64_t>(n_max - n_lo + 1));
    UniformHypergraph g = UniformHypergraph::edgeless(r, n);
    if (i % 4 == 0) {
      // complete k-chromatic graph on a random partition: k-colorable and near the threshold
      const auto parts = enumerate_tuples(n, k);
      g = build_complete_chromatic(ClassTuple(r, parts[rng() % parts.size()]));
    } else {
      const double density = unit(rng);
      const auto complete = UniformHypergraph::complete(r, n);
      std::vector<Edge> edges;
      for (const auto& e : complete.edges())
        if (unit(rng) < density) edges.push_back(e);
      g = UniformHypergraph(r, n, std::move(edges));
    }
    const auto cert = anti_wilf(g, k, p, cfg);
    ++suite.instances;
    if (cert.certified) ++suite.certificates;
    if (!cert.consistent) {
      ++suite.false_certificates;
      if (suite.first_failure.empty())
        suite.first_failure = "instance " + std::to_string(i) + ": n=" + std::to_string(n) + " k=" +
                              std::to_string(k) + " edges=" + std::to_string(g.size());
    }
  }
  return suite;
}

VerificationReport verify_lemmas(std::uint64_t seed, int count) {
  VerificationReport report;
  report.scenario = "verify-lemmas";
  report.seed = seed;
  report.parameters = {{"count", count}};
  for (const auto& s : run_lemma_suites(seed, count)) {
    json row{{"suite", s.name}, {"instances", s.instances}, {"passed", s.passed}, {"verdict", s.pass() ? "pass" : "fail"}};
    if (!s.pass()) row["witness"] = s.first_failure;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace pspec
