// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include "pspec/evaluation.hpp"
#include "pspec/harness.hpp"
#include "pspec/lemmas.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace pspec;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) {
    o.pass = false;
    o.detail += "; runtime over budget";
  }
  if (!o.pass) ++failures;
  std::printf("%s criterion %d (%s): %s [%.2fs of %.0fs]\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs,
              budget_s);
  std::fflush(stdout);
}

template <class F>
void for_grid(F&& f) {
  for (int r = 3; r <= 8; ++r)
    for (int k = 2; k <= 6; ++k)
      for (int n = (r - 1) * k + 1; n <= (r - 1) * k + 20; ++n)
        if (n % k != 0) f(make_context(r, k, n));
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome equality_case() {
  const ClassTuple t(3, {3, 3});
  const auto g = build_complete_chromatic(t);
  const double l1 = lambda_p_classes(t, 1.0).lambda, l1d = lambda_p_dense(g, 1.0).lambda;
  const double l2 = lambda_p_classes(t, 2.0).lambda, l2d = lambda_p_dense(g, 2.0).lambda;
  const double target = 3 * std::sqrt(6.0);
  const bool ok = std::abs(l1 - 0.5) <= 1e-9 && std::abs(l1d - 0.5) <= 1e-9 && std::abs(l2 - target) <= 1e-7 &&
                  std::abs(l2d - target) <= 1e-7;
  return {ok, "lambda1=" + fmt("%.12f", l1) + " lambda2=" + fmt("%.10f", l2) + " (3*sqrt6=" + fmt("%.10f", target) + ")"};
}

Outcome bernstein_grid() {
  int instances = 0, bad = 0, oracle_bad = 0;
  std::string witness;
  for_grid([&](const EvaluationContext& c) {
    ++instances;
    const auto g = gamma_coeffs(c);
    for (int m = 0; m <= c.r; ++m)
      if (g[static_cast<std::size_t>(m)] <= 0) {
        if (witness.empty())
          witness = " first (r,k,n,m)=(" + std::to_string(c.r) + "," + std::to_string(c.k) + "," + std::to_string(c.n) +
                    "," + std::to_string(m) + ")";
        ++bad;
      }
    if (g != gamma_oracle(c)) ++oracle_bad;
  });
  const auto spot = gamma_coeffs(make_context(3, 2, 7));
  const bool spots = spot[0] == make_rational(1715, 8) && spot[3] == make_rational(392, 3);
  return {bad == 0 && oracle_bad == 0 && spots && instances > 0,
          std::to_string(instances) + " instances, " + std::to_string(bad) + " nonpositive coefficients, " +
              std::to_string(oracle_bad) + " oracle mismatches; Gamma0=" + to_string(spot[0]) + " Gamma3=" +
              to_string(spot[3]) + witness};
}

Outcome endpoint_grid() {
  int instances = 0, bad = 0;
  for_grid([&](const EvaluationContext& c) {
    ++instances;
    if (endpoint_defects(c).margin <= 0) ++bad;
  });
  const auto d = endpoint_defects(make_context(3, 2, 7));
  const bool spots = d.d_all == make_rational(179, 21168) && d.d_mono == make_rational(53, 21168) &&
                     d.margin == make_rational(1, 168);
  return {bad == 0 && spots, std::to_string(instances) + " instances, " + std::to_string(bad) +
                                 " nonpositive margins; D_all=" + to_string(d.d_all) + " D_mono=" + to_string(d.d_mono) +
                                 " margin=" + to_string(d.margin)};
}

VerificationReport main_sweep() { return verify_main_sweep({3, 4}, {2, 3}, 12, {1.0, 1.5, 2.0, 3.0}); }

Outcome main_theorem(const VerificationReport& rep) {
  int rows = 0, wins = 0;
  double worst = 1e300;
  std::string witness;
  for (const auto& row : rep.rows) {
    ++rows;
    const double m = row["margin"].get<double>();
    worst = std::min(worst, m);
    if (row["winner"] == row["balanced"] && m >= kArgmaxMargin)
      ++wins;
    else if (witness.empty())
      witness = "; first miss r=" + row["r"].dump() + " k=" + row["k"].dump() + " n=" + row["n"].dump() +
                " p=" + row["p"].dump();
  }
  return {rows > 0 && wins == rows,
          std::to_string(wins) + "/" + std::to_string(rows) + " (r,k,n,p) balanced wins, min margin " +
              fmt("%.3e", worst) + witness};
}

Outcome smoothing(const VerificationReport& rep) {
  int moves = 0, strict = 0, hyp = 0, hyp_strict = 0, inconsistent = 0;
  std::string first;
  for (const auto& row : rep.rows)
    for (const auto& mv : row["smoothing"]) {
      ++moves;
      const bool s = mv["strict"].get<bool>();
      strict += s;
      if (mv["precondition"].get<bool>()) {
        ++hyp;
        hyp_strict += s;
      }
      if (!mv["breakdown_consistent"].get<bool>()) ++inconsistent;
      if (!s && first.empty())
        first = "; first non-increase " + mv["sizes"].dump() + " r=" + row["r"].dump() + " p=" + row["p"].dump() +
                " (" + mv["diagnostics"].get<std::string>() + ")";
    }
  std::ostringstream d;
  d << strict << "/" << moves << " gap>=2 moves strictly increase; under the move's hypotheses " << hyp_strict << "/"
    << hyp << "; " << inconsistent << " inconsistent layer breakdowns" << first;
  return {moves > 0 && strict == moves && inconsistent == 0, d.str()};
}

Outcome lemma_suites() {
  const auto suites = run_lemma_suites(0, 500);
  std::ostringstream d;
  bool ok = !suites.empty();
  for (const auto& s : suites) {
    ok = ok && s.pass() && s.instances == 500;
    d << s.name << " " << s.passed << "/" << s.instances << (s.pass() ? "" : " [" + s.first_failure + "]") << "; ";
  }
  return {ok, d.str()};
}

Outcome differential() {
  std::ostringstream d;
  bool ok = true;
  bool e3 = false;
  for (int r = 3; r <= 12; ++r) {
    const auto c = differential_certificate(r);
    ok = ok && c.nonnegative && c.matches_direct;
    if (r == 3) e3 = c.e3_zero && c.coefficients.empty();
    if (!(c.nonnegative && c.matches_direct)) d << "r=" << r << " fails; ";
  }
  d << "E_r nonnegative and recurrence exact for r=3..12; E_3 " << (e3 ? "== 0" : "!= 0");
  return {ok && e3, d.str()};
}

Outcome anti_wilf_check() {
  const auto k5 = anti_wilf(UniformHypergraph::complete(3, 5), 2, 1.0);
  const bool spot = std::abs(k5.lambda - 0.48) <= 1e-9 && std::abs(k5.threshold - 0.45) <= 1e-12 && k5.certified &&
                    k5.brute_force_chi && *k5.brute_force_chi == 3;
  const auto suite = anti_wilf_random_suite(0, 200, 9, 1.0);
  return {spot && suite.false_certificates == 0 && suite.instances == 200,
          "K5^3 lambda=" + fmt("%.12f", k5.lambda) + " threshold=" + fmt("%.4f", k5.threshold) + " chi=" +
              (k5.brute_force_chi ? std::to_string(*k5.brute_force_chi) : "?") + "; random: " +
              std::to_string(suite.instances) + " graphs, " + std::to_string(suite.certificates) + " certificates, " +
              std::to_string(suite.false_certificates) + " false" +
              (suite.first_failure.empty() ? "" : " [" + suite.first_failure + "]")};
}

Outcome solver_hygiene() {
  int tuples = 0, disagree = 0, residual_bad = 0, holder_bad = 0;
  double worst_rel = 0, worst_res = 0, worst_holder = 0;
  for (int r = 3; r <= 4; ++r)
    for (int k = 2; k <= 3; ++k)
      for (int n = std::max(r, k); n <= 10; ++n)
        for (const auto& sizes : enumerate_tuples(n, k)) {
          const ClassTuple t(r, sizes);
          if (edge_count(t) == 0) continue;
          ++tuples;
          const auto g = build_complete_chromatic(t);
          const double l1 = lambda_p_dense(g, 1.0).lambda;
          for (double p : {1.0, 1.5, 2.0, 3.0}) {
            const auto red = lambda_p_classes(t, p);
            const auto den = lambda_p_dense(g, p);
            const double rel = std::abs(red.lambda - den.lambda) / std::max(1.0, std::abs(den.lambda));
            worst_rel = std::max(worst_rel, rel);
            if (rel > 1e-7) ++disagree;
            if (p > 1.0) {
              const double res = std::max(red.residual, den.residual) / den.lambda;
              worst_res = std::max(worst_res, res);
              if (res > 1e-10) ++residual_bad;
              const auto h = holder_check(g, p, den.lambda, l1);
              worst_holder = std::max(worst_holder, -h.margin);
              if (!h.pass) ++holder_bad;
            }
          }
        }
  std::ostringstream d;
  d << tuples << " tuples; max relative dense/reduced gap " << fmt("%.2e", worst_rel) << " (" << disagree
    << " over 1e-7); max residual/lambda " << fmt("%.2e", worst_res) << " (" << residual_bad
    << " over 1e-10); max Hoelder excess " << fmt("%.2e", std::max(0.0, worst_holder)) << " (" << holder_bad
    << " over 1e-8)";
  return {tuples > 0 && disagree == 0 && residual_bad == 0 && holder_bad == 0, d.str()};
}

}  // namespace

int main() {
  run(1, "equality case", 1, equality_case);
  run(2, "exact Bernstein grid", 120, bernstein_grid);
  run(3, "endpoint inequality", 60, endpoint_grid);
  VerificationReport sweep;
  run(4, "main-theorem sweep", 600, [&] {
    sweep = main_sweep();
    return main_theorem(sweep);
  });
  run(5, "smoothing strictness", 600, [&] { return smoothing(sweep); });
  run(6, "lemma suites", 120, lemma_suites);
  run(7, "differential certificate", 1, differential);
  run(8, "anti-Wilf certificate", 120, anti_wilf_check);
  run(9, "solver hygiene", 600, solver_hygiene);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
