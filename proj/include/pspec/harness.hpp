#pragma once

// Sweeps over parameter grids, the spectral coloring certificate and the
// JSON/CSV reports they produce.

#include "pspec/evaluation.hpp"
#include "pspec/hypergraph.hpp"
#include "pspec/solver.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pspec {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchema = 1;
inline constexpr double kArgmaxMargin = 1e-7;
inline constexpr int kMaxMainOrder = 14;
inline constexpr int kMaxBruteForceOrder = 10;

struct IntRange {
  int lo = 0, hi = 0;

  std::vector<int> values() const;
};

/// "3..5" or "4"; throws RangeError on malformed input or lo > hi.
IntRange parse_range(const std::string& text);

/// Partitions of n into exactly k positive parts, each descending, in
/// decreasing lexicographic order.
std::vector<std::vector<int>> enumerate_tuples(int n, int k);

struct VerificationReport {
  std::string scenario;
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<nlohmann::json> rows;  // each carries "verdict"; fail rows carry "witness"
  std::uint64_t seed = 0;

  int count(const std::string& verdict) const;
  bool all_pass() const;  // no "fail" or "inconclusive" row
  nlohmann::json to_json() const;
  void write(const std::string& path) const;
};

/// Solves every k-tuple of order n for each p; the balanced tuple must win by
/// at least 1e-7. Also records structural and ordering checks and the
/// smoothing move on every tuple with gap >= 2.
VerificationReport verify_main(int r, int k, int n, const std::vector<double>& p_list, const SolverConfig& cfg = {});

/// Runs verify_main over ranges, keeping every row.
VerificationReport verify_main_sweep(const IntRange& r, const IntRange& k, int n_max, const std::vector<double>& p_list,
                                     const SolverConfig& cfg = {});

struct EvaluationRow {
  int r = 0, k = 0, n = 0, t = 0;
  std::optional<Rational> min_gamma;
  std::optional<Rational> d_all, d_mono, margin;
  std::string verdict;  // "pass" or "fail"
  std::string note;
  nlohmann::json detail;
};

inline constexpr const char* kEvaluationCsvHeader = "r,k,n,t,min_gamma,D_all,D_mono,margin,verdict,note";

/// Exact certification of one (r,k,n), plus the solver comparison for each p.
EvaluationRow evaluate_instance(int r, int k, int n, const std::vector<double>& p_list, const SolverConfig& cfg = {});

/// Grid over r, k and (r-1)k < n <= (r-1)k + window.
VerificationReport verify_evaluation(const IntRange& r, const IntRange& k, int window, const std::vector<double>& p_list,
                                     const SolverConfig& cfg = {}, std::vector<EvaluationRow>* rows_out = nullptr);

std::string evaluation_csv(const std::vector<EvaluationRow>& rows);

struct AntiWilfCertificate {
  double lambda = 0.0;     // polyform at a feasible vector: a lower bound
  double threshold = 0.0;  // r! (C(n,r) - k C(n/k,r)) n^{-r/p}
  bool certified = false;  // lambda > threshold (1 + 1e-9): chromatic number >= k+1
  std::optional<int> brute_force_chi;  // least colorable k' <= k+1, n <= 10 only
  bool consistent = true;  // certified implies not k-colorable
  std::string note;
};

inline constexpr double kCertificateSlack = 1e-9;

/// Requires n > (r-1)k.
AntiWilfCertificate anti_wilf(const UniformHypergraph& g, int k, double p, const SolverConfig& cfg = {});

struct AntiWilfSuite {
  int instances = 0;
  int certificates = 0;
  int false_certificates = 0;
  std::string first_failure;
};

/// Random 3-graphs on n <= n_max vertices with random density and k in {2,3}.
AntiWilfSuite anti_wilf_random_suite(std::uint64_t seed, int count = 200, int n_max = 9, double p = 1.0,
                                     const SolverConfig& cfg = {});

/// Report wrapper around the suite results of run_lemma_suites.
VerificationReport verify_lemmas(std::uint64_t seed, int count = 500);

}  // namespace pspec
