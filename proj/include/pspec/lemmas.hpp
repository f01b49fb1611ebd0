#pragma once

// Executable checks of the local inequalities behind the balancing
// argument: majorization of gap-two smoothings, layer comparisons, the
// stop-loss kernel, coefficient sign patterns and the two global moves
// (embedded smoothing for p > 1, rebalancing for p = 1).

#include "pspec/hypergraph.hpp"
#include "pspec/rational.hpp"
#include "pspec/solver.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pspec {

inline constexpr double kLemmaSlack = 1e-8;     // strict numeric comparisons
inline constexpr double kIdentitySlack = 1e-10;  // identities evaluated in double

struct MajorizationVerdict {
  bool pass = false;
  int failing_prefix = -1;  // first prefix length where u falls below v
};

/// u majorizes v: sorted-descending prefix sums of u dominate those of v.
/// Throws DimensionError on length mismatch and InvariantError when the
/// totals differ (beyond 1e-12 relative for double).
MajorizationVerdict check_majorization(std::vector<double> u, std::vector<double> v);
MajorizationVerdict check_majorization(std::vector<Rational> u, std::vector<Rational> v);

/// Two local blocks of sizes m+2 (C) and m (B) with p-masses S_C, S_B.
template <class Scalar>
struct LocalPair {
  int m = 1;
  Scalar S_C{1};
  Scalar S_B{1};

  Scalar rho() const { return S_B / S_C; }
  // rho >= (m+1)/(m+2)
  bool precondition() const { return S_B * Scalar(m + 2) >= S_C * Scalar(m + 1); }
};

template <class Scalar>
struct GapTwoMasses {
  std::vector<Scalar> old_masses;  // S_C/(m+2) x (m+2), then S_B/m x m
  std::vector<Scalar> new_masses;  // S_C/(m+1) x (m+1), then S_B/(m+1) x (m+1)
  bool precondition = false;
  MajorizationVerdict majorization;
};

GapTwoMasses<double> gap_two_masses(const LocalPair<double>& pair);
GapTwoMasses<Rational> gap_two_masses(const LocalPair<Rational>& pair);

struct LayerComparison {
  std::vector<double> old_layer;  // index s = 1..len
  std::vector<double> new_layer;
  bool pass = false;
  int witness_rank = -1;  // first failing s
  double min_margin = 0.0;
};

/// e_s of the alpha-th powers of the local masses, s = 1..2m+2; asserts no decrease.
LayerComparison full_layers_check(const LocalPair<double>& pair, double alpha);

/// O_s = e_s(all) - e_s(C side), s = 1..m+2 (strict increase asserted).
LayerComparison one_sided_check(const LocalPair<double>& pair, double alpha);

struct KernelCheck {
  double x = 0.0;
  double alpha = 0.5;
  double quadrature = 0.0;  // alpha(1-alpha) int_0^inf min(T,x) T^{alpha-2} dT
  double relative_error = 0.0;
  bool pass = false;
};

KernelCheck stop_loss_kernel_check(double x, double alpha, double rel_tol = 1e-6);

struct TMassSwitch {
  bool applicable = false;  // N > M and Y_U < Y_V
  double old_value = 0.0;
  double new_value = 0.0;
  std::vector<double> new_values;
  bool pass = false;
};

/// Swaps the t-masses of classes u and v of a class-constant vector.
TMassSwitch t_mass_switch(const ClassTuple& tuple, std::vector<double> values, int u, int v, double t);

struct PureCross {
  int c = 2;
  int s = 2;
  double alpha = 0.5;
  std::vector<double> coeffs;  // C_1..C_{s-1}
  std::vector<double> ratios;  // R_1..R_{s-1}, new over old coefficient
  int sign_changes = 0;
  bool ratios_decreasing = false;
  double delta_at_boundary = 0.0;  // Delta(rho0^alpha), rho0 = c/(c+1)
  double layer_difference = 0.0;   // same quantity from the explicit local layers
  bool pass = false;
};

/// Requires 2 <= s <= c and 0 < alpha < 1.
PureCross pure_cross_delta(int c, int s, double alpha);

struct BreakpointValue {
  int j = 1;
  Rational y;            // closed-form Y_j
  Rational oracle;       // H(y_j)/y_j from the raw stop-loss transforms
  Rational lower_bound;  // C(c-1,s-2)/(s-1) ((s-2)q^M - (c-s+1)(1-q^M))
  bool pass = false;
};

/// Y_1..Y_{s-1} at the boundary ratio; requires 2 <= s <= c.
std::vector<BreakpointValue> stop_loss_breakpoints(int c, int s);

struct MixedDelta {
  int a = 0;
  int b = 0;
  int r = 0;
  std::vector<Rational> coeffs;  // D_1..D_{r-1}
  int sign_changes = 0;
  Rational delta_at_c;   // Delta(b/(b+1))
  Rational grid_min;     // min over t = c i / grid, i = 1..grid
  int grid_argmin = 0;
  bool pass = false;
};

/// Requires a >= b+2, b >= r-1, r >= 3.
MixedDelta mixed_delta_p1(int a, int b, int r, int grid = 100);

/// L_r(x) = C(x,r) - C(x-1,r) (x/(x-1))^r; requires x >= r.
Rational lr_defect(const Rational& x, int r);

struct ScanResult {
  int checked = 0;
  bool pass = false;
  std::string witness;
};

/// L_r(x+1) > L_r(x) for integers x in [r, r+span].
ScanResult lr_monotone_scan(int r, int span = 20);

/// F(z) <= F(z+1) for F(z) = C(z,l)/C(z,m) z^{-(l-m)/t}, t = t_num/t_den >= 1,
/// decided exactly; requires z >= l >= m >= 0.
bool coeff_monotone_step(int l, int m, int t_num, int t_den, int z);
ScanResult coeff_monotone_scan(int max_index = 6, int span = 30);

struct OrderingCheck {
  bool opposite_order = false;  // n_i >= n_j implies a_i <= a_j
  bool mass_order = false;      // n_i >= n_j implies n_i a_i^p >= n_j a_j^p
  std::string witness;
};

OrderingCheck ordering_check(const ClassTuple& t, double p, const std::vector<double>& values);

struct LayerDelta {
  std::string kind;  // "full", "one-sided", "pure-cross" (p > 1); "external", "mixed" (p = 1)
  int rank = 0;
  double delta = 0.0;
};

struct SmoothingOutcome {
  std::vector<int> sizes;
  std::vector<int> new_sizes;
  double p = 1.0;
  double old_value = 0.0;  // solved lambda^(p) of the tuple
  double new_value = 0.0;  // polyform of the smoothed graph at the test vector
  bool precondition = false;  // hypotheses under which the increase is claimed
  std::string diagnostics;    // which hypothesis failed, if any
  bool strict = false;        // new > old + 1e-9 old
  std::vector<LayerDelta> breakdown;  // r! times each layer change
  double breakdown_sum = 0.0;
  bool breakdown_consistent = false;  // |sum - (new - old)| <= 1e-10 (1 + old)
};

/// Gap-two embedded smoothing (p > 1) or one-vertex rebalancing (p = 1)
/// of the largest and smallest class. Requires n_1 - n_k >= 2.
SmoothingOutcome smoothing_compare(const ClassTuple& t, double p, const SolverConfig& cfg = {});
SmoothingOutcome smoothing_compare_values(const ClassTuple& t, double p, const std::vector<double>& values);

struct SuiteResult {
  std::string name;
  int instances = 0;
  int passed = 0;
  std::string first_failure;

  bool pass() const { return instances > 0 && passed == instances; }
};

/// Seeded randomized runs of every local lemma, `count` instances each.
std::vector<SuiteResult> run_lemma_suites(std::uint64_t seed, int count = 500);

}  // namespace pspec
