#pragma once

// Exact certificate that the balanced complete k-chromatic r-graph on n
// vertices has Lagrangian at most r! (C(n,r) - k C(n/k,r)) / n^r: the
// one-variable reduction, its Bernstein coefficients, the endpoint defects
// and the polynomial E_r behind the differential estimate.

#include "pspec/hypergraph.hpp"
#include "pspec/rational.hpp"
#include "pspec/solver.hpp"
#include "pspec/symfun.hpp"

#include <vector>

namespace pspec {

struct EvaluationContext {
  int r = 0, k = 0, n = 0;
  int q = 0;  // floor(n/k)
  int t = 0;  // n mod k
  int A = 0;  // t(q+1), vertices in the large classes
  int B = 0;  // (k-t)q
  Rational tau, xi, nu, rho, C;  // t/k, A/n, n/k, (q+1)/q, C(n,r) - k C(nu,r)

  bool divisible() const { return t == 0; }
};

/// Requires r >= 2, k >= 2 and n > (r-1)k.
EvaluationContext make_context(int r, int k, int n);

/// Polyform/r! of the balanced graph when the large classes share mass x
/// and the small classes share 1-x, each uniformly.
template <class Scalar>
Scalar one_var_F(const EvaluationContext& ctx, const Scalar& x) {
  if (ctx.t == 0) throw RangeError("one_var_F: requires k not dividing n");
  const Scalar a = x / Scalar(ctx.A), b = (Scalar(1) - x) / Scalar(ctx.B);
  const std::vector<WeightGroup<Scalar>> all{{a, ctx.A}, {b, ctx.B}};
  return esym_classes(all, ctx.r) - binom<Scalar>(ctx.q + 1, ctx.r) * Scalar(ctx.t) * pow_int_generic(a, ctx.r) -
         binom<Scalar>(ctx.q, ctx.r) * Scalar(ctx.k - ctx.t) * pow_int_generic(b, ctx.r);
}

/// dF/dx = (b-a) S_{r-2} - C(q,r-1) a^{r-1} + C(q-1,r-1) b^{r-1}, with S_{r-2}
/// the (r-2)-th elementary sum after removing one a and one b; 0 < x < 1.
template <class Scalar>
Scalar one_var_F_prime(const EvaluationContext& ctx, const Scalar& x) {
  if (ctx.t == 0) throw RangeError("one_var_F_prime: requires k not dividing n");
  if (!(x > Scalar(0) && x < Scalar(1))) throw RangeError("one_var_F_prime: requires 0 < x < 1");
  const Scalar a = x / Scalar(ctx.A), b = (Scalar(1) - x) / Scalar(ctx.B);
  const std::vector<WeightGroup<Scalar>> rest{{a, ctx.A - 1}, {b, ctx.B - 1}};
  return (b - a) * esym_classes(rest, ctx.r - 2) - binom<Scalar>(ctx.q, ctx.r - 1) * pow_int_generic(a, ctx.r - 1) +
         binom<Scalar>(ctx.q - 1, ctx.r - 1) * pow_int_generic(b, ctx.r - 1);
}

struct LocalizeResult {
  bool applicable = false;  // false when k | n
  bool pass = false;
  Rational min_left;   // min F' over the grid on (0, tau]
  Rational max_right;  // max F' over the grid on [xi, 1)
  Rational witness;    // first grid point violating the sign pattern
};

/// Exact sign check of F' on grids of grid_size points in (0,tau] and [xi,1).
LocalizeResult localize_check(const EvaluationContext& ctx, int grid_size = 100);

struct DerivativeCrossCheck {
  double max_error = 0.0;  // max |central difference - F'| / (1 + |F'|)
  bool pass = false;
};

DerivativeCrossCheck derivative_cross_check(const EvaluationContext& ctx, int points = 50);

/// Closed-form Bernstein coefficients Gamma_0..Gamma_r of P(s); requires 1 <= t <= k-1.
std::vector<Rational> gamma_coeffs(const EvaluationContext& ctx);

/// P(s) = C (n + (k-t)s)^r - n^r N(1 + s/q), expanded directly.
DensePolynomial<Rational> bernstein_target(const EvaluationContext& ctx);

/// to_bernstein of bernstein_target: the independent route to gamma_coeffs.
std::vector<Rational> gamma_oracle(const EvaluationContext& ctx);

/// P(i/(points-1)) > 0 for every grid point, exactly.
bool target_positive_on_grid(const EvaluationContext& ctx, int points = 101);

struct EndpointDefects {
  Rational d_all;   // C(n,r) nu^{-r} - e_r(1/(q+1) x A, 1/q x B)
  Rational d_mono;  // k psi(nu) - t psi(q+1) - (k-t) psi(q), psi(y) = C(y,r) y^{-r}
  Rational margin;  // d_all - d_mono
};

EndpointDefects endpoint_defects(const EvaluationContext& ctx);

Rational psi(const Rational& y, int r);

struct VarianceIdentity {
  Rational spread;    // sum over vertices of (w_v - 1/nu)^2
  Rational formula;   // k tau (1-tau) / (q (q+1) nu)
  bool equal = false;
};

VarianceIdentity variance_identity(const EvaluationContext& ctx);

/// (k tau(1-tau)/2) C(n-2,r-2) / (q (q+1)^{r-1} nu).
Rational stability_bound(const EvaluationContext& ctx);

/// max over y in [lo, hi] of (y-r+1)/((r-2)! y^4), attained at
/// clamp(4(r-1)/3, lo, hi).
Rational interpolation_max(int r, const Rational& lo, const Rational& hi);

/// (k tau(1-tau)/2) interpolation_max(r, q, q+1).
Rational mono_bound(const EvaluationContext& ctx);

struct ScalarEndpoint {
  Rational maximum;    // interpolation_max(r, q, q+1)
  Rational threshold;  // C(2q-2,r-2) / (q^2 (q+1)^{r-1})
  Rational margin;
  bool pass = false;
};

/// Requires q >= r-1.
ScalarEndpoint scalar_endpoint_check(int r, int q);

/// C(2q-2,r-2)/(q^2 (q+1)^{r-1}) < C(n-2,r-2)/(q (q+1)^{r-1} nu), exactly.
bool comparison_check(const EvaluationContext& ctx);

struct DifferentialCertificate {
  int r = 3;
  std::vector<Rational> coefficients;          // E_r, ascending powers
  std::vector<std::vector<Rational>> deltas;   // Delta_s for s = 3..r-1
  bool nonnegative = false;     // every coefficient of every Delta_s and of E_r
  bool matches_direct = false;  // recurrence equals the closed form of E_r
  bool e3_zero = false;
  double max_numeric_excess = 0.0;  // max relative excess of -psi'' over the bound
  bool numeric_pass = false;

  bool pass() const { return nonnegative && matches_direct && e3_zero && numeric_pass; }
};

/// E_r(X) = Y^2 P'' - 2rY P' + r(r+1) P + r(r-1) X Y^{r-2}, Y = X+r-1,
/// P = X(X+1)...(X+r-1), built by the recurrence E_{s+1} = (X+s)(E_s + Delta_s).
/// Requires 3 <= r <= 12.
DifferentialCertificate differential_certificate(int r, int numeric_points = 50);

DensePolynomial<Rational> e_polynomial_direct(int r);

struct EvaluationBound {
  double bound = 0.0;   // r! C n^{-r/p}
  Rational bound_p1;   // r! C / n^r
  double lambda = 0.0;  // solver value on the balanced tuple
  double margin = 0.0;  // bound - lambda
  bool divisible = false;
  bool pass = false;
};

inline constexpr double kBoundSlack = 1e-7;
inline constexpr double kStrictMargin = 1e-6;
inline constexpr int kStrictMarginOrder = 12;  // the gap shrinks below 1e-6 for larger n

/// Asserts lambda <= bound + 1e-7, equality within 1e-7 when k | n, and
/// margin >= 1e-6 when k does not divide n <= 12.
EvaluationBound evaluation_bound(const EvaluationContext& ctx, double p, const SolverConfig& cfg = {});

/// bound(p) = (r! C)^{1-1/p} bound(1)^{1/p} for p = p_num/p_den, decided
/// exactly after raising both sides to the power p_num.
bool holder_consistency(const EvaluationContext& ctx, int p_num, int p_den);

}  // namespace pspec
