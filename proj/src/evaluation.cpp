#include "pspec/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pspec {

namespace {

using RPoly = DensePolynomial<Rational>;

Rational factorial(int m) {
  Rational f(1);
  for (int i = 2; i <= m; ++i) f *= Rational(i);
  return f;
}

void require_nondivisible(const EvaluationContext& ctx, const char* what) {
  if (ctx.t == 0) throw RangeError(std::string(what) + ": requires k not dividing n");
}

// X(X+1)...(X+s-1)
RPoly rising(int s) {
  RPoly p = RPoly::constant(Rational(1));
  for (int i = 0; i < s; ++i) p = p * RPoly::linear(Rational(i), Rational(1));
  return p;
}

RPoly shifted_power(int shift, int e) { return RPoly::linear(Rational(shift), Rational(1)).pow(e); }

RPoly delta_poly(int s) {
  const RPoly P = rising(s);
  const RPoly d1 = P.derivative(), d2 = d1.derivative();
  RPoly tail = shifted_power(s, s - 2) * Rational(s + 1) - shifted_power(s - 1, s - 2) * Rational(s - 1);
  tail = RPoly::monomial(Rational(s), 1) * tail;
  return RPoly::linear(Rational(2 * s - 1), Rational(2)) * d2 - d1 * Rational(2 * s) + tail;
}

bool all_nonnegative(const RPoly& p) {
  return std::all_of(p.coefficients().begin(), p.coefficients().end(),
                     [](const Rational& c) { return c >= 0; });
}

long double psi_ld(long double y, int r) {
  long double c = 1.0L;
  for (int i = 0; i < r; ++i) c *= (y - i) / (i + 1);
  return c / std::pow(y, static_cast<long double>(r));
}

}  // namespace

EvaluationContext make_context(int r, int k, int n) {
  if (r < 2 || k < 2) throw RangeError("make_context: requires r >= 2 and k >= 2");
  if (n <= (r - 1) * k) throw RangeError("make_context: requires n > (r-1)k");
  EvaluationContext c;
  c.r = r;
  c.k = k;
  c.n = n;
  c.q = n / k;
  c.t = n % k;
  c.A = c.t * (c.q + 1);
  c.B = (k - c.t) * c.q;
  c.tau = make_rational(c.t, k);
  c.xi = make_rational(c.A, n);
  c.nu = make_rational(n, k);
  c.rho = make_rational(c.q + 1, c.q);
  c.C = binom<Rational>(n, r) - Rational(k) * gen_binomial(c.nu, r);
  return c;
}

LocalizeResult localize_check(const EvaluationContext& ctx, int grid_size) {
  if (grid_size < 100) throw RangeError("localize_check: grid_size must be >= 100");
  LocalizeResult res;
  if (ctx.t == 0) return res;
  res.applicable = true;
  const Rational slack = make_rational(1, 1000000000);
  bool ok = true;
  for (int i = 1; i <= grid_size; ++i) {
    const Rational x = ctx.tau * make_rational(i, grid_size);
    const Rational d = one_var_F_prime(ctx, x);
    if (i == 1 || d < res.min_left) res.min_left = d;
    if (ok && d < -slack) {
      ok = false;
      res.witness = x;
    }
  }
  for (int i = 0; i < grid_size; ++i) {
    const Rational x = ctx.xi + (Rational(1) - ctx.xi) * make_rational(i, grid_size);
    const Rational d = one_var_F_prime(ctx, x);
    if (i == 0 || d > res.max_right) res.max_right = d;
    if (ok && d > slack) {
      ok = false;
      res.witness = x;
    }
  }
  res.pass = ok;
  return res;
}

DerivativeCrossCheck derivative_cross_check(const EvaluationContext& ctx, int points) {
  require_nondivisible(ctx, "derivative_cross_check");
  if (points < 1) throw RangeError("derivative_cross_check: points must be positive");
  DerivativeCrossCheck res;
  const double h = 1e-6;
  for (int i = 0; i < points; ++i) {
    const double x = (i + 0.5) / points;
    const double fd = (one_var_F(ctx, x + h) - one_var_F(ctx, x - h)) / (2 * h);
    const double exact = one_var_F_prime(ctx, x);
    res.max_error = std::max(res.max_error, std::abs(fd - exact) / (1.0 + std::abs(exact)));
  }
  res.pass = res.max_error <= 1e-6;
  return res;
}

std::vector<Rational> gamma_coeffs(const EvaluationContext& ctx) {
  require_nondivisible(ctx, "gamma_coeffs");
  const int r = ctx.r;
  const Rational n(ctx.n), big(ctx.k * (ctx.q + 1));
  const Rational nr = pow_int(n, r);
  const Rational mono_large = Rational(ctx.t) * binom<Rational>(ctx.q + 1, r);
  const Rational mono_small = Rational(ctx.k - ctx.t) * binom<Rational>(ctx.q, r);
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(r) + 1);
  for (int m = 0; m <= r; ++m) {
    Rational S(0);
    for (int i = 0; i <= m; ++i)
      S += binom<Rational>(ctx.B, i) * binom<Rational>(ctx.A, m - i) * pow_int(ctx.rho, i);
    const Rational bracket = binom<Rational>(ctx.n - m, r - m) / binom<Rational>(r, m) * S - mono_large -
                             mono_small * pow_int(ctx.rho, m);
    out.push_back(ctx.C * pow_int(n, r - m) * pow_int(big, m) - nr * bracket);
  }
  return out;
}

RPoly bernstein_target(const EvaluationContext& ctx) {
  require_nondivisible(ctx, "bernstein_target");
  const int r = ctx.r;
  const RPoly R = RPoly::linear(Rational(1), make_rational(1, ctx.q));  // 1 + s/q
  // N(R) = e_r(1 x A, R x B) - t C(q+1,r) - (k-t) C(q,r) R^r
  RPoly N;
  for (int j = 0; j <= std::min(r, ctx.B); ++j)
    N += R.pow(j) * (binom<Rational>(ctx.B, j) * binom<Rational>(ctx.A, r - j));
  N -= RPoly::constant(Rational(ctx.t) * binom<Rational>(ctx.q + 1, r));
  N -= R.pow(r) * (Rational(ctx.k - ctx.t) * binom<Rational>(ctx.q, r));
  const RPoly lead = RPoly::linear(Rational(ctx.n), Rational(ctx.k - ctx.t)).pow(r) * ctx.C;
  return lead - N * pow_int(Rational(ctx.n), r);
}

std::vector<Rational> gamma_oracle(const EvaluationContext& ctx) {
  return to_bernstein(bernstein_target(ctx), ctx.r);
}

bool target_positive_on_grid(const EvaluationContext& ctx, int points) {
  if (points < 2) throw RangeError("target_positive_on_grid: needs at least two points");
  const RPoly P = bernstein_target(ctx);
  for (int i = 0; i < points; ++i)
    if (P(make_rational(i, points - 1)) <= 0) return false;
  return true;
}

Rational psi(const Rational& y, int r) { return gen_binomial(y, r) * pow_int(y, -r); }

EndpointDefects endpoint_defects(const EvaluationContext& ctx) {
  require_nondivisible(ctx, "endpoint_defects");
  const int r = ctx.r;
  EndpointDefects d;
  const std::vector<WeightGroup<Rational>> groups{{make_rational(1, ctx.q + 1), ctx.A}, {make_rational(1, ctx.q), ctx.B}};
  d.d_all = binom<Rational>(ctx.n, r) * pow_int(ctx.nu, -r) - esym_classes(groups, r);
  d.d_mono = Rational(ctx.k) * psi(ctx.nu, r) - Rational(ctx.t) * psi(Rational(ctx.q + 1), r) -
             Rational(ctx.k - ctx.t) * psi(Rational(ctx.q), r);
  d.margin = d.d_all - d.d_mono;
  return d;
}

VarianceIdentity variance_identity(const EvaluationContext& ctx) {
  VarianceIdentity v;
  const Rational mean = Rational(1) / ctx.nu;
  const Rational dl = make_rational(1, ctx.q + 1) - mean, ds = make_rational(1, ctx.q) - mean;
  v.spread = Rational(ctx.A) * dl * dl + Rational(ctx.B) * ds * ds;
  v.formula = Rational(ctx.k) * ctx.tau * (Rational(1) - ctx.tau) / (Rational(ctx.q) * Rational(ctx.q + 1) * ctx.nu);
  v.equal = v.spread == v.formula;
  return v;
}

Rational stability_bound(const EvaluationContext& ctx) {
  const Rational spread_half = Rational(ctx.k) * ctx.tau * (Rational(1) - ctx.tau) / Rational(2);
  return spread_half * binom<Rational>(ctx.n - 2, ctx.r - 2) /
         (Rational(ctx.q) * pow_int(Rational(ctx.q + 1), ctx.r - 1) * ctx.nu);
}

Rational interpolation_max(int r, const Rational& lo, const Rational& hi) {
  if (r < 2 || lo > hi || lo <= 0) throw RangeError("interpolation_max: requires r >= 2 and 0 < lo <= hi");
  // h(y) = (y-r+1)/y^4 increases up to 4(r-1)/3 and decreases after
  Rational y = make_rational(4 * (r - 1), 3);
  y = std::clamp(y, lo, hi);
  return (y - Rational(r - 1)) / (pow_int(y, 4) * factorial(r - 2));
}

Rational mono_bound(const EvaluationContext& ctx) {
  const Rational spread_half = Rational(ctx.k) * ctx.tau * (Rational(1) - ctx.tau) / Rational(2);
  return spread_half * interpolation_max(ctx.r, Rational(ctx.q), Rational(ctx.q + 1));
}

ScalarEndpoint scalar_endpoint_check(int r, int q) {
  if (r < 2 || q < r - 1) throw RangeError("scalar_endpoint_check: requires q >= r-1");
  ScalarEndpoint s;
  s.maximum = interpolation_max(r, Rational(q), Rational(q + 1));
  s.threshold = binom<Rational>(2 * q - 2, r - 2) / (Rational(q) * Rational(q) * pow_int(Rational(q + 1), r - 1));
  s.margin = s.threshold - s.maximum;
  s.pass = s.margin > 0;
  return s;
}

bool comparison_check(const EvaluationContext& ctx) {
  const Rational common = pow_int(Rational(ctx.q + 1), ctx.r - 1);
  const Rational lhs = binom<Rational>(2 * ctx.q - 2, ctx.r - 2) / (Rational(ctx.q) * Rational(ctx.q) * common);
  const Rational rhs = binom<Rational>(ctx.n - 2, ctx.r - 2) / (Rational(ctx.q) * common * ctx.nu);
  return lhs < rhs;
}

RPoly e_polynomial_direct(int r) {
  if (r < 3) throw RangeError("e_polynomial_direct: requires r >= 3");
  const RPoly P = rising(r);
  const RPoly d1 = P.derivative(), d2 = d1.derivative();
  const RPoly Y = RPoly::linear(Rational(r - 1), Rational(1));
  return Y * Y * d2 - Y * d1 * Rational(2 * r) + P * Rational(r * (r + 1)) +
         RPoly::monomial(Rational(r * (r - 1)), 1) * Y.pow(r - 2);
}

DifferentialCertificate differential_certificate(int r, int numeric_points) {
  if (r < 3 || r > 12) throw RangeError("differential_certificate: requires 3 <= r <= 12");
  if (numeric_points < 2) throw RangeError("differential_certificate: needs at least two sample points");
  DifferentialCertificate cert;
  cert.r = r;
  cert.e3_zero = e_polynomial_direct(3).is_zero();
  RPoly E;  // E_3 = 0
  bool nonneg = true;
  for (int s = 3; s < r; ++s) {
    const RPoly D = delta_poly(s);
    nonneg = nonneg && all_nonnegative(D);
    cert.deltas.push_back(D.coefficients());
    E = RPoly::linear(Rational(s), Rational(1)) * (E + D);
  }
  cert.coefficients = E.coefficients();
  cert.nonnegative = nonneg && all_nonnegative(E);
  cert.matches_direct = E == e_polynomial_direct(r);

  long double fact = 1.0L;
  for (int i = 2; i <= r - 2; ++i) fact *= i;
  const long double h = 1e-4L;
  double worst = 0.0;
  for (int i = 0; i < numeric_points; ++i) {
    const long double y = (r - 1) + 11.0L * i / (numeric_points - 1);
    const long double second = (psi_ld(y + h, r) - 2 * psi_ld(y, r) + psi_ld(y - h, r)) / (h * h);
    const long double bound = (y - r + 1) / (fact * y * y * y * y);
    const long double scale = std::max({std::abs(bound), std::abs(second), 1e-300L});
    worst = std::max(worst, static_cast<double>((-second - bound) / scale));
  }
  cert.max_numeric_excess = worst;
  cert.numeric_pass = worst <= 1e-6;
  return cert;
}

EvaluationBound evaluation_bound(const EvaluationContext& ctx, double p, const SolverConfig& cfg) {
  if (!(p >= 1.0)) throw RangeError("evaluation_bound: requires p >= 1");
  EvaluationBound b;
  const Rational scaled = factorial(ctx.r) * ctx.C;
  b.bound_p1 = scaled * pow_int(Rational(ctx.n), -ctx.r);
  b.bound = to_double(scaled) * std::pow(static_cast<double>(ctx.n), -ctx.r / p);
  b.lambda = lambda_p_classes(balanced_tuple(ctx.r, ctx.k, ctx.n), p, cfg).lambda;
  b.margin = b.bound - b.lambda;
  b.divisible = ctx.divisible();
  const double scale = std::max(1.0, b.bound);
  if (b.divisible)
    b.pass = std::abs(b.margin) <= kBoundSlack * scale;
  else if (ctx.n <= kStrictMarginOrder)
    b.pass = b.margin >= kStrictMargin * scale;
  else
    b.pass = b.margin >= -kBoundSlack * scale;
  return b;
}

bool holder_consistency(const EvaluationContext& ctx, int p_num, int p_den) {
  if (p_num < p_den || p_den < 1) throw RangeError("holder_consistency: requires p = p_num/p_den >= 1");
  const Rational fact = factorial(ctx.r);
  const Rational n(ctx.n);
  // bound(p)^{p_num} = (r! C)^{p_num} n^{-r p_den}
  const Rational direct = pow_int(fact * ctx.C, p_num) * pow_int(n, -ctx.r * p_den);
  const Rational scaled = fact * balanced_edge_bound(ctx.r, ctx.k, ctx.n);
  const Rational bound1 = fact * ctx.C * pow_int(n, -ctx.r);
  const Rational reduced = pow_int(scaled, p_num - p_den) * pow_int(bound1, p_den);
  return direct == reduced;
}

}  // namespace pspec
