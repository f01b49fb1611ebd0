#include "pspec/evaluation.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pspec;

namespace {
Rational q(long long a, long long b = 1) { return make_rational(a, b); }

// Every (r,k,n) of the certification grid with k not dividing n.
template <class F>
void for_grid(int r_max, F&& f) {
  for (int r = 3; r <= r_max; ++r)
    for (int k = 2; k <= 6; ++k)
      for (int n = (r - 1) * k + 1; n <= (r - 1) * k + 20; ++n)
        if (n % k != 0) f(make_context(r, k, n));
}
}  // namespace

TEST(Context, Fields) {
  const auto c = make_context(3, 2, 7);
  EXPECT_EQ(c.q, 3);
  EXPECT_EQ(c.t, 1);
  EXPECT_EQ(c.A, 4);
  EXPECT_EQ(c.B, 3);
  EXPECT_EQ(c.tau, q(1, 2));
  EXPECT_EQ(c.xi, q(4, 7));
  EXPECT_EQ(c.C, q(245, 8));
  EXPECT_LE(c.tau, c.xi);
  EXPECT_THROW(make_context(3, 2, 4), RangeError);
}

TEST(OneVariable, Examples) {
  const auto c = make_context(3, 2, 7);
  EXPECT_EQ(one_var_F(c, q(1, 2)), q(17, 192));
  EXPECT_EQ(one_var_F(c, q(4, 7)), q(30, 343));
  EXPECT_EQ(one_var_F(c, q(1)), q(0));
  EXPECT_THROW(one_var_F_prime(c, q(0)), RangeError);
  EXPECT_THROW(one_var_F_prime(c, q(1)), RangeError);
  EXPECT_THROW(one_var_F(make_context(3, 2, 6), q(1, 2)), RangeError);
}

TEST(OneVariable, DerivativeMatchesCentralDifference) {
  for (auto [r, k, n] : {std::tuple{3, 2, 7}, {4, 3, 14}, {5, 2, 11}, {3, 4, 10}}) {
    const auto res = derivative_cross_check(make_context(r, k, n));
    EXPECT_TRUE(res.pass) << r << "," << k << "," << n << " err " << res.max_error;
  }
}

TEST(OneVariable, MatchesPolyformOfExplicitGraph) {
  for (int r = 3; r <= 4; ++r)
    for (int k = 2; k <= 3; ++k)
      for (int n = (r - 1) * k + 1; n <= 12; ++n) {
        if (n % k == 0) continue;
        const auto c = make_context(r, k, n);
        const auto g = build_complete_chromatic(balanced_tuple(r, k, n));
        double fact = 1;
        for (int i = 2; i <= r; ++i) fact *= i;
        for (double x : {0.1, 0.37, 0.5, 0.81}) {
          Eigen::VectorXd w(n);
          for (int v = 0; v < n; ++v) w[v] = v < c.A ? x / c.A : (1 - x) / c.B;
          EXPECT_NEAR(one_var_F(c, x), polyform(g, w) / fact, 1e-10);
        }
      }
}

TEST(Localize, Examples) {
  EXPECT_TRUE(localize_check(make_context(3, 2, 7)).pass);
  EXPECT_TRUE(localize_check(make_context(4, 3, 14)).pass);
  const auto d = localize_check(make_context(3, 2, 6));
  EXPECT_FALSE(d.applicable);
  EXPECT_THROW(localize_check(make_context(3, 2, 7), 50), RangeError);
}

TEST(Localize, Grid) {
  for_grid(5, [](const EvaluationContext& c) {
    EXPECT_TRUE(localize_check(c).pass) << c.r << "," << c.k << "," << c.n;
  });
}

TEST(Gamma, Examples) {
  const auto g = gamma_coeffs(make_context(3, 2, 7));
  ASSERT_EQ(g.size(), 4u);
  EXPECT_EQ(g[0], q(1715, 8));
  EXPECT_EQ(g[3], q(392, 3));
  for (const auto& v : g) EXPECT_GT(v, 0);
  EXPECT_THROW(gamma_coeffs(make_context(3, 2, 6)), RangeError);
}

TEST(Gamma, OracleAndPositivityOnGrid) {
  for_grid(6, [](const EvaluationContext& c) {
    const auto g = gamma_coeffs(c);
    EXPECT_EQ(g, gamma_oracle(c)) << c.r << "," << c.k << "," << c.n;
    for (const auto& v : g) EXPECT_GT(v, 0) << c.r << "," << c.k << "," << c.n;
  });
}

TEST(Gamma, SampledTargetPositive) {
  for (auto [r, k, n] : {std::tuple{3, 2, 7}, {4, 3, 14}, {6, 5, 33}, {8, 6, 50}})
    EXPECT_TRUE(target_positive_on_grid(make_context(r, k, n)));
}

TEST(Defects, Examples) {
  const auto c = make_context(3, 2, 7);
  const auto d = endpoint_defects(c);
  EXPECT_EQ(d.d_all, q(179, 21168));
  EXPECT_EQ(d.d_mono, q(53, 21168));
  EXPECT_EQ(d.margin, q(1, 168));
  EXPECT_EQ(psi(q(7, 2), 3), q(5, 98));
  EXPECT_EQ(psi(q(4), 3), q(1, 16));
  EXPECT_EQ(psi(q(3), 3), q(1, 27));
  const auto v = variance_identity(c);
  EXPECT_EQ(v.spread, q(1, 84));
  EXPECT_TRUE(v.equal);
  EXPECT_GT(endpoint_defects(make_context(4, 2, 9)).margin, 0);
}

TEST(Defects, Bounds) {
  const auto c = make_context(3, 2, 7);
  EXPECT_EQ(stability_bound(c), q(5, 672));
  EXPECT_EQ(mono_bound(c), q(1, 324));
  EXPECT_GT(stability_bound(c), mono_bound(c));
  EXPECT_TRUE(comparison_check(c));
}

TEST(Defects, GridChain) {
  for_grid(6, [](const EvaluationContext& c) {
    const auto d = endpoint_defects(c);
    EXPECT_GT(d.margin, 0);
    EXPECT_GE(d.d_all, stability_bound(c));
    EXPECT_LE(d.d_mono, mono_bound(c));
    EXPECT_TRUE(variance_identity(c).equal);
    EXPECT_TRUE(comparison_check(c));
    EXPECT_TRUE(scalar_endpoint_check(c.r, c.q).pass);
  });
}

TEST(ScalarEndpoint, Examples) {
  const auto a = scalar_endpoint_check(3, 3);
  EXPECT_EQ(a.maximum, q(1, 81));
  EXPECT_EQ(a.threshold, q(4, 144));
  EXPECT_TRUE(a.pass);
  const auto b = scalar_endpoint_check(3, 4);
  EXPECT_EQ(b.maximum, q(1, 128));
  EXPECT_TRUE(b.pass);
  EXPECT_TRUE(scalar_endpoint_check(4, 4).pass);
  EXPECT_THROW(scalar_endpoint_check(4, 2), RangeError);
}

TEST(Differential, Examples) {
  const auto e3 = differential_certificate(3);
  EXPECT_TRUE(e3.e3_zero);
  EXPECT_TRUE(e3.coefficients.empty());
  for (int r = 3; r <= 12; ++r) {
    const auto cert = differential_certificate(r);
    EXPECT_TRUE(cert.pass()) << "r=" << r << " excess " << cert.max_numeric_excess;
    if (r > 3) EXPECT_FALSE(cert.coefficients.empty());
  }
  EXPECT_THROW(differential_certificate(2), RangeError);
  EXPECT_THROW(differential_certificate(13), RangeError);
}

TEST(Differential, RecurrenceStartsFromDirectFormula) {
  // E_4 from one step of the recurrence: (X+3) Delta_3.
  const auto cert = differential_certificate(4);
  EXPECT_EQ(cert.coefficients, e_polynomial_direct(4).coefficients());
}

TEST(Bound, Examples) {
  const auto a = evaluation_bound(make_context(3, 2, 6), 1.0);
  EXPECT_EQ(a.bound_p1, q(1, 2));
  EXPECT_NEAR(a.lambda, 0.5, 1e-9);
  EXPECT_TRUE(a.pass);
  const auto b = evaluation_bound(make_context(3, 2, 7), 1.0);
  EXPECT_EQ(b.bound_p1, q(15, 28));
  EXPECT_GE(b.lambda, 6.0 * 17 / 192 - 1e-12);
  EXPECT_LT(b.lambda, 15.0 / 28);
  EXPECT_TRUE(b.pass);
  const auto c = evaluation_bound(make_context(3, 2, 6), 2.0);
  EXPECT_NEAR(c.bound, 3 * std::sqrt(6.0), 1e-12);
  EXPECT_NEAR(c.lambda, 3 * std::sqrt(6.0), 1e-7);
  EXPECT_THROW(evaluation_bound(make_context(3, 2, 7), 0.5), RangeError);
}

TEST(Bound, SmallRangeAllExponents) {
  for (int r = 3; r <= 4; ++r)
    for (int k = 2; k <= 3; ++k)
      for (int n = (r - 1) * k + 1; n <= 12; ++n)
        for (double p : {1.0, 1.5, 2.0, 3.0}) {
          const auto b = evaluation_bound(make_context(r, k, n), p);
          EXPECT_TRUE(b.pass) << r << "," << k << "," << n << " p=" << p << " margin " << b.margin;
        }
}

TEST(Bound, HolderExponents) {
  for (auto [r, k, n] : {std::tuple{3, 2, 7}, {3, 2, 6}, {4, 3, 14}})
    for (auto [a, b] : {std::pair{3, 2}, {2, 1}, {3, 1}})
      EXPECT_TRUE(holder_consistency(make_context(r, k, n), a, b));
}
