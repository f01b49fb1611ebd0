#include "pspec/symfun.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace pspec;

namespace {

Rational q(long long a, long long b = 1) { return make_rational(a, b); }

// Sum over all degree-subsets of the expanded multiset.
Rational brute_esym(const std::vector<Rational>& values, int degree) {
  const int n = static_cast<int>(values.size());
  Rational total(0);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != degree) continue;
    Rational prod(1);
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1u) prod *= values[static_cast<std::size_t>(i)];
    total += prod;
  }
  return total;
}

Rational random_rational(std::mt19937_64& rng, int range = 20) {
  std::uniform_int_distribution<int> num(-range * 5, range * 5), den(1, 12);
  return q(num(rng), den(rng));
}

}  // namespace

TEST(Rational, StringRoundTrip) {
  EXPECT_EQ(to_string(q(6, 4)), "3/2");
  EXPECT_EQ(to_string(q(4)), "4/1");
  EXPECT_EQ(parse_rational("-10/4"), q(-5, 2));
  EXPECT_EQ(parse_rational("7"), q(7));
  EXPECT_THROW(parse_rational("1/0"), RangeError);
  EXPECT_THROW(parse_rational("abc"), InvariantError);
}

TEST(GenBinomial, Examples) {
  EXPECT_EQ(gen_binomial(q(7), 3), q(35));
  EXPECT_EQ(gen_binomial(q(7, 2), 3), q(35, 16));
  EXPECT_EQ(gen_binomial(q(2), 3), q(0));
  EXPECT_THROW(gen_binomial(q(2), -1), RangeError);
}

TEST(GenBinomial, PascalIdentityAtRandomRationals) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Rational x = random_rational(rng);
    const int s = 1 + trial % 7;
    EXPECT_EQ(gen_binomial(x, s), gen_binomial(x - 1, s) + gen_binomial(x - 1, s - 1));
  }
}

TEST(Esym, Examples) {
  const std::vector<WeightGroup<Rational>> g1{{q(1, 4), 4}, {q(1, 3), 3}};
  EXPECT_EQ(esym_classes(g1, 3), q(349, 432));
  const std::vector<WeightGroup<Rational>> g2{{q(5, 7), 1}};
  EXPECT_EQ(esym_classes(g2, 1), q(5, 7));
  const std::vector<WeightGroup<Rational>> g3{{q(1), 2}, {q(1), 2}};
  EXPECT_EQ(esym_classes(g3, 4), q(1));
  EXPECT_EQ(esym_classes(g3, 5), q(0));
}

TEST(Esym, MatchesSubsetEnumeration) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> mult(0, 4), groups(1, 4);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<WeightGroup<Rational>> g;
    std::vector<Rational> expanded;
    const int count = groups(rng);
    for (int i = 0; i < count && expanded.size() < 12; ++i) {
      const Rational v = random_rational(rng, 3);
      const int m = std::min<int>(mult(rng), 12 - static_cast<int>(expanded.size()));
      g.emplace_back(v, m);
      for (int j = 0; j < m; ++j) expanded.push_back(v);
    }
    for (int d = 0; d <= static_cast<int>(expanded.size()); ++d)
      ASSERT_EQ(esym_classes(g, d), brute_esym(expanded, d));
  }
}

TEST(Bernstein, Examples) {
  using P = DensePolynomial<Rational>;
  EXPECT_EQ(to_bernstein(P::constant(q(1)), 2), (std::vector<Rational>{q(1), q(1), q(1)}));
  EXPECT_EQ(to_bernstein(P::monomial(q(1), 1), 1), (std::vector<Rational>{q(0), q(1)}));
  const auto gamma = to_bernstein(P::monomial(q(1), 2), 2);
  EXPECT_EQ(gamma, (std::vector<Rational>{q(0), q(0), q(1)}));
  EXPECT_EQ(eval_bernstein(std::span<const Rational>(gamma), q(1, 2)), q(1, 4));
  EXPECT_THROW(to_bernstein(P::monomial(q(1), 3), 2), RangeError);
}

TEST(Bernstein, RoundTripAndEvaluation) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int deg = trial % 9;
    std::vector<Rational> c;
    for (int i = 0; i <= deg; ++i) c.push_back(random_rational(rng));
    const DensePolynomial<Rational> p(c);
    const int r = deg + trial % 3;
    const auto gamma = to_bernstein(p, r);
    EXPECT_EQ(from_bernstein(gamma), p);
    for (const Rational& s : {q(0), q(1, 3), q(1, 2), q(1)})
      EXPECT_EQ(eval_bernstein(std::span<const Rational>(gamma), s), p(s));
  }
}

TEST(SignChanges, Examples) {
  EXPECT_EQ(sign_changes(std::vector<Rational>{q(4, 3), q(-4, 3)}), 1);
  EXPECT_EQ(sign_changes(std::vector<Rational>{q(1), q(0), q(2)}), 0);
  EXPECT_EQ(sign_changes(std::vector<Rational>{q(1), q(-1), q(1)}), 2);
  EXPECT_EQ(sign_changes(std::vector<Rational>{}), 0);
}

TEST(DensePolynomial, RingOperations) {
  using P = DensePolynomial<Rational>;
  const P x = P::linear(q(0), q(1));
  const P p = (x + P::constant(q(1))).pow(3);
  EXPECT_EQ(p, P({q(1), q(3), q(3), q(1)}));
  EXPECT_EQ(p.derivative(), P({q(3), q(6), q(3)}));
  EXPECT_EQ(p.compose(x - P::constant(q(1))), x.pow(3));
  EXPECT_EQ((p - p).degree(), -1);
  EXPECT_EQ(p(q(1, 2)), q(27, 8));
}
