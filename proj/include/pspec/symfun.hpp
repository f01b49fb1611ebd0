#pragma once

// Exact-capable symmetric-function toolkit: generalized binomials,
// elementary symmetric sums of multisets given as (value, multiplicity)
// groups, dense polynomials, Bernstein basis conversion and sign counting.
// Everything is templated on the scalar so the same code runs on double
// (solvers) and Rational (certificates).

#include "pspec/errors.hpp"
#include "pspec/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pspec {

template <class Scalar>
using WeightGroup = std::pair<Scalar, int>;  // value and multiplicity

/// x(x-1)...(x-s+1)/s!, defined for every real x and integer s >= 0.
/// Integer x with 0 <= x < s yields 0 automatically (one factor vanishes).
template <class Scalar>
Scalar gen_binomial(const Scalar& x, int s) {
  if (s < 0) throw RangeError("gen_binomial: negative lower index");
  Scalar result(1);
  for (int i = 0; i < s; ++i) {
    result *= (x - Scalar(i));
    result /= Scalar(i + 1);
  }
  return result;
}

/// Integer binomial as the scalar type; zero outside 0 <= s <= m.
template <class Scalar>
Scalar binom(long long m, long long s) {
  if (s < 0 || m < 0 || s > m) return Scalar(0);
  if (s > m - s) s = m - s;
  Scalar result(1);
  for (long long i = 0; i < s; ++i) {
    result *= Scalar(m - i);
    result /= Scalar(i + 1);
  }
  return result;
}

/// Coefficients [z^0..z^degree] of prod_i (1 + a_i z)^{mult_i}.
template <class Scalar>
std::vector<Scalar> esym_series(std::span<const WeightGroup<Scalar>> groups, int degree) {
  if (degree < 0) return {};
  std::vector<Scalar> coeffs(static_cast<std::size_t>(degree) + 1, Scalar(0));
  coeffs[0] = Scalar(1);
  int filled = 0;  // highest degree that can be nonzero so far
  for (const auto& [value, mult] : groups) {
    if (mult < 0) throw RangeError("esym: negative multiplicity");
    for (int rep = 0; rep < mult; ++rep) {
      filled = std::min(degree, filled + 1);
      for (int d = filled; d >= 1; --d) coeffs[d] += value * coeffs[d - 1];
    }
  }
  return coeffs;
}

/// Coefficient of z^degree in prod_i (1 + a_i z)^{mult_i}: the elementary
/// symmetric sum of that degree over the expanded multiset.
template <class Scalar>
Scalar esym_classes(std::span<const WeightGroup<Scalar>> groups, int degree) {
  if (degree < 0) return Scalar(0);
  return esym_series(groups, degree)[static_cast<std::size_t>(degree)];
}

template <class Scalar>
Scalar esym_classes(const std::vector<WeightGroup<Scalar>>& groups, int degree) {
  return esym_classes(std::span<const WeightGroup<Scalar>>(groups), degree);
}

/// Plain elementary symmetric sum e_degree(values).
template <class Scalar>
Scalar esym(std::span<const Scalar> values, int degree) {
  std::vector<WeightGroup<Scalar>> groups;
  groups.reserve(values.size());
  for (const auto& v : values) groups.emplace_back(v, 1);
  return esym_classes(std::span<const WeightGroup<Scalar>>(groups), degree);
}

/// Number of sign alternations after deleting zeros.
template <class Scalar>
int sign_changes(std::span<const Scalar> seq) {
  int changes = 0;
  int last = 0;
  for (const auto& v : seq) {
    int s = (v > Scalar(0)) - (v < Scalar(0));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

template <class Scalar>
int sign_changes(const std::vector<Scalar>& seq) {
  return sign_changes(std::span<const Scalar>(seq));
}

/// Dense univariate polynomial, coefficient i multiplies X^i. The zero
/// polynomial has no coefficients and degree -1.
template <class Scalar>
class DensePolynomial {
 public:
  DensePolynomial() = default;
  explicit DensePolynomial(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static DensePolynomial constant(const Scalar& c) { return DensePolynomial({c}); }
  static DensePolynomial monomial(const Scalar& c, int degree) {
    std::vector<Scalar> v(static_cast<std::size_t>(degree) + 1, Scalar(0));
    v.back() = c;
    return DensePolynomial(std::move(v));
  }
  // c0 + c1 X
  static DensePolynomial linear(const Scalar& c0, const Scalar& c1) {
    return DensePolynomial({c0, c1});
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Scalar>& coefficients() const { return coeffs_; }

  Scalar coefficient(int i) const {
    if (i < 0 || i > degree()) return Scalar(0);
    return coeffs_[static_cast<std::size_t>(i)];
  }

  Scalar operator()(const Scalar& x) const {
    Scalar acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  DensePolynomial derivative() const {
    if (degree() < 1) return {};
    std::vector<Scalar> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Scalar(static_cast<long>(i));
    return DensePolynomial(std::move(d));
  }

  DensePolynomial& operator+=(const DensePolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Scalar(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  DensePolynomial& operator-=(const DensePolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Scalar(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  DensePolynomial& operator*=(const Scalar& c) {
    for (auto& v : coeffs_) v *= c;
    trim();
    return *this;
  }

  friend DensePolynomial operator+(DensePolynomial a, const DensePolynomial& b) { return a += b; }
  friend DensePolynomial operator-(DensePolynomial a, const DensePolynomial& b) { return a -= b; }
  friend DensePolynomial operator*(DensePolynomial a, const Scalar& c) { return a *= c; }
  friend DensePolynomial operator*(const Scalar& c, DensePolynomial a) { return a *= c; }
  friend DensePolynomial operator*(const DensePolynomial& a, const DensePolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> out(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return DensePolynomial(std::move(out));
  }
  friend bool operator==(const DensePolynomial& a, const DensePolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  DensePolynomial pow(int e) const {
    DensePolynomial result = constant(Scalar(1));
    for (int i = 0; i < e; ++i) result = result * *this;
    return result;
  }

  // this(inner(X))
  DensePolynomial compose(const DensePolynomial& inner) const {
    DensePolynomial acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * inner + constant(*it);
    return acc;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == Scalar(0)) coeffs_.pop_back();
  }
  std::vector<Scalar> coeffs_;
};

/// Degree-r Bernstein coordinates: p(s) = sum_m g_m C(r,m) s^m (1-s)^{r-m}.
template <class Scalar>
std::vector<Scalar> to_bernstein(const DensePolynomial<Scalar>& p, int degree_r) {
  if (degree_r < 0) throw RangeError("to_bernstein: negative degree");
  if (p.degree() > degree_r) throw RangeError("to_bernstein: polynomial degree exceeds basis degree");
  std::vector<Scalar> out(static_cast<std::size_t>(degree_r) + 1, Scalar(0));
  for (int m = 0; m <= degree_r; ++m) {
    Scalar acc(0);
    for (int j = 0; j <= std::min(m, p.degree()); ++j)
      acc += p.coefficient(j) * binom<Scalar>(m, j) / binom<Scalar>(degree_r, j);
    out[static_cast<std::size_t>(m)] = acc;
  }
  return out;
}

template <class Scalar>
DensePolynomial<Scalar> from_bernstein(std::span<const Scalar> gamma) {
  if (gamma.empty()) return {};
  const int r = static_cast<int>(gamma.size()) - 1;
  std::vector<Scalar> c(gamma.size(), Scalar(0));
  for (int m = 0; m <= r; ++m) {
    // C(r,m) s^m (1-s)^{r-m} = C(r,m) sum_i C(r-m,i) (-1)^i s^{m+i}
    const Scalar base = gamma[static_cast<std::size_t>(m)] * binom<Scalar>(r, m);
    for (int i = 0; i <= r - m; ++i) {
      Scalar term = base * binom<Scalar>(r - m, i);
      if (i % 2) term = -term;
      c[static_cast<std::size_t>(m + i)] += term;
    }
  }
  return DensePolynomial<Scalar>(std::move(c));
}

template <class Scalar>
DensePolynomial<Scalar> from_bernstein(const std::vector<Scalar>& gamma) {
  return from_bernstein(std::span<const Scalar>(gamma));
}

/// Evaluates sum_m g_m C(r,m) s^m (1-s)^{r-m} directly in the Bernstein basis.
template <class Scalar>
Scalar eval_bernstein(std::span<const Scalar> gamma, const Scalar& s) {
  const int r = static_cast<int>(gamma.size()) - 1;
  Scalar acc(0);
  for (int m = 0; m <= r; ++m)
    acc += gamma[static_cast<std::size_t>(m)] * binom<Scalar>(r, m) * pow_int_generic(s, m) *
           pow_int_generic(Scalar(1) - s, r - m);
  return acc;
}

}  // namespace pspec
