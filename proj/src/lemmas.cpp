#include "pspec/lemmas.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

namespace pspec {

namespace {

template <class Scalar>
MajorizationVerdict prefix_dominance(std::vector<Scalar>& u, std::vector<Scalar>& v, const Scalar& slack) {
  std::sort(u.begin(), u.end(), std::greater<>());
  std::sort(v.begin(), v.end(), std::greater<>());
  MajorizationVerdict out;
  Scalar su(0), sv(0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    su += u[i];
    sv += v[i];
    if (su + slack < sv) {
      out.failing_prefix = static_cast<int>(i) + 1;
      return out;
    }
  }
  out.pass = true;
  return out;
}

template <class Scalar>
Scalar total(const std::vector<Scalar>& x) {
  Scalar s(0);
  for (const auto& v : x) s += v;
  return s;
}

template <class Scalar>
GapTwoMasses<Scalar> build_masses(const LocalPair<Scalar>& pair) {
  if (pair.m < 1) throw RangeError("gap_two_masses: m must be at least 1");
  if (!(pair.S_C > Scalar(0)) || !(pair.S_B > Scalar(0))) throw RangeError("gap_two_masses: masses must be positive");
  const int m = pair.m;
  GapTwoMasses<Scalar> out;
  out.old_masses.assign(static_cast<std::size_t>(m + 2), pair.S_C / Scalar(m + 2));
  out.old_masses.insert(out.old_masses.end(), static_cast<std::size_t>(m), pair.S_B / Scalar(m));
  out.new_masses.assign(static_cast<std::size_t>(m + 1), pair.S_C / Scalar(m + 1));
  out.new_masses.insert(out.new_masses.end(), static_cast<std::size_t>(m + 1), pair.S_B / Scalar(m + 1));
  out.precondition = pair.precondition();
  out.majorization = check_majorization(out.old_masses, out.new_masses);
  return out;
}

double factorial(int r) { return std::tgamma(r + 1.0); }

using Groups = std::vector<WeightGroup<double>>;

double e(const Groups& g, int s) { return esym_classes(g, s); }

Groups local_old(const LocalPair<double>& pair, double alpha) {
  return {{std::pow(pair.S_C / (pair.m + 2), alpha), pair.m + 2}, {std::pow(pair.S_B / pair.m, alpha), pair.m}};
}

Groups local_new(const LocalPair<double>& pair, double alpha) {
  return {{std::pow(pair.S_C / (pair.m + 1), alpha), pair.m + 1}, {std::pow(pair.S_B / (pair.m + 1), alpha), pair.m + 1}};
}

std::string describe(std::initializer_list<std::pair<const char*, std::string>> fields) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : fields) {
    os << (first ? "" : " ") << k << "=" << v;
    first = false;
  }
  return os.str();
}

template <class T>
std::string str(const T& v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

MajorizationVerdict check_majorization(std::vector<double> u, std::vector<double> v) {
  if (u.size() != v.size()) throw DimensionError("check_majorization: vectors differ in length");
  const double su = total(u), sv = total(v);
  const double scale = std::max({1.0, std::abs(su), std::abs(sv)});
  if (std::abs(su - sv) > 1e-12 * scale) throw InvariantError("check_majorization: totals differ");
  return prefix_dominance(u, v, 1e-12 * scale);
}

MajorizationVerdict check_majorization(std::vector<Rational> u, std::vector<Rational> v) {
  if (u.size() != v.size()) throw DimensionError("check_majorization: vectors differ in length");
  if (total(u) != total(v)) throw InvariantError("check_majorization: totals differ");
  return prefix_dominance(u, v, Rational(0));
}

GapTwoMasses<double> gap_two_masses(const LocalPair<double>& pair) { return build_masses(pair); }
GapTwoMasses<Rational> gap_two_masses(const LocalPair<Rational>& pair) { return build_masses(pair); }

LayerComparison full_layers_check(const LocalPair<double>& pair, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw RangeError("full_layers_check: alpha must lie in (0,1)");
  const Groups oldg = local_old(pair, alpha), newg = local_new(pair, alpha);
  LayerComparison out;
  out.pass = true;
  out.min_margin = std::numeric_limits<double>::infinity();
  for (int s = 1; s <= 2 * pair.m + 2; ++s) {
    const double o = e(oldg, s), n = e(newg, s);
    out.old_layer.push_back(o);
    out.new_layer.push_back(n);
    out.min_margin = std::min(out.min_margin, n - o);
    if (n < o - 1e-12 * (1.0 + std::abs(o)) && out.pass) {
      out.pass = false;
      out.witness_rank = s;
    }
  }
  return out;
}

LayerComparison one_sided_check(const LocalPair<double>& pair, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw RangeError("one_sided_check: alpha must lie in (0,1)");
  const Groups oldg = local_old(pair, alpha), newg = local_new(pair, alpha);
  const Groups oldc{oldg[0]}, newc{newg[0]};
  LayerComparison out;
  out.pass = true;
  out.min_margin = std::numeric_limits<double>::infinity();
  for (int s = 1; s <= pair.m + 2; ++s) {
    const double o = e(oldg, s) - e(oldc, s), n = e(newg, s) - e(newc, s);
    out.old_layer.push_back(o);
    out.new_layer.push_back(n);
    out.min_margin = std::min(out.min_margin, n - o);
    if (!(n > o) && out.pass) {
      out.pass = false;
      out.witness_rank = s;
    }
  }
  return out;
}

KernelCheck stop_loss_kernel_check(double x, double alpha, double rel_tol) {
  if (!(x > 0.0)) throw RangeError("stop_loss_kernel_check: x must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw RangeError("stop_loss_kernel_check: alpha must lie in (0,1)");
  // min(T,x) T^{alpha-2}, with the T < x branch folded to avoid overflow near 0.
  const auto kernel = [x, alpha](double T) {
    if (!(T > 0.0)) return 0.0;
    return T < x ? std::pow(T, alpha - 1.0) : x * std::pow(T, alpha - 2.0);
  };
  boost::math::quadrature::tanh_sinh<double> head;
  boost::math::quadrature::exp_sinh<double> tail;
  const double integral = head.integrate(kernel, 0.0, x) + tail.integrate(kernel, x, std::numeric_limits<double>::infinity());
  KernelCheck out;
  out.x = x;
  out.alpha = alpha;
  out.quadrature = alpha * (1.0 - alpha) * integral;
  const double exact = std::pow(x, alpha);
  out.relative_error = std::abs(out.quadrature - exact) / exact;
  out.pass = out.relative_error <= rel_tol;
  return out;
}

TMassSwitch t_mass_switch(const ClassTuple& tuple, std::vector<double> values, int u, int v, double t) {
  if (static_cast<int>(values.size()) != tuple.k()) throw DimensionError("t_mass_switch: one value per class");
  if (u < 0 || v < 0 || u >= tuple.k() || v >= tuple.k() || u == v) throw RangeError("t_mass_switch: bad class indices");
  if (!(t >= 1.0)) throw RangeError("t_mass_switch: t must be at least 1");
  TMassSwitch out;
  const double N = tuple.size(u), M = tuple.size(v);
  const double yu = N * std::pow(values[static_cast<std::size_t>(u)], t);
  const double yv = M * std::pow(values[static_cast<std::size_t>(v)], t);
  out.old_value = class_constant_polyform<double>(tuple, values);
  out.applicable = N > M && yu < yv;
  if (out.applicable) {
    values[static_cast<std::size_t>(u)] = std::pow(yv / N, 1.0 / t);
    values[static_cast<std::size_t>(v)] = std::pow(yu / M, 1.0 / t);
  }
  out.new_values = values;
  out.new_value = class_constant_polyform<double>(tuple, values);
  out.pass = out.new_value >= out.old_value - kIdentitySlack * (1.0 + std::abs(out.old_value));
  return out;
}

PureCross pure_cross_delta(int c, int s, double alpha) {
  if (s < 2 || c < s) throw RangeError("pure_cross_delta: requires 2 <= s <= c");
  if (!(alpha > 0.0 && alpha < 1.0)) throw RangeError("pure_cross_delta: alpha must lie in (0,1)");
  PureCross out;
  out.c = c;
  out.s = s;
  out.alpha = alpha;
  const double cd = c;
  for (int u = 1; u <= s - 1; ++u) {
    const double fresh = binom<double>(c, u) * binom<double>(c, s - u) * std::pow(cd, -alpha * s);
    const double stale = binom<double>(c + 1, u) * binom<double>(c - 1, s - u) * std::pow(cd + 1, -alpha * u) *
                         std::pow(cd - 1, -alpha * (s - u));
    out.coeffs.push_back(fresh - stale);
    out.ratios.push_back(fresh / stale);
  }
  out.sign_changes = sign_changes(out.coeffs);
  out.ratios_decreasing = true;
  for (std::size_t i = 1; i < out.ratios.size(); ++i)
    if (!(out.ratios[i] < out.ratios[i - 1])) out.ratios_decreasing = false;

  const double rho0 = cd / (cd + 1);
  const double x0 = std::pow(rho0, alpha);
  for (int u = 1; u <= s - 1; ++u) out.delta_at_boundary += out.coeffs[static_cast<std::size_t>(u - 1)] * std::pow(x0, s - u);

  // Same difference from the explicit local weights with S_C = 1, S_B = rho0.
  const auto cross = [s](const Groups& both) {
    return e(both, s) - e(Groups{both[0]}, s) - e(Groups{both[1]}, s);
  };
  const Groups before{{std::pow(1.0 / (cd + 1), alpha), c + 1}, {std::pow(rho0 / (cd - 1), alpha), c - 1}};
  const Groups after{{std::pow(1.0 / cd, alpha), c}, {std::pow(rho0 / cd, alpha), c}};
  out.layer_difference = cross(after) - cross(before);

  out.pass = out.sign_changes <= 1 && out.ratios.front() > 1.0 && out.ratios_decreasing &&
             out.delta_at_boundary > 0.0 &&
             std::abs(out.delta_at_boundary - out.layer_difference) <= kIdentitySlack * (1.0 + std::abs(out.layer_difference));
  return out;
}

std::vector<BreakpointValue> stop_loss_breakpoints(int c, int s) {
  if (s < 2 || c < s) throw RangeError("stop_loss_breakpoints: requires 2 <= s <= c");
  const Rational cr(c);
  const Rational q = make_rational(c - 1, c);
  const Rational beta = Rational(1) - make_rational(1, static_cast<long long>(c) * c);
  const Rational shrink = cr / ((cr + 1) * (cr - 1));
  std::vector<Rational> A(static_cast<std::size_t>(s)), B(static_cast<std::size_t>(s)), x(static_cast<std::size_t>(s)),
      y(static_cast<std::size_t>(s));
  for (int u = 1; u <= s - 1; ++u) {
    const auto i = static_cast<std::size_t>(u);
    A[i] = binom<Rational>(c, u) * binom<Rational>(c, s - u);
    B[i] = binom<Rational>(c + 1, u) * binom<Rational>(c - 1, s - u);
    x[i] = pow_int(cr, -u) * pow_int(cr + 1, -(s - u));
    y[i] = pow_int(cr + 1, -u) * pow_int(shrink, s - u);
  }
  const auto H = [&](const Rational& T) {
    Rational h(0);
    for (int u = 1; u <= s - 1; ++u) {
      const auto i = static_cast<std::size_t>(u);
      h += A[i] * std::min(T, x[i]) - B[i] * std::min(T, y[i]);
    }
    return h;
  };
  const Rational base = binom<Rational>(c - 1, s - 2) / Rational(s - 1);
  std::vector<BreakpointValue> out;
  for (int j = 1; j <= s - 1; ++j) {
    BreakpointValue bv;
    bv.j = j;
    Rational yj(0);
    for (int u = 1; u < j; ++u) yj += A[static_cast<std::size_t>(u)] - B[static_cast<std::size_t>(u)];
    for (int u = j; u <= s - 1; ++u)
      yj += pow_int(q, u - j) * (A[static_cast<std::size_t>(u)] * pow_int(beta, s - u) - B[static_cast<std::size_t>(u)]);
    bv.y = yj;
    bv.oracle = H(y[static_cast<std::size_t>(j)]) / y[static_cast<std::size_t>(j)];
    const int M = s - 1 - j;
    const Rational qM = pow_int(q, M);
    bv.lower_bound = base * (Rational(s - 2) * qM - Rational(c - s + 1) * (Rational(1) - qM));
    bv.pass = bv.y == bv.oracle && bv.y >= 0 && bv.y >= bv.lower_bound;
    out.push_back(std::move(bv));
  }
  return out;
}

MixedDelta mixed_delta_p1(int a, int b, int r, int grid) {
  if (r < 3 || b < r - 1 || a < b + 2) throw RangeError("mixed_delta_p1: requires r >= 3, b >= r-1, a >= b+2");
  if (grid < 1) throw RangeError("mixed_delta_p1: grid must be positive");
  MixedDelta out;
  out.a = a;
  out.b = b;
  out.r = r;
  const Rational up = make_rational(a, a - 1), down = make_rational(b, b + 1);
  for (int s = 1; s <= r - 1; ++s) {
    out.coeffs.push_back(binom<Rational>(a - 1, s) * binom<Rational>(b + 1, r - s) * pow_int(up, s) *
                             pow_int(down, r - s) -
                         binom<Rational>(a, s) * binom<Rational>(b, r - s));
  }
  out.sign_changes = sign_changes(out.coeffs);
  const auto delta = [&](const Rational& t) {
    Rational acc(0);
    for (int s = r - 1; s >= 1; --s) acc = (acc + out.coeffs[static_cast<std::size_t>(s - 1)]) * t;
    return acc;
  };
  out.delta_at_c = delta(down);
  for (int i = 1; i <= grid; ++i) {
    const Rational v = delta(down * make_rational(i, grid));
    if (i == 1 || v < out.grid_min) {
      out.grid_min = v;
      out.grid_argmin = i;
    }
  }
  out.pass = out.sign_changes == 1 && out.coeffs.front() > 0 && out.coeffs.back() < 0 && out.delta_at_c > 0 &&
             out.grid_min > 0;
  return out;
}

Rational lr_defect(const Rational& x, int r) {
  if (r < 1 || x < Rational(r)) throw RangeError("lr_defect: requires x >= r");
  return gen_binomial(x, r) - gen_binomial(x - 1, r) * pow_int(x / (x - 1), r);
}

ScanResult lr_monotone_scan(int r, int span) {
  ScanResult out;
  out.pass = true;
  Rational prev = lr_defect(Rational(r), r);
  for (int x = r; x < r + span; ++x) {
    const Rational next = lr_defect(Rational(x + 1), r);
    ++out.checked;
    if (!(next > prev) && out.pass) {
      out.pass = false;
      out.witness = describe({{"r", str(r)}, {"x", str(x)}});
    }
    prev = next;
  }
  return out;
}

bool coeff_monotone_step(int l, int m, int t_num, int t_den, int z) {
  if (m < 0 || l < m || z < l) throw RangeError("coeff_monotone_step: requires z >= l >= m >= 0");
  if (t_den < 1 || t_num < t_den) throw RangeError("coeff_monotone_step: requires t >= 1");
  if (l == m) return true;
  if (z == 0) return true;  // only l = m = 0 reaches here
  const Rational K = binom<Rational>(z + 1, l) * binom<Rational>(z, m) / (binom<Rational>(z, l) * binom<Rational>(z + 1, m));
  return pow_int(K, t_num) >= pow_int(make_rational(z + 1, z), (l - m) * t_den);
}

ScanResult coeff_monotone_scan(int max_index, int span) {
  ScanResult out;
  out.pass = true;
  const std::pair<int, int> exponents[] = {{1, 1}, {3, 2}, {2, 1}};
  for (int l = 0; l <= max_index; ++l)
    for (int m = 0; m <= l; ++m)
      for (const auto& [tn, td] : exponents)
        for (int z = l; z <= l + span; ++z) {
          ++out.checked;
          if (!coeff_monotone_step(l, m, tn, td, z) && out.pass) {
            out.pass = false;
            out.witness = describe({{"l", str(l)}, {"m", str(m)}, {"t", str(tn) + "/" + str(td)}, {"z", str(z)}});
          }
        }
  return out;
}

OrderingCheck ordering_check(const ClassTuple& t, double p, const std::vector<double>& values) {
  if (static_cast<int>(values.size()) != t.k()) throw DimensionError("ordering_check: one value per class");
  OrderingCheck out;
  out.opposite_order = true;
  out.mass_order = true;
  double scale = 0.0;
  for (int i = 0; i < t.k(); ++i) scale = std::max(scale, t.size(i) * std::pow(values[static_cast<std::size_t>(i)], p));
  for (int i = 0; i < t.k(); ++i)
    for (int j = 0; j < t.k(); ++j) {
      if (i == j || t.size(i) < t.size(j)) continue;
      const double ai = values[static_cast<std::size_t>(i)], aj = values[static_cast<std::size_t>(j)];
      if (ai > aj + kStructuralTol && out.opposite_order) {
        out.opposite_order = false;
        out.witness += "value order fails at classes " + str(i) + "," + str(j) + "; ";
      }
      if (t.size(i) * std::pow(ai, p) < t.size(j) * std::pow(aj, p) - kStructuralTol * scale && out.mass_order) {
        out.mass_order = false;
        out.witness += "mass order fails at classes " + str(i) + "," + str(j) + "; ";
      }
    }
  return out;
}

SmoothingOutcome smoothing_compare_values(const ClassTuple& t, double p, const std::vector<double>& values) {
  if (static_cast<int>(values.size()) != t.k()) throw DimensionError("smoothing_compare: one value per class");
  if (!(p >= 1.0)) throw RangeError("smoothing_compare: p must be at least 1");
  SmoothingOutcome out;
  out.sizes = t.sizes();
  out.p = p;
  out.old_value = class_objective(t, values);
  if (t.gap() < 2) {
    out.diagnostics = "gap below 2, no move";
    return out;
  }
  const int r = t.r(), k = t.k();
  const int a = t.size(0), b = t.size(k - 1);
  const double alpha = values.front(), beta = values.back();
  const double fact = factorial(r);

  Groups middle;
  for (int i = 1; i + 1 < k; ++i) middle.emplace_back(values[static_cast<std::size_t>(i)], t.size(i));

  std::vector<Groups> new_classes;
  std::ostringstream diag;
  if (p > 1.0) {
    // Move one vertex from a (b+2)-subset C of the largest class into the
    // smallest class, keeping the p-masses of C and B.
    const double a_sharp = std::pow((b + 2) * std::pow(alpha, p) / (b + 1), 1.0 / p);
    const double b_sharp = std::pow(b * std::pow(beta, p) / (b + 1), 1.0 / p);
    const Groups E{{alpha, a - b - 2}};
    Groups R = E;
    R.insert(R.end(), middle.begin(), middle.end());
    const Groups L{{alpha, b + 2}, {beta, b}}, Lc{{alpha, b + 2}}, Lb{{beta, b}};
    const Groups N{{a_sharp, b + 1}, {b_sharp, b + 1}}, Nc{{a_sharp, b + 1}}, Nb{{b_sharp, b + 1}};

    new_classes.push_back({{alpha, a - b - 2}, {a_sharp, b + 1}});
    for (const auto& g : middle) new_classes.push_back({g});
    new_classes.push_back(Nb);

    for (int s = 1; s <= r - 1; ++s) {
      const double outside = e(R, r - s) - e(E, r - s);
      out.breakdown.push_back({"full", s, fact * outside * (e(N, s) - e(L, s))});
    }
    for (int s = 1; s <= r - 1; ++s) {
      const double change = (e(N, s) - e(Nc, s)) - (e(L, s) - e(Lc, s));
      out.breakdown.push_back({"one-sided", s, fact * e(E, r - s) * change});
    }
    const double cross = (e(N, r) - e(Nc, r) - e(Nb, r)) - (e(L, r) - e(Lc, r) - e(Lb, r));
    out.breakdown.push_back({"pure-cross", r, fact * cross});

    const StructuralReport rep = structural_check_values(t, p, values, true);
    const LocalPair<double> pair{b, (b + 2) * std::pow(alpha, p), b * std::pow(beta, p)};
    out.precondition = rep.s1 && rep.s2 && pair.precondition();
    if (!rep.s1) diag << "class values not increasing; ";
    if (!rep.s2) diag << "class masses outside the eigenvector band; ";
    if (!pair.precondition()) diag << "local mass ratio " << pair.rho() << " below " << (b + 1.0) / (b + 2.0) << "; ";
  } else {
    // Move one vertex from the largest to the smallest class and spread
    // each class's l1-mass uniformly over its new size.
    const double a_plus = a * alpha / (a - 1);
    const double b_minus = b * beta / (b + 1);
    new_classes.push_back({{a_plus, a - 1}});
    for (const auto& g : middle) new_classes.push_back({g});
    new_classes.push_back({{b_minus, b + 1}});

    const Groups U{{alpha, a}, {beta, b}}, Up{{a_plus, a - 1}, {b_minus, b + 1}};
    for (int q = 2; q <= r - 1; ++q)
      out.breakdown.push_back({"external", q, fact * e(middle, r - q) * (e(Up, q) - e(U, q))});
    const auto mixed = [r](double x, int nx, double y, int ny) {
      double m = 0.0;
      for (int s = 1; s <= r - 1; ++s) m += binom<double>(nx, s) * binom<double>(ny, r - s) * std::pow(x, s) * std::pow(y, r - s);
      return m;
    };
    out.breakdown.push_back({"mixed", r, fact * (mixed(a_plus, a - 1, b_minus, b + 1) - mixed(alpha, a, beta, b))});

    const bool ratio_ok = alpha * (b + 1) < beta * b;
    const bool small_ok = b >= r - 1;
    out.precondition = ratio_ok && small_ok;
    if (!ratio_ok) diag << "value ratio " << alpha / beta << " not below " << b / (b + 1.0) << "; ";
    if (!small_ok) diag << "smallest class below r-1; ";
  }
  out.diagnostics = diag.str();

  out.new_sizes.clear();
  for (const auto& cls : new_classes) {
    int size = 0;
    for (const auto& g : cls) size += g.second;
    out.new_sizes.push_back(size);
  }
  std::sort(out.new_sizes.begin(), out.new_sizes.end(), std::greater<>());
  out.new_value = complete_chromatic_polyform<double>(r, new_classes);
  for (const auto& d : out.breakdown) out.breakdown_sum += d.delta;
  out.breakdown_consistent =
      std::abs(out.breakdown_sum - (out.new_value - out.old_value)) <= kIdentitySlack * (1.0 + std::abs(out.old_value));
  out.strict = out.new_value > out.old_value + 1e-9 * out.old_value;
  return out;
}

SmoothingOutcome smoothing_compare(const ClassTuple& t, double p, const SolverConfig& cfg) {
  const SpectralResult res = lambda_p_classes(t, p, cfg);
  return smoothing_compare_values(t, p, res.class_values);
}

std::vector<SuiteResult> run_lemma_suites(std::uint64_t seed, int count) {
  std::vector<SuiteResult> suites;
  int index = 0;
  const auto run = [&](const std::string& name, const std::function<std::pair<bool, std::string>(std::mt19937_64&)>& one) {
    std::seed_seq seq{seed, static_cast<std::uint64_t>(index++)};
    std::mt19937_64 rng(seq);
    SuiteResult res;
    res.name = name;
    for (int i = 0; i < count; ++i) {
      const auto [ok, witness] = one(rng);
      ++res.instances;
      if (ok) ++res.passed;
      else if (res.first_failure.empty()) res.first_failure = witness;
    }
    suites.push_back(std::move(res));
  };
  const auto uniform = [](std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  const auto integer = [](std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  // rho at or above (m+1)/(m+2); every tenth draw sits exactly on the boundary.
  const auto random_pair = [&](std::mt19937_64& rng) {
    LocalPair<double> pair;
    pair.m = integer(rng, 1, 8);
    pair.S_C = std::exp(uniform(rng, -3.0, 3.0));
    const double floor = (pair.m + 1.0) / (pair.m + 2.0);
    const double rho = integer(rng, 0, 9) == 0 ? floor : floor + uniform(rng, 0.0, 2.0);
    pair.S_B = rho * pair.S_C;
    return pair;
  };

  run("majorization", [&](std::mt19937_64& rng) {
    LocalPair<Rational> pair;
    pair.m = integer(rng, 1, 8);
    pair.S_C = make_rational(integer(rng, 1, 200), integer(rng, 1, 50));
    Rational rho = make_rational(pair.m + 1, pair.m + 2);
    if (integer(rng, 0, 9) != 0) rho += make_rational(integer(rng, 0, 400), integer(rng, 1, 200));
    pair.S_B = rho * pair.S_C;
    const auto res = gap_two_masses(pair);
    return std::make_pair(res.precondition && res.majorization.pass,
                          describe({{"m", str(pair.m)}, {"S_C", to_string(pair.S_C)}, {"S_B", to_string(pair.S_B)}}));
  });
  run("full-layers", [&](std::mt19937_64& rng) {
    const auto pair = random_pair(rng);
    const double alpha = integer(rng, 0, 1) ? 0.5 : 1.0 / 3.0;
    const auto res = full_layers_check(pair, alpha);
    return std::make_pair(res.pass, describe({{"m", str(pair.m)}, {"S_C", str(pair.S_C)}, {"S_B", str(pair.S_B)},
                                              {"alpha", str(alpha)}, {"s", str(res.witness_rank)}}));
  });
  run("one-sided-layers", [&](std::mt19937_64& rng) {
    const auto pair = random_pair(rng);
    const double alpha = 1.0 / uniform(rng, 1.05, 10.0);
    const auto res = one_sided_check(pair, alpha);
    return std::make_pair(res.pass, describe({{"m", str(pair.m)}, {"S_C", str(pair.S_C)}, {"S_B", str(pair.S_B)},
                                              {"alpha", str(alpha)}, {"s", str(res.witness_rank)}}));
  });
  run("t-mass-switch", [&](std::mt19937_64& rng) {
    const int r = integer(rng, 3, 4);
    const int k = integer(rng, 2, 4);
    std::vector<int> sizes;
    for (int i = 0; i < k; ++i) sizes.push_back(integer(rng, 1, 6));
    if (sizes[0] == sizes[1]) sizes[0] += 1;  // need N > M for the chosen pair
    const ClassTuple tuple(r, sizes);
    std::vector<double> values;
    for (int i = 0; i < k; ++i) values.push_back(uniform(rng, 0.05, 1.0));
    int u = 0, v = 1;
    while (tuple.size(u) == tuple.size(v)) v++;  // sizes sorted descending, so u = 0 is largest
    const double t = uniform(rng, 1.0, 3.0);
    // Force Y_U < Y_V by shrinking the value on U.
    const double yv = tuple.size(v) * std::pow(values[static_cast<std::size_t>(v)], t);
    values[0] = std::pow(uniform(rng, 0.05, 0.95) * yv / tuple.size(u), 1.0 / t);
    const auto res = t_mass_switch(tuple, values, u, v, t);
    return std::make_pair(res.applicable && res.pass,
                          describe({{"tuple", tuple.label()}, {"r", str(r)}, {"t", str(t)},
                                    {"old", str(res.old_value)}, {"new", str(res.new_value)}}));
  });
  run("stop-loss-kernel", [&](std::mt19937_64& rng) {
    const double x = std::exp(uniform(rng, -5.0, 5.0));
    const double alphas[] = {0.25, 0.5, 0.75};
    const double alpha = alphas[integer(rng, 0, 2)];
    const auto res = stop_loss_kernel_check(x, alpha);
    return std::make_pair(res.pass, describe({{"x", str(x)}, {"alpha", str(alpha)}, {"err", str(res.relative_error)}}));
  });
  run("pure-cross", [&](std::mt19937_64& rng) {
    const int s = integer(rng, 2, 8);
    const int c = integer(rng, s, 9);
    const double alpha = 1.0 / uniform(rng, 1.05, 10.0);
    const auto res = pure_cross_delta(c, s, alpha);
    return std::make_pair(res.pass, describe({{"c", str(c)}, {"s", str(s)}, {"alpha", str(alpha)}}));
  });
  run("mixed-p1", [&](std::mt19937_64& rng) {
    const int r = integer(rng, 3, 6);
    const int b = integer(rng, r - 1, 10);
    const int a = integer(rng, b + 2, 12);
    const auto res = mixed_delta_p1(a, b, r);
    return std::make_pair(res.pass, describe({{"a", str(a)}, {"b", str(b)}, {"r", str(r)}}));
  });
  run("breakpoints", [&](std::mt19937_64& rng) {
    const int c = integer(rng, 2, 9);
    const int s = integer(rng, 2, std::min(c, 8));
    bool ok = true;
    for (const auto& bv : stop_loss_breakpoints(c, s)) ok = ok && bv.pass;
    return std::make_pair(ok, describe({{"c", str(c)}, {"s", str(s)}}));
  });
  run("lr-monotone", [&](std::mt19937_64& rng) {
    const int r = integer(rng, 3, 10);
    const int x = integer(rng, r, r + 19);
    const bool ok = lr_defect(Rational(x + 1), r) > lr_defect(Rational(x), r);
    return std::make_pair(ok, describe({{"r", str(r)}, {"x", str(x)}}));
  });
  run("coeff-monotone", [&](std::mt19937_64& rng) {
    const int l = integer(rng, 0, 6);
    const int m = integer(rng, 0, l);
    const std::pair<int, int> exponents[] = {{1, 1}, {3, 2}, {2, 1}};
    const auto [tn, td] = exponents[integer(rng, 0, 2)];
    const int z = integer(rng, l, l + 30);
    return std::make_pair(coeff_monotone_step(l, m, tn, td, z),
                          describe({{"l", str(l)}, {"m", str(m)}, {"t", str(tn) + "/" + str(td)}, {"z", str(z)}}));
  });
  return suites;
}

}  // namespace pspec
