#include "pspec/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

namespace pspec {

void SolverConfig::validate() const {
  if (!(tol > 0.0)) throw RangeError("SolverConfig: tol must be positive");
  if (restarts < 1) throw RangeError("SolverConfig: restarts must be at least 1");
  if (max_iter < 1) throw RangeError("SolverConfig: max_iter must be at least 1");
  if (!(shrink > 0.0 && shrink < 1.0)) throw RangeError("SolverConfig: shrink must lie in (0,1)");
}

namespace {

// Maximize value(x) over {x >= 0, sum_i c_i x_i^p = 1}. value is
// homogeneous of degree `degree`. Dense problems use c = 1, the reduced
// class problem uses c_i = n_i (each unknown stands for n_i vertices).
struct Problem {
  Eigen::VectorXd c;
  int degree = 2;
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> hessian;
};

struct Ascent {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

double constraint_mass(const Problem& pr, const Eigen::VectorXd& x, double p) {
  return (pr.c.array() * x.array().pow(p)).sum();
}

Eigen::VectorXd normalize(const Problem& pr, const Eigen::VectorXd& x, double p) {
  return x / std::pow(constraint_mass(pr, x, p), 1.0 / p);
}

// Euclidean projection onto {y >= 0, sum c_i y_i = 1} in the metric diag(c).
Eigen::VectorXd project_weighted_simplex(const Eigen::VectorXd& z, const Eigen::VectorXd& c) {
  const Eigen::Index n = z.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return z[a] > z[b]; });
  double cz = 0.0;
  double cs = 0.0;
  double shift = 0.0;
  for (std::size_t j = 0; j < order.size(); ++j) {
    cz += c[order[j]] * z[order[j]];
    cs += c[order[j]];
    const double candidate = (cz - 1.0) / cs;
    if (j + 1 == order.size() || z[order[j + 1]] <= candidate) {
      shift = candidate;
      break;
    }
  }
  return (z.array() - shift).max(0.0).matrix();
}

Ascent ascend(const Problem& pr, Eigen::VectorXd x, double p, const SolverConfig& cfg) {
  Ascent out;
  x = normalize(pr, x, p);
  double f = pr.value(x);
  double step = -1.0;
  int quiet = 0;
  const bool simplex = p == 1.0;

  for (int it = 0; it < cfg.max_iter; ++it) {
    out.iterations = it + 1;
    const Eigen::VectorXd g = pr.gradient(x);
    Eigen::VectorXd dir;
    double slope = 0.0;  // predicted first-order gain per unit step
    if (simplex) {
      dir = g.cwiseQuotient(pr.c);
    } else {
      const Eigen::VectorXd normal = x.array().pow(p - 1.0).matrix();
      const double denom = (pr.c.array() * normal.array().square()).sum();
      const double mu = denom > 0.0 ? normal.dot(g) / denom : 0.0;
      dir = g.cwiseQuotient(pr.c) - mu * normal;
      slope = (pr.c.array() * dir.array().square()).sum();
      if (!(slope > 1e-300)) {
        out.converged = true;
        break;
      }
    }
    if (step < 0.0) {
      const double scale = dir.cwiseAbs().maxCoeff();
      step = scale > 0.0 ? 0.5 * x.maxCoeff() / scale : 1.0;
    }

    bool accepted = false;
    Eigen::VectorXd y;
    double fy = f;
    for (int bt = 0; bt < 80; ++bt) {
      if (simplex) {
        y = project_weighted_simplex(x + step * dir, pr.c);
        fy = pr.value(y);
        const double gain = g.dot(y - x);
        if (gain <= 0.0) break;  // projected step is stationary
        if (fy >= f + cfg.sufficient_increase * gain) {
          accepted = true;
          break;
        }
      } else {
        y = (x + step * dir).cwiseMax(0.0);
        const double mass = constraint_mass(pr, y, p);
        if (mass > 0.0) {
          y /= std::pow(mass, 1.0 / p);
          fy = pr.value(y);
          if (fy >= f + cfg.sufficient_increase * step * slope) {
            accepted = true;
            break;
          }
        }
      }
      step *= cfg.shrink;
    }
    if (!accepted) {
      // No representable ascent step: stationary to working precision.
      out.converged = true;
      break;
    }
    const double rel = (fy - f) / std::max(std::abs(f), std::numeric_limits<double>::min());
    x = y;
    f = fy;
    step *= 2.0;
    quiet = rel < cfg.tol ? quiet + 1 : 0;
    if (quiet >= cfg.stall_window) {
      out.converged = true;
      break;
    }
  }
  out.x = x;
  out.value = f;
  return out;
}

// Newton iteration on the KKT system g_i = mu p c_i x_i^{p-1}, sum c x^p = 1,
// restricted to the support of x. Returns the refined point, or x unchanged
// if the iteration leaves the positive orthant or fails to converge.
Eigen::VectorXd newton_polish(const Problem& pr, const Eigen::VectorXd& x0, double p) {
  const double cutoff = 1e-9 * x0.maxCoeff();
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < x0.size(); ++i)
    if (x0[i] > cutoff) support.push_back(i);
  const auto m = static_cast<Eigen::Index>(support.size());
  if (m == 0) return x0;

  Eigen::VectorXd x = Eigen::VectorXd::Zero(x0.size());
  for (auto i : support) x[i] = x0[i];
  x = normalize(pr, x, p);
  double mu = x.dot(pr.gradient(x)) / p;  // Euler: x.g = degree * f, and sum c x^p = 1

  Eigen::VectorXd best = x;
  for (int it = 0; it < 40; ++it) {
    const Eigen::VectorXd g = pr.gradient(x);
    const Eigen::MatrixXd h = pr.hessian(x);
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m + 1, m + 1);
    Eigen::VectorXd rhs(m + 1);
    for (Eigen::Index a = 0; a < m; ++a) {
      const auto i = support[static_cast<std::size_t>(a)];
      const double xp1 = std::pow(x[i], p - 1.0);
      rhs[a] = -(g[i] - mu * p * pr.c[i] * xp1);
      for (Eigen::Index b = 0; b < m; ++b) jac(a, b) = h(i, support[static_cast<std::size_t>(b)]);
      if (p != 1.0) jac(a, a) -= mu * p * (p - 1.0) * pr.c[i] * std::pow(x[i], p - 2.0);
      jac(a, m) = -p * pr.c[i] * xp1;
      jac(m, a) = p * pr.c[i] * xp1;
    }
    rhs[m] = -(constraint_mass(pr, x, p) - 1.0);
    const Eigen::VectorXd delta = jac.completeOrthogonalDecomposition().solve(rhs);
    if (!delta.allFinite()) return x0;
    Eigen::VectorXd next = x;
    for (Eigen::Index a = 0; a < m; ++a) next[support[static_cast<std::size_t>(a)]] += delta[a];
    if ((next.array() < 0.0).any()) return x0;
    for (auto i : support)
      if (!(next[i] > 0.0)) return x0;
    mu += delta[m];
    x = next;
    best = x;
    if (delta.head(m).cwiseAbs().maxCoeff() <= 1e-15 * x.maxCoeff()) break;
  }
  return normalize(pr, best, p);
}

double factorial(int r) { return std::tgamma(r + 1.0); }

// One-sided KKT violation shared by the dense and reduced residuals.
// link_term is (r-1)! times the link sum at a vertex of weight x.
double vertex_violation(double lambda, double x, double p, double link_term) {
  if (x > 0.0) return std::abs(lambda * std::pow(x, p - 1.0) - link_term);
  return p == 1.0 ? std::max(link_term - lambda, 0.0) : link_term;
}

SpectralResult solve(const Problem& pr, double p, const SolverConfig& cfg, Eigen::Index dim) {
  cfg.validate();
  if (!(p >= 1.0)) throw RangeError("p-spectral radius requires p >= 1");
  SpectralResult best;
  best.p = p;
  best.lambda = -1.0;
  bool any_converged = false;
  for (int restart = 0; restart < cfg.restarts; ++restart) {
    Eigen::VectorXd x0 = Eigen::VectorXd::Ones(dim);
    if (restart > 0) {
      std::seed_seq seq{static_cast<std::uint64_t>(cfg.seed), static_cast<std::uint64_t>(restart)};
      std::mt19937_64 rng(seq);
      std::uniform_real_distribution<double> unif(-1.0, 1.0);
      for (Eigen::Index i = 0; i < dim; ++i) x0[i] = std::exp(cfg.perturbation * unif(rng));
    }
    Ascent run = ascend(pr, x0, p, cfg);
    any_converged = any_converged || run.converged;
    if (cfg.newton_polish) {
      Eigen::VectorXd polished = newton_polish(pr, run.x, p);
      const double fp = pr.value(polished);
      if (fp >= run.value - 1e-12 * std::abs(run.value)) {
        run.x = polished;
        run.value = fp;
      }
    }
    if (run.value > best.lambda) {
      best.lambda = run.value;
      best.weights = run.x;
      best.best_restart = restart;
      best.iterations = run.iterations;
    }
  }
  best.restarts_used = cfg.restarts;
  best.converged = any_converged;
  return best;
}

std::vector<WeightGroup<double>> groups_of(const ClassTuple& t, std::span<const double> a) {
  std::vector<WeightGroup<double>> groups;
  for (int i = 0; i < t.k(); ++i) groups.emplace_back(a[static_cast<std::size_t>(i)], t.size(i));
  return groups;
}

// (r-1)! times the link sum of a vertex in class i.
Eigen::VectorXd class_link_terms(const ClassTuple& t, std::span<const double> a) {
  const int r = t.r();
  Eigen::VectorXd out(t.k());
  auto groups = groups_of(t, a);
  for (int i = 0; i < t.k(); ++i) {
    auto reduced = groups;
    reduced[static_cast<std::size_t>(i)].second -= 1;
    const double ai = a[static_cast<std::size_t>(i)];
    out[i] = factorial(r - 1) *
             (esym_classes(reduced, r - 1) - binom<double>(t.size(i) - 1, r - 1) * std::pow(ai, r - 1));
  }
  return out;
}

Problem class_problem(const ClassTuple& t) {
  Problem pr;
  const int k = t.k();
  const int r = t.r();
  pr.degree = r;
  pr.c.resize(k);
  for (int i = 0; i < k; ++i) pr.c[i] = t.size(i);
  pr.value = [t](const Eigen::VectorXd& a) {
    return class_objective(t, std::span<const double>(a.data(), static_cast<std::size_t>(a.size())));
  };
  pr.gradient = [t](const Eigen::VectorXd& a) {
    const std::span<const double> av(a.data(), static_cast<std::size_t>(a.size()));
    // d f / d a_i = n_i * r * (r-1)! * link sum.
    Eigen::VectorXd link = class_link_terms(t, av);
    for (int i = 0; i < t.k(); ++i) link[i] *= t.size(i) * t.r();
    return link;
  };
  pr.hessian = [t](const Eigen::VectorXd& a) {
    const int kk = t.k();
    const int rr = t.r();
    const std::span<const double> av(a.data(), static_cast<std::size_t>(a.size()));
    auto groups = groups_of(t, av);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(kk, kk);
    const double fact = factorial(rr);
    for (int i = 0; i < kk; ++i) {
      for (int j = i; j < kk; ++j) {
        auto reduced = groups;
        reduced[static_cast<std::size_t>(i)].second -= 1;
        reduced[static_cast<std::size_t>(j)].second -= 1;
        const double ni = t.size(i);
        if (i == j) {
          if (t.size(i) < 2) continue;
          const double mono = binom<double>(t.size(i) - 2, rr - 2) * std::pow(a[i], rr - 2);
          h(i, i) = fact * ni * (ni - 1.0) * (esym_classes(reduced, rr - 2) - mono);
        } else {
          const double v = fact * ni * t.size(j) * esym_classes(reduced, rr - 2);
          h(i, j) = v;
          h(j, i) = v;
        }
      }
    }
    return h;
  };
  return pr;
}

}  // namespace

double class_objective(const ClassTuple& t, std::span<const double> values) {
  if (static_cast<int>(values.size()) != t.k()) throw DimensionError("class_objective: one value per class");
  const int r = t.r();
  double mono = 0.0;
  for (int i = 0; i < t.k(); ++i) mono += binom<double>(t.size(i), r) * std::pow(values[static_cast<std::size_t>(i)], r);
  return factorial(r) * (esym_classes(groups_of(t, values), r) - mono);
}

SpectralResult lambda_p_dense(const UniformHypergraph& g, double p, const SolverConfig& cfg) {
  if (!(p >= 1.0)) throw RangeError("lambda_p_dense: p must be at least 1");
  const int n = g.n();
  if (g.size() == 0 || n == 0) {
    SpectralResult res;
    res.p = p;
    res.weights = n > 0 ? normalize_lp(Eigen::VectorXd::Ones(n), p) : Eigen::VectorXd();
    res.converged = true;
    res.restarts_used = 0;
    return res;
  }
  Problem pr;
  pr.c = Eigen::VectorXd::Ones(n);
  pr.degree = g.r();
  pr.value = [&g](const Eigen::VectorXd& x) { return polyform(g, x); };
  pr.gradient = [&g](const Eigen::VectorXd& x) { return polyform_gradient(g, x); };
  pr.hessian = [&g](const Eigen::VectorXd& x) { return polyform_hessian(g, x); };
  SpectralResult res = solve(pr, p, cfg, n);
  res.residual = eigen_residual(g, p, res.weights, res.lambda);
  return res;
}

SpectralResult lambda_p_classes(const ClassTuple& t, double p, const SolverConfig& cfg) {
  if (!(p >= 1.0)) throw RangeError("lambda_p_classes: p must be at least 1");
  SpectralResult res;
  if (edge_count(t) == 0) {
    res.p = p;
    res.class_values.assign(static_cast<std::size_t>(t.k()), std::pow(1.0 / t.n(), 1.0 / p));
    res.weights = Eigen::VectorXd::Constant(t.n(), std::pow(1.0 / t.n(), 1.0 / p));
    res.converged = true;
    return res;
  }
  const Problem pr = class_problem(t);
  res = solve(pr, p, cfg, t.k());
  res.class_values.assign(res.weights.data(), res.weights.data() + res.weights.size());
  Eigen::VectorXd full(t.n());
  for (int i = 0, v = 0; i < t.k(); ++i)
    for (int j = 0; j < t.size(i); ++j) full[v++] = res.class_values[static_cast<std::size_t>(i)];
  res.weights = full;
  res.residual = class_eigen_residual(t, p, res.class_values, res.lambda);
  return res;
}

double eigen_residual(const UniformHypergraph& g, double p, const Eigen::Ref<const Eigen::VectorXd>& x,
                      double lambda) {
  if (x.size() != g.n()) throw DimensionError("eigen_residual: weight vector length differs from n");
  const Eigen::VectorXd link = polyform_gradient(g, x) / static_cast<double>(g.r());
  double worst = 0.0;
  for (Eigen::Index u = 0; u < x.size(); ++u) worst = std::max(worst, vertex_violation(lambda, x[u], p, link[u]));
  return worst;
}

double class_eigen_residual(const ClassTuple& t, double p, std::span<const double> values, double lambda) {
  if (static_cast<int>(values.size()) != t.k()) throw DimensionError("class_eigen_residual: one value per class");
  const Eigen::VectorXd link = class_link_terms(t, values);
  double worst = 0.0;
  for (int i = 0; i < t.k(); ++i)
    worst = std::max(worst, vertex_violation(lambda, values[static_cast<std::size_t>(i)], p, link[i]));
  return worst;
}

HolderVerdict holder_check(int r, double edges, double p, double lambda_p, double lambda_1) {
  HolderVerdict v;
  if (p == 1.0) {
    v.bound = lambda_1;
  } else {
    v.bound = std::pow(factorial(r) * edges, 1.0 - 1.0 / p) * std::pow(std::max(lambda_1, 0.0), 1.0 / p);
  }
  v.margin = v.bound - lambda_p;
  v.pass = lambda_p <= v.bound + kHolderSlack;
  return v;
}

HolderVerdict holder_check(const UniformHypergraph& g, double p, double lambda_p, double lambda_1) {
  return holder_check(g.r(), static_cast<double>(g.size()), p, lambda_p, lambda_1);
}

StructuralReport structural_check_values(const ClassTuple& t, double p, std::span<const double> a,
                                         bool extremal_input) {
  if (static_cast<int>(a.size()) != t.k()) throw DimensionError("structural_check: one value per class");
  if (!(p > 1.0)) throw RangeError("structural_check: requires p > 1");
  StructuralReport rep;
  rep.sizes = t.sizes();
  rep.p = p;
  rep.extremal_input = extremal_input;
  rep.class_values.assign(a.begin(), a.end());
  const int k = t.k();
  const int r = t.r();

  rep.s1 = true;
  for (int i = 0; i + 1 < k; ++i) {
    if (a[static_cast<std::size_t>(i + 1)] < a[static_cast<std::size_t>(i)] - kStructuralTol) {
      rep.s1 = false;
      rep.s1_witness = i + 1;
      break;
    }
  }

  const double n1 = t.size(0);
  const double top = n1 * std::pow(a[0], p);
  const double floor_mass = (n1 - 1.0) * std::pow(a[0], p);
  rep.s2 = true;
  for (int i = 0; i < k; ++i) {
    const double mass = t.size(i) * std::pow(a[static_cast<std::size_t>(i)], p);
    const double slack = kStructuralTol * std::max(top, 1e-300);
    if (mass > top + slack || mass < floor_mass - slack) {
      rep.s2 = false;
      rep.s2_witness = i;
      break;
    }
  }

  rep.gap = t.gap();
  rep.gap_limit = static_cast<int>(std::ceil(1.0 / (p - 1.0) - 1e-12));
  rep.s3 = rep.gap <= rep.gap_limit;

  rep.transfer = true;
  const double lhs = binom<double>(t.size(0) - 1, r - 1) * std::pow(a[0], r - 1);
  for (int i = 1; i < k; ++i) {
    if (t.size(i) > t.size(0) - 1) continue;
    const double rhs = binom<double>(t.size(i), r - 1) * std::pow(a[static_cast<std::size_t>(i)], r - 1);
    if (lhs > rhs + kStructuralTol * std::max(rhs, 1.0)) {
      rep.transfer = false;
      rep.transfer_witness = i;
      break;
    }
  }
  return rep;
}

StructuralReport structural_check(const ClassTuple& t, double p, const SolverConfig& cfg, bool extremal_input) {
  const SpectralResult res = lambda_p_classes(t, p, cfg);
  return structural_check_values(t, p, res.class_values, extremal_input);
}

}  // namespace pspec
