#pragma once

#include "pspec/hypergraph.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <vector>

namespace pspec {

struct SolverConfig {
  double tol = 1e-10;       // relative objective improvement threshold
  int max_iter = 10000;     // ascent iterations per restart
  int restarts = 16;        // restart 0 is the uniform vector
  std::uint64_t seed = 0;
  double shrink = 0.5;      // backtracking factor
  double sufficient_increase = 1e-4;
  int stall_window = 20;    // consecutive small improvements before stopping
  double perturbation = 1.0;  // log-scale spread of multiplicative restarts
  bool newton_polish = true;  // refine the KKT point after the ascent

  void validate() const;
};

struct SpectralResult {
  double lambda = 0.0;
  double p = 1.0;
  WeightVector weights;             // one entry per vertex, sum x^p = 1
  std::vector<double> class_values; // reduced solver only, descending sizes
  double residual = 0.0;            // max eigenequation violation
  int restarts_used = 0;
  int best_restart = 0;
  int iterations = 0;               // ascent iterations of the best restart
  bool converged = false;
};

/// Multi-start projected gradient ascent of the polyform on the nonnegative
/// part of the l_p sphere (the simplex when p = 1).
SpectralResult lambda_p_dense(const UniformHypergraph& g, double p, const SolverConfig& cfg = {});

/// Same problem restricted to class-constant vectors of Q(n_1,...,n_k):
/// k unknowns a_i with sum n_i a_i^p = 1.
SpectralResult lambda_p_classes(const ClassTuple& t, double p, const SolverConfig& cfg = {});

/// Reduced objective r! (e_r(a_i^{n_i}) - sum_i C(n_i,r) a_i^r).
double class_objective(const ClassTuple& t, std::span<const double> values);

/// max_u |lambda x_u^{p-1} - (r-1)! sum_{S in link(u)} prod_S x|. At p = 1
/// zero coordinates only count the one-sided excess of their link sum.
double eigen_residual(const UniformHypergraph& g, double p, const Eigen::Ref<const Eigen::VectorXd>& x,
                      double lambda);
double class_eigen_residual(const ClassTuple& t, double p, std::span<const double> values, double lambda);

struct HolderVerdict {
  bool pass = false;
  double bound = 0.0;   // (r!|G|)^{1-1/p} lambda_1^{1/p}
  double margin = 0.0;  // bound - lambda_p
};

inline constexpr double kHolderSlack = 1e-8;

HolderVerdict holder_check(int r, double edge_count, double p, double lambda_p, double lambda_1);
HolderVerdict holder_check(const UniformHypergraph& g, double p, double lambda_p, double lambda_1);

inline constexpr double kStructuralTol = 1e-8;

struct StructuralReport {
  std::vector<int> sizes;
  double p = 2.0;
  bool extremal_input = true;
  std::vector<double> class_values;
  bool s1 = false;  // a_1 <= ... <= a_k
  bool s2 = false;  // n_1 a_1^p >= n_i a_i^p >= (n_1 - 1) a_1^p
  bool s3 = false;  // n_1 - n_k <= ceil(1/(p-1))
  bool transfer = false;  // C(n_1-1,r-1) a_1^{r-1} <= C(n_i,r-1) a_i^{r-1}
  int s1_witness = -1;
  int s2_witness = -1;
  int transfer_witness = -1;
  int gap = 0;
  int gap_limit = 0;

  bool all() const { return s1 && s2 && s3 && transfer; }
};

/// Checks the structural hypotheses on already solved class values.
StructuralReport structural_check_values(const ClassTuple& t, double p, std::span<const double> values,
                                         bool extremal_input = true);
StructuralReport structural_check(const ClassTuple& t, double p, const SolverConfig& cfg = {},
                                  bool extremal_input = true);

}  // namespace pspec
