#pragma once

#include "pspec/errors.hpp"
#include "pspec/rational.hpp"
#include "pspec/symfun.hpp"

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pspec {

using Edge = std::vector<int>;
using WeightVector = Eigen::VectorXd;

/// Explicit r-uniform hypergraph on vertices 0..n-1. Edges are sorted
/// ascending and the edge list is strictly increasing lexicographically.
class UniformHypergraph {
 public:
  // Validates every invariant; throws InvariantError on violation.
  UniformHypergraph(int r, int n, std::vector<Edge> edges);

  // Sorts each edge and the list, drops duplicates, then validates.
  static UniformHypergraph canonical(int r, int n, std::vector<Edge> edges);
  static UniformHypergraph complete(int r, int n);
  static UniformHypergraph edgeless(int r, int n) { return UniformHypergraph(r, n, {}); }

  int r() const { return r_; }
  int n() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  bool contains(const Edge& e) const;

  UniformHypergraph with_edge(Edge e) const;
  UniformHypergraph without_edge(const Edge& e) const;

  friend bool operator==(const UniformHypergraph&, const UniformHypergraph&) = default;

 private:
  int r_;
  int n_;
  std::vector<Edge> edges_;
};

/// Color-class sizes of a complete k-chromatic r-graph, kept in descending
/// order so that isomorphic tuples compare equal.
class ClassTuple {
 public:
  ClassTuple(int r, std::vector<int> sizes);

  int r() const { return r_; }
  int k() const { return static_cast<int>(sizes_.size()); }
  int n() const { return n_; }
  const std::vector<int>& sizes() const { return sizes_; }
  int size(int i) const { return sizes_[static_cast<std::size_t>(i)]; }
  int gap() const { return sizes_.front() - sizes_.back(); }
  bool balanced() const { return gap() <= 1; }
  // First vertex of class i in the canonical block labeling.
  int block_start(int i) const;

  std::string label() const;  // e.g. "(4,3)"
  friend bool operator==(const ClassTuple&, const ClassTuple&) = default;

 private:
  int r_;
  std::vector<int> sizes_;
  int n_;
};

inline constexpr int kMaxConstructionOrder = 25;
inline constexpr std::int64_t kMaxEnumeratedSets = std::int64_t{1} << 23;
inline constexpr int kMaxChromaticOrder = 12;

/// All r-subsets meeting at least two of the consecutive class blocks.
UniformHypergraph build_complete_chromatic(const ClassTuple& t);

/// C(n,r) - sum_i C(n_i, r).
std::int64_t edge_count(const ClassTuple& t);

/// C(n,r) - k C(n/k, r) with the generalized binomial; needs n > (r-1)k.
Rational balanced_edge_bound(int r, int k, int n);

/// Sizes of the balanced tuple Q_k^r(n).
ClassTuple balanced_tuple(int r, int k, int n);

/// r! sum_{e in G} prod_{v in e} x_v.
double polyform(const UniformHypergraph& g, const Eigen::Ref<const Eigen::VectorXd>& x);
Eigen::VectorXd polyform_gradient(const UniformHypergraph& g, const Eigen::Ref<const Eigen::VectorXd>& x);
Eigen::MatrixXd polyform_hessian(const UniformHypergraph& g, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Polyform of a complete k-chromatic graph whose class i carries the
/// weight multiset classes[i]: r! (e_r(all) - sum_i e_r(class i)).
template <class Scalar>
Scalar complete_chromatic_polyform(int r, const std::vector<std::vector<WeightGroup<Scalar>>>& classes) {
  std::vector<WeightGroup<Scalar>> all;
  Scalar mono(0);
  for (const auto& cls : classes) {
    all.insert(all.end(), cls.begin(), cls.end());
    mono += esym_classes(cls, r);
  }
  Scalar factorial(1);
  for (int i = 2; i <= r; ++i) factorial *= Scalar(i);
  return factorial * (esym_classes(all, r) - mono);
}

/// Class-constant version: class i has n_i vertices of weight values[i].
template <class Scalar>
Scalar class_constant_polyform(const ClassTuple& t, const std::vector<Scalar>& values) {
  std::vector<std::vector<WeightGroup<Scalar>>> classes;
  for (int i = 0; i < t.k(); ++i) classes.push_back({{values[static_cast<std::size_t>(i)], t.size(i)}});
  return complete_chromatic_polyform<Scalar>(t.r(), classes);
}

/// Least k <= k_max with a partition into k classes and no monochromatic
/// edge; nullopt when none exists. Brute force, n <= 12.
std::optional<int> weak_chromatic_number(const UniformHypergraph& g, int k_max);

/// x / ||x||_p.
Eigen::VectorXd normalize_lp(const Eigen::Ref<const Eigen::VectorXd>& x, double p);
double lp_mass(const Eigen::Ref<const Eigen::VectorXd>& x, double p);  // sum |x_v|^p

// Hypergraph JSON: {"r": int, "n": int, "edges": [[int,...],...]}.
nlohmann::json to_json(const UniformHypergraph& g);
UniformHypergraph hypergraph_from_json(const nlohmann::json& j);
UniformHypergraph read_hypergraph(const std::string& path);
void write_hypergraph(const UniformHypergraph& g, const std::string& path);

}  // namespace pspec
