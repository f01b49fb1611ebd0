#include "pspec/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace pspec {

namespace {

std::int64_t binom_i64(int m, int s) {
  if (s < 0 || m < 0 || s > m) return 0;
  s = std::min(s, m - s);
  std::int64_t result = 1;
  for (int i = 0; i < s; ++i) result = result * (m - i) / (i + 1);
  return result;
}

void validate(int r, int n, const std::vector<Edge>& edges) {
  if (r < 2) throw InvariantError("hypergraph: uniformity must be at least 2");
  if (n < 0) throw InvariantError("hypergraph: negative vertex count");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (static_cast<int>(e.size()) != r) throw InvariantError("hypergraph: edge of wrong size");
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] < 0 || e[j] >= n) throw InvariantError("hypergraph: vertex out of range");
      if (j > 0 && e[j] <= e[j - 1]) throw InvariantError("hypergraph: edge not strictly ascending");
    }
    if (i > 0 && !(edges[i - 1] < e)) throw InvariantError("hypergraph: edge list not strictly increasing");
  }
}

// Calls visit(subset) for every r-subset of {0..n-1} in lexicographic order.
void for_each_subset(int n, int r, const std::function<void(const Edge&)>& visit) {
  if (r > n || r < 0) return;
  Edge c(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) c[static_cast<std::size_t>(i)] = i;
  while (true) {
    visit(c);
    int i = r - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - r + i) --i;
    if (i < 0) return;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace

UniformHypergraph::UniformHypergraph(int r, int n, std::vector<Edge> edges)
    : r_(r), n_(n), edges_(std::move(edges)) {
  validate(r_, n_, edges_);
}

UniformHypergraph UniformHypergraph::canonical(int r, int n, std::vector<Edge> edges) {
  for (auto& e : edges) std::sort(e.begin(), e.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return UniformHypergraph(r, n, std::move(edges));
}

UniformHypergraph UniformHypergraph::complete(int r, int n) {
  if (n > kMaxConstructionOrder || binom_i64(n, r) > kMaxEnumeratedSets)
    throw CapacityError("complete graph exceeds the enumeration bound");
  std::vector<Edge> edges;
  for_each_subset(n, r, [&](const Edge& e) { edges.push_back(e); });
  return UniformHypergraph(r, n, std::move(edges));
}

bool UniformHypergraph::contains(const Edge& e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

UniformHypergraph UniformHypergraph::with_edge(Edge e) const {
  std::vector<Edge> edges = edges_;
  edges.push_back(std::move(e));
  return canonical(r_, n_, std::move(edges));
}

UniformHypergraph UniformHypergraph::without_edge(const Edge& e) const {
  std::vector<Edge> edges;
  edges.reserve(edges_.size());
  for (const auto& f : edges_)
    if (f != e) edges.push_back(f);
  return UniformHypergraph(r_, n_, std::move(edges));
}

ClassTuple::ClassTuple(int r, std::vector<int> sizes) : r_(r), sizes_(std::move(sizes)), n_(0) {
  if (r_ < 2) throw InvariantError("class tuple: uniformity must be at least 2");
  if (sizes_.empty()) throw InvariantError("class tuple: no classes");
  for (int s : sizes_) {
    if (s < 1) throw InvariantError("class tuple: class size below 1");
    n_ += s;
  }
  std::sort(sizes_.begin(), sizes_.end(), std::greater<>());
}

int ClassTuple::block_start(int i) const {
  int start = 0;
  for (int j = 0; j < i; ++j) start += sizes_[static_cast<std::size_t>(j)];
  return start;
}

std::string ClassTuple::label() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < sizes_.size(); ++i) os << (i ? "," : "") << sizes_[i];
  os << ')';
  return os.str();
}

UniformHypergraph build_complete_chromatic(const ClassTuple& t) {
  const int n = t.n();
  const int r = t.r();
  if (n > kMaxConstructionOrder || binom_i64(n, r) > kMaxEnumeratedSets)
    throw CapacityError("build_complete_chromatic: C(n,r) exceeds the enumeration bound");
  std::vector<int> color(static_cast<std::size_t>(n));
  for (int i = 0, v = 0; i < t.k(); ++i)
    for (int j = 0; j < t.size(i); ++j) color[static_cast<std::size_t>(v++)] = i;
  std::vector<Edge> edges;
  for_each_subset(n, r, [&](const Edge& e) {
    const int c0 = color[static_cast<std::size_t>(e.front())];
    // Blocks are consecutive, so a sorted set is monochromatic iff its
    // endpoints share a color.
    if (color[static_cast<std::size_t>(e.back())] != c0) edges.push_back(e);
  });
  return UniformHypergraph(r, n, std::move(edges));
}

std::int64_t edge_count(const ClassTuple& t) {
  std::int64_t count = binom_i64(t.n(), t.r());
  for (int s : t.sizes()) count -= binom_i64(s, t.r());
  return count;
}

Rational balanced_edge_bound(int r, int k, int n) {
  if (k < 1 || n <= (r - 1) * k)
    throw RangeError("balanced_edge_bound: requires n > (r-1)k");
  const Rational nu = make_rational(n, k);
  return binom<Rational>(n, r) - Rational(k) * gen_binomial(nu, r);
}

ClassTuple balanced_tuple(int r, int k, int n) {
  if (k < 1 || n < k) throw RangeError("balanced_tuple: requires n >= k >= 1");
  std::vector<int> sizes(static_cast<std::size_t>(k), n / k);
  for (int i = 0; i < n % k; ++i) ++sizes[static_cast<std::size_t>(i)];
  return ClassTuple(r, std::move(sizes));
}

double polyform(const UniformHypergraph& g, const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != g.n()) throw DimensionError("polyform: weight vector length differs from n");
  double sum = 0.0;
  for (const auto& e : g.edges()) {
    double prod = 1.0;
    for (int v : e) prod *= x[v];
    sum += prod;
  }
  return std::tgamma(g.r() + 1.0) * sum;
}

Eigen::VectorXd polyform_gradient(const UniformHypergraph& g, const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != g.n()) throw DimensionError("polyform_gradient: weight vector length differs from n");
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(g.n());
  const double fact = std::tgamma(g.r() + 1.0);
  for (const auto& e : g.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      double prod = 1.0;
      for (std::size_t j = 0; j < e.size(); ++j)
        if (j != i) prod *= x[e[j]];
      grad[e[i]] += prod;
    }
  }
  return fact * grad;
}

Eigen::MatrixXd polyform_hessian(const UniformHypergraph& g, const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != g.n()) throw DimensionError("polyform_hessian: weight vector length differs from n");
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(g.n(), g.n());
  const double fact = std::tgamma(g.r() + 1.0);
  for (const auto& e : g.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::size_t j = i + 1; j < e.size(); ++j) {
        double prod = 1.0;
        for (std::size_t l = 0; l < e.size(); ++l)
          if (l != i && l != j) prod *= x[e[l]];
        h(e[i], e[j]) += prod;
        h(e[j], e[i]) += prod;
      }
    }
  }
  return fact * h;
}

std::optional<int> weak_chromatic_number(const UniformHypergraph& g, int k_max) {
  const int n = g.n();
  if (n > kMaxChromaticOrder) throw CapacityError("weak_chromatic_number: brute force limited to n <= 12");
  if (g.size() == 0) return k_max >= 1 ? std::optional<int>(1) : std::nullopt;

  // Edges indexed by their largest vertex: checked once that vertex is colored.
  std::vector<std::vector<const Edge*>> closing(static_cast<std::size_t>(n));
  for (const auto& e : g.edges()) closing[static_cast<std::size_t>(e.back())].push_back(&e);

  std::vector<int> color(static_cast<std::size_t>(n), -1);
  for (int k = 1; k <= k_max; ++k) {
    std::function<bool(int, int)> assign = [&](int v, int used) -> bool {
      if (v == n) return true;
      // First-occurrence ordering: vertex v may open at most one new class.
      const int limit = std::min(k, used + 1);
      for (int c = 0; c < limit; ++c) {
        color[static_cast<std::size_t>(v)] = c;
        bool ok = true;
        for (const Edge* e : closing[static_cast<std::size_t>(v)]) {
          bool mono = true;
          for (int u : *e)
            if (color[static_cast<std::size_t>(u)] != c) { mono = false; break; }
          if (mono) { ok = false; break; }
        }
        if (ok && assign(v + 1, std::max(used, c + 1))) return true;
      }
      color[static_cast<std::size_t>(v)] = -1;
      return false;
    };
    if (assign(0, 0)) return k;
  }
  return std::nullopt;
}

double lp_mass(const Eigen::Ref<const Eigen::VectorXd>& x, double p) {
  return x.array().abs().pow(p).sum();
}

Eigen::VectorXd normalize_lp(const Eigen::Ref<const Eigen::VectorXd>& x, double p) {
  const double mass = lp_mass(x, p);
  if (!(mass > 0.0)) throw RangeError("normalize_lp: zero vector");
  return x / std::pow(mass, 1.0 / p);
}

nlohmann::json to_json(const UniformHypergraph& g) {
  return nlohmann::json{{"r", g.r()}, {"n", g.n()}, {"edges", g.edges()}};
}

UniformHypergraph hypergraph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("r") || !j.contains("n") || !j.contains("edges"))
    throw InvariantError("hypergraph JSON: expected object with r, n, edges");
  if (!j["r"].is_number_integer() || !j["n"].is_number_integer() || !j["edges"].is_array())
    throw InvariantError("hypergraph JSON: r and n must be integers, edges an array");
  std::vector<Edge> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array()) throw InvariantError("hypergraph JSON: every edge must be an array");
    Edge edge;
    for (const auto& v : e) {
      if (!v.is_number_integer()) throw InvariantError("hypergraph JSON: vertices must be integers");
      edge.push_back(v.get<int>());
    }
    edges.push_back(std::move(edge));
  }
  // The constructor rejects unsorted or duplicated input rather than fixing it.
  return UniformHypergraph(j["r"].get<int>(), j["n"].get<int>(), std::move(edges));
}

UniformHypergraph read_hypergraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw InvariantError(std::string("hypergraph JSON: ") + e.what());
  }
  return hypergraph_from_json(j);
}

void write_hypergraph(const UniformHypergraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json(g).dump() << '\n';
}

}  // namespace pspec
