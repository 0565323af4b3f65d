#include "rescon/graph.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

#include "rescon/errors.hpp"
#include "rescon/spectral.hpp"

namespace rescon {

Graph Graph::from_edge_list(std::size_t n, const std::vector<Edge>& edges) {
  if (n < 2) {
    throw GraphError(GraphError::Kind::TooFewNodes,
                     "graph needs at least 2 nodes, got " + std::to_string(n));
  }
  Graph g;
  g.n_ = n;
  g.edges_.reserve(edges.size());
  for (auto [i, j] : edges) {
    if (i >= n || j >= n) {
      throw GraphError(GraphError::Kind::IndexOutOfRange,
                       "edge (" + std::to_string(i) + "," + std::to_string(j) +
                           ") has a node index outside [0," + std::to_string(n) + ")");
    }
    if (i == j) {
      throw GraphError(GraphError::Kind::SelfLoop, "self-loop at node " + std::to_string(i));
    }
    g.edges_.emplace_back(std::min(i, j), std::max(i, j));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

  g.adjacency_.assign(n, {});
  for (auto [i, j] : g.edges_) {
    g.adjacency_[i].push_back(j);
    g.adjacency_[j].push_back(i);
  }
  for (auto& nb : g.adjacency_) std::sort(nb.begin(), nb.end());
  return g;
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> d(n_);
  for (std::size_t i = 0; i < n_; ++i) d[i] = adjacency_[i].size();
  return d;
}

DenseMatrix degree_matrix(const Graph& g) {
  const std::size_t n = g.node_count();
  DenseMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = static_cast<double>(g.degree(i));
  return d;
}

DenseMatrix adjacency_matrix(const Graph& g) {
  const std::size_t n = g.node_count();
  DenseMatrix a(n, n);
  for (auto [i, j] : g.edges()) {
    a(i, j) = 1.0;
    a(j, i) = 1.0;
  }
  return a;
}

DenseMatrix laplacian(const Graph& g) {
  // Built from integer degrees and neighbor lists, so every row sums to
  // exactly zero.
  const std::size_t n = g.node_count();
  DenseMatrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    l(i, i) = static_cast<double>(g.degree(i));
    for (std::size_t j : g.neighbors(i)) l(i, j) = -1.0;
  }
  return l;
}

bool is_connected(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (std::size_t v : g.neighbors(u)) {
      if (seen[v]) continue;
      seen[v] = true;
      ++reached;
      frontier.push(v);
    }
  }
  return reached == n;
}

namespace {

std::vector<double> sorted_laplacian_eigenvalues(const Graph& g) {
  const Spectrum s = eigenvalues(laplacian(g));
  std::vector<double> out;
  out.reserve(s.size());
  for (const auto& z : s.values) out.push_back(z.real());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<double> laplacian_spectrum(const Graph& g) {
  if (!is_connected(g)) throw PreconditionError("graph not connected");
  return sorted_laplacian_eigenvalues(g);
}

double algebraic_connectivity(const Graph& g) { return sorted_laplacian_eigenvalues(g)[1]; }

Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edge_list(n, e);
}

Graph cycle_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::from_edge_list(n, e);
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph::from_edge_list(n, e);
}

Graph star_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i < n; ++i) e.emplace_back(0, i);
  return Graph::from_edge_list(n, e);
}

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound) {
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Graph random_connected_graph(std::size_t n, double extra_edge_probability, std::mt19937_64& rng) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[uniform_index(rng, i)]);

  std::vector<Edge> e;
  for (std::size_t k = 1; k < n; ++k) e.emplace_back(order[k], order[uniform_index(rng, k)]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (uniform_real(rng, 0.0, 1.0) < extra_edge_probability) e.emplace_back(i, j);
  return Graph::from_edge_list(n, e);
}

Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (uniform_real(rng, 0.0, 1.0) < p) e.emplace_back(i, j);
  return Graph::from_edge_list(n, e);
}

}  // namespace rescon
