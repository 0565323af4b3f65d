#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "rescon/dense_matrix.hpp"

namespace rescon {

using Edge = std::pair<std::size_t, std::size_t>;

/// Undirected simple graph on nodes 0..n-1. Edges are stored as (min, max)
/// pairs, sorted and unique. Immutable after construction.
class Graph {
public:
  /// Validates and canonicalizes an edge list. Duplicate and reversed pairs
  /// collapse to one edge. Throws GraphError for n < 2, self-loops and
  /// out-of-range indices.
  static Graph from_edge_list(std::size_t n, const std::vector<Edge>& edges);

  std::size_t node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t i) const { return adjacency_.at(i); }
  std::size_t degree(std::size_t i) const { return adjacency_.at(i).size(); }
  std::vector<std::size_t> degrees() const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

private:
  Graph() = default;

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

DenseMatrix degree_matrix(const Graph& g);
DenseMatrix adjacency_matrix(const Graph& g);
/// Degree matrix minus adjacency matrix.
DenseMatrix laplacian(const Graph& g);

/// Breadth-first reachability from node 0.
bool is_connected(const Graph& g);

/// Laplacian eigenvalues in ascending order. Throws PreconditionError when
/// the graph is disconnected.
std::vector<double> laplacian_spectrum(const Graph& g);

/// Second-smallest Laplacian eigenvalue (no connectivity precondition).
double algebraic_connectivity(const Graph& g);

Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
/// Star with node 0 at the center.
Graph star_graph(std::size_t n);

/// Random spanning tree plus each remaining pair independently with
/// probability `extra_edge_probability`. Always connected.
Graph random_connected_graph(std::size_t n, double extra_edge_probability, std::mt19937_64& rng);

/// Each pair independently with probability p; may be disconnected.
Graph random_graph(std::size_t n, double p, std::mt19937_64& rng);

/// Platform-independent draws from mt19937_64 (the standard distributions
/// are not bit-reproducible across standard libraries).
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound);
double uniform_real(std::mt19937_64& rng, double lo, double hi);

}  // namespace rescon
