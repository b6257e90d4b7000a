#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hdxlab/report.hpp"
#include "hdxlab/spectral.hpp"

namespace hdxlab {

struct Edge {
  int u = 0;
  int v = 0;
  double weight = 1.0;
};

/// Edge-weighted graph.  Undirected edges are stored once; a self-loop
/// {u, u} contributes its weight once to the diagonal of the weight matrix.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  /// Throws kInvalidInput on out-of-range ids or negative / non-finite weights.
  WeightedGraph(int vertex_count, std::vector<Edge> edges, bool directed = false);

  int vertex_count() const { return vertex_count_; }
  bool directed() const { return directed_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  Eigen::MatrixXd weight_matrix() const;
  std::vector<double> out_weights() const;

  // Undirected, no self-loops, no parallel edges, all weights 1.
  bool is_simple_unit() const;
  std::vector<std::vector<int>> adjacency_lists() const;  // sorted, loops excluded
  std::optional<int> regular_degree() const;               // simple graphs only
  long triangle_count() const;
  bool is_connected() const;
  /// Length of the shortest cycle; 0 for a forest.
  int girth() const;

  static WeightedGraph cycle(int n);
  static WeightedGraph complete(int m);
  static WeightedGraph star(int leaves);
  static WeightedGraph petersen();
  static WeightedGraph single_loop(double weight = 1.0);

 private:
  int vertex_count_ = 0;
  bool directed_ = false;
  std::vector<Edge> edges_;
};

/// Row-stochastic matrix: entry (u, v) = weight(u, v) / out-weight(u).
/// Throws kIsolatedVertex for a vertex with zero out-weight.
Eigen::MatrixXd normalized_adjacency(const WeightedGraph& g);

enum class SpectrumMode {
  kAuto,       // symmetric for undirected graphs, general otherwise
  kSymmetric,  // require reversibility, symmetrize
  kGeneral,    // general eigensolver, imaginary parts must vanish
};

SpectralSummary spectrum(const WeightedGraph& g, SpectrumMode mode = SpectrumMode::kAuto);

/// Kronecker product: normalized adjacency of the result is A_G (x) A_H.
/// Vertex (a, b) is numbered a * |V(H)| + b.
WeightedGraph tensor_product(const WeightedGraph& g, const WeightedGraph& h);

/// Transition matrix c I + (1 - c) A_G, realized by scaling the edges and
/// adding loop weight c * out-weight.  Throws kRange for c outside [0, 1].
WeightedGraph add_lazy_loops(const WeightedGraph& g, double c);

/// One vertex per edge of g (in edge order); adjacent iff the edges share an
/// endpoint.  Throws kUnsupportedInput unless g is simple and unweighted.
WeightedGraph line_graph(const WeightedGraph& g);

/// Compares the normalized line-graph spectrum with the image of the
/// spectrum of a d-regular g under lambda -> (lambda d + d - 2) / (2d - 2),
/// padded with -2 / (2d - 2) of multiplicity n (d/2 - 1).
BoundEntry check_sachs_relation(const WeightedGraph& g, double tolerance = 1e-9);

/// Configuration-model sample of a simple t-regular triangle-free graph,
/// rejecting multi-edges, loops, triangles and (optionally) disconnected
/// outcomes.  Deterministic for a fixed seed.
WeightedGraph random_regular_triangle_free(int n, int t, std::uint64_t seed,
                                           int max_attempts = 10000,
                                           bool require_connected = true);

}  // namespace hdxlab
