#include "hdxlab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

#include "hdxlab/error.hpp"
#include "hdxlab/rng.hpp"

namespace hdxlab {

WeightedGraph::WeightedGraph(int vertex_count, std::vector<Edge> edges, bool directed)
    : vertex_count_(vertex_count), directed_(directed), edges_(std::move(edges)) {
  if (vertex_count_ < 0) throw Error(ErrorKind::kInvalidInput, "negative vertex count");
  for (const auto& e : edges_) {
    if (e.u < 0 || e.u >= vertex_count_ || e.v < 0 || e.v >= vertex_count_) {
      std::ostringstream msg;
      msg << "edge (" << e.u << ", " << e.v << ") out of range for " << vertex_count_ << " vertices";
      throw Error(ErrorKind::kInvalidInput, msg.str());
    }
    if (!std::isfinite(e.weight) || e.weight < 0.0) {
      throw Error(ErrorKind::kInvalidInput, "edge weights must be finite and nonnegative");
    }
  }
}

Eigen::MatrixXd WeightedGraph::weight_matrix() const {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(vertex_count_, vertex_count_);
  for (const auto& e : edges_) {
    w(e.u, e.v) += e.weight;
    if (!directed_ && e.u != e.v) w(e.v, e.u) += e.weight;
  }
  return w;
}

std::vector<double> WeightedGraph::out_weights() const {
  std::vector<double> out(vertex_count_, 0.0);
  for (const auto& e : edges_) {
    out[e.u] += e.weight;
    if (!directed_ && e.u != e.v) out[e.v] += e.weight;
  }
  return out;
}

bool WeightedGraph::is_simple_unit() const {
  if (directed_) return false;
  std::set<std::pair<int, int>> seen;
  for (const auto& e : edges_) {
    if (e.u == e.v || e.weight != 1.0) return false;
    if (!seen.insert(std::minmax(e.u, e.v)).second) return false;
  }
  return true;
}

std::vector<std::vector<int>> WeightedGraph::adjacency_lists() const {
  std::vector<std::vector<int>> adj(vertex_count_);
  for (const auto& e : edges_) {
    if (e.u == e.v || e.weight == 0.0) continue;
    adj[e.u].push_back(e.v);
    if (!directed_) adj[e.v].push_back(e.u);
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

std::optional<int> WeightedGraph::regular_degree() const {
  if (!is_simple_unit()) return std::nullopt;
  const auto adj = adjacency_lists();
  if (adj.empty()) return std::nullopt;
  const auto d = adj.front().size();
  for (const auto& list : adj) {
    if (list.size() != d) return std::nullopt;
  }
  return static_cast<int>(d);
}

long WeightedGraph::triangle_count() const {
  const auto adj = adjacency_lists();
  long count = 0;
  for (int a = 0; a < vertex_count_; ++a) {
    for (int b : adj[a]) {
      if (b <= a) continue;
      for (int c : adj[b]) {
        if (c <= b) continue;
        if (std::binary_search(adj[a].begin(), adj[a].end(), c)) ++count;
      }
    }
  }
  return count;
}

bool WeightedGraph::is_connected() const {
  if (vertex_count_ == 0) return true;
  auto adj = adjacency_lists();
  if (directed_) {
    // Weak connectivity is enough here; irreducibility is checked on chains.
    for (int u = 0; u < vertex_count_; ++u) {
      for (int v : adj[u]) adj[v].push_back(u);
    }
  }
  std::vector<char> seen(vertex_count_, 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == vertex_count_;
}

int WeightedGraph::girth() const {
  const auto adj = adjacency_lists();
  int best = 0;
  // BFS from every vertex; a non-tree edge closes a cycle of length
  // dist[u] + dist[v] + 1, and the minimum over all roots is exact.
  for (int root = 0; root < vertex_count_; ++root) {
    std::vector<int> dist(vertex_count_, -1);
    std::vector<int> parent(vertex_count_, -1);
    std::queue<int> frontier;
    dist[root] = 0;
    frontier.push(root);
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      for (int v : adj[u]) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          frontier.push(v);
        } else if (parent[u] != v) {
          const int len = dist[u] + dist[v] + 1;
          if (best == 0 || len < best) best = len;
        }
      }
    }
  }
  return best;
}

WeightedGraph WeightedGraph::cycle(int n) {
  if (n < 3) throw Error(ErrorKind::kInvalidInput, "cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph WeightedGraph::complete(int m) {
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) edges.push_back({i, j, 1.0});
  }
  return WeightedGraph(m, std::move(edges));
}

WeightedGraph WeightedGraph::star(int leaves) {
  std::vector<Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.push_back({0, i, 1.0});
  return WeightedGraph(leaves + 1, std::move(edges));
}

WeightedGraph WeightedGraph::petersen() {
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i) {
    edges.push_back({i, (i + 1) % 5, 1.0});          // outer 5-cycle
    edges.push_back({i, i + 5, 1.0});                // spokes
    edges.push_back({5 + i, 5 + (i + 2) % 5, 1.0});  // inner pentagram
  }
  return WeightedGraph(10, std::move(edges));
}

WeightedGraph WeightedGraph::single_loop(double weight) {
  return WeightedGraph(1, {{0, 0, weight}});
}

Eigen::MatrixXd normalized_adjacency(const WeightedGraph& g) {
  Eigen::MatrixXd w = g.weight_matrix();
  for (Eigen::Index u = 0; u < w.rows(); ++u) {
    const double total = w.row(u).sum();
    if (!(total > 0.0)) {
      std::ostringstream msg;
      msg << "vertex " << u << " has zero out-weight";
      throw Error(ErrorKind::kIsolatedVertex, msg.str());
    }
    w.row(u) /= total;
  }
  return w;
}

SpectralSummary spectrum(const WeightedGraph& g, SpectrumMode mode) {
  const Eigen::MatrixXd p = normalized_adjacency(g);
  if (mode == SpectrumMode::kGeneral || (mode == SpectrumMode::kAuto && g.directed())) {
    return summarize(general_real_eigenvalues(p));
  }
  if (!g.directed()) {
    // Reversible with respect to the out-weights.
    const auto d = g.out_weights();
    return summarize(reversible_eigenvalues(p, d));
  }
  const Eigen::VectorXd pi = left_stationary_vector(p);
  double residual = 0.0;
  for (Eigen::Index x = 0; x < p.rows(); ++x) {
    for (Eigen::Index y = 0; y < p.rows(); ++y) {
      residual = std::max(residual, std::abs(pi(x) * p(x, y) - pi(y) * p(y, x)));
    }
  }
  if (residual > 1e-10) {
    throw Error(ErrorKind::kReversibility, "graph walk is not reversible; use general mode");
  }
  std::vector<double> pv(pi.data(), pi.data() + pi.size());
  return summarize(reversible_eigenvalues(p, pv));
}

WeightedGraph tensor_product(const WeightedGraph& g, const WeightedGraph& h) {
  const bool directed = g.directed() || h.directed();
  const int nh = h.vertex_count();
  // Expand both edge lists into arcs, multiply, then fold back.
  auto arcs = [](const WeightedGraph& x) {
    std::vector<Edge> out;
    for (const auto& e : x.edges()) {
      out.push_back(e);
      if (!x.directed() && e.u != e.v) out.push_back({e.v, e.u, e.weight});
    }
    return out;
  };
  const auto ga = arcs(g);
  const auto ha = arcs(h);
  std::vector<Edge> edges;
  for (const auto& a : ga) {
    for (const auto& b : ha) {
      const int src = a.u * nh + b.u;
      const int dst = a.v * nh + b.v;
      if (!directed && src > dst) continue;
      edges.push_back({src, dst, a.weight * b.weight});
    }
  }
  return WeightedGraph(g.vertex_count() * nh, std::move(edges), directed);
}

WeightedGraph add_lazy_loops(const WeightedGraph& g, double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw Error(ErrorKind::kRange, "laziness must lie in [0, 1]");
  const auto out = g.out_weights();
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v, (1.0 - c) * e.weight});
  for (int u = 0; u < g.vertex_count(); ++u) {
    if (c > 0.0) edges.push_back({u, u, c * out[u]});
  }
  return WeightedGraph(g.vertex_count(), std::move(edges), g.directed());
}

WeightedGraph line_graph(const WeightedGraph& g) {
  if (!g.is_simple_unit()) {
    throw Error(ErrorKind::kUnsupportedInput, "line graph needs an undirected, unweighted simple graph");
  }
  const auto& e = g.edges();
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      if (e[i].u == e[j].u || e[i].u == e[j].v || e[i].v == e[j].u || e[i].v == e[j].v) {
        edges.push_back({static_cast<int>(i), static_cast<int>(j), 1.0});
      }
    }
  }
  return WeightedGraph(static_cast<int>(e.size()), std::move(edges));
}

BoundEntry check_sachs_relation(const WeightedGraph& g, double tolerance) {
  const auto degree = g.regular_degree();
  if (!degree || *degree < 2) {
    throw Error(ErrorKind::kRegularity, "Sachs relation needs a d-regular simple graph with d >= 2");
  }
  const double d = *degree;
  const int n = g.vertex_count();
  std::vector<double> predicted;
  for (double lambda : spectrum(g).eigenvalues) {
    predicted.push_back((lambda * d + d - 2.0) / (2.0 * d - 2.0));
  }
  const int extra = n * (*degree - 2) / 2;  // n (d/2 - 1), integral since n d is even
  for (int i = 0; i < extra; ++i) predicted.push_back(-2.0 / (2.0 * d - 2.0));
  const auto measured = spectrum(line_graph(g)).eigenvalues;
  const double deviation = multiset_deviation(measured, predicted);
  return make_entry("thm:Sachs67", "line-graph spectrum vs mapped base spectrum (max deviation)",
                    deviation, Relation::kLessEqual, 0.0, tolerance);
}

WeightedGraph random_regular_triangle_free(int n, int t, std::uint64_t seed, int max_attempts,
                                           bool require_connected) {
  if (t < 2 || n <= t) throw Error(ErrorKind::kInvalidInput, "need t >= 2 and n > t");
  if ((static_cast<long>(n) * t) % 2 != 0) {
    throw Error(ErrorKind::kInvalidInput, "n * t must be even");
  }
  Rng rng(seed);
  std::vector<int> points;
  for (int v = 0; v < n; ++v) {
    for (int i = 0; i < t; ++i) points.push_back(v);
  }
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    // Fisher-Yates, then pair consecutive points.
    for (std::size_t i = points.size(); i > 1; --i) {
      std::swap(points[i - 1], points[rng.below(i)]);
    }
    std::set<std::pair<int, int>> seen;
    std::vector<Edge> edges;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < points.size() && ok; i += 2) {
      const int a = points[i];
      const int b = points[i + 1];
      if (a == b || !seen.insert(std::minmax(a, b)).second) ok = false;
      edges.push_back({std::min(a, b), std::max(a, b), 1.0});
    }
    if (!ok) continue;
    std::sort(edges.begin(), edges.end(),
              [](const Edge& x, const Edge& y) { return std::tie(x.u, x.v) < std::tie(y.u, y.v); });
    WeightedGraph g(n, std::move(edges));
    if (g.triangle_count() != 0) continue;
    if (require_connected && !g.is_connected()) continue;
    return g;
  }
  std::ostringstream msg;
  msg << "no simple triangle-free " << t << "-regular graph on " << n << " vertices after "
      << max_attempts << " attempts";
  throw Error(ErrorKind::kGenerationFailure, msg.str());
}

}  // namespace hdxlab
