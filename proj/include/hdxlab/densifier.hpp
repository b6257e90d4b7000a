#pragma once

#include <cstddef>
#include <vector>

#include "hdxlab/graph.hpp"
#include "hdxlab/simplicial.hpp"

namespace hdxlab {

/// A k-face of the densified complex as a base face with a labeling.
struct DensifiedFace {
  Face base;                // sorted base-complex vertices
  std::vector<int> labels;  // graph vertex for each entry of `base`
  std::vector<int> color;   // sorted image of the labeling, size 1 or 2
  int offset = 0;           // size of the smaller label class; 0 iff constant

  int label_count(int label) const;  // entries carrying `label`
};

/// Induced k-face weights for uniform top weights.
struct DensifierWeights {
  double w_i = 0.0;  // non-constant labeling
  double w_j = 0.0;  // constant labeling
  int t = 0;         // degree of the base graph

  double d() const { return t * w_i + w_j; }
};

/// Reduced form: w_I = 2^(H-k), w_J = T 2^(H-k) - (T-1).
DensifierWeights reduced_weights(int t, int h, int k);
/// Same values scaled by binom(s, H - k).
DensifierWeights binomial_weights(int s, int t, int h, int k);
/// Values propagated from unit top weights over B = K_s^(H): the reduced
/// values scaled by binom(s - k - 1, H - k) (H - k)!.
DensifierWeights propagated_weights(int s, int t, int h, int k);

enum class WeightForm { kReduced, kBinomial, kPropagated };

/// w_J for a constant labeling, w_I otherwise, in the requested form; top
/// faces weigh 1.
double face_weight(const DensifiedFace& face, int s, int t, int h, WeightForm form);

struct LinkCaseWeights {
  double w_s = 0.0;  // satellite edges
  double w_c = 0.0;  // center loop
};

/// w_S = 2^(H-(k+2)), w_C = 1 + T (2^(H-(k+2)) - 1); -1 <= k <= H - 2,
/// otherwise kRange.
LinkCaseWeights link_case_weights(int t, int h, int k);

/// LocalDensifier(G, B).  Vertex (v, b) of the result is numbered v * |V(B)| + b.
class DensifiedComplex {
 public:
  DensifiedComplex(WeightedGraph g, SimplicialComplex b, SimplicialComplex q);

  const WeightedGraph& graph() const { return g_; }
  const SimplicialComplex& base() const { return b_; }
  const SimplicialComplex& complex() const { return q_; }
  int degree() const { return t_; }
  int base_vertices() const { return s_; }
  int top_dim() const { return q_.top_dim(); }

  int vertex_id(int graph_vertex, int base_vertex) const { return graph_vertex * s_ + base_vertex; }
  DensifiedFace describe(const Face& face) const;
  /// Every k-face, in the order of complex().faces(k).
  std::vector<DensifiedFace> k_faces(int k) const;

 private:
  WeightedGraph g_;
  SimplicialComplex b_;
  SimplicialComplex q_;
  int t_ = 0;
  int s_ = 0;
};

/// Builds the densified complex with unit top weights.  Requires g simple,
/// connected, regular and triangle-free (kUnsupportedInput, kRegularity,
/// kPrecondition) and b pure (kPurity).
DensifiedComplex local_densifier(const WeightedGraph& g, const SimplicialComplex& b);

/// Closed-form number of k-faces when b = K_s^(H).
double closed_form_face_count(int n, long edges, int s, int k);

long binomial(int n, int r);

}  // namespace hdxlab
