#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hdxlab/densifier.hpp"
#include "hdxlab/markov.hpp"
#include "hdxlab/report.hpp"
#include "hdxlab/simplicial.hpp"
#include "hdxlab/spectral.hpp"

namespace hdxlab {

std::string face_label(const Face& face);

/// Delete a uniform element, then add one with probability w(F') / w(F - x).
/// States are the k-faces in complex order.  Throws kBalance when the weights
/// are not balanced (relative residual above balance_tol), kRange for k
/// outside [0, H].
MarkovChain down_up_chain(const SimplicialComplex& c, int k, double balance_tol = 1e-12);

/// Go up to J with probability w(J) / w(F), then delete a uniform element of J.
/// Throws kRange unless 0 <= k < H.
MarkovChain up_down_chain(const SimplicialComplex& c, int k, double balance_tol = 1e-12);

/// Down-up walk on the k-faces of a densified complex; faces[i] describes state i.
struct QChain {
  MarkovChain chain;
  std::vector<DensifiedFace> faces;
};

/// Throws kRange unless 1 <= k < H.
QChain q_down_up(const DensifiedComplex& dc, int k);

/// (F, f, c): face index into the k-faces of Q plus an assigned edge of G.
struct SplitState {
  std::size_t face = 0;
  int edge = 0;  // index into graph().edges()
};

struct SplitChain {
  MarkovChain chain;
  std::vector<SplitState> states;
  std::vector<DensifiedFace> faces;  // faces[i] describes states[i].face
};

/// Replicates every constant face once per incident edge and divides the
/// probability into those copies by T.  Throws kPrecondition if G has a
/// triangle.
SplitChain split_chain(const DensifiedComplex& dc, const QChain& q);

/// Classifies every transition of the Q chain (split = false) or the split
/// chain (split = true) against the transition tables and reports the worst
/// probability deviation, row count mismatches, unclassified transitions and
/// self-loop deviation.  wj_shift perturbs w_J in the table model only.
struct TableInput {
  const MarkovChain* chain = nullptr;
  const std::vector<DensifiedFace>* faces = nullptr;
  const std::vector<int>* edges = nullptr;  // assigned edge per state; split chain only
};
BoundReport check_transition_table(const DensifiedComplex& dc, int k, const TableInput& input, bool split,
                                   double wj_shift, double tolerance);

/// Relabeling t_ij (u_i -> u_j, v_i -> v_j, edges in stored order) as a
/// permutation: perm[a] is the position in block j of the image of position a
/// of block i.
std::vector<int> restriction_relabeling(const DensifiedComplex& dc, const SplitChain& split,
                                        const std::vector<std::vector<int>>& partition, int i, int j);

/// Lazy walk on {0,1}^(k+1): stay with probability `stay`, otherwise flip a
/// uniform coordinate.
MarkovChain hypercube_walk(int dim, double stay);

/// Star chain on the center plus T satellites: center loop weight w_C,
/// satellite edges w_S, satellites return or stay with probability 1/2.
MarkovChain star_chain(int t, double w_s, double w_c);

/// Every quantity of the walk pipeline for one (G, B, k), computed lazily and cached.
class WalkAnalysis {
 public:
  WalkAnalysis(DensifiedComplex dc, int k, Tolerances tol = {});

  const DensifiedComplex& densified() const { return dc_; }
  int k() const { return k_; }
  const Tolerances& tolerances() const { return tol_; }
  DensifierWeights weights() const;  // reduced form

  const QChain& q() const;
  const SplitChain& split() const;
  const SpectralSummary& q_spectrum() const;
  const SpectralSummary& split_spectrum() const;
  const SpectralSummary& graph_spectrum() const;
  /// Partition of the split states by assigned edge.
  const Decomposition& outer() const;
  /// Inner decomposition of the first outer restriction, by base face.
  const Decomposition& inner() const;

  double gap2_graph() const { return graph_spectrum().two_sided_gap; }
  /// (T w_I + w_J) / ((2^k - 1) T w_I + w_J).
  double outer_ratio() const;
  /// Gap_2(G) / (64 T^2 (k+1)^2 (s-k) (2^k-1)).
  double theorem_rhs() const;
  /// First t with worst-case || P^t(x, .) - pi ||_1 <= eps, or empty past t_cap.
  std::optional<int> worst_case_crossing(double eps, int t_cap) const;

  BoundReport tables(double wj_shift = 0.0) const;
  BoundReport stationary_forms() const;
  BoundReport spectra() const;
  BoundReport outer_projection() const;
  BoundReport outer_restrictions() const;
  BoundReport inner_chains() const;
  BoundReport jerrum() const;
  BoundReport mixing_theorem() const;
  BoundReport mixing(double eps, int t_cap) const;
  /// Every section; wj_shift perturbs the transition-table model (negative control).
  BoundReport full(double eps, int t_cap, double wj_shift = 0.0) const;

 private:
  DensifiedComplex dc_;
  int k_;
  Tolerances tol_;
  mutable std::optional<QChain> q_;
  mutable std::optional<SplitChain> split_;
  mutable std::optional<SpectralSummary> q_spec_;
  mutable std::optional<SpectralSummary> split_spec_;
  mutable std::optional<SpectralSummary> g_spec_;
  mutable std::optional<Decomposition> outer_;
  mutable std::optional<Decomposition> inner_;
};

/// Non-lazy hypercube spectrum {1 - 2i/dim} and gap 2/dim for dim = k + 1.
BoundReport hypercube_checks(int k, double tolerance);

/// Global and local expansion of LocalDensifier(G, B) against B and G: tensor
/// structure of the 1-skeleton, the min{...} bound, star-chain spectra and
/// link spectra.
BoundReport verify_local_expansion(const DensifiedComplex& dc, double tolerance);

}  // namespace hdxlab
