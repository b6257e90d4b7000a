#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "hdxlab/graph.hpp"
#include "hdxlab/spectral.hpp"

namespace hdxlab {

/// Sorted vertex tuple; a k-face has k + 1 entries.
using Face = std::vector<int>;

/// Downward-closed face collection with a weight per face.  Faces of each
/// dimension are kept in lexicographic order, so face k, index i is stable.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Takes every nonempty face with its weight.  Throws kInvalidInput for
  /// unsorted / out-of-range / duplicate faces and kDownwardClosure when a
  /// subface is missing.  Weights are stored as given (no balancing).
  SimplicialComplex(int vertex_count, std::vector<std::vector<Face>> faces_by_dim,
                    std::vector<std::vector<double>> weights_by_dim);

  /// Downward closure of the listed maximal faces, weights propagated from
  /// `maximal_weights` (same order).
  static SimplicialComplex from_maximal_faces(int vertex_count, std::vector<Face> maximal,
                                              std::vector<double> maximal_weights);

  int vertex_count() const { return vertex_count_; }
  /// -1 when the complex holds only the empty face.
  int top_dim() const { return static_cast<int>(faces_.size()) - 1; }

  std::size_t face_count(int k) const;
  const std::vector<Face>& faces(int k) const;
  const std::vector<double>& weights(int k) const;

  std::optional<std::size_t> index_of(const Face& face) const;
  bool contains(const Face& face) const { return face.empty() || index_of(face).has_value(); }
  /// Weight of a face; the empty face weighs the sum of the vertex weights.
  /// Throws kMissingFace.
  double weight(const Face& face) const;
  double empty_weight() const;

  /// Indices of the (k+1)-faces containing face (k, i).
  std::vector<std::size_t> cofaces(int k, std::size_t i) const;
  /// cofaces() for every k-face at once.
  std::vector<std::vector<std::size_t>> coface_lists(int k) const;

  bool is_pure() const;
  bool is_degenerate() const;  // every weight is zero
  /// max over faces with at least one coface of |w(F) - sum of coface weights|.
  double balance_residual() const;

 private:
  int vertex_count_ = 0;
  std::vector<std::vector<Face>> faces_;
  std::vector<std::vector<double>> weights_;
  std::vector<std::map<Face, std::size_t>> index_;
};

/// Recomputes every non-maximal weight as the sum over its cofaces, bottom-up
/// from the supplied weights of the maximal faces.  Throws kIncompleteWeights
/// if a maximal face has no entry, kInvalidInput for a negative weight.
SimplicialComplex propagate_weights(const SimplicialComplex& c, const std::map<Face, double>& top_weights);

/// All subsets of {0..s-1} of size <= h + 1, top weights 1.  Throws kDimension
/// unless s >= h + 1.
SimplicialComplex complete_complex(int s, int h);

struct LinkView {
  Face base_face;
  std::vector<int> vertex_map;  // link vertex -> parent vertex
  SimplicialComplex complex;    // inherited weights w(S u T)
};

/// Throws kMissingFace when `s` is not a face.
LinkView link(const SimplicialComplex& c, const Face& s);

/// Vertices of c with edges weighted by the 1-faces.
WeightedGraph one_skeleton(const SimplicialComplex& c);

struct SkeletonSpectrum {
  SpectralSummary summary;
  bool connected = true;  // false if vertices were dropped or the graph splits
};

/// Spectrum of the 1-skeleton after dropping vertices that carry no edge
/// weight.  Empty when no edge survives.
std::optional<SkeletonSpectrum> skeleton_spectrum(const SimplicialComplex& c);

/// TwoSidedGap of the 1-skeleton.
double global_expansion(const SimplicialComplex& c);

struct LinkExpansion {
  Face face;
  int vertex_count = 0;
  double two_sided_gap = 0.0;
  bool connected = true;
};

struct LocalExpansionResult {
  std::optional<double> value;  // empty when no link has an edge
  Face worst_face;
  std::vector<LinkExpansion> links;
  std::size_t skipped = 0;  // links without edges
  bool any_disconnected = false;
};

/// Minimum TwoSidedGap over the links of all faces of dimension 0..H-1.
LocalExpansionResult local_expansion(const SimplicialComplex& c);

}  // namespace hdxlab
