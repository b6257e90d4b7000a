#include "hdxlab/densifier.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "hdxlab/error.hpp"

namespace hdxlab {

long binomial(int n, int r) {
  if (r < 0 || n < 0 || r > n) return 0;
  long out = 1;
  for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

int DensifiedFace::label_count(int label) const {
  return static_cast<int>(std::count(labels.begin(), labels.end(), label));
}

DensifierWeights reduced_weights(int t, int h, int k) {
  if (k < 0 || k >= h) throw Error(ErrorKind::kRange, "induced weights need 0 <= k < H");
  const double p = std::ldexp(1.0, h - k);
  return {p, t * p - (t - 1), t};
}

DensifierWeights binomial_weights(int s, int t, int h, int k) {
  auto w = reduced_weights(t, h, k);
  const double c = static_cast<double>(binomial(s, h - k));
  w.w_i *= c;
  w.w_j *= c;
  return w;
}

DensifierWeights propagated_weights(int s, int t, int h, int k) {
  auto w = reduced_weights(t, h, k);
  // Top faces through a k-face, times the (H-k)! orders of reaching it.
  double c = static_cast<double>(binomial(s - k - 1, h - k));
  for (int i = 2; i <= h - k; ++i) c *= i;
  w.w_i *= c;
  w.w_j *= c;
  return w;
}

double face_weight(const DensifiedFace& face, int s, int t, int h, WeightForm form) {
  const int k = static_cast<int>(face.base.size()) - 1;
  if (k == h) return 1.0;
  DensifierWeights w;
  switch (form) {
    case WeightForm::kReduced: w = reduced_weights(t, h, k); break;
    case WeightForm::kBinomial: w = binomial_weights(s, t, h, k); break;
    case WeightForm::kPropagated: w = propagated_weights(s, t, h, k); break;
  }
  return face.offset == 0 ? w.w_j : w.w_i;
}

LinkCaseWeights link_case_weights(int t, int h, int k) {
  if (k < -1 || k > h - 2) {
    std::ostringstream msg;
    msg << "link case weights need -1 <= k <= H - 2 (k = " << k << ", H = " << h << ")";
    throw Error(ErrorKind::kRange, msg.str());
  }
  const double p = std::ldexp(1.0, h - (k + 2));
  return {p, 1.0 + t * (p - 1.0)};
}

DensifiedComplex::DensifiedComplex(WeightedGraph g, SimplicialComplex b, SimplicialComplex q)
    : g_(std::move(g)), b_(std::move(b)), q_(std::move(q)) {
  t_ = g_.regular_degree().value_or(0);
  s_ = b_.vertex_count();
}

DensifiedFace DensifiedComplex::describe(const Face& face) const {
  DensifiedFace out;
  std::vector<std::pair<int, int>> pairs;
  for (int id : face) pairs.emplace_back(id % s_, id / s_);
  std::sort(pairs.begin(), pairs.end());
  for (const auto& [b, v] : pairs) {
    out.base.push_back(b);
    out.labels.push_back(v);
  }
  std::set<int> image(out.labels.begin(), out.labels.end());
  out.color.assign(image.begin(), image.end());
  if (out.color.size() == 2) {
    out.offset = std::min(out.label_count(out.color[0]), out.label_count(out.color[1]));
  }
  return out;
}

std::vector<DensifiedFace> DensifiedComplex::k_faces(int k) const {
  std::vector<DensifiedFace> out;
  for (const Face& f : q_.faces(k)) out.push_back(describe(f));
  return out;
}

DensifiedComplex local_densifier(const WeightedGraph& g, const SimplicialComplex& b) {
  if (!g.is_simple_unit()) {
    throw Error(ErrorKind::kUnsupportedInput, "base graph must be undirected, simple and unweighted");
  }
  if (!g.regular_degree()) throw Error(ErrorKind::kRegularity, "base graph must be regular");
  if (!g.is_connected()) throw Error(ErrorKind::kPrecondition, "base graph must be connected");
  if (g.triangle_count() != 0) throw Error(ErrorKind::kPrecondition, "base graph must be triangle-free");
  if (b.top_dim() < 0 || !b.is_pure()) throw Error(ErrorKind::kPurity, "base complex must be pure");

  const int h = b.top_dim();
  const int s = b.vertex_count();
  std::vector<Face> top;
  auto add = [&](const Face& base, int mask, int u, int v) {
    Face f;
    for (int i = 0; i <= h; ++i) f.push_back(((mask >> i) & 1 ? v : u) * s + base[i]);
    std::sort(f.begin(), f.end());
    top.push_back(std::move(f));
  };
  const int full = (1 << (h + 1)) - 1;
  for (const Face& base : b.faces(h)) {
    // Constant labelings belong to the vertex, not to either incident edge.
    for (int v = 0; v < g.vertex_count(); ++v) add(base, 0, v, v);
    for (const auto& e : g.edges()) {
      for (int mask = 1; mask < full; ++mask) add(base, mask, e.u, e.v);
    }
  }
  std::vector<double> ones(top.size(), 1.0);
  auto q = SimplicialComplex::from_maximal_faces(g.vertex_count() * s, std::move(top), std::move(ones));
  return DensifiedComplex(g, b, std::move(q));
}

double closed_form_face_count(int n, long edges, int s, int k) {
  const double faces = static_cast<double>(binomial(s, k + 1));
  return n * faces + static_cast<double>(edges) * faces * (std::ldexp(1.0, k + 1) - 2.0);
}

}  // namespace hdxlab
