#include "hdxlab/simplicial.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "hdxlab/error.hpp"

namespace hdxlab {

namespace {

std::string face_string(const Face& f) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << f[i];
  out << "}";
  return out.str();
}

Face drop(const Face& f, std::size_t pos) {
  Face out;
  out.reserve(f.size() - 1);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i != pos) out.push_back(f[i]);
  }
  return out;
}

}  // namespace

SimplicialComplex::SimplicialComplex(int vertex_count, std::vector<std::vector<Face>> faces_by_dim,
                                     std::vector<std::vector<double>> weights_by_dim)
    : vertex_count_(vertex_count), faces_(std::move(faces_by_dim)), weights_(std::move(weights_by_dim)) {
  if (vertex_count_ < 0) throw Error(ErrorKind::kInvalidInput, "negative vertex count");
  if (weights_.size() != faces_.size()) {
    throw Error(ErrorKind::kIncompleteWeights, "one weight list per dimension required");
  }
  // Trailing empty dimensions carry no information.
  while (!faces_.empty() && faces_.back().empty()) {
    faces_.pop_back();
    weights_.pop_back();
  }
  index_.resize(faces_.size());
  for (std::size_t k = 0; k < faces_.size(); ++k) {
    if (weights_[k].size() != faces_[k].size()) {
      throw Error(ErrorKind::kIncompleteWeights, "weight count differs from face count");
    }
    // Sort faces and weights together.
    std::vector<std::size_t> order(faces_[k].size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return faces_[k][a] < faces_[k][b]; });
    std::vector<Face> faces;
    std::vector<double> weights;
    for (std::size_t i : order) {
      faces.push_back(std::move(faces_[k][i]));
      weights.push_back(weights_[k][i]);
    }
    faces_[k] = std::move(faces);
    weights_[k] = std::move(weights);
    for (std::size_t i = 0; i < faces_[k].size(); ++i) {
      const Face& f = faces_[k][i];
      if (f.size() != k + 1) throw Error(ErrorKind::kInvalidInput, "face " + face_string(f) + " in wrong dimension");
      for (std::size_t j = 0; j < f.size(); ++j) {
        if (f[j] < 0 || f[j] >= vertex_count_) {
          throw Error(ErrorKind::kInvalidInput, "face " + face_string(f) + " has an out-of-range vertex");
        }
        if (j > 0 && f[j - 1] >= f[j]) {
          throw Error(ErrorKind::kInvalidInput, "face " + face_string(f) + " is not strictly sorted");
        }
      }
      if (!std::isfinite(weights_[k][i]) || weights_[k][i] < 0.0) {
        throw Error(ErrorKind::kInvalidInput, "face " + face_string(f) + " has a negative weight");
      }
      if (!index_[k].emplace(f, i).second) {
        throw Error(ErrorKind::kInvalidInput, "duplicate face " + face_string(f));
      }
    }
  }
  for (std::size_t k = 1; k < faces_.size(); ++k) {
    for (const Face& f : faces_[k]) {
      for (std::size_t pos = 0; pos < f.size(); ++pos) {
        if (!index_[k - 1].count(drop(f, pos))) {
          throw Error(ErrorKind::kDownwardClosure,
                      "subface " + face_string(drop(f, pos)) + " of " + face_string(f) + " is missing");
        }
      }
    }
  }
}

SimplicialComplex SimplicialComplex::from_maximal_faces(int vertex_count, std::vector<Face> maximal,
                                                        std::vector<double> maximal_weights) {
  if (maximal.size() != maximal_weights.size()) {
    throw Error(ErrorKind::kIncompleteWeights, "one weight per maximal face required");
  }
  std::vector<std::set<Face>> levels;
  for (auto& f : maximal) {
    std::sort(f.begin(), f.end());
    if (f.empty()) continue;
    if (levels.size() < f.size()) levels.resize(f.size());
    levels[f.size() - 1].insert(f);
  }
  for (std::size_t k = levels.size(); k-- > 1;) {
    for (const Face& f : levels[k]) {
      for (std::size_t pos = 0; pos < f.size(); ++pos) levels[k - 1].insert(drop(f, pos));
    }
  }
  std::vector<std::vector<Face>> faces(levels.size());
  std::vector<std::vector<double>> zeros(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) {
    faces[k].assign(levels[k].begin(), levels[k].end());
    zeros[k].assign(faces[k].size(), 0.0);
  }
  SimplicialComplex closure(vertex_count, std::move(faces), std::move(zeros));
  std::map<Face, double> top;
  for (std::size_t i = 0; i < maximal.size(); ++i) {
    if (maximal[i].empty()) continue;
    const int k = static_cast<int>(maximal[i].size()) - 1;
    if (k < closure.top_dim() && !closure.cofaces(k, *closure.index_of(maximal[i])).empty()) {
      throw Error(ErrorKind::kInvalidInput, "face " + face_string(maximal[i]) + " is not maximal");
    }
    top[maximal[i]] = maximal_weights[i];
  }
  return propagate_weights(closure, top);
}

std::size_t SimplicialComplex::face_count(int k) const {
  if (k < 0 || k > top_dim()) return 0;
  return faces_[k].size();
}

const std::vector<Face>& SimplicialComplex::faces(int k) const {
  if (k < 0 || k > top_dim()) throw Error(ErrorKind::kRange, "no faces of dimension " + std::to_string(k));
  return faces_[k];
}

const std::vector<double>& SimplicialComplex::weights(int k) const {
  if (k < 0 || k > top_dim()) throw Error(ErrorKind::kRange, "no faces of dimension " + std::to_string(k));
  return weights_[k];
}

std::optional<std::size_t> SimplicialComplex::index_of(const Face& face) const {
  const int k = static_cast<int>(face.size()) - 1;
  if (k < 0 || k > top_dim()) return std::nullopt;
  auto it = index_[k].find(face);
  if (it == index_[k].end()) return std::nullopt;
  return it->second;
}

double SimplicialComplex::weight(const Face& face) const {
  if (face.empty()) return empty_weight();
  const auto i = index_of(face);
  if (!i) throw Error(ErrorKind::kMissingFace, "face " + face_string(face) + " not in complex");
  return weights_[face.size() - 1][*i];
}

double SimplicialComplex::empty_weight() const {
  double total = 0.0;
  if (!weights_.empty()) {
    for (double w : weights_[0]) total += w;
  }
  return total;
}

std::vector<std::size_t> SimplicialComplex::cofaces(int k, std::size_t i) const {
  std::vector<std::size_t> out;
  if (k + 1 > top_dim()) return out;
  const Face& f = faces_[k][i];
  // Candidates: insert each vertex not already present.
  Face g(f.size() + 1);
  for (int v = 0; v < vertex_count_; ++v) {
    if (std::binary_search(f.begin(), f.end(), v)) continue;
    auto pos = std::lower_bound(f.begin(), f.end(), v);
    std::copy(f.begin(), pos, g.begin());
    g[pos - f.begin()] = v;
    std::copy(pos, f.end(), g.begin() + (pos - f.begin()) + 1);
    auto it = index_[k + 1].find(g);
    if (it != index_[k + 1].end()) out.push_back(it->second);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::size_t>> SimplicialComplex::coface_lists(int k) const {
  std::vector<std::vector<std::size_t>> out(face_count(k));
  if (k + 1 > top_dim() || k < 0) return out;
  for (std::size_t j = 0; j < faces_[k + 1].size(); ++j) {
    const Face& g = faces_[k + 1][j];
    for (std::size_t pos = 0; pos < g.size(); ++pos) {
      out[index_[k].at(drop(g, pos))].push_back(j);
    }
  }
  for (auto& list : out) std::sort(list.begin(), list.end());
  return out;
}

bool SimplicialComplex::is_pure() const {
  for (int k = 0; k < top_dim(); ++k) {
    const auto lists = coface_lists(k);
    for (const auto& list : lists) {
      if (list.empty()) return false;
    }
  }
  return true;
}

bool SimplicialComplex::is_degenerate() const {
  for (const auto& level : weights_) {
    for (double w : level) {
      if (w != 0.0) return false;
    }
  }
  return true;
}

double SimplicialComplex::balance_residual() const {
  double worst = 0.0;
  for (int k = 0; k < top_dim(); ++k) {
    const auto lists = coface_lists(k);
    for (std::size_t i = 0; i < lists.size(); ++i) {
      if (lists[i].empty()) continue;
      double total = 0.0;
      for (std::size_t j : lists[i]) total += weights_[k + 1][j];
      worst = std::max(worst, std::abs(weights_[k][i] - total));
    }
  }
  return worst;
}

SimplicialComplex propagate_weights(const SimplicialComplex& c, const std::map<Face, double>& top_weights) {
  const int h = c.top_dim();
  std::vector<std::vector<Face>> faces(h + 1);
  std::vector<std::vector<double>> weights(h + 1);
  for (int k = h; k >= 0; --k) {
    faces[k] = c.faces(k);
    weights[k].assign(faces[k].size(), 0.0);
    const auto lists = c.coface_lists(k);
    for (std::size_t i = 0; i < faces[k].size(); ++i) {
      if (!lists[i].empty()) {
        for (std::size_t j : lists[i]) weights[k][i] += weights[k + 1][j];
        continue;
      }
      auto it = top_weights.find(faces[k][i]);
      if (it == top_weights.end()) {
        throw Error(ErrorKind::kIncompleteWeights, "no weight for maximal face " + face_string(faces[k][i]));
      }
      if (!std::isfinite(it->second) || it->second < 0.0) {
        throw Error(ErrorKind::kInvalidInput, "negative weight for " + face_string(faces[k][i]));
      }
      weights[k][i] = it->second;
    }
  }
  return SimplicialComplex(c.vertex_count(), std::move(faces), std::move(weights));
}

SimplicialComplex complete_complex(int s, int h) {
  if (h < 0 || s < h + 1) {
    throw Error(ErrorKind::kDimension, "complete complex needs s >= h + 1 (s = " + std::to_string(s) +
                                           ", h = " + std::to_string(h) + ")");
  }
  std::vector<Face> top;
  // Enumerate (h+1)-subsets in lexicographic order.
  Face f(h + 1);
  for (int i = 0; i <= h; ++i) f[i] = i;
  while (true) {
    top.push_back(f);
    int i = h;
    while (i >= 0 && f[i] == s - (h + 1) + i) --i;
    if (i < 0) break;
    ++f[i];
    for (int j = i + 1; j <= h; ++j) f[j] = f[j - 1] + 1;
  }
  std::vector<double> ones(top.size(), 1.0);
  return SimplicialComplex::from_maximal_faces(s, std::move(top), std::move(ones));
}

LinkView link(const SimplicialComplex& c, const Face& s) {
  if (!c.contains(s)) throw Error(ErrorKind::kMissingFace, "face " + face_string(s) + " not in complex");
  LinkView view;
  view.base_face = s;
  const int base_dim = static_cast<int>(s.size()) - 1;
  std::vector<std::vector<Face>> raw(std::max(0, c.top_dim() - base_dim));
  std::vector<std::vector<double>> weights(raw.size());
  std::set<int> used;
  for (int k = base_dim + 1; k <= c.top_dim(); ++k) {
    const auto& faces = c.faces(k);
    const auto& w = c.weights(k);
    for (std::size_t i = 0; i < faces.size(); ++i) {
      if (!std::includes(faces[i].begin(), faces[i].end(), s.begin(), s.end())) continue;
      Face rest;
      std::set_difference(faces[i].begin(), faces[i].end(), s.begin(), s.end(), std::back_inserter(rest));
      used.insert(rest.begin(), rest.end());
      raw[k - base_dim - 1].push_back(std::move(rest));
      weights[k - base_dim - 1].push_back(w[i]);
    }
  }
  view.vertex_map.assign(used.begin(), used.end());
  for (auto& level : raw) {
    for (auto& f : level) {
      for (int& v : f) {
        v = static_cast<int>(std::lower_bound(view.vertex_map.begin(), view.vertex_map.end(), v) -
                             view.vertex_map.begin());
      }
    }
  }
  view.complex = SimplicialComplex(static_cast<int>(view.vertex_map.size()), std::move(raw), std::move(weights));
  return view;
}

WeightedGraph one_skeleton(const SimplicialComplex& c) {
  std::vector<Edge> edges;
  if (c.top_dim() >= 1) {
    const auto& faces = c.faces(1);
    const auto& w = c.weights(1);
    for (std::size_t i = 0; i < faces.size(); ++i) edges.push_back({faces[i][0], faces[i][1], w[i]});
  }
  return WeightedGraph(c.vertex_count(), std::move(edges));
}

std::optional<SkeletonSpectrum> skeleton_spectrum(const SimplicialComplex& c) {
  const WeightedGraph g = one_skeleton(c);
  const auto out = g.out_weights();
  std::vector<int> keep_id(g.vertex_count(), -1);
  int kept = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (out[v] > 0.0) keep_id[v] = kept++;
  }
  if (kept == 0) return std::nullopt;
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (e.weight > 0.0) edges.push_back({keep_id[e.u], keep_id[e.v], e.weight});
  }
  WeightedGraph reduced(kept, std::move(edges));
  SkeletonSpectrum result;
  result.summary = spectrum(reduced);
  result.connected = kept == g.vertex_count() && reduced.is_connected();
  return result;
}

double global_expansion(const SimplicialComplex& c) { return spectrum(one_skeleton(c)).two_sided_gap; }

LocalExpansionResult local_expansion(const SimplicialComplex& c) {
  LocalExpansionResult result;
  for (int k = 0; k <= c.top_dim() - 1; ++k) {
    for (const Face& f : c.faces(k)) {
      const LinkView view = link(c, f);
      const auto spec = skeleton_spectrum(view.complex);
      if (!spec) {
        ++result.skipped;
        continue;
      }
      LinkExpansion entry;
      entry.face = f;
      entry.vertex_count = view.complex.vertex_count();
      entry.two_sided_gap = spec->summary.two_sided_gap;
      entry.connected = spec->connected;
      if (!entry.connected) result.any_disconnected = true;
      if (!result.value || entry.two_sided_gap < *result.value) {
        result.value = entry.two_sided_gap;
        result.worst_face = f;
      }
      result.links.push_back(std::move(entry));
    }
  }
  return result;
}

}  // namespace hdxlab
