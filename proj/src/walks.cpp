#include "hdxlab/walks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "hdxlab/error.hpp"

namespace hdxlab {

std::string face_label(const Face& face) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < face.size(); ++i) out << (i ? "," : "") << face[i];
  out << '}';
  return out.str();
}

namespace {

void require_balanced(const SimplicialComplex& c, double tol) {
  double scale = 1.0;
  for (int k = 0; k <= c.top_dim(); ++k) {
    for (double w : c.weights(k)) scale = std::max(scale, w);
  }
  const double residual = c.balance_residual();
  if (residual > tol * scale) {
    std::ostringstream msg;
    msg << "weights are not balanced (residual " << residual << ")";
    throw Error(ErrorKind::kBalance, msg.str());
  }
}

void require_positive(const SimplicialComplex& c, int k) {
  for (std::size_t i = 0; i < c.face_count(k); ++i) {
    if (!(c.weights(k)[i] > 0.0)) {
      throw Error(ErrorKind::kInvalidInput, "face " + face_label(c.faces(k)[i]) + " has zero weight");
    }
  }
}

std::vector<std::string> face_labels(const SimplicialComplex& c, int k) {
  std::vector<std::string> out;
  for (const Face& f : c.faces(k)) out.push_back(face_label(f));
  return out;
}

Eigen::MatrixXd down_up_matrix(const SimplicialComplex& c, int k, double balance_tol) {
  if (k < 0 || k > c.top_dim()) {
    throw Error(ErrorKind::kRange, "down-up walk needs 0 <= k <= H");
  }
  require_balanced(c, balance_tol);
  require_positive(c, k);
  const auto& faces = c.faces(k);
  const auto& w = c.weights(k);
  const auto n = static_cast<Eigen::Index>(faces.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);

  std::vector<std::vector<std::size_t>> up;
  if (k == 0) {
    std::vector<std::size_t> all(faces.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    up.push_back(std::move(all));
  } else {
    up = c.coface_lists(k - 1);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int x = 0; x <= k; ++x) {
      std::size_t g = 0;
      double wg = c.empty_weight();
      if (k > 0) {
        Face sub = faces[i];
        sub.erase(sub.begin() + x);
        g = *c.index_of(sub);
        wg = c.weights(k - 1)[g];
      }
      for (std::size_t j : up[g]) p(i, j) += w[j] / wg / (k + 1);
    }
  }
  return p;
}

Eigen::MatrixXd up_down_matrix(const SimplicialComplex& c, int k, double balance_tol) {
  if (k < 0 || k >= c.top_dim()) {
    throw Error(ErrorKind::kRange, "up-down walk needs 0 <= k < H");
  }
  require_balanced(c, balance_tol);
  require_positive(c, k);
  const auto& faces = c.faces(k);
  const auto& w = c.weights(k);
  const auto& top = c.faces(k + 1);
  const auto& wt = c.weights(k + 1);
  const auto n = static_cast<Eigen::Index>(faces.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  const auto up = c.coface_lists(k);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (std::size_t j : up[i]) {
      for (int y = 0; y <= k + 1; ++y) {
        Face sub = top[j];
        sub.erase(sub.begin() + y);
        p(i, *c.index_of(sub)) += wt[j] / w[i] / (k + 2);
      }
    }
  }
  return p;
}

std::map<std::pair<int, int>, int> edge_index(const WeightedGraph& g) {
  std::map<std::pair<int, int>, int> out;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const auto& e = g.edges()[i];
    out[{std::min(e.u, e.v), std::max(e.u, e.v)}] = static_cast<int>(i);
  }
  return out;
}

std::string q_state_label(const DensifiedFace& f) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < f.base.size(); ++i) out << (i ? "," : "") << f.base[i] << ':' << f.labels[i];
  out << '}';
  return out.str();
}

}  // namespace

MarkovChain down_up_chain(const SimplicialComplex& c, int k, double balance_tol) {
  auto p = down_up_matrix(c, k, balance_tol);
  return MarkovChain(face_labels(c, k), std::move(p), 1e-10);
}

MarkovChain up_down_chain(const SimplicialComplex& c, int k, double balance_tol) {
  auto p = up_down_matrix(c, k, balance_tol);
  return MarkovChain(face_labels(c, k), std::move(p), 1e-10);
}

QChain q_down_up(const DensifiedComplex& dc, int k) {
  if (k < 1 || k >= dc.top_dim()) {
    std::ostringstream msg;
    msg << "walk level k = " << k << " must satisfy 1 <= k < H = " << dc.top_dim();
    throw Error(ErrorKind::kRange, msg.str());
  }
  QChain out;
  out.faces = dc.k_faces(k);
  std::vector<std::string> names;
  for (const auto& f : out.faces) names.push_back(q_state_label(f));
  out.chain = MarkovChain(std::move(names), down_up_matrix(dc.complex(), k, 1e-12), 1e-10);
  return out;
}

SplitChain split_chain(const DensifiedComplex& dc, const QChain& q) {
  const auto& g = dc.graph();
  if (g.triangle_count() != 0) {
    throw Error(ErrorKind::kPrecondition, "split chain needs a triangle-free base graph");
  }
  const int t = dc.degree();
  const auto edges = edge_index(g);
  const auto adj = g.adjacency_lists();

  SplitChain out;
  std::vector<std::vector<int>> copies(q.faces.size());
  std::vector<std::string> names;
  for (std::size_t i = 0; i < q.faces.size(); ++i) {
    const auto& f = q.faces[i];
    std::vector<int> assigned;
    if (f.offset == 0) {
      const int u = f.color[0];
      for (int w : adj[u]) assigned.push_back(edges.at({std::min(u, w), std::max(u, w)}));
    } else {
      assigned.push_back(edges.at({f.color[0], f.color[1]}));
    }
    for (int e : assigned) {
      copies[i].push_back(static_cast<int>(out.states.size()));
      out.states.push_back({i, e});
      out.faces.push_back(f);
      const auto& edge = g.edges()[e];
      names.push_back(q.chain.states()[i] + "@" + std::to_string(edge.u) + "-" + std::to_string(edge.v));
    }
  }

  const auto n = static_cast<Eigen::Index>(out.states.size());
  const auto& p = q.chain.p();
  Eigen::MatrixXd ps = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const std::size_t fa = out.states[a].face;
    for (std::size_t fb = 0; fb < q.faces.size(); ++fb) {
      const double v = p(fa, fb);
      if (v == 0.0) continue;
      const double share = q.faces[fb].offset == 0 ? v / t : v;
      for (int b : copies[fb]) ps(a, b) = share;
    }
  }
  out.chain = MarkovChain(std::move(names), std::move(ps), 1e-10);
  return out;
}

namespace {

enum Side { kAny = 0, kMinority = 1, kMajority = 2 };
enum EdgeFlag { kEdgeNo = 0, kEdgeYes = 1, kEdgeNa = 2 };

struct TableRow {
  Side side;
  int target;
  bool same_k;
  EdgeFlag edge;
  double probability;
  long count;
  bool self;
};

// Rows of the transition table for one source offset and one deletion side.
std::vector<TableRow> table_rows(int t, Side side, int k, int s, const DensifierWeights& w, bool split) {
  const double d = w.d();
  const double tt = w.t;
  const double base = 1.0 / ((k + 1.0) * (s - k));
  const double half = base / 2.0;
  const long out = s - (k + 1);
  const long kk = k + 1;
  std::vector<TableRow> rows;
  auto add = [&](int target, bool same_k, EdgeFlag edge, double p, long count, bool self = false) {
    rows.push_back({side, target, same_k, edge, p, count, self});
  };
  if (t == 0) {
    if (!split) {
      add(0, true, kEdgeNa, w.w_j / ((s - k) * d), 1, true);
      add(0, false, kEdgeNa, base * w.w_j / d, out * kk);
      add(1, true, kEdgeNa, base * w.w_i / d, kk * w.t);
      add(1, false, kEdgeNa, base * w.w_i / d, kk * w.t * out);
    } else {
      add(0, true, kEdgeYes, w.w_j / ((s - k) * d * tt), 1, true);
      add(0, true, kEdgeNo, w.w_j / ((s - k) * d * tt), w.t - 1);
      add(0, false, kEdgeYes, base * w.w_j / (d * tt), out * kk);
      add(0, false, kEdgeNo, base * w.w_j / (d * tt), (w.t - 1) * out * kk);
      add(1, true, kEdgeYes, base * w.w_i / d, kk);
      add(1, true, kEdgeNo, base * w.w_i / d, kk * (w.t - 1));
      add(1, false, kEdgeYes, base * w.w_i / d, kk * out);
      add(1, false, kEdgeNo, base * w.w_i / d, kk * (w.t - 1) * out);
    }
    return rows;
  }
  if (t == 1 && side == kMinority) {
    if (!split) {
      add(0, true, kEdgeNa, base * w.w_j / d, 1);
      add(0, false, kEdgeNa, base * w.w_j / d, out);
    } else {
      add(0, true, kEdgeYes, base * w.w_j / (d * tt), 1);
      add(0, true, kEdgeNo, base * w.w_j / (d * tt), w.t - 1);
      add(0, false, kEdgeYes, base * w.w_j / (d * tt), out);
      add(0, false, kEdgeNo, base * w.w_j / (d * tt), out * (w.t - 1));
    }
    add(1, true, kEdgeYes, base * w.w_i / d, 1, true);
    add(1, false, kEdgeYes, base * w.w_i / d, out);
    add(1, true, kEdgeNo, base * w.w_i / d, w.t - 1);
    add(1, false, kEdgeNo, base * w.w_i / d, (w.t - 1) * out);
    return rows;
  }
  if (t == 1) {
    add(1, true, kEdgeYes, k * half, 1, true);
    add(1, false, kEdgeYes, half, out * k);
    add(2, true, kEdgeYes, half, k);
    add(2, false, kEdgeYes, half, k * out);
    return rows;
  }
  if (side == kMinority) {
    add(t, true, kEdgeYes, t * half, 1, true);
    add(t, false, kEdgeYes, half, t * out);
    add(t - 1, true, kEdgeYes, half, t);
    add(t - 1, false, kEdgeYes, half, t * out);
  } else {
    const long rest = k + 1 - t;
    add(t, true, kEdgeYes, rest * half, 1, true);
    add(t, false, kEdgeYes, half, rest * out);
    add(t + 1, true, kEdgeYes, half, rest);
    add(t + 1, false, kEdgeYes, half, rest * out);
  }
  return rows;
}

struct Group {
  Side side;
  int m;  // reference label, -1 for constant sources
};

std::vector<Group> groups_of(const DensifiedFace& f) {
  if (f.offset == 0) return {{kAny, -1}};
  const int a = f.color[0];
  const int b = f.color[1];
  const int ca = f.label_count(a);
  const int cb = f.label_count(b);
  if (ca == cb) return {{kMinority, a}, {kMinority, b}};
  const int minority = ca < cb ? a : b;
  return {{kMinority, minority}, {kMajority, minority}};
}

}  // namespace

BoundReport check_transition_table(const DensifiedComplex& dc, int k, const TableInput& input, bool split,
                                   double wj_shift, double tolerance) {
  if (!input.chain || !input.faces || (split && !input.edges)) {
    throw Error(ErrorKind::kInvalidInput, "table check needs the chain, its faces and (split) its edges");
  }
  const auto& p = input.chain->p();
  const auto& faces = *input.faces;
  const int s = dc.base_vertices();
  DensifierWeights w = reduced_weights(dc.degree(), dc.top_dim(), k);
  w.w_j += wj_shift;

  double worst_probability = 0.0;
  double worst_self = 0.0;
  long count_mismatches = 0;
  long unclassified = 0;
  long transitions = 0;
  using Key = std::tuple<int, int, int, bool, int>;  // side, m, target, same_k, edge

  for (Eigen::Index a = 0; a < p.rows(); ++a) {
    const auto& src = faces[a];
    const auto groups = groups_of(src);
    std::map<std::pair<int, int>, std::vector<TableRow>> expected;
    double self_expected = 0.0;
    for (const auto& grp : groups) {
      auto rows = table_rows(src.offset, grp.side, k, s, w, split);
      for (const auto& r : rows) {
        if (r.self) self_expected += r.probability;
      }
      expected[{grp.side, grp.m}] = std::move(rows);
    }
    worst_self = std::max(worst_self, std::abs(p(a, a) - self_expected));

    std::map<Key, long> tally;
    for (Eigen::Index b = 0; b < p.cols(); ++b) {
      if (b == a || p(a, b) == 0.0) continue;
      ++transitions;
      const auto& dst = faces[b];
      Side side = kAny;
      int m = -1;
      int target = 0;
      bool same_k = true;
      bool found_pair = true;

      if (src.base == dst.base && src.labels == dst.labels) {
        // Another copy of the same constant face.
        if (!split || src.offset != 0) found_pair = false;
      } else {
        std::vector<std::pair<int, int>> gone, added;
        std::vector<std::pair<int, int>> ps, pd;
        for (std::size_t i = 0; i < src.base.size(); ++i) ps.emplace_back(src.base[i], src.labels[i]);
        for (std::size_t i = 0; i < dst.base.size(); ++i) pd.emplace_back(dst.base[i], dst.labels[i]);
        std::set_difference(ps.begin(), ps.end(), pd.begin(), pd.end(), std::back_inserter(gone));
        std::set_difference(pd.begin(), pd.end(), ps.begin(), ps.end(), std::back_inserter(added));
        if (gone.size() != 1 || added.size() != 1) {
          found_pair = false;
        } else {
          same_k = gone[0].first == added[0].first;
          if (src.offset == 0) {
            target = dst.offset;
          } else {
            const int label = gone[0].second;
            const int other = label == src.color[0] ? src.color[1] : src.color[0];
            if (src.label_count(label) <= src.label_count(other)) {
              side = kMinority;
              m = label;
            } else {
              side = kMajority;
              m = other;
            }
            if (dst.offset == 0) {
              target = 0;
            } else if (dst.color == src.color) {
              target = dst.label_count(m);
            } else {
              target = dst.offset;
            }
          }
        }
      }
      EdgeFlag edge;
      if (split) {
        edge = (*input.edges)[a] == (*input.edges)[b] ? kEdgeYes : kEdgeNo;
      } else if (src.offset == 0 || dst.offset == 0) {
        edge = kEdgeNa;
      } else {
        edge = src.color == dst.color ? kEdgeYes : kEdgeNo;
      }

      const TableRow* row = nullptr;
      if (found_pair) {
        auto it = expected.find({side, m});
        if (it != expected.end()) {
          for (const auto& r : it->second) {
            if (!r.self && r.target == target && r.same_k == same_k && r.edge == edge) row = &r;
          }
        }
      }
      if (!row) {
        ++unclassified;
        continue;
      }
      ++tally[{side, m, target, same_k, edge}];
      worst_probability = std::max(worst_probability, std::abs(p(a, b) - row->probability));
    }
    for (const auto& [key, rows] : expected) {
      for (const auto& r : rows) {
        if (r.self) continue;
        auto it = tally.find({key.first, key.second, r.target, r.same_k, r.edge});
        const long seen = it == tally.end() ? 0 : it->second;
        if (seen != r.count) ++count_mismatches;
      }
    }
  }

  const std::string prefix = split ? "tab:split" : "tab:down-up";
  const std::string what = split ? "split chain" : "down-up chain on Q";
  BoundReport report;
  report.add(make_entry(prefix + ".probability", "largest |P - table| over " + std::to_string(transitions) +
                                                     " transitions of the " + what,
                        worst_probability, Relation::kLessEqual, 0.0, tolerance));
  report.add(make_entry(prefix + ".self-loop", "largest |P(x,x) - sum of self rows| in the " + what,
                        worst_self, Relation::kLessEqual, 0.0, tolerance));
  report.add(make_entry(prefix + ".counts", "(source, row) pairs whose neighbor count differs from the table",
                        static_cast<double>(count_mismatches), Relation::kLessEqual, 0.0, 0.0));
  report.add(make_entry(prefix + ".classified", "transitions matching no table row",
                        static_cast<double>(unclassified), Relation::kLessEqual, 0.0, 0.0));
  return report;
}

std::vector<int> restriction_relabeling(const DensifiedComplex& dc, const SplitChain& split,
                                        const std::vector<std::vector<int>>& partition, int i, int j) {
  const auto& edges = dc.graph().edges();
  const auto& ei = edges.at(i);
  const auto& ej = edges.at(j);
  std::vector<int> perm;
  for (int st : partition.at(i)) {
    const auto& f = split.faces[st];
    Face moved = f.labels;
    for (int& v : moved) v = v == ei.u ? ej.u : ej.v;
    int found = -1;
    for (std::size_t pos = 0; pos < partition.at(j).size(); ++pos) {
      const int cand = partition[j][pos];
      if (split.faces[cand].base == f.base && split.faces[cand].labels == moved) {
        found = static_cast<int>(pos);
        break;
      }
    }
    if (found < 0) throw Error(ErrorKind::kInvalidInput, "restriction relabeling left block " + std::to_string(j));
    perm.push_back(found);
  }
  return perm;
}

MarkovChain hypercube_walk(int dim, double stay) {
  if (dim < 1 || dim > 20) throw Error(ErrorKind::kRange, "hypercube dimension out of range");
  const Eigen::Index n = Eigen::Index(1) << dim;
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  std::vector<std::string> names;
  for (Eigen::Index x = 0; x < n; ++x) {
    std::string bits;
    for (int i = 0; i < dim; ++i) bits.push_back(((x >> i) & 1) ? '1' : '0');
    names.push_back(bits);
    p(x, x) = stay;
    for (int i = 0; i < dim; ++i) p(x, x ^ (Eigen::Index(1) << i)) += (1.0 - stay) / dim;
  }
  return MarkovChain(std::move(names), std::move(p), 1e-12);
}

MarkovChain star_chain(int t, double w_s, double w_c) {
  const double total = w_c + t * w_s;
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(t + 1, t + 1);
  std::vector<std::string> names{"center"};
  p(0, 0) = w_c / total;
  for (int i = 1; i <= t; ++i) {
    names.push_back("satellite" + std::to_string(i));
    p(0, i) = w_s / total;
    p(i, i) = 0.5;
    p(i, 0) = 0.5;
  }
  return MarkovChain(std::move(names), std::move(p), 1e-12);
}

}  // namespace hdxlab
