#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "hdxlab/error.hpp"
#include "hdxlab/walks.hpp"

namespace hdxlab {

namespace {

double max_entry_deviation(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
  return a.rows() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

std::vector<double> off_diagonal_row(const Eigen::MatrixXd& p, Eigen::Index x) {
  std::vector<double> out;
  for (Eigen::Index y = 0; y < p.cols(); ++y) {
    if (y != x && p(x, y) > 0.0) out.push_back(p(x, y));
  }
  return out;
}

struct Profile {
  double self = 0.0;
  std::vector<std::pair<double, long>> neighbors;  // value, multiplicity

  std::vector<double> expanded() const {
    std::vector<double> out;
    for (const auto& [v, c] : neighbors) out.insert(out.end(), static_cast<std::size_t>(std::max(0L, c)), v);
    return out;
  }
};

bool bases_adjacent(const Face& a, const Face& b) {
  std::vector<int> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return common.size() + 1 == a.size();
}

double pow2(int e) { return std::ldexp(1.0, e); }

}  // namespace

WalkAnalysis::WalkAnalysis(DensifiedComplex dc, int k, Tolerances tol)
    : dc_(std::move(dc)), k_(k), tol_(tol) {
  if (k_ < 1 || k_ >= dc_.top_dim()) {
    throw Error(ErrorKind::kRange, "walk level must satisfy 1 <= k < H");
  }
}

DensifierWeights WalkAnalysis::weights() const { return reduced_weights(dc_.degree(), dc_.top_dim(), k_); }

const QChain& WalkAnalysis::q() const {
  if (!q_) q_ = q_down_up(dc_, k_);
  return *q_;
}

const SplitChain& WalkAnalysis::split() const {
  if (!split_) split_ = split_chain(dc_, q());
  return *split_;
}

const SpectralSummary& WalkAnalysis::q_spectrum() const {
  if (!q_spec_) q_spec_ = chain_spectrum(q().chain);
  return *q_spec_;
}

const SpectralSummary& WalkAnalysis::split_spectrum() const {
  if (!split_spec_) split_spec_ = chain_spectrum(split().chain);
  return *split_spec_;
}

const SpectralSummary& WalkAnalysis::graph_spectrum() const {
  if (!g_spec_) g_spec_ = spectrum(dc_.graph());
  return *g_spec_;
}

const Decomposition& WalkAnalysis::outer() const {
  if (!outer_) {
    std::vector<std::vector<int>> blocks(dc_.graph().edge_count());
    const auto& states = split().states;
    for (std::size_t i = 0; i < states.size(); ++i) blocks[states[i].edge].push_back(static_cast<int>(i));
    outer_ = decompose(split().chain, blocks);
  }
  return *outer_;
}

const Decomposition& WalkAnalysis::inner() const {
  if (!inner_) {
    const auto& members = outer().partition[0];
    std::map<Face, int> block_of;
    std::vector<std::vector<int>> blocks;
    for (std::size_t pos = 0; pos < members.size(); ++pos) {
      const Face& base = split().faces[members[pos]].base;
      auto [it, fresh] = block_of.emplace(base, static_cast<int>(blocks.size()));
      if (fresh) blocks.emplace_back();
      blocks[it->second].push_back(static_cast<int>(pos));
    }
    inner_ = decompose(outer().restrictions[0], blocks);
  }
  return *inner_;
}

double WalkAnalysis::outer_ratio() const {
  const auto w = weights();
  return (w.t * w.w_i + w.w_j) / ((pow2(k_) - 1.0) * w.t * w.w_i + w.w_j);
}

double WalkAnalysis::theorem_rhs() const {
  const double t = dc_.degree();
  const double s = dc_.base_vertices();
  return gap2_graph() / (64.0 * t * t * (k_ + 1.0) * (k_ + 1.0) * (s - k_) * (pow2(k_) - 1.0));
}

std::optional<int> WalkAnalysis::worst_case_crossing(double eps, int t_cap) const {
  const auto& chain = q().chain;
  const auto n = static_cast<Eigen::Index>(chain.size());
  const Eigen::RowVectorXd pi = chain.pi().transpose();
  if (n <= 1200) {
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
    for (int t = 0; t <= t_cap; ++t) {
      double worst = 0.0;
      for (Eigen::Index x = 0; x < n; ++x) worst = std::max(worst, (power.row(x) - pi).cwiseAbs().sum());
      if (worst <= eps) return t;
      power = power * chain.p();
    }
    return std::nullopt;
  }
  // Large chains: one point mass per (offset, base-face-independent) class.
  std::map<int, Eigen::Index> representative;
  for (Eigen::Index x = 0; x < n; ++x) representative.emplace(q().faces[x].offset, x);
  std::vector<Eigen::RowVectorXd> rows;
  for (const auto& [offset, x] : representative) rows.push_back(Eigen::RowVectorXd::Unit(n, x));
  for (int t = 0; t <= t_cap; ++t) {
    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, (r - pi).cwiseAbs().sum());
    if (worst <= eps) return t;
    for (auto& r : rows) r = r * chain.p();
  }
  return std::nullopt;
}

BoundReport WalkAnalysis::tables(double wj_shift) const {
  BoundReport report;
  TableInput qin{&q().chain, &q().faces, nullptr};
  report.append(check_transition_table(dc_, k_, qin, false, wj_shift, tol_.balance));
  std::vector<int> edges;
  for (const auto& st : split().states) edges.push_back(st.edge);
  TableInput sin{&split().chain, &split().faces, &edges};
  report.append(check_transition_table(dc_, k_, sin, true, wj_shift, tol_.balance));
  return report;
}

BoundReport WalkAnalysis::stationary_forms() const {
  BoundReport report;
  const auto w = weights();
  const int s = dc_.base_vertices();
  const double faces = static_cast<double>(binomial(s, k_ + 1));
  const double denom = (pow2(k_) - 1.0) * w.t * w.w_i + w.w_j;
  const double edges = static_cast<double>(dc_.graph().edge_count());

  {
    const auto& wq = dc_.complex().weights(k_);
    double total = 0.0;
    for (double x : wq) total += x;
    double dev = 0.0;
    for (std::size_t i = 0; i < wq.size(); ++i) dev = std::max(dev, std::abs(q().chain.pi()(i) - wq[i] / total));
    report.add(make_entry("fact:stationary-weights", "down-up stationary distribution vs normalized face weights",
                          dev, Relation::kLessEqual, 0.0, tol_.balance));
  }

  const auto& split_pi = split().chain.pi();
  double dev = 0.0;
  for (std::size_t i = 0; i < split().faces.size(); ++i) {
    const double numer = split().faces[i].offset == 0 ? w.w_j : w.t * w.w_i;
    dev = std::max(dev, std::abs(split_pi(i) - numer / (2.0 * edges * faces * denom)));
  }
  report.add(make_entry("lem:stationary-split", "split-chain stationary distribution vs closed form", dev,
                        Relation::kLessEqual, 0.0, tol_.balance));
  const double residual = (split().chain.p().transpose() * split_pi - split_pi).cwiseAbs().maxCoeff();
  report.add(make_entry("lem:stationary-split.residual", "|pi P - pi| for the split chain", residual,
                        Relation::kLessEqual, 0.0, tol_.balance));

  double orest = 0.0;
  const auto& dec = outer();
  for (std::size_t b = 0; b < dec.restrictions.size(); ++b) {
    const auto& pi = dec.restrictions[b].pi();
    for (std::size_t pos = 0; pos < dec.partition[b].size(); ++pos) {
      const double numer = split().faces[dec.partition[b][pos]].offset == 0 ? w.w_j : w.t * w.w_i;
      orest = std::max(orest, std::abs(pi(pos) - numer / (2.0 * faces * denom)));
    }
  }
  report.add(make_entry("lem:stationary-orest", "outer restriction stationary distributions vs closed form", orest,
                        Relation::kLessEqual, 0.0, tol_.balance));
  return report;
}

BoundReport WalkAnalysis::spectra() const {
  BoundReport report;
  const double containment = multiset_containment_deviation(q_spectrum().eigenvalues, split_spectrum().eigenvalues,
                                                            tol_.spectral);
  report.add(make_entry("lem:split-reduction.containment",
                        "spectrum of the Q chain embedded in the split-chain spectrum (max deviation)", containment,
                        Relation::kLessEqual, 0.0, tol_.spectral));
  report.add(make_entry("lem:split-reduction", "OneSidedGap(Q chain) >= OneSidedGap(split chain)",
                        q_spectrum().one_sided_gap, Relation::kGreaterEqual, split_spectrum().one_sided_gap,
                        tol_.spectral));

  const auto up = chain_spectrum(up_down_chain(dc_.complex(), k_));
  const auto down = chain_spectrum(down_up_chain(dc_.complex(), k_ + 1));
  const double nz = 1e-8;
  report.add(make_entry("fact:up-down-down-up", "nonzero spectra of up-down(k) and down-up(k+1) on Q",
                        multiset_deviation(nonzero_part(up.eigenvalues, nz), nonzero_part(down.eigenvalues, nz)),
                        Relation::kLessEqual, 0.0, tol_.spectral));
  return report;
}

BoundReport WalkAnalysis::outer_projection() const {
  BoundReport report;
  const auto& g = dc_.graph();
  const double t = dc_.degree();
  const double ratio = outer_ratio();
  const auto& proj = outer().projection;
  const auto m = static_cast<Eigen::Index>(g.edge_count());

  Eigen::MatrixXd closed = Eigen::MatrixXd::Zero(m, m);
  const double off = ratio / (2.0 * t);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& a = g.edges()[i];
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto& b = g.edges()[j];
      if (i != j && (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v)) closed(i, j) = off;
    }
    closed(i, i) = 1.0 - closed.row(i).sum();
  }
  report.add(make_entry("lem:oproj-closed-form", "outer projection vs closed form, entrywise",
                        max_entry_deviation(proj.p(), closed), Relation::kLessEqual, 0.0, tol_.balance));
  report.add(make_entry("fact:reversible-projection", "detailed balance residual of the outer projection",
                        detailed_balance_residual(proj), Relation::kLessEqual, 0.0, 1e-10));

  const auto spec = chain_spectrum(proj);
  const double formula = gap2_graph() / 2.0 * ratio;
  report.add(make_entry("lem:oproj-spectral-gap", "TwoSidedGap(P_o) >= (Gap_2(G)/2) * ratio", spec.two_sided_gap,
                        Relation::kGreaterEqual, formula, tol_.spectral));
  report.add(make_entry("lem:oproj-spectral-gap.equality", "TwoSidedGap(P_o) == (Gap_2(G)/2) * ratio as stated",
                        spec.two_sided_gap, Relation::kEqual, formula, tol_.spectral, false));
  report.add(make_entry("lem:oproj-one-sided", "OneSidedGap(P_o) == ratio * OneSidedGap(G) / 2",
                        spec.one_sided_gap, Relation::kEqual, ratio * graph_spectrum().one_sided_gap / 2.0,
                        tol_.spectral));
  report.add(make_entry("lem:oproj-gap.lemma", "OneSidedGap(P_o) >= Gap_2(G) / (2 (2^k - 1))", spec.one_sided_gap,
                        Relation::kGreaterEqual, gap2_graph() / (2.0 * (pow2(k_) - 1.0)), tol_.spectral));

  // Line-graph map composed with the lazy coefficient c' = ((T-1)/T) ratio.
  const auto line = spectrum(line_graph(g));
  const double c = (t - 1.0) / t * ratio;
  std::vector<double> mapped;
  for (double mu : line.eigenvalues) mapped.push_back(1.0 - c * (1.0 - mu));
  report.add(make_entry("lem:oproj-line-graph", "Spec(P_o) vs (1 - c') + c' Spec(line graph)",
                        multiset_deviation(spec.eigenvalues, mapped), Relation::kLessEqual, 0.0, tol_.spectral));
  report.add(check_sachs_relation(g, tol_.spectral));
  return report;
}

BoundReport WalkAnalysis::outer_restrictions() const {
  BoundReport report;
  const auto& dec = outer();
  const auto w = weights();
  const int k = k_;
  const double s = dc_.base_vertices();
  const double t = w.t;
  const double d = w.d();
  const int blocks = static_cast<int>(dec.restrictions.size());

  double iso = 0.0;
  for (int i = 0; i < blocks; ++i) {
    for (int j = i + 1; j < blocks; ++j) {
      const auto perm = restriction_relabeling(dc_, split(), dec.partition, i, j);
      const auto& pi = dec.restrictions[i].p();
      const auto& pj = dec.restrictions[j].p();
      for (Eigen::Index a = 0; a < pi.rows(); ++a) {
        for (Eigen::Index b = 0; b < pi.cols(); ++b) iso = std::max(iso, std::abs(pi(a, b) - pj(perm[a], perm[b])));
      }
    }
  }
  report.add(make_entry("lem:orest-isomorphism", "outer restrictions equal entrywise under the relabeling t_ij", iso,
                        Relation::kLessEqual, 0.0, tol_.balance));

  const double unit = 1.0 / ((k + 1.0) * (s - k));
  const double half = unit / 2.0;
  const int lonely = k >= 2 ? 1 : 2;
  auto profile = [&](int offset) {
    Profile pr;
    if (offset == 0) {
      pr.self = (t - 1.0) / t + w.w_j / (d * t * (s - k));
      pr.neighbors = {{unit * w.w_j / (d * t), static_cast<long>((k + 1) * (s - k - 1))},
                      {unit * w.w_i / d, static_cast<long>((k + 1) * (s - k))}};
    } else if (offset == 1) {
      pr.self = lonely * ((t - 1.0) / (t * (k + 1.0)) + unit * w.w_i / d) + (k + 1.0 - lonely) * half;
      pr.neighbors = {{unit * w.w_j / (d * t), static_cast<long>(lonely * (s - k))},
                      {unit * w.w_i / d, static_cast<long>(lonely * (s - k - 1))}};
      if (k >= 2) pr.neighbors.push_back({half, static_cast<long>(k + 2 * k * (s - k - 1))});
    } else {
      pr.self = 1.0 / (2.0 * (s - k));
      pr.neighbors = {{half, static_cast<long>((k + 1) * (2 * (s - k) - 1))}};
    }
    return pr;
  };
  const double literal_self = (t - 1.0) / (t * (k + 1.0)) + unit * w.w_i / d + k * half;

  double transitions = 0.0;
  double self_dev = 0.0;
  double literal = 0.0;
  double balance = 0.0;
  for (int b = 0; b < blocks; ++b) {
    const auto& r = dec.restrictions[b];
    balance = std::max(balance, detailed_balance_residual(r));
    for (std::size_t pos = 0; pos < dec.partition[b].size(); ++pos) {
      const int offset = split().faces[dec.partition[b][pos]].offset;
      const auto pr = profile(offset);
      const auto x = static_cast<Eigen::Index>(pos);
      transitions = std::max(transitions, multiset_deviation(off_diagonal_row(r.p(), x), pr.expanded()));
      self_dev = std::max(self_dev, std::abs(r.p()(x, x) - pr.self));
      if (offset == 1) literal = std::max(literal, std::abs(r.p()(x, x) - literal_self));
    }
  }
  report.add(make_entry("lem:orest-transitions", "outer restriction off-diagonal profiles vs closed forms",
                        transitions, Relation::kLessEqual, 0.0, tol_.balance));
  report.add(make_entry("lem:orest-self-loops", "outer restriction self-loops vs closed forms (lonely-element count)",
                        self_dev, Relation::kLessEqual, 0.0, tol_.balance));
  report.add(make_entry("lem:orest-self-loops.literal",
                        "1-offset self-loop vs the single-lonely-element formula as written", literal,
                        Relation::kLessEqual, 0.0, tol_.balance, false));
  report.add(make_entry("fact:reversible-restriction", "detailed balance residual of the outer restrictions",
                        balance, Relation::kLessEqual, 0.0, 1e-10));
  return report;
}

BoundReport WalkAnalysis::inner_chains() const {
  BoundReport report;
  const auto w = weights();
  const int k = k_;
  const double s = dc_.base_vertices();
  const double t = w.t;
  const double d = w.d();
  const double unit = 1.0 / ((k + 1.0) * (s - k));
  const auto& dec = inner();
  const auto& outer_members = outer().partition[0];
  const auto& e0 = dc_.graph().edges()[split().states[outer_members[0]].edge];
  auto face_of = [&](int pos) -> const DensifiedFace& { return split().faces[outer_members[pos]]; };

  // Projection closed form.
  const double p = unit / t * (((pow2(k) - 2.0) * t + 1.0) * t * w.w_i + w.w_j) /
                   ((pow2(k) - 1.0) * t * w.w_i + w.w_j);
  const auto m = static_cast<Eigen::Index>(dec.partition.size());
  Eigen::MatrixXd closed = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      if (i != j && bases_adjacent(face_of(dec.partition[i][0]).base, face_of(dec.partition[j][0]).base)) {
        closed(i, j) = p;
      }
    }
    closed(i, i) = 1.0 - closed.row(i).sum();
  }
  report.add(make_entry("lem:iproj-closed-form", "inner projection vs closed form, entrywise",
                        max_entry_deviation(dec.projection.p(), closed), Relation::kLessEqual, 0.0, tol_.balance));
  const auto proj_spec = chain_spectrum(dec.projection);
  report.add(make_entry("lem:iproj-gap", "OneSidedGap(P_I) >= 1 / (2T(k+1))", proj_spec.one_sided_gap,
                        Relation::kGreaterEqual, 1.0 / (2.0 * t * (k + 1.0)), tol_.spectral));

  // Hypercube structure and transition table of every inner restriction.
  const int dim = k + 1;
  long iso_failures = 0;
  double table = 0.0;
  double balance = detailed_balance_residual(dec.projection);
  double min_gap = 1.0;
  double stationary = 0.0;
  const double dtilde = 2.0 * w.w_j + w.w_i * t * (pow2(k + 1) - 2.0);
  for (std::size_t b = 0; b < dec.partition.size(); ++b) {
    const auto& r = dec.restrictions[b];
    const auto& members = dec.partition[b];
    balance = std::max(balance, detailed_balance_residual(r));
    min_gap = std::min(min_gap, chain_spectrum(r).one_sided_gap);
    std::vector<int> code(members.size());
    std::set<int> seen;
    for (std::size_t a = 0; a < members.size(); ++a) {
      const auto& f = face_of(members[a]);
      int bits = 0;
      for (int i = 0; i < dim; ++i) {
        if (f.labels[i] == e0.v) bits |= 1 << i;
      }
      code[a] = bits;
      seen.insert(bits);
      const double expect_pi = f.offset == 0 ? w.w_j / dtilde : t * w.w_i / dtilde;
      stationary = std::max(stationary, std::abs(r.pi()(a) - expect_pi));
    }
    if (members.size() != (std::size_t{1} << dim) || seen.size() != members.size()) ++iso_failures;
    for (std::size_t a = 0; a < members.size(); ++a) {
      const auto& src = face_of(members[a]);
      for (std::size_t c = 0; c < members.size(); ++c) {
        if (a == c) continue;
        const int diff = code[a] ^ code[c];
        const bool edge = diff != 0 && (diff & (diff - 1)) == 0;
        const double v = r.p()(a, c);
        if (edge != (v > 0.0)) ++iso_failures;
        if (!edge) continue;
        int flipped = 0;
        while (!((diff >> flipped) & 1)) ++flipped;
        const int label = src.labels[flipped];
        double expect;
        if (src.offset == 0) {
          expect = unit * w.w_i / d;
        } else {
          const int other = label == src.color[0] ? src.color[1] : src.color[0];
          const bool minority = src.label_count(label) <= src.label_count(other);
          expect = (minority && src.offset == 1) ? unit * w.w_j / (d * t) : unit / 2.0;
        }
        table = std::max(table, std::abs(v - expect));
      }
    }
  }
  report.add(make_entry("lem:irest-hypercube", "inner restrictions failing the (k+1)-cube relabeling",
                        static_cast<double>(iso_failures), Relation::kLessEqual, 0.0, 0.0));
  report.add(make_entry("lem:irest-transitions", "inner restriction transitions vs the inner table", table,
                        Relation::kLessEqual, 0.0, tol_.balance));
  report.add(make_entry("obs:irest-stationary", "inner restriction stationary distribution vs closed form",
                        stationary, Relation::kLessEqual, 0.0, tol_.balance));
  report.add(make_entry("fact:reversible-inner", "detailed balance residual of the inner chains", balance,
                        Relation::kLessEqual, 0.0, 1e-10));

  const double u_gap_formula = 2.0 * w.w_i / (d * (k + 1.0) * (s - k));
  const auto u = hypercube_walk(dim, 1.0 - w.w_i / (d * (s - k)));
  const double u_gap = chain_spectrum(u).one_sided_gap;
  report.add(make_entry("lem:uniform-chain-gap", "Gap(U) == 2 w_I / (D (k+1) (s-k))", u_gap, Relation::kEqual,
                        u_gap_formula, tol_.spectral));
  const double comparison = w.w_j * dtilde / (pow2(k + 1) * (t * w.w_i) * (t * w.w_i)) * u_gap;
  report.add(make_entry("lem:irest-comparison", "Gap(R_I) >= (w_J D~ / (2^(k+1) (T w_I)^2)) Gap(U)", min_gap,
                        Relation::kGreaterEqual, comparison, tol_.spectral));
  report.add(make_entry("lem:irest-comparison.simplified", "Gap(R_I) >= (w_J / (2 T w_I)) Gap(U)", min_gap,
                        Relation::kGreaterEqual, w.w_j / (2.0 * t * w.w_i) * u_gap, tol_.spectral, false));
  report.add(make_entry("lem:irest-comparison.written", "Gap(R_I) >= (w_J / (2 T w_I)) 2 w_J / (D (k+1) (s-k))",
                        min_gap, Relation::kGreaterEqual,
                        w.w_j / (2.0 * t * w.w_i) * 2.0 * w.w_j / (d * (k + 1.0) * (s - k)), tol_.spectral, false));
  report.add(make_entry("lem:irest-gap.final", "Gap(R_I) >= 1 / ((k+1) (s-k))", min_gap, Relation::kGreaterEqual,
                        unit, tol_.spectral, false));
  report.append(hypercube_checks(k, tol_.spectral));
  return report;
}

BoundReport WalkAnalysis::jerrum() const {
  BoundReport report;
  const auto w = weights();
  const int k = k_;
  const double s = dc_.base_vertices();
  const double t = w.t;
  const double d = w.d();
  const double split_gap = split_spectrum().one_sided_gap;
  const double rest_gap = chain_spectrum(outer().restrictions[0]).one_sided_gap;

  const auto jo = evaluate_jerrum(outer());
  const auto ji = evaluate_jerrum(inner());
  report.add(make_entry("thm:jerrum.outer", "OneSidedGap(split) >= Jerrum bound of the outer decomposition",
                        split_gap, Relation::kGreaterEqual, jo.bound, tol_.spectral));
  report.add(make_entry("thm:jerrum.inner", "OneSidedGap(R_o) >= Jerrum bound of the inner decomposition", rest_gap,
                        Relation::kGreaterEqual, ji.bound, tol_.spectral));

  const double nested = jerrum_bound(jo.projection_gap, jerrum_bound(ji.projection_gap, ji.restriction_gap, ji.gamma),
                                     jo.gamma);
  report.add(make_entry("thm:jerrum.nested", "OneSidedGap(split) >= nested bound with computed gamma", split_gap,
                        Relation::kGreaterEqual, nested, tol_.spectral));
  const double nested_one = jerrum_bound(jo.projection_gap,
                                         jerrum_bound(ji.projection_gap, ji.restriction_gap, 1.0), 1.0);
  report.add(make_entry("thm:jerrum.nested-gamma-one", "OneSidedGap(split) >= nested bound with gamma = 1",
                        split_gap, Relation::kGreaterEqual, nested_one, tol_.spectral));

  const double dtilde = 2.0 * w.w_j + w.w_i * t * (pow2(k + 1) - 2.0);
  const double u_gap = 2.0 * w.w_i / (d * (k + 1.0) * (s - k));
  const double r_lemma = w.w_j * dtilde / (pow2(k + 1) * (t * w.w_i) * (t * w.w_i)) * u_gap;
  const double lemmas = jerrum_bound(gap2_graph() / (2.0 * (pow2(k) - 1.0)),
                                     jerrum_bound(1.0 / (2.0 * t * (k + 1.0)), r_lemma, 1.0), 1.0);
  report.add(make_entry("thm:jerrum.lemmas", "OneSidedGap(split) >= nested bound from the lemma gap bounds",
                        split_gap, Relation::kGreaterEqual, lemmas, tol_.spectral));
  report.add(make_entry("thm:jerrum.lemmas-vs-theorem", "nested lemma bound >= theorem right-hand side", lemmas,
                        Relation::kGreaterEqual, theorem_rhs(), tol_.spectral));
  return report;
}

BoundReport WalkAnalysis::mixing_theorem() const {
  BoundReport report;
  const auto w = weights();
  const int k = k_;
  const double s = dc_.base_vertices();
  const double t = w.t;
  const auto& spec = q_spectrum();
  report.add(make_entry("thm:main", "TwoSidedGap(Q chain) >= Gap_2(G) / (64 T^2 (k+1)^2 (s-k) (2^k-1))",
                        spec.two_sided_gap, Relation::kGreaterEqual, theorem_rhs(), tol_.spectral));
  report.add(make_entry("thm:main.restated", "TwoSidedGap(Q chain) >= Gap_2(G) / (64 T (k+1)^2 (s-k) (2^k-1))",
                        spec.two_sided_gap, Relation::kGreaterEqual, theorem_rhs() * t, tol_.spectral, false));
  const double floor = w.w_j / ((s - k) * w.d());
  report.add(make_entry("obs:smallest-eigenvalue", "lambda_min(Q chain) >= w_J / ((s-k) D) - 1", spec.smallest(),
                        Relation::kGreaterEqual, floor - 1.0, tol_.spectral));
  report.add(make_entry("obs:self-loop", "every self-loop of the Q chain >= w_J / ((s-k) D)",
                        q().chain.p().diagonal().minCoeff(), Relation::kGreaterEqual, floor, tol_.balance, false));
  const auto& g = dc_.graph();
  report.add(make_entry("cor:face-count", "number of k-faces vs n binom(s,k+1) + |E| binom(s,k+1) (2^(k+1) - 2)",
                        static_cast<double>(q().faces.size()), Relation::kEqual,
                        closed_form_face_count(g.vertex_count(), static_cast<long>(g.edge_count()),
                                               dc_.base_vertices(), k),
                        0.0));
  return report;
}

BoundReport WalkAnalysis::mixing(double eps, int t_cap) const {
  BoundReport report;
  const double t = dc_.degree();
  const int k = k_;
  const double s = dc_.base_vertices();
  const auto& chain = q().chain;
  const double spectral = mixing_time_bound(chain, eps, q_spectrum().two_sided_gap);
  const double corollary = 64.0 * t * t * (k + 1.0) * (k + 1.0) * (s - k) * (pow2(k) - 1.0) / gap2_graph() *
                           std::log(2.0 * static_cast<double>(chain.size()) / eps);
  const int cap = std::min<double>(t_cap, std::ceil(std::min(spectral, corollary)) + 1.0);
  const auto crossing = worst_case_crossing(eps, cap);
  const double measured = crossing ? *crossing : std::numeric_limits<double>::infinity();
  const std::string where = chain.size() <= 1200 ? "worst point-mass start" : "one point-mass start per offset";
  report.add(make_entry("thm:spectral-mixing", "first t with ||P^t(x,.) - pi||_1 <= eps (" + where +
                                                   ") <= log(1/(eps min pi)) / TwoSidedGap",
                        measured, Relation::kLessEqual, spectral, 0.0));
  report.add(make_entry("cor:mixing-time", "first t with ||P^t(x,.) - pi||_1 <= eps (" + where +
                                               ") <= corollary bound",
                        measured, Relation::kLessEqual, corollary, 0.0));
  return report;
}

BoundReport WalkAnalysis::full(double eps, int t_cap, double wj_shift) const {
  BoundReport report;
  report.append(tables(wj_shift));
  report.append(stationary_forms());
  report.append(spectra());
  report.append(outer_projection());
  report.append(outer_restrictions());
  report.append(inner_chains());
  report.append(jerrum());
  report.append(mixing_theorem());
  report.append(mixing(eps, t_cap));
  report.append(verify_local_expansion(dc_, tol_.spectral));
  return report;
}

BoundReport hypercube_checks(int k, double tolerance) {
  BoundReport report;
  const int dim = k + 1;
  const auto spec = chain_spectrum(hypercube_walk(dim, 0.0));
  std::vector<double> expected;
  for (int i = 0; i <= dim; ++i) {
    expected.insert(expected.end(), static_cast<std::size_t>(binomial(dim, i)), 1.0 - 2.0 * i / dim);
  }
  const std::string tag = "lem:hypercube.k=" + std::to_string(k);
  report.add(make_entry(tag + ".spectrum", "non-lazy cube walk spectrum vs {1 - 2i/(k+1)}",
                        multiset_deviation(spec.eigenvalues, expected), Relation::kLessEqual, 0.0, tolerance));
  report.add(make_entry(tag + ".gap", "non-lazy cube walk gap == 2/(k+1)", spec.one_sided_gap, Relation::kEqual,
                        2.0 / dim, tolerance));
  return report;
}

}  // namespace hdxlab
