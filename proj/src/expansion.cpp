#include <algorithm>
#include <cmath>

#include "hdxlab/error.hpp"
#include "hdxlab/walks.hpp"

namespace hdxlab {

namespace {

std::vector<double> products(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out;
  for (double x : a) {
    for (double y : b) out.push_back(x * y);
  }
  return out;
}

std::vector<double> absolute(std::vector<double> v) {
  for (double& x : v) x = std::abs(x);
  return v;
}

std::vector<double> star_expected(int t, double third) {
  std::vector<double> out{1.0};
  out.insert(out.end(), static_cast<std::size_t>(t - 1), 0.5);
  out.push_back(third);
  return out;
}

}  // namespace

BoundReport verify_local_expansion(const DensifiedComplex& dc, double tolerance) {
  BoundReport report;
  const auto& q = dc.complex();
  const auto& b = dc.base();
  const auto& g = dc.graph();
  const int h = dc.top_dim();
  const int t = dc.degree();
  const double gap2 = spectrum(g).two_sided_gap;

  // Global expansion through the tensor structure of the 1-skeleton.
  const auto q_skel = skeleton_spectrum(q);
  const auto b_skel = skeleton_spectrum(b);
  if (!q_skel || !b_skel) {
    throw Error(ErrorKind::kDimension, "expansion checks need complexes with edges (H >= 1)");
  }
  const auto global_w = link_case_weights(t, h, -1);
  const double a = global_w.w_c / (global_w.w_c + t * global_w.w_s);
  const double factor = t * std::ldexp(1.0, h - 1) / (t * std::ldexp(1.0, h) - (t - 1.0));
  report.add(make_entry("thm:global-exp.factor", "T 2^(H-1) / (T 2^H - (T-1)) == 1 - w_C / (w_C + T w_S) at k = -1",
                        factor, Relation::kEqual, 1.0 - a, tolerance));
  std::vector<double> lazy_g;
  for (double lambda : spectrum(g).eigenvalues) lazy_g.push_back(a + (1.0 - a) * lambda);
  report.add(make_entry("thm:global-exp.tensor", "Spec(skeleton of Q) vs Spec(lazy G) x Spec(skeleton of B)",
                        multiset_deviation(q_skel->summary.eigenvalues, products(lazy_g, b_skel->summary.eigenvalues)),
                        Relation::kLessEqual, 0.0, tolerance));
  const double global = q_skel->summary.two_sided_gap;
  const double global_rhs = std::min(factor * gap2, b_skel->summary.two_sided_gap);
  report.add(make_entry("thm:global-exp", "GlobalExp(Q) >= min{factor Gap_2(G), GlobalExp(B)}", global,
                        Relation::kGreaterEqual, global_rhs, tolerance));
  report.add(make_entry("thm:global-exp.equality", "GlobalExp(Q) == min{factor Gap_2(G), GlobalExp(B)} as stated",
                        global, Relation::kEqual, global_rhs, tolerance, false));
  report.add(make_entry("thm:global-exp.simplified", "GlobalExp(Q) >= T 2^(H-1) / (T 2^H + 1) Gap_2(G)", global,
                        Relation::kGreaterEqual, t * std::ldexp(1.0, h - 1) / (t * std::ldexp(1.0, h) + 1.0) * gap2,
                        tolerance));

  // Local expansion over every link with an edge.
  const auto local_q = local_expansion(q);
  const auto local_b = local_expansion(b);
  report.add(make_entry("thm:local-exp.evaluable", "links of Q whose 1-skeleton has an edge",
                        static_cast<double>(local_q.links.size()), Relation::kGreaterEqual, 0.0, 0.0, false));
  if (local_q.value) {
    report.add(make_entry("thm:local-exp", "min over links of Q of TwoSidedGap >= 1/2", *local_q.value,
                          Relation::kGreaterEqual, 0.5, tolerance));
    const double rhs = local_b.value ? std::min(*local_b.value, 0.5) : 0.5;
    report.add(make_entry("thm:local-exp.min-form", "LocalExp(Q) >= min{LocalExp(B), 1/2}", *local_q.value,
                          Relation::kGreaterEqual, rhs, tolerance));
    report.add(make_entry("thm:local-exp.equality", "LocalExp(Q) == min{LocalExp(B), 1/2} as stated",
                          *local_q.value, Relation::kEqual, rhs, tolerance, false));
  }

  // Star chains for every link dimension, and the link spectra they predict.
  std::vector<std::vector<double>> star_spectra;
  for (int k = -1; k <= h - 2; ++k) {
    const auto lw = link_case_weights(t, h, k);
    const double ak = lw.w_c / (lw.w_c + t * lw.w_s);
    const auto spec = chain_spectrum(star_chain(t, lw.w_s, lw.w_c)).eigenvalues;
    star_spectra.push_back(spec);
    const std::string tag = "lem:star-spectrum.k=" + std::to_string(k);
    report.add(make_entry(tag, "star chain spectrum vs {1, 1/2 (T-1 times), a - 1/2}",
                          multiset_deviation(spec, star_expected(t, ak - 0.5)), Relation::kLessEqual, 0.0,
                          tolerance));
    report.add(make_entry(tag + ".written", "star chain spectrum vs {1, 1/2 (T-1 times), 1/2 - a} as written",
                          multiset_deviation(spec, star_expected(t, 0.5 - ak)), Relation::kLessEqual, 0.0,
                          tolerance, false));
    report.add(make_entry(tag + ".magnitudes", "star chain |spectrum| vs {1, 1/2 (T-1 times), |1/2 - a|}",
                          multiset_deviation(absolute(spec), absolute(star_expected(t, 0.5 - ak))),
                          Relation::kLessEqual, 0.0, tolerance));
  }

  double vertex_case = 0.0;
  double edge_case = 0.0;
  long vertex_links = 0;
  long edge_links = 0;
  for (int k = 0; k <= h - 2; ++k) {
    for (const Face& f : q.faces(k)) {
      const auto desc = dc.describe(f);
      const auto lq = skeleton_spectrum(link(q, f).complex);
      const auto lb = skeleton_spectrum(link(b, desc.base).complex);
      if (!lq || !lb) continue;
      if (desc.offset == 0) {
        vertex_case = std::max(vertex_case, multiset_deviation(lq->summary.eigenvalues,
                                                               products(star_spectra[k + 1], lb->summary.eigenvalues)));
        ++vertex_links;
      } else {
        std::vector<double> expected = lb->summary.eigenvalues;
        expected.insert(expected.end(), lb->summary.eigenvalues.size(), 0.0);
        edge_case = std::max(edge_case, multiset_deviation(lq->summary.eigenvalues, expected));
        ++edge_links;
      }
    }
  }
  if (vertex_links > 0) {
    report.add(make_entry("thm:local-exp.vertex-links",
                          "constant-face link spectra vs Spec(star) x Spec(base link), " +
                              std::to_string(vertex_links) + " links",
                          vertex_case, Relation::kLessEqual, 0.0, tolerance));
  }
  if (edge_links > 0) {
    report.add(make_entry("thm:local-exp.edge-links",
                          "non-constant-face link spectra vs {0} u Spec(base link), " + std::to_string(edge_links) +
                              " links",
                          edge_case, Relation::kLessEqual, 0.0, tolerance));
  }
  return report;
}

}  // namespace hdxlab
