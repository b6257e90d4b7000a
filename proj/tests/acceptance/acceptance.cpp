// Acceptance runner: one line per criterion, details indented below it.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hdxlab/error.hpp"
#include "hdxlab/walks.hpp"
#include "../properties.hpp"

using namespace hdxlab;

namespace {

struct Check {
  bool pass = false;
  std::string text;
};

struct Criterion {
  int number = 0;
  std::string title;
  double budget_s = 0.0;
  std::vector<Check> checks;

  void check(bool pass, const std::string& text) { checks.push_back({pass, text}); }
  bool pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return !checks.empty();
  }
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

DensifiedComplex canonical() { return local_densifier(WeightedGraph::cycle(5), complete_complex(4, 2)); }
DensifiedComplex second() { return local_densifier(random_regular_triangle_free(20, 3, 7), complete_complex(5, 3)); }

const BoundEntry& entry(const BoundReport& r, const std::string& id) {
  const auto* e = r.find(id);
  if (!e) throw Error(ErrorKind::kInvalidInput, "missing ledger entry " + id);
  return *e;
}

void table_conformance(Criterion& c) {
  WalkAnalysis wa(canonical(), 1);
  const auto r = wa.tables();
  for (const std::string chain : {"tab:down-up", "tab:split"}) {
    const auto& p = entry(r, chain + ".probability");
    c.check(p.lhs <= 1e-12, fmt("%s: max |P - table| = %.3g (tol 1e-12)", chain.c_str(), p.lhs));
    const auto& s = entry(r, chain + ".self-loop");
    c.check(s.lhs <= 1e-12, fmt("%s: max self-loop deviation = %.3g (tol 1e-12)", chain.c_str(), s.lhs));
    const auto& n = entry(r, chain + ".counts");
    c.check(n.lhs == 0.0, fmt("%s: neighbor-count mismatches = %g", chain.c_str(), n.lhs));
    const auto& u = entry(r, chain + ".classified");
    c.check(u.lhs == 0.0, fmt("%s: unclassified transitions = %g", chain.c_str(), u.lhs));
  }
}

void stationary_forms(Criterion& c) {
  WalkAnalysis wa(canonical(), 1);
  const auto& sp = wa.split();
  double zero = 0.0;
  double other = 0.0;
  for (std::size_t i = 0; i < sp.states.size(); ++i) {
    const double target = sp.faces[i].offset == 0 ? 1.0 / 140 : 1.0 / 105;
    (sp.faces[i].offset == 0 ? zero : other) = std::max(sp.faces[i].offset == 0 ? zero : other,
                                                       std::abs(sp.chain.pi()(i) - target));
  }
  c.check(zero <= 1e-12, fmt("split 0-offset states vs 1/140: max deviation %.3g", zero));
  c.check(other <= 1e-12, fmt("split other states vs 1/105: max deviation %.3g", other));
  const auto r = wa.stationary_forms();
  const auto& o = entry(r, "lem:stationary-orest");
  c.check(o.lhs <= 1e-12, fmt("outer restriction stationary vs closed form: max deviation %.3g", o.lhs));
}

void containment(Criterion& c) {
  WalkAnalysis wa(canonical(), 1);
  c.check(wa.q().chain.size() == 90, fmt("Q chain states = %zu (expect 90)", wa.q().chain.size()));
  c.check(wa.split().chain.size() == 120, fmt("split chain states = %zu (expect 120)", wa.split().chain.size()));
  const double dev =
      multiset_containment_deviation(wa.q_spectrum().eigenvalues, wa.split_spectrum().eigenvalues, 1e-9);
  c.check(dev <= 1e-9, fmt("Spec(Q) inside Spec(split): max matched deviation %.3g (tol 1e-9)", dev));
}

void outer_projection(Criterion& c) {
  WalkAnalysis wa(canonical(), 1);
  const auto r = wa.outer_projection();
  const auto& closed = entry(r, "lem:oproj-closed-form");
  c.check(closed.lhs <= 1e-12, fmt("projection vs closed form, entrywise: %.3g (tol 1e-12)", closed.lhs));
  const double gap = chain_spectrum(wa.outer().projection).two_sided_gap;
  const double formula = wa.gap2_graph() / 2.0 * wa.outer_ratio();
  c.check(std::abs(gap - formula) <= 1e-9,
          fmt("TwoSidedGap(P_o) = %.6f vs (Gap_2(G)/2) ratio = %.6f: |diff| %.3g (tol 1e-9)", gap, formula,
              std::abs(gap - formula)));
  for (const auto& [name, g] : {std::pair{"C_5", WeightedGraph::cycle(5)}, std::pair{"K_4", WeightedGraph::complete(4)},
                                std::pair{"Petersen", WeightedGraph::petersen()}}) {
    const auto e = check_sachs_relation(g, 1e-9);
    c.check(e.lhs < 1e-9, fmt("Sachs relation on %s: deviation %.3g (tol 1e-9)", name, e.lhs));
  }
}

void inner_chains(Criterion& c) {
  WalkAnalysis wa(canonical(), 1);
  const auto w = wa.weights();
  const int k = wa.k();
  const double gap = chain_spectrum(wa.inner().projection).one_sided_gap;
  const double bound = 1.0 / (2.0 * w.t * (k + 1));
  c.check(gap >= bound - 1e-9, fmt("inner projection gap %.6f >= 1/(2T(k+1)) = %.6f", gap, bound));
  const auto r = wa.inner_chains();
  const auto& iso = entry(r, "lem:irest-hypercube");
  c.check(iso.pass, fmt("inner restrictions isomorphic to the %d-cube: %g of %zu fail the relabeling", k + 1,
                        iso.lhs, wa.inner().restrictions.size()));
  const auto& u = entry(r, "lem:uniform-chain-gap");
  const double u_formula = 2.0 * w.w_i / (w.d() * (k + 1) * (wa.densified().base_vertices() - k));
  c.check(std::abs(u.lhs - u_formula) <= 1e-9,
          fmt("Gap(U) = %.9f vs 2w_I/(D(k+1)(s-k)) = %.9f", u.lhs, u_formula));
  for (int kk = 1; kk <= 3; ++kk) {
    const auto spec = chain_spectrum(hypercube_walk(kk + 1, 0.0));
    c.check(std::abs(spec.one_sided_gap - 2.0 / (kk + 1)) <= 1e-9,
            fmt("non-lazy %d-cube gap %.12f vs 2/(k+1) = %.12f", kk + 1, spec.one_sided_gap, 2.0 / (kk + 1)));
  }
}

void jerrum(Criterion& c) {
  auto level = [&](const std::string& name, const WalkAnalysis& wa) {
    const auto outer = evaluate_jerrum(wa.outer());
    const double split_gap = wa.split_spectrum().one_sided_gap;
    c.check(outer.bound <= split_gap + 1e-9,
            fmt("%s outer: bound %.6g <= split-chain gap %.6g", name.c_str(), outer.bound, split_gap));
    const auto inner = evaluate_jerrum(wa.inner());
    const double rest_gap = chain_spectrum(wa.outer().restrictions[0]).one_sided_gap;
    c.check(inner.bound <= rest_gap + 1e-9,
            fmt("%s inner: bound %.6g <= outer-restriction gap %.6g", name.c_str(), inner.bound, rest_gap));
  };
  level("canonical k=1", WalkAnalysis(canonical(), 1));
  for (int k : {1, 2}) level("n=20 T=3 s=5 H=3 k=" + std::to_string(k), WalkAnalysis(second(), k));
}

void main_theorem(Criterion& c) {
  auto one = [&](const std::string& name, const WalkAnalysis& wa) {
    const double gap = wa.q_spectrum().two_sided_gap;
    const double rhs = wa.theorem_rhs();
    c.check(gap >= rhs, fmt("%s: TwoSidedGap %.6g >= %.6g", name.c_str(), gap, rhs));
    const auto w = wa.weights();
    const double floor = 1.0 / (wa.densified().base_vertices() - wa.k()) * (w.w_j / w.d()) - 1.0;
    const double smallest = wa.q_spectrum().smallest();
    c.check(smallest >= floor - 1e-9, fmt("%s: lambda_min %.6g >= %.6g", name.c_str(), smallest, floor));
  };
  one("canonical k=1", WalkAnalysis(canonical(), 1));
  for (int k : {1, 2}) one("n=20 T=3 s=5 H=3 k=" + std::to_string(k), WalkAnalysis(second(), k));
}

void expansion(Criterion& c) {
  const auto dc = canonical();
  const auto local = local_expansion(dc.complex());
  double worst = 1.0;
  for (const auto& l : local.links) worst = std::min(worst, l.two_sided_gap);
  c.check(!local.links.empty() && worst >= 0.5 - 1e-9,
          fmt("%zu links with edges (%zu edgeless skipped): min TwoSidedGap %.9f >= 1/2", local.links.size(),
              local.skipped, worst));

  const int t = dc.degree();
  for (int k = -1; k <= dc.top_dim() - 2; ++k) {
    const auto lw = link_case_weights(t, dc.top_dim(), k);
    const double a = lw.w_c / (lw.w_c + t * lw.w_s);
    const auto spec = chain_spectrum(star_chain(t, lw.w_s, lw.w_c)).eigenvalues;
    std::vector<double> stated{1.0};
    stated.insert(stated.end(), t - 1, 0.5);
    stated.push_back(0.5 - a);
    const double dev = multiset_deviation(spec, stated);
    c.check(dev <= 1e-9, fmt("star chain k=%d: spectrum vs {1, 1/2 x%d, 1/2 - a = %.6f}: deviation %.6f "
                             "(measured third eigenvalue %.6f = a - 1/2)",
                             k, t - 1, 0.5 - a, dev, spec.back()));
  }

  const double global = global_expansion(dc.complex());
  const double gap2 = spectrum(dc.graph()).two_sided_gap;
  const double factor = t * std::ldexp(1.0, dc.top_dim() - 1) / (t * std::ldexp(1.0, dc.top_dim()) - (t - 1.0));
  const double rhs = std::min(factor * gap2, global_expansion(dc.base()));
  c.check(std::abs(global - rhs) <= 1e-9,
          fmt("GlobalExp(Q) = %.6f vs min{%.6f Gap_2(G), GlobalExp(B)} = %.6f: slack %.6f", global, factor, rhs,
              global - rhs));
}

void mixing(Criterion& c) {
  WalkAnalysis wa(canonical(), 1);
  const double eps = 0.05;
  const auto& chain = wa.q().chain;
  const double spectral = mixing_time_bound(chain, eps, wa.q_spectrum().two_sided_gap);
  const double corollary = std::log(2.0 * static_cast<double>(chain.size()) / eps) / wa.theorem_rhs();
  const auto crossing = wa.worst_case_crossing(eps, static_cast<int>(std::ceil(spectral)) + 1);
  c.check(crossing.has_value(), crossing ? fmt("worst-start ||P^t(x,.) - pi||_1 <= %.2f first at t = %d", eps, *crossing)
                                         : std::string("no crossing before the spectral bound"));
  if (crossing) {
    c.check(*crossing <= spectral, fmt("t = %d <= spectral bound %.3f", *crossing, spectral));
    c.check(*crossing <= corollary, fmt("t = %d <= corollary bound %.1f", *crossing, corollary));
  }
}

void property_suites(Criterion& c) {
  const auto out = properties::run(100, 20261017);
  c.check(out.cases == 100, fmt("%d random instances (n <= 12, T in {2,3})", out.cases));
  c.check(out.detailed_balance_failures == 0,
          fmt("detailed balance: %d failures, worst residual %.3g (tol 1e-10)", out.detailed_balance_failures,
              out.worst_detailed_balance));
  c.check(out.balance_failures == 0,
          fmt("weight balance: %d failures, worst relative residual %.3g (tol 1e-12)", out.balance_failures,
              out.worst_balance));
  c.check(out.variational_failures == 0,
          fmt("variational ratio: %d failures, min ratio - gap %.3g (tol -1e-8)", out.variational_failures,
              out.worst_variational));
}

}  // namespace

int main() {
  struct Item {
    int number;
    const char* title;
    double budget_s;
    std::function<void(Criterion&)> run;
  };
  const std::vector<Item> items{
      {1, "table conformance", 1.0, table_conformance},
      {2, "stationary closed forms", 1.0, stationary_forms},
      {3, "spectrum containment", 1.0, containment},
      {4, "outer projection", 1.0, outer_projection},
      {5, "inner chains", 1.0, inner_chains},
      {6, "Jerrum soundness", 30.0, jerrum},
      {7, "main theorem", 30.0, main_theorem},
      {8, "local/global expansion", 10.0, expansion},
      {9, "mixing", 10.0, mixing},
      {10, "property suites", 60.0, property_suites},
  };

  int passed = 0;
  for (const auto& s : items) {
    Criterion c{s.number, s.title, s.budget_s, {}};
    const auto start = std::chrono::steady_clock::now();
    try {
      s.run(c);
    } catch (const std::exception& e) {
      c.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.check(secs < s.budget_s, fmt("runtime %.2f s (budget %.0f s)", secs, s.budget_s));
    const bool ok = c.pass();
    passed += ok;
    std::printf("criterion %2d: %s  %s\n", c.number, ok ? "PASS" : "FAIL", c.title.c_str());
    for (const auto& ch : c.checks) std::printf("    [%s] %s\n", ch.pass ? "ok" : "FAIL", ch.text.c_str());
    std::fflush(stdout);
  }
  std::printf("acceptance: %d/%zu criteria pass\n", passed, items.size());
  return passed == static_cast<int>(items.size()) ? 0 : 1;
}
