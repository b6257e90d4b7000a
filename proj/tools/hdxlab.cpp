// hdxlab: build densified complexes, their walks, and the bound ledger.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hdxlab/densifier.hpp"
#include "hdxlab/error.hpp"
#include "hdxlab/io.hpp"
#include "hdxlab/walks.hpp"

namespace {

using namespace hdxlab;

constexpr int kExitBoundFailure = 2;
constexpr int kExitInputError = 3;

struct RunConfig {
  std::string graph_path;
  std::string gen;  // "n,t,seed"
  int s = 4;
  int h = 2;
  int k = 1;
  double tol_spec = 1e-9;
  double tol_balance = 1e-12;
  std::string out;
  double perturb_wj = 0.0;
  double eps = 0.05;
  int t_max = 200;
  int t_cap = 1000000;
  int trials = 2000;
  std::uint64_t seed = 1;
  std::string start = "0";
  // gen-graph
  int n = 20;
  int t = 3;
  std::string report_in;
};

void add_input_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--graph", cfg.graph_path, "graph JSON file (default: the 5-cycle)");
  cmd->add_option("--gen", cfg.gen, "generate the graph instead: n,t,seed");
  cmd->add_option("--s", cfg.s, "vertices of the complete base complex")->capture_default_str();
  cmd->add_option("--H", cfg.h, "dimension of the base complex")->capture_default_str();
  cmd->add_option("--out", cfg.out, "output directory");
}

void add_walk_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--k", cfg.k, "walk level")->capture_default_str();
  cmd->add_option("--tol-spec", cfg.tol_spec, "spectral tolerance")->capture_default_str();
  cmd->add_option("--tol-balance", cfg.tol_balance, "stochasticity and balance tolerance")->capture_default_str();
}

WeightedGraph load_graph(const RunConfig& cfg) {
  if (!cfg.graph_path.empty() && !cfg.gen.empty()) {
    throw Error(ErrorKind::kInvalidInput, "give either --graph or --gen, not both");
  }
  if (!cfg.graph_path.empty()) return graph_from_json(read_file(cfg.graph_path));
  if (!cfg.gen.empty()) {
    std::istringstream in(cfg.gen);
    long n = 0, t = 0;
    unsigned long long seed = 0;
    char c1 = 0, c2 = 0;
    if (!(in >> n >> c1 >> t >> c2 >> seed) || c1 != ',' || c2 != ',') {
      throw Error(ErrorKind::kInvalidInput, "--gen expects n,t,seed");
    }
    return random_regular_triangle_free(static_cast<int>(n), static_cast<int>(t), seed);
  }
  return WeightedGraph::cycle(5);
}

DensifiedComplex build(const RunConfig& cfg) {
  if (cfg.s < cfg.h + 1) throw Error(ErrorKind::kRange, "need s >= H + 1");
  return local_densifier(load_graph(cfg), complete_complex(cfg.s, cfg.h));
}

void check_k(const RunConfig& cfg) {
  if (cfg.k < 1 || cfg.k >= cfg.h) {
    std::ostringstream msg;
    msg << "walk level k = " << cfg.k << " must satisfy 1 <= k < H = " << cfg.h;
    throw Error(ErrorKind::kRange, msg.str());
  }
}

void emit(const RunConfig& cfg, const std::string& name, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::filesystem::create_directories(cfg.out);
  write_file((std::filesystem::path(cfg.out) / name).string(), text);
}

int cmd_gen_graph(const RunConfig& cfg) {
  const auto g = random_regular_triangle_free(cfg.n, cfg.t, cfg.seed);
  const auto spec = spectrum(g);
  if (cfg.out.empty()) {
    std::cout << graph_to_json(g);
  } else {
    std::filesystem::path p(cfg.out);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    write_file(cfg.out, graph_to_json(g));
  }
  std::cerr << "girth " << g.girth() << ", two-sided gap " << spec.two_sided_gap << "\n";
  return 0;
}

int cmd_build(const RunConfig& cfg) {
  check_k(cfg);
  const auto dc = build(cfg);
  const auto q = q_down_up(dc, cfg.k);
  const auto split = split_chain(dc, q);
  std::printf("graph: %d vertices, %zu edges, degree %d\n", dc.graph().vertex_count(), dc.graph().edge_count(),
              dc.degree());
  for (int d = 0; d <= dc.top_dim(); ++d) std::printf("faces of dimension %d: %zu\n", d, dc.complex().face_count(d));
  std::printf("walk states: %zu, split states: %zu\n", q.chain.size(), split.chain.size());
  if (!cfg.out.empty()) {
    emit(cfg, "graph.json", graph_to_json(dc.graph()));
    emit(cfg, "base.json", complex_to_json(dc.base()));
    emit(cfg, "complex.json", complex_to_json(dc.complex()));
    emit(cfg, "walk.json", chain_to_json(q.chain));
    emit(cfg, "split.json", chain_to_json(split.chain));
  }
  return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
  check_k(cfg);
  Tolerances tol{cfg.tol_spec, cfg.tol_balance};
  WalkAnalysis wa(build(cfg), cfg.k, tol);
  std::ostringstream out;
  out.precision(12);
  auto line = [&](const char* name, const SpectralSummary& s) {
    out << name << ": states " << s.eigenvalues.size() << ", lambda_2 " << s.second() << ", lambda_min "
        << s.smallest() << ", one-sided gap " << s.one_sided_gap << ", two-sided gap " << s.two_sided_gap << "\n";
  };
  line("graph", wa.graph_spectrum());
  line("walk", wa.q_spectrum());
  line("split", wa.split_spectrum());
  out << "global expansion of Q: " << global_expansion(wa.densified().complex()) << "\n";
  out << "theorem lower bound: " << wa.theorem_rhs() << "\n";
  emit(cfg, "spectrum.txt", out.str());
  return 0;
}

int print_verdict(const BoundReport& report) {
  const auto failures = report.failures();
  std::size_t required = 0;
  for (const auto& e : report.entries()) required += e.required ? 1 : 0;
  std::cerr << required - failures.size() << "/" << required << " required entries pass, "
            << report.entries().size() - required << " informational\n";
  for (const auto* e : failures) {
    std::cerr << "FAIL " << e->id << ": " << e->description << " (lhs " << e->lhs << " " << to_string(e->relation)
              << " rhs " << e->rhs << ", slack " << e->slack << ")\n";
  }
  return failures.empty() ? 0 : kExitBoundFailure;
}

int cmd_verify(const RunConfig& cfg) {
  check_k(cfg);
  Tolerances tol{cfg.tol_spec, cfg.tol_balance};
  WalkAnalysis wa(build(cfg), cfg.k, tol);
  const auto report = wa.full(cfg.eps, cfg.t_cap, cfg.perturb_wj);
  emit(cfg, "report.json", report_to_json(report));
  return print_verdict(report);
}

int cmd_mix(const RunConfig& cfg) {
  check_k(cfg);
  Tolerances tol{cfg.tol_spec, cfg.tol_balance};
  WalkAnalysis wa(build(cfg), cfg.k, tol);
  const auto& chain = wa.q().chain;
  Eigen::VectorXd start;
  if (cfg.start == "pi") {
    start = chain.pi();
  } else {
    long x = -1;
    try {
      x = std::stol(cfg.start);
    } catch (const std::exception&) {
    }
    if (x < 0 || x >= static_cast<long>(chain.size())) {
      throw Error(ErrorKind::kRange, "--start must be a state index or \"pi\"");
    }
    start = Eigen::VectorXd::Unit(static_cast<Eigen::Index>(chain.size()), x);
  }
  const auto curve = simulate_tv(chain, start, cfg.t_max, cfg.trials, cfg.seed);

  std::ostringstream bounds;
  bounds.precision(12);
  bounds << "name,value\n" << "eps," << cfg.eps << "\n";
  try {
    bounds << "spectral_bound," << mixing_time_bound(chain, cfg.eps, wa.q_spectrum().two_sided_gap) << "\n";
  } catch (const Error& e) {
    std::cerr << "no spectral mixing bound: " << e.what() << "\n";
  }
  const double t = wa.densified().degree();
  const double k = cfg.k;
  const double corollary = 64.0 * t * t * (k + 1) * (k + 1) * (cfg.s - k) * (std::ldexp(1.0, cfg.k) - 1.0) /
                           wa.gap2_graph() * std::log(2.0 * static_cast<double>(chain.size()) / cfg.eps);
  bounds << "corollary_bound," << corollary << "\n";
  for (int i = 0; i < static_cast<int>(curve.exact.size()); ++i) {
    // The mixing definition uses the L1 distance, twice the TV column.
    if (2.0 * curve.exact[i] <= cfg.eps) {
      bounds << "l1_crossing," << i << "\n";
      break;
    }
  }
  emit(cfg, "mix.csv", tv_csv(curve));
  if (cfg.out.empty()) {
    std::cerr << bounds.str();
  } else {
    emit(cfg, "mix_bounds.csv", bounds.str());
  }
  return 0;
}

int cmd_report(const RunConfig& cfg) {
  const auto text = read_file(cfg.report_in);
  const auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.contains("entries")) throw Error(ErrorKind::kInvalidInput, "not a report file");
  BoundReport report;
  for (const auto& e : j.at("entries")) {
    BoundEntry entry;
    entry.id = e.value("id", "");
    entry.description = e.value("description", "");
    entry.lhs = e.at("lhs").is_number() ? e.at("lhs").get<double>() : NAN;
    entry.rhs = e.at("rhs").is_number() ? e.at("rhs").get<double>() : NAN;
    entry.slack = e.at("slack").is_number() ? e.at("slack").get<double>() : NAN;
    entry.pass = e.value("pass", false);
    entry.required = e.value("required", true);
    const auto rel = e.value("relation", ">=");
    entry.relation = rel == "<=" ? Relation::kLessEqual : rel == "==" ? Relation::kEqual : Relation::kGreaterEqual;
    std::printf("%-4s %-4s %-42s lhs %-14.8g %s rhs %-14.8g\n", entry.pass ? "ok" : "FAIL",
                entry.required ? "req" : "info", entry.id.c_str(), entry.lhs, rel.c_str(), entry.rhs);
    report.add(std::move(entry));
  }
  return print_verdict(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Densified simplicial complexes: walks, spectra and bound verification"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* gen = app.add_subcommand("gen-graph", "sample a triangle-free regular graph");
  gen->add_option("--n", cfg.n, "vertices")->required();
  gen->add_option("--t", cfg.t, "degree")->required();
  gen->add_option("--seed", cfg.seed, "seed")->capture_default_str();
  gen->add_option("--out", cfg.out, "output file (default: stdout)");

  auto* build_cmd = app.add_subcommand("build", "build the complex and its chains");
  add_input_options(build_cmd, cfg);
  add_walk_options(build_cmd, cfg);

  auto* spec = app.add_subcommand("spectrum", "spectra of the graph, the walk and the split chain");
  add_input_options(spec, cfg);
  add_walk_options(spec, cfg);

  auto* verify = app.add_subcommand("verify", "run the full bound ledger");
  add_input_options(verify, cfg);
  add_walk_options(verify, cfg);
  verify->add_option("--eps", cfg.eps, "mixing accuracy")->capture_default_str();
  verify->add_option("--t-cap", cfg.t_cap, "longest horizon for the mixing comparison")->capture_default_str();
  verify->add_option("--perturb-wj", cfg.perturb_wj, "shift w_J in the transition-table model");

  auto* mix = app.add_subcommand("mix", "distance-to-stationarity curve of the walk");
  add_input_options(mix, cfg);
  add_walk_options(mix, cfg);
  mix->add_option("--eps", cfg.eps, "mixing accuracy")->capture_default_str();
  mix->add_option("--t-max", cfg.t_max, "horizon")->capture_default_str();
  mix->add_option("--trials", cfg.trials, "Monte-Carlo walkers")->capture_default_str();
  mix->add_option("--seed", cfg.seed, "seed")->capture_default_str();
  mix->add_option("--start", cfg.start, "start state index or \"pi\"")->capture_default_str();

  auto* rep = app.add_subcommand("report", "print a saved report");
  rep->add_option("--in", cfg.report_in, "report.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (*gen) return cmd_gen_graph(cfg);
    if (*build_cmd) return cmd_build(cfg);
    if (*spec) return cmd_spectrum(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*mix) return cmd_mix(cfg);
    if (*rep) return cmd_report(cfg);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
