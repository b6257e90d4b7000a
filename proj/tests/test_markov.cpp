#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <functional>
#include <random>

#include "hdxlab/error.hpp"
#include "hdxlab/graph.hpp"
#include "hdxlab/markov.hpp"
#include "oracle.hpp"

using namespace hdxlab;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no exception");
  return ErrorKind::kInvalidInput;
}

std::vector<std::string> names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("s" + std::to_string(i));
  return out;
}

MarkovChain chain_of(const Eigen::MatrixXd& p) { return MarkovChain(names(p.rows()), p); }

// Random walk on a random connected weighted graph with a spanning path.
MarkovChain random_reversible(int n, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> w(0.1, 2.0);
  std::bernoulli_distribution extra(0.4);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = w(gen);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (extra(gen)) a(i, j) = a(j, i) = w(gen);
    }
  }
  return chain_of(oracle::row_normalize(a));
}

// Projection and restrictions written out from their definitions.
Eigen::MatrixXd projection_oracle(const MarkovChain& c, const std::vector<std::vector<int>>& blocks) {
  const auto m = static_cast<Eigen::Index>(blocks.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double mass = 0.0;
    for (int x : blocks[i]) mass += c.pi()(x);
    for (Eigen::Index j = 0; j < m; ++j) {
      for (int x : blocks[i]) {
        for (int y : blocks[j]) out(i, j) += c.pi()(x) * c.p()(x, y) / mass;
      }
    }
  }
  return out;
}

Eigen::MatrixXd restriction_oracle(const MarkovChain& c, const std::vector<int>& block) {
  const auto m = static_cast<Eigen::Index>(block.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    double stay = 1.0;
    for (Eigen::Index b = 0; b < m; ++b) {
      if (a == b) continue;
      out(a, b) = c.p()(block[a], block[b]);
      stay -= out(a, b);
    }
    out(a, a) = stay;
  }
  return out;
}

}  // namespace

TEST_CASE("stationary distributions") {
  Eigen::MatrixXd ds(3, 3);
  ds << 0.2, 0.5, 0.3, 0.5, 0.1, 0.4, 0.3, 0.4, 0.3;
  const auto u = stationary(ds);
  for (int i = 0; i < 3; ++i) CHECK(u(i) == doctest::Approx(1.0 / 3).epsilon(1e-13));

  for (auto [a, b] : {std::pair{0.3, 0.6}, std::pair{0.9, 0.05}, std::pair{1.0, 1.0}}) {
    Eigen::MatrixXd p(2, 2);
    p << 1 - a, a, b, 1 - b;
    const auto pi = chain_of(p).pi();
    CHECK(pi(0) == doctest::Approx(b / (a + b)).epsilon(1e-13));
    CHECK(pi(1) == doctest::Approx(a / (a + b)).epsilon(1e-13));
  }

  Eigen::MatrixXd reducible(3, 3);
  reducible << 1, 0, 0, 0.5, 0.5, 0, 0, 0, 1;
  CHECK(kind_of([&] { stationary(reducible); }) == ErrorKind::kReducible);
  Eigen::MatrixXd bad(2, 2);
  bad << 0.5, 0.4, 0.5, 0.5;
  CHECK(kind_of([&] { chain_of(bad); }) == ErrorKind::kInvalidInput);

  std::mt19937_64 gen(3);
  for (int rep = 0; rep < 10; ++rep) {
    const auto c = random_reversible(9, gen);
    CHECK((c.pi() - oracle::power_stationary(c.p())).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((c.pi().transpose() * c.p() - c.pi().transpose()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("detailed balance") {
  CHECK(detailed_balance_residual(chain_of(normalized_adjacency(WeightedGraph::petersen()))) < 1e-12);
  std::mt19937_64 gen(5);
  CHECK(detailed_balance_residual(random_reversible(10, gen)) < 1e-12);

  Eigen::MatrixXd cyc(3, 3);
  cyc << 0, 1, 0, 0, 0, 1, 1, 0, 0;
  const auto c = chain_of(cyc);
  CHECK(detailed_balance_residual(c) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK_FALSE(is_reversible(c));
}

TEST_CASE("decompositions") {
  std::mt19937_64 gen(7);
  const auto c = random_reversible(8, gen);

  const auto trivial = decompose(c, {{0, 1, 2, 3, 4, 5, 6, 7}});
  CHECK(trivial.projection.size() == 1);
  CHECK(trivial.projection.p()(0, 0) == doctest::Approx(1.0));
  CHECK((trivial.restrictions[0].p() - c.p()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(trivial.gamma == 0.0);

  std::vector<std::vector<int>> singles;
  for (int i = 0; i < 8; ++i) singles.push_back({i});
  const auto fine = decompose(c, singles);
  CHECK((fine.projection.p() - c.p()).cwiseAbs().maxCoeff() < 1e-14);
  for (const auto& r : fine.restrictions) {
    CHECK(r.size() == 1);
    CHECK(r.p()(0, 0) == 1.0);
  }

  const std::vector<std::vector<int>> blocks{{0, 3, 5}, {1, 2}, {4, 6, 7}};
  const auto dec = decompose(c, blocks);
  CHECK((dec.projection.p() - projection_oracle(c, blocks)).cwiseAbs().maxCoeff() < 1e-14);
  double gamma = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    CHECK((dec.restrictions[i].p() - restriction_oracle(c, blocks[i])).cwiseAbs().maxCoeff() < 1e-14);
    for (int x : blocks[i]) {
      double inside = 0.0;
      for (int y : blocks[i]) inside += c.p()(x, y);
      gamma = std::max(gamma, 1.0 - inside);
    }
  }
  CHECK(dec.gamma == doctest::Approx(gamma).epsilon(1e-14));
  CHECK(detailed_balance_residual(dec.projection) < 1e-10);
  for (const auto& r : dec.restrictions) CHECK(detailed_balance_residual(r) < 1e-10);

  CHECK(kind_of([&] { decompose(c, {{0, 1, 2}, {3, 4}}); }) == ErrorKind::kPartition);
  CHECK(kind_of([&] { decompose(c, {{0, 1, 2, 3}, {3, 4, 5, 6, 7}}); }) == ErrorKind::kPartition);
  CHECK(kind_of([&] { decompose(c, {{0, 1, 2, 3, 4, 5, 6, 7}, {}}); }) == ErrorKind::kPartition);
}

TEST_CASE("Jerrum bound") {
  CHECK(jerrum_bound(0.0, 0.7, 0.3) == 0.0);
  CHECK(jerrum_bound(0.6, 0.1, 0.0) == doctest::Approx(std::min(0.6 / 3, 0.1)));
  CHECK(jerrum_bound(0.6, 0.5, 0.0) == doctest::Approx(0.2));
  CHECK(jerrum_bound(0.3, 0.2, 0.5) == doctest::Approx(std::min(0.1, 0.3 * 0.2 / (1.5 + 0.3))));

  std::mt19937_64 gen(11);
  for (int rep = 0; rep < 20; ++rep) {
    const auto c = random_reversible(10, gen);
    std::vector<std::vector<int>> blocks(3);
    for (int x = 0; x < 10; ++x) blocks[x % 3].push_back(x);
    const auto ev = evaluate_jerrum(decompose(c, blocks));
    const double gap = 1.0 - oracle::eigenvalues(c.p())[1];
    CHECK(ev.bound <= gap + 1e-9);
  }
}

TEST_CASE("Dirichlet and variance forms") {
  std::mt19937_64 gen(13);
  const auto c = random_reversible(9, gen);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(9);
  CHECK(std::abs(dirichlet_form(c, ones, ones)) < 1e-15);
  CHECK(std::abs(variance_form(c, ones)) < 1e-15);

  // Right eigenvector for lambda_2 through the symmetrized matrix.
  const Eigen::VectorXd sq = c.pi().cwiseSqrt();
  const Eigen::MatrixXd sym = sq.asDiagonal() * c.p() * sq.cwiseInverse().asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (sym + sym.transpose()));
  const Eigen::Index second = 9 - 2;  // ascending order
  const Eigen::VectorXd f = sq.cwiseInverse().asDiagonal() * es.eigenvectors().col(second);
  const double gap = 1.0 - es.eigenvalues()(second);
  CHECK(dirichlet_form(c, f, f) / variance_form(c, f) == doctest::Approx(gap).epsilon(1e-8));

  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    Eigen::VectorXd g(9);
    for (int i = 0; i < 9; ++i) g(i) = u(gen);
    const double mean = c.pi().dot(g);
    const double second_moment = c.pi().dot(g.cwiseProduct(g));
    CHECK(variance_form(c, g) == doctest::Approx(second_moment - mean * mean).epsilon(1e-12));
    CHECK(dirichlet_form(c, g, g) / variance_form(c, g) >= gap - 1e-8);
  }

  Eigen::MatrixXd cyc(3, 3);
  cyc << 0, 1, 0, 0, 0, 1, 1, 0, 0;
  CHECK(kind_of([&] { dirichlet_form(chain_of(cyc), ones.head(3), ones.head(3)); }) == ErrorKind::kReversibility);
}

TEST_CASE("mixing time bound") {
  Eigen::MatrixXd lazy(2, 2);
  lazy << 0.5, 0.5, 0.5, 0.5;
  const auto c = chain_of(lazy);
  CHECK(chain_spectrum(c).two_sided_gap == doctest::Approx(1.0));
  for (double eps : {0.01, 0.05, 0.25}) CHECK(mixing_time_bound(c, eps) == doctest::Approx(std::log(2.0 / eps)));
  CHECK(mixing_time_bound(c, 1.0, 0.5) == doctest::Approx(std::log(2.0) / 0.5));
  CHECK(kind_of([&] { mixing_time_bound(chain_of(normalized_adjacency(WeightedGraph::complete(2))), 0.1); }) ==
        ErrorKind::kNonMixing);
  CHECK(kind_of([&] { mixing_time_bound(c, 0.1, 0.0); }) == ErrorKind::kNonMixing);
}

TEST_CASE("TV curves") {
  Eigen::MatrixXd half(2, 2);
  half << 0.5, 0.5, 0.5, 0.5;
  const auto c = chain_of(half);
  Eigen::VectorXd point(2);
  point << 1.0, 0.0;
  const auto curve = simulate_tv(c, point, 3, 500, 1);
  CHECK(curve.exact[0] == doctest::Approx(0.5));
  for (int t = 1; t <= 3; ++t) CHECK(curve.exact[t] < 1e-15);

  const auto at_pi = simulate_tv(c, c.pi(), 0, 10, 1);
  REQUIRE(at_pi.exact.size() == 1);
  CHECK(at_pi.exact[0] < 1e-15);

  // Exact curve matches explicit powering and is non-increasing for a lazy chain.
  std::mt19937_64 gen(17);
  const auto r = random_reversible(7, gen);
  const Eigen::MatrixXd lp = 0.5 * (r.p() + Eigen::MatrixXd::Identity(7, 7));
  const auto lc = chain_of(lp);
  Eigen::VectorXd e0 = Eigen::VectorXd::Zero(7);
  e0(3) = 1.0;
  const auto tv = simulate_tv(lc, e0, 40, 4000, 99);
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(7, 7);
  for (int t = 0; t <= 40; ++t) {
    CHECK(tv.exact[t] == doctest::Approx(0.5 * (power.row(3) - lc.pi().transpose()).cwiseAbs().sum()).epsilon(1e-12));
    if (t > 0) CHECK(tv.exact[t] <= tv.exact[t - 1] + 1e-15);
    power = power * lp;
  }
  CHECK(tv.sampled.back() < 0.06);
  CHECK(tv.sampled.front() == doctest::Approx(tv.exact.front()));

  // Deterministic per seed and independent of the thread count.
  setenv("HDXLAB_THREADS", "1", 1);
  const auto one = simulate_tv(lc, e0, 10, 1000, 5);
  setenv("HDXLAB_THREADS", "4", 1);
  const auto four = simulate_tv(lc, e0, 10, 1000, 5);
  unsetenv("HDXLAB_THREADS");
  CHECK(one.sampled == four.sampled);
  CHECK(simulate_tv(lc, e0, 10, 1000, 6).sampled != one.sampled);

  const auto worst = worst_case_l1_curve(lc, 40);
  for (int t = 0; t <= 40; ++t) CHECK(worst[t] >= 2.0 * tv.exact[t] - 1e-12);

  CHECK(kind_of([&] { simulate_tv(c, point, -1, 10, 1); }) == ErrorKind::kRange);
  CHECK(kind_of([&] { simulate_tv(c, point, 3, 0, 1); }) == ErrorKind::kRange);
}
