#include "hdxlab/markov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <queue>
#include <sstream>
#include <thread>

#include "hdxlab/error.hpp"
#include "hdxlab/rng.hpp"

namespace hdxlab {

namespace {

bool reaches_all(const Eigen::MatrixXd& p, bool transpose) {
  const auto n = p.rows();
  std::vector<char> seen(n, 0);
  std::queue<Eigen::Index> frontier;
  frontier.push(0);
  seen[0] = 1;
  Eigen::Index reached = 1;
  while (!frontier.empty()) {
    const auto x = frontier.front();
    frontier.pop();
    for (Eigen::Index y = 0; y < n; ++y) {
      const double w = transpose ? p(y, x) : p(x, y);
      if (w > 0.0 && !seen[y]) {
        seen[y] = 1;
        ++reached;
        frontier.push(y);
      }
    }
  }
  return reached == n;
}

double stationarity_residual(const Eigen::MatrixXd& p, const Eigen::VectorXd& pi) {
  return (p.transpose() * pi - pi).cwiseAbs().maxCoeff();
}

}  // namespace

Eigen::VectorXd stationary(const Eigen::MatrixXd& p) {
  const auto n = p.rows();
  if (n == 0) throw Error(ErrorKind::kInvalidInput, "empty chain");
  if (!reaches_all(p, false) || !reaches_all(p, true)) {
    throw Error(ErrorKind::kReducible, "chain is not irreducible");
  }
  Eigen::VectorXd pi = left_stationary_vector(p);
  if (!pi.allFinite() || pi.minCoeff() < -1e-12 || stationarity_residual(p, pi) > 1e-12) {
    // Lazy power iteration sidesteps periodicity.
    pi = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    const Eigen::MatrixXd pt = p.transpose();
    for (int it = 0; it < 1000000; ++it) {
      Eigen::VectorXd next = 0.5 * (pi + pt * pi);
      const double change = (next - pi).cwiseAbs().maxCoeff();
      pi = std::move(next);
      if (change < 1e-13) break;
    }
  }
  pi = pi.cwiseMax(0.0);
  pi /= pi.sum();
  return pi;
}

MarkovChain::MarkovChain(std::vector<std::string> states, Eigen::MatrixXd p, double tolerance)
    : states_(std::move(states)), p_(std::move(p)) {
  const auto n = p_.rows();
  if (p_.cols() != n || static_cast<std::size_t>(n) != states_.size()) {
    throw Error(ErrorKind::kInvalidInput, "transition matrix shape does not match the state list");
  }
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = 0; y < n; ++y) {
      double& v = p_(x, y);
      if (!std::isfinite(v) || v < -1e-15) {
        std::ostringstream msg;
        msg << "invalid transition probability " << v << " at (" << states_[x] << ", " << states_[y] << ")";
        throw Error(ErrorKind::kInvalidInput, msg.str());
      }
      if (v < 0.0) v = 0.0;
    }
    const double row = p_.row(x).sum();
    if (std::abs(row - 1.0) > tolerance) {
      std::ostringstream msg;
      msg << "row " << states_[x] << " sums to " << row;
      throw Error(ErrorKind::kInvalidInput, msg.str());
    }
  }
  pi_ = stationary(p_);
}

MarkovChain::MarkovChain(std::vector<std::string> states, Eigen::MatrixXd p, Eigen::VectorXd pi, double tolerance)
    : states_(std::move(states)), p_(std::move(p)), pi_(std::move(pi)) {
  const auto n = p_.rows();
  if (p_.cols() != n || static_cast<std::size_t>(n) != states_.size() || pi_.size() != n) {
    throw Error(ErrorKind::kInvalidInput, "transition matrix shape does not match the state list");
  }
  for (Eigen::Index x = 0; x < n; ++x) {
    if (std::abs(p_.row(x).sum() - 1.0) > tolerance || p_.row(x).minCoeff() < -1e-15) {
      throw Error(ErrorKind::kInvalidInput, "row " + states_[x] + " is not a probability vector");
    }
  }
  p_ = p_.cwiseMax(0.0);
  if (pi_.minCoeff() < 0.0 || std::abs(pi_.sum() - 1.0) > 1e-10 || stationarity_residual(p_, pi_) > 1e-10) {
    throw Error(ErrorKind::kInvalidInput, "supplied distribution is not stationary");
  }
}

double detailed_balance_residual(const MarkovChain& chain) {
  const auto& p = chain.p();
  const auto& pi = chain.pi();
  double worst = 0.0;
  for (Eigen::Index x = 0; x < p.rows(); ++x) {
    for (Eigen::Index y = x + 1; y < p.rows(); ++y) {
      worst = std::max(worst, std::abs(pi(x) * p(x, y) - pi(y) * p(y, x)));
    }
  }
  return worst;
}

SpectralSummary chain_spectrum(const MarkovChain& chain) {
  if (is_reversible(chain)) {
    const auto& pi = chain.pi();
    return summarize(reversible_eigenvalues(chain.p(), std::span<const double>(pi.data(), pi.size())));
  }
  return summarize(general_real_eigenvalues(chain.p()));
}

Decomposition decompose(const MarkovChain& chain, const std::vector<std::vector<int>>& partition) {
  const auto n = static_cast<int>(chain.size());
  std::vector<int> block(n, -1);
  for (std::size_t i = 0; i < partition.size(); ++i) {
    if (partition[i].empty()) throw Error(ErrorKind::kPartition, "empty partition block");
    for (int x : partition[i]) {
      if (x < 0 || x >= n) throw Error(ErrorKind::kPartition, "partition names a state out of range");
      if (block[x] != -1) throw Error(ErrorKind::kPartition, "partition blocks overlap at " + chain.states()[x]);
      block[x] = static_cast<int>(i);
    }
  }
  for (int x = 0; x < n; ++x) {
    if (block[x] == -1) throw Error(ErrorKind::kPartition, "state " + chain.states()[x] + " is in no block");
  }

  const auto& p = chain.p();
  const auto& pi = chain.pi();
  const auto m = static_cast<Eigen::Index>(partition.size());
  Decomposition dec;
  dec.partition = partition;

  Eigen::MatrixXd flow = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd mass = Eigen::VectorXd::Zero(m);
  for (int x = 0; x < n; ++x) {
    mass(block[x]) += pi(x);
    double escape = 0.0;
    for (int y = 0; y < n; ++y) {
      if (p(x, y) == 0.0) continue;
      flow(block[x], block[y]) += pi(x) * p(x, y);
      if (block[y] != block[x]) escape += p(x, y);
    }
    dec.gamma = std::max(dec.gamma, escape);
  }
  for (Eigen::Index i = 0; i < m; ++i) flow.row(i) /= mass(i);
  // Rounding in the flow sums; renormalize rows that the formula makes stochastic.
  for (Eigen::Index i = 0; i < m; ++i) flow.row(i) /= flow.row(i).sum();
  std::vector<std::string> names;
  for (Eigen::Index i = 0; i < m; ++i) names.push_back("block" + std::to_string(i));
  dec.projection = MarkovChain(std::move(names), std::move(flow), 1e-10);

  for (const auto& members : partition) {
    const auto size = static_cast<Eigen::Index>(members.size());
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(size, size);
    std::vector<std::string> names_i;
    for (Eigen::Index a = 0; a < size; ++a) {
      names_i.push_back(chain.states()[members[a]]);
      double stay = 1.0;
      for (Eigen::Index b = 0; b < size; ++b) {
        if (a == b) continue;
        r(a, b) = p(members[a], members[b]);
        stay -= r(a, b);
      }
      r(a, a) = stay;
    }
    try {
      dec.restrictions.emplace_back(names_i, r, 1e-10);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kReducible) throw;
      // A block that splits internally: pi restricted to it is still stationary.
      Eigen::VectorXd local(size);
      for (Eigen::Index a = 0; a < size; ++a) local(a) = pi(members[a]);
      dec.restrictions.emplace_back(std::move(names_i), std::move(r), local / local.sum(), 1e-10);
    }
  }
  return dec;
}

double jerrum_bound(double projection_gap, double restriction_gap, double gamma) {
  const double first = projection_gap / 3.0;
  const double denom = 3.0 * gamma + projection_gap;
  if (denom <= 0.0) return std::min(first, 0.0);
  return std::min(first, projection_gap * restriction_gap / denom);
}

JerrumEvaluation evaluate_jerrum(const Decomposition& dec) {
  JerrumEvaluation out;
  out.projection_gap = chain_spectrum(dec.projection).one_sided_gap;
  out.restriction_gap = 1.0;
  for (const auto& r : dec.restrictions) {
    out.restriction_gap = std::min(out.restriction_gap, chain_spectrum(r).one_sided_gap);
  }
  out.gamma = dec.gamma;
  out.bound = jerrum_bound(out.projection_gap, out.restriction_gap, out.gamma);
  return out;
}

double dirichlet_form(const MarkovChain& chain, const Eigen::VectorXd& f, const Eigen::VectorXd& g) {
  if (!is_reversible(chain)) throw Error(ErrorKind::kReversibility, "Dirichlet form needs a reversible chain");
  const auto& p = chain.p();
  const auto& pi = chain.pi();
  double total = 0.0;
  for (Eigen::Index x = 0; x < p.rows(); ++x) {
    for (Eigen::Index y = 0; y < p.rows(); ++y) {
      total += pi(x) * p(x, y) * (f(x) - f(y)) * (g(x) - g(y));
    }
  }
  return 0.5 * total;
}

double variance_form(const MarkovChain& chain, const Eigen::VectorXd& f) {
  const auto& pi = chain.pi();
  double total = 0.0;
  for (Eigen::Index x = 0; x < pi.size(); ++x) {
    for (Eigen::Index y = 0; y < pi.size(); ++y) {
      const double d = f(x) - f(y);
      total += pi(x) * pi(y) * d * d;
    }
  }
  return 0.5 * total;
}

double mixing_time_bound(const MarkovChain& chain, double eps, double two_sided_gap) {
  if (!(two_sided_gap > 0.0)) {
    throw Error(ErrorKind::kNonMixing, "two-sided gap is not positive; no mixing bound");
  }
  if (!(eps > 0.0)) throw Error(ErrorKind::kRange, "eps must be positive");
  return std::log(1.0 / (eps * chain.pi().minCoeff())) / two_sided_gap;
}

double mixing_time_bound(const MarkovChain& chain, double eps) {
  double gap = chain_spectrum(chain).two_sided_gap;
  if (gap < 1e-12) gap = 0.0;  // eigensolver noise around a zero gap
  return mixing_time_bound(chain, eps, gap);
}

unsigned worker_threads() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HDXLAB_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

TvCurve simulate_tv(const MarkovChain& chain, const Eigen::VectorXd& start, int t_max, int trials,
                    std::uint64_t seed) {
  if (t_max < 0) throw Error(ErrorKind::kRange, "t_max must be nonnegative");
  if (trials < 1) throw Error(ErrorKind::kRange, "need at least one trial");
  const auto n = static_cast<Eigen::Index>(chain.size());
  if (start.size() != n) throw Error(ErrorKind::kInvalidInput, "start distribution has the wrong length");
  const auto& p = chain.p();
  const auto& pi = chain.pi();

  TvCurve curve;
  Eigen::RowVectorXd nu = start.transpose() / start.sum();
  for (int t = 0; t <= t_max; ++t) {
    curve.exact.push_back(0.5 * (nu - pi.transpose()).cwiseAbs().sum());
    nu = nu * p;
  }

  // Inverse-CDF sampling tables.
  std::vector<std::vector<double>> cdf(n, std::vector<double>(n));
  for (Eigen::Index x = 0; x < n; ++x) {
    double acc = 0.0;
    for (Eigen::Index y = 0; y < n; ++y) cdf[x][y] = (acc += p(x, y));
  }
  std::vector<double> start_cdf(n);
  {
    double acc = 0.0;
    const double total = start.sum();
    for (Eigen::Index x = 0; x < n; ++x) start_cdf[x] = (acc += start(x) / total);
  }
  auto draw = [](const std::vector<double>& table, double u) {
    auto it = std::upper_bound(table.begin(), table.end(), u * table.back());
    if (it == table.end()) --it;
    return static_cast<Eigen::Index>(it - table.begin());
  };

  const unsigned workers = std::min<unsigned>(worker_threads(), static_cast<unsigned>(trials));
  std::vector<std::vector<long>> counts(workers, std::vector<long>((t_max + 1) * n, 0));
  auto run = [&](unsigned w) {
    for (int trial = static_cast<int>(w); trial < trials; trial += static_cast<int>(workers)) {
      Rng rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(trial))));
      Eigen::Index x = draw(start_cdf, rng.uniform());
      for (int t = 0; t <= t_max; ++t) {
        ++counts[w][t * n + x];
        x = draw(cdf[x], rng.uniform());
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& th : pool) th.join();

  for (int t = 0; t <= t_max; ++t) {
    double tv = 0.0;
    for (Eigen::Index x = 0; x < n; ++x) {
      long c = 0;
      for (unsigned w = 0; w < workers; ++w) c += counts[w][t * n + x];
      tv += std::abs(static_cast<double>(c) / trials - pi(x));
    }
    curve.sampled.push_back(0.5 * tv);
  }
  return curve;
}

std::vector<double> worst_case_l1_curve(const MarkovChain& chain, int t_max) {
  if (t_max < 0) throw Error(ErrorKind::kRange, "t_max must be nonnegative");
  const auto n = static_cast<Eigen::Index>(chain.size());
  const Eigen::RowVectorXd pi = chain.pi().transpose();
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
  std::vector<double> out;
  for (int t = 0; t <= t_max; ++t) {
    double worst = 0.0;
    for (Eigen::Index x = 0; x < n; ++x) worst = std::max(worst, (power.row(x) - pi).cwiseAbs().sum());
    out.push_back(worst);
    power = power * chain.p();
  }
  return out;
}

}  // namespace hdxlab
