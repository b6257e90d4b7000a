#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hdxlab/spectral.hpp"

namespace hdxlab {

/// Stationary distribution of an irreducible row-stochastic matrix: dense
/// solve, with power iteration (tolerance 1e-13, at most 1e6 steps) when the
/// solve leaves a residual.  Throws kReducible.
Eigen::VectorXd stationary(const Eigen::MatrixXd& p);

/// Finite chain with row-stochastic P (entry (x, y) = probability x -> y).
class MarkovChain {
 public:
  MarkovChain() = default;
  /// Validates rows (sum 1 within `tolerance`), clamps entries in
  /// [-1e-15, 0) to zero and computes pi.  Throws kInvalidInput / kReducible.
  MarkovChain(std::vector<std::string> states, Eigen::MatrixXd p, double tolerance = 1e-12);
  /// Takes a known stationary distribution instead of computing one, so a
  /// reducible chain is allowed.  Throws kInvalidInput unless pi P = pi within 1e-10.
  MarkovChain(std::vector<std::string> states, Eigen::MatrixXd p, Eigen::VectorXd pi, double tolerance = 1e-12);

  std::size_t size() const { return states_.size(); }
  const std::vector<std::string>& states() const { return states_; }
  const Eigen::MatrixXd& p() const { return p_; }
  const Eigen::VectorXd& pi() const { return pi_; }

 private:
  std::vector<std::string> states_;
  Eigen::MatrixXd p_;
  Eigen::VectorXd pi_;
};

/// max |pi(x) P(x,y) - pi(y) P(y,x)|.
double detailed_balance_residual(const MarkovChain& chain);
inline bool is_reversible(const MarkovChain& chain, double tol = 1e-10) {
  return detailed_balance_residual(chain) < tol;
}

/// Symmetrized spectrum for reversible chains, general solver otherwise.
SpectralSummary chain_spectrum(const MarkovChain& chain);

struct Decomposition {
  std::vector<std::vector<int>> partition;
  MarkovChain projection;
  std::vector<MarkovChain> restrictions;
  double gamma = 0.0;  // largest one-step escape probability from a block
};

/// Projection and restriction chains for a partition of the states.  A
/// restriction that is reducible keeps pi restricted to its block.
/// Throws kPartition unless the blocks are nonempty, disjoint and covering.
Decomposition decompose(const MarkovChain& chain, const std::vector<std::vector<int>>& partition);

/// min{lambda_bar / 3, lambda_bar lambda_min / (3 gamma + lambda_bar)}.
double jerrum_bound(double projection_gap, double restriction_gap, double gamma);

struct JerrumEvaluation {
  double projection_gap = 0.0;
  double restriction_gap = 0.0;  // minimum over blocks
  double gamma = 0.0;
  double bound = 0.0;
};

/// One-sided gaps of every chain of the decomposition, combined.
JerrumEvaluation evaluate_jerrum(const Decomposition& dec);

/// E(f, g) = 1/2 sum pi(x) P(x,y) (f(x)-f(y)) (g(x)-g(y)).  Throws kReversibility.
double dirichlet_form(const MarkovChain& chain, const Eigen::VectorXd& f, const Eigen::VectorXd& g);
/// Var(f) = 1/2 sum pi(x) pi(y) (f(x)-f(y))^2.
double variance_form(const MarkovChain& chain, const Eigen::VectorXd& f);

/// log(1 / (eps min pi)) / gap.  Throws kNonMixing when gap <= 0.
double mixing_time_bound(const MarkovChain& chain, double eps, double two_sided_gap);
double mixing_time_bound(const MarkovChain& chain, double eps);

struct TvCurve {
  std::vector<double> exact;    // TV(nu P^t, pi) = 1/2 || nu P^t - pi ||_1
  std::vector<double> sampled;  // same for the empirical occupancy of `trials` walkers
};

/// Exact and Monte-Carlo distance curves for t = 0..t_max.  Deterministic per
/// seed; trials run on up to HDXLAB_THREADS threads.  Throws kRange for
/// t_max < 0 or trials < 1.
TvCurve simulate_tv(const MarkovChain& chain, const Eigen::VectorXd& start, int t_max, int trials,
                    std::uint64_t seed);

/// max over point-mass starts x of || P^t(x, .) - pi ||_1 for t = 0..t_max.
std::vector<double> worst_case_l1_curve(const MarkovChain& chain, int t_max);

/// Number of worker threads allowed by HDXLAB_THREADS (default: hardware).
unsigned worker_threads();

}  // namespace hdxlab
