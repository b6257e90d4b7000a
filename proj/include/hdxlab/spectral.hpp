#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace hdxlab {

/// Comparison tolerances shared by every verification routine.
struct Tolerances {
  double spectral = 1e-9;   // eigenvalue and gap comparisons
  double balance = 1e-12;   // stochasticity, detailed balance, weight balance
};

/// Eigenvalues of a transition matrix sorted descending, plus the two gaps.
struct SpectralSummary {
  std::vector<double> eigenvalues;
  double one_sided_gap = 0.0;
  double two_sided_gap = 0.0;

  double second() const { return eigenvalues.size() > 1 ? eigenvalues[1] : 1.0; }
  double smallest() const { return eigenvalues.empty() ? 1.0 : eigenvalues.back(); }
};

SpectralSummary summarize(std::vector<double> eigenvalues);

// Sorted descending.
std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& symmetric);

/// Eigenvalues of a row-stochastic matrix that is reversible with respect to
/// `pi`, computed on D^{1/2} P D^{-1/2}.  Entries of `pi` must be positive.
std::vector<double> reversible_eigenvalues(const Eigen::MatrixXd& p, std::span<const double> pi);

/// General (non-symmetric) eigensolve.  Throws kReversibility if any
/// eigenvalue has |imag| > imag_tol.
std::vector<double> general_real_eigenvalues(const Eigen::MatrixXd& p, double imag_tol = 1e-8);

/// Largest pairwise deviation after sorting; +inf when the sizes differ.
double multiset_deviation(std::vector<double> a, std::vector<double> b);

/// Max deviation of a matching that embeds every element of `sub` into a
/// distinct element of `super` within `tol`; +inf when no such matching exists.
double multiset_containment_deviation(std::vector<double> sub, std::vector<double> super, double tol);

/// Normalized left eigenvector of a row-stochastic matrix for eigenvalue 1,
/// from a dense solve of pi (P - I) = 0 with sum(pi) = 1.  No irreducibility
/// check; see markov.hpp for the validated entry point.
Eigen::VectorXd left_stationary_vector(const Eigen::MatrixXd& p);

/// Drops entries with |x| <= tol.
std::vector<double> nonzero_part(const std::vector<double>& values, double tol);

}  // namespace hdxlab
