#include "hdxlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "hdxlab/error.hpp"

namespace hdxlab {

SpectralSummary summarize(std::vector<double> eigenvalues) {
  std::sort(eigenvalues.begin(), eigenvalues.end(), std::greater<>());
  SpectralSummary out;
  out.eigenvalues = std::move(eigenvalues);
  if (out.eigenvalues.size() <= 1) {
    // A single state has no nontrivial mode; treat it as perfectly mixing.
    out.one_sided_gap = 1.0;
    out.two_sided_gap = 1.0;
    return out;
  }
  const double second = out.eigenvalues[1];
  const double last = out.eigenvalues.back();
  out.one_sided_gap = 1.0 - second;
  out.two_sided_gap = 1.0 - std::max(std::abs(second), std::abs(last));
  return out;
}

std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& symmetric) {
  if (symmetric.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::kInvalidInput, "symmetric eigensolver did not converge");
  }
  std::vector<double> values(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

std::vector<double> reversible_eigenvalues(const Eigen::MatrixXd& p, std::span<const double> pi) {
  const auto n = p.rows();
  Eigen::VectorXd root(n);
  Eigen::VectorXd inv_root(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(pi[i] > 0.0)) {
      throw Error(ErrorKind::kReversibility, "symmetrization needs a strictly positive stationary distribution");
    }
    root(i) = std::sqrt(pi[i]);
    inv_root(i) = 1.0 / root(i);
  }
  Eigen::MatrixXd s = root.asDiagonal() * p * inv_root.asDiagonal();
  // Average with the transpose; the residual asymmetry is the balance error.
  Eigen::MatrixXd sym = 0.5 * (s + s.transpose());
  return symmetric_eigenvalues(sym);
}

std::vector<double> general_real_eigenvalues(const Eigen::MatrixXd& p, double imag_tol) {
  if (p.rows() == 0) return {};
  Eigen::EigenSolver<Eigen::MatrixXd> solver(p, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::kInvalidInput, "general eigensolver did not converge");
  }
  std::vector<double> values;
  values.reserve(p.rows());
  for (const auto& z : solver.eigenvalues()) {
    if (std::abs(z.imag()) > imag_tol) {
      std::ostringstream msg;
      msg << "eigenvalue " << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag())
          << "i is not real";
      throw Error(ErrorKind::kReversibility, msg.str());
    }
    values.push_back(z.real());
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

double multiset_deviation(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double multiset_containment_deviation(std::vector<double> sub, std::vector<double> super, double tol) {
  std::sort(sub.begin(), sub.end());
  std::sort(super.begin(), super.end());
  // Greedy left-to-right matching is optimal for interval matching on a line.
  double worst = 0.0;
  std::size_t j = 0;
  for (double x : sub) {
    while (j < super.size() && super[j] < x - tol) ++j;
    if (j == super.size() || std::abs(super[j] - x) > tol) {
      return std::numeric_limits<double>::infinity();
    }
    worst = std::max(worst, std::abs(super[j] - x));
    ++j;
  }
  return worst;
}

Eigen::VectorXd left_stationary_vector(const Eigen::MatrixXd& p) {
  const auto n = p.rows();
  Eigen::MatrixXd a = p.transpose() - Eigen::MatrixXd::Identity(n, n);
  a.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(n - 1) = 1.0;
  Eigen::VectorXd pi = a.partialPivLu().solve(rhs);
  return pi;
}

std::vector<double> nonzero_part(const std::vector<double>& values, double tol) {
  std::vector<double> out;
  for (double v : values) {
    if (std::abs(v) > tol) out.push_back(v);
  }
  return out;
}

}  // namespace hdxlab
