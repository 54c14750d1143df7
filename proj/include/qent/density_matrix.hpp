#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "qent/state_vector.hpp"
#include "qent/tolerances.hpp"

namespace qent {

// Thrown when a matrix that must be a physical state fails the
// positive-semidefiniteness check.
class PsdError : public std::runtime_error {
 public:
  PsdError(const std::string& what, double eigenvalue)
      : std::runtime_error(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const { return eigenvalue_; }

 private:
  double eigenvalue_;
};

// Hermitian, trace-one, positive-semidefinite matrix (up to the tolerances
// in tolerances.hpp). Hermiticity and trace are always checked at
// construction; the eigenvalue check is O(dim^3) and is only run by
// `validated` or `validate_psd`, since the main producers (partial_trace,
// projectors) are PSD by construction.
class DensityMatrix {
 public:
  explicit DensityMatrix(MatrixXcd entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1) {
      throw std::invalid_argument("DensityMatrix: matrix must be square");
    }
    const double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol::kNorm) {
      throw std::invalid_argument("DensityMatrix: not Hermitian, residue " +
                                  std::to_string(herm));
    }
    const double tr_err = std::abs(m_.trace() - Complex{1.0, 0.0});
    if (tr_err > tol::kNorm) {
      throw std::invalid_argument("DensityMatrix: trace != 1, error " +
                                  std::to_string(tr_err));
    }
  }

  static DensityMatrix validated(MatrixXcd entries) {
    DensityMatrix rho(std::move(entries));
    rho.validate_psd();
    return rho;
  }

  static DensityMatrix pure(const StateVector& psi) {
    return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
  }

  void validate_psd() const {
    const double lo = eigenvalues().minCoeff();
    if (lo < tol::kPsdFloor) {
      throw PsdError("DensityMatrix: eigenvalue " + std::to_string(lo) +
                         " below PSD tolerance",
                     lo);
    }
  }

  Eigen::Index dim() const { return m_.rows(); }
  const MatrixXcd& entries() const { return m_; }

  Eigen::VectorXd eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
  }

 private:
  MatrixXcd m_;
};

// Tr(rho^2). For Hermitian rho this equals the squared Frobenius norm.
inline double purity(const DensityMatrix& rho) {
  return rho.entries().squaredNorm();
}

// S_L(rho) = d/(d-1) * (1 - Tr rho^2), in [0, 1]; 0 iff pure.
inline double linear_entropy(const DensityMatrix& rho) {
  const double d = static_cast<double>(rho.dim());
  return d / (d - 1.0) * (1.0 - purity(rho));
}

// S_V(rho) = -Tr[rho log_base rho]; eigenvalues below the entropy floor
// contribute zero.
inline double von_neumann_entropy(const DensityMatrix& rho, int log_base) {
  if (log_base < 2) {
    throw std::invalid_argument("von_neumann_entropy: log base must be >= 2");
  }
  const Eigen::VectorXd ev = rho.eigenvalues();
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > tol::kEntropyFloor) s -= ev(i) * std::log(ev(i));
  }
  return s / std::log(static_cast<double>(log_base));
}

// Wootters concurrence of a two-qubit state: C = max(0, r1 - r2 - r3 - r4)
// where r_i are the decreasing square roots of the eigenvalues of
// rho * (sy x sy) rho^* (sy x sy). Those eigenvalues are extracted from the
// similar Hermitian matrix sqrt(rho) rho~ sqrt(rho), which a symmetric
// eigensolver handles at machine precision.
inline double concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("concurrence: needs a 4x4 density matrix");
  }
  MatrixXcd yy(4, 4);
  yy.setZero();
  // sigma_y x sigma_y = antidiag(-1, 1, 1, -1)
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const MatrixXcd spin_flipped = yy * rho.entries().conjugate() * yy;

  Eigen::SelfAdjointEigenSolver<MatrixXcd> rho_es(rho.entries());
  MatrixXcd sqrt_rho = MatrixXcd::Zero(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i) {
    // round-off eigenvalues ~1e-16 would turn into 1e-8 under the sqrt and
    // contaminate the subtraction below; treat them as exact zeros
    const double ev = rho_es.eigenvalues()(i);
    if (ev < 1e-13) continue;
    sqrt_rho += std::sqrt(ev) * rho_es.eigenvectors().col(i) *
                rho_es.eigenvectors().col(i).adjoint();
  }
  MatrixXcd m = sqrt_rho * spin_flipped * sqrt_rho;
  m = 0.5 * (m + m.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  const double floor = 1e-13 * std::max(1e-300, es.eigenvalues().maxCoeff());
  std::array<double, 4> r{};
  for (Eigen::Index i = 0; i < 4; ++i) {
    const double ev = es.eigenvalues()(i);
    r[static_cast<std::size_t>(i)] = ev < floor ? 0.0 : std::sqrt(ev);
  }
  std::sort(r.begin(), r.end(), std::greater<>());
  return std::max(0.0, r[0] - r[1] - r[2] - r[3]);
}

}  // namespace qent
