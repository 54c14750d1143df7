#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/LU>

#include "qent/density_matrix.hpp"
#include "qent/pauli.hpp"
#include "qent/quadrature.hpp"

namespace qent {

// Thermodynamic-limit transverse-field Ising chain, H ~ lambda*XX + Z with
// quantum critical point at lambda = 1. Everything here follows the
// standard free-fermion solution:
//
//   g(l)   = (1/pi) Int_0^pi [cos(kl) + lambda*cos(k(l+1))] / D(k) dk,
//   D(k)   = sqrt(1 + lambda^2 + 2*lambda*cos k)
//          = sqrt((1-lambda)^2 + 4*lambda*cos^2(k/2)),
//   <sz>   = g(0),
//   <sx>   = 0 for lambda <= 1, (1 - lambda^-2)^(1/8) above (broken branch),
//   <szsz>(l) = g(0)^2 - g(l)g(-l),
//   <sxsx>(l) = det[ g(j-k-1) ]_{l x l},
//   <sysy>(l) = det[ g(j-k+1) ]_{l x l},
//
// with l the site separation. Two numerical points that matter:
//  * the two cos terms are integrated together; split apart each piece
//    diverges logarithmically as lambda -> 1 while the sum stays finite,
//  * D(k) is evaluated in the second (cancellation-free) form, otherwise
//    1 + lambda^2 + 2*lambda*cos k underflows to negative near k = pi at
//    lambda ~ 1 and the integrand turns NaN.
//
// The Toeplitz dimension (separation, not separation+1) was fixed by
// validating both candidates against exact-diagonalization extrapolations;
// see tests/test_ising.cpp for the discriminating check.
//
// For lambda > 1 the two-site Pauli table uses the p_xz = 0 choice. That
// table bounds the block entanglement from above but is NOT a physical
// state (its matrix has an eigenvalue around -0.1), so the measures are
// computed from the table via purity_from_pauli; asking for the validated
// matrix via two_site_rho throws for such tables, by design.

inline constexpr int kMaxCorrelatorRange = 256;

// g(l) by converged quadrature of the combined integrand.
inline double g_correlator(double lambda, int l, const QuadratureSpec& quad) {
  if (lambda < 0.0) {
    throw std::invalid_argument("g_correlator: lambda must be >= 0");
  }
  if (std::abs(l) > kMaxCorrelatorRange) {
    throw std::invalid_argument("g_correlator: |l| exceeds " +
                                std::to_string(kMaxCorrelatorRange));
  }
  const double dl = static_cast<double>(l);
  const auto integrand = [lambda, dl](double k) {
    const double c = std::cos(0.5 * k);
    const double d =
        std::sqrt((1.0 - lambda) * (1.0 - lambda) + 4.0 * lambda * c * c);
    return (std::cos(k * dl) + lambda * std::cos(k * (dl + 1.0))) / d;
  };
  try {
    return integrate_to_singular_endpoint(integrand, 0.0, M_PI, quad) / M_PI;
  } catch (const QuadratureError& e) {
    throw QuadratureError("g(" + std::to_string(l) + ") at lambda = " +
                          std::to_string(lambda) + ": " + e.what());
  }
}

// Transverse magnetization; zero through the critical point, then the
// broken-symmetry branch.
inline double sigma_x_mean(double lambda) {
  if (lambda <= 1.0) return 0.0;
  return std::pow(1.0 - 1.0 / (lambda * lambda), 0.125);
}

// All analytic one- and two-point data at one coupling. g(l) is cached for
// l in [-l_max-1, l_max+1], enough for every determinant up to separation
// l_max; the correlators are evaluated eagerly.
class IsingPoint {
 public:
  IsingPoint(double lambda, int l_max, const QuadratureSpec& quad)
      : lambda_(lambda), l_max_(l_max) {
    if (l_max < 1 || l_max > kMaxCorrelatorRange - 1) {
      throw std::invalid_argument("IsingPoint: l_max out of range");
    }
    g_.resize(2 * l_max_ + 3);
    for (int l = -l_max_ - 1; l <= l_max_ + 1; ++l) {
      g_[static_cast<std::size_t>(l + l_max_ + 1)] = g_correlator(lambda, l, quad);
    }
    sx_ = sigma_x_mean(lambda);
    sz_ = g(0);
    xx_.resize(l_max_ + 1);
    yy_.resize(l_max_ + 1);
    zz_.resize(l_max_ + 1);
    for (int l = 1; l <= l_max_; ++l) {
      xx_[l] = toeplitz_correlator(l, -1);
      yy_[l] = toeplitz_correlator(l, +1);
      zz_[l] = sz_ * sz_ - g(l) * g(-l);
      check_range(xx_[l], "xx", l);
      check_range(yy_[l], "yy", l);
      check_range(zz_[l], "zz", l);
    }
  }

  double lambda() const { return lambda_; }
  int l_max() const { return l_max_; }
  double sx_mean() const { return sx_; }
  double sz_mean() const { return sz_; }

  double g(int l) const {
    if (l < -l_max_ - 1 || l > l_max_ + 1) {
      throw std::out_of_range("IsingPoint: g(" + std::to_string(l) +
                              ") not cached (l_max " + std::to_string(l_max_) +
                              ")");
    }
    return g_[static_cast<std::size_t>(l + l_max_ + 1)];
  }

  double xx(int l) const { return correlator(xx_, l); }
  double yy(int l) const { return correlator(yy_, l); }
  double zz(int l) const { return correlator(zz_, l); }

  // det of the size x size Toeplitz matrix A[j][k] = g(j - k + diag_offset).
  // Exposed so the dimension-convention candidates can be compared; the
  // correlators use size = separation with offsets -1 (xx) and +1 (yy).
  double toeplitz_correlator(int size, int diag_offset) const {
    if (size < 1) throw std::invalid_argument("toeplitz: size must be >= 1");
    Eigen::MatrixXd a(size, size);
    for (int j = 0; j < size; ++j) {
      for (int k = 0; k < size; ++k) {
        a(j, k) = g(j - k + diag_offset);  // throws if not cached
      }
    }
    if (size == 1) return a(0, 0);
    return Eigen::PartialPivLU<Eigen::MatrixXd>(a).determinant();
  }

 private:
  double correlator(const std::vector<double>& v, int l) const {
    if (l < 1 || l > l_max_) {
      throw std::out_of_range("IsingPoint: correlator separation " +
                              std::to_string(l) + " out of range");
    }
    return v[static_cast<std::size_t>(l)];
  }

  void check_range(double value, const char* name, int l) const {
    if (std::abs(value) > 1.0 + 1e-9) {
      throw std::runtime_error(std::string("IsingPoint: ") + name + "(" +
                               std::to_string(l) + ") = " +
                               std::to_string(value) +
                               " outside [-1, 1] at lambda = " +
                               std::to_string(lambda_));
    }
  }

  double lambda_;
  int l_max_;
  std::vector<double> g_;
  double sx_ = 0.0;
  double sz_ = 0.0;
  std::vector<double> xx_, yy_, zz_;
};

inline double xx_correlator(const IsingPoint& point, int l) { return point.xx(l); }
inline double yy_correlator(const IsingPoint& point, int l) { return point.yy(l); }
inline double zz_correlator(const IsingPoint& point, int l) { return point.zz(l); }

// rho_j = (I + <sx> sx + <sz> sz) / 2; <sy> = 0 by symmetry.
inline DensityMatrix single_site_rho(const IsingPoint& point) {
  Eigen::Matrix2cd m = 0.5 * (pauli_matrix(kPauliI) +
                              point.sx_mean() * pauli_matrix(kPauliX) +
                              point.sz_mean() * pauli_matrix(kPauliZ));
  return DensityMatrix::validated(m);
}

// Pauli table of rho_{j,j+l}. Exact for lambda <= 1 (where p_xz = 0 holds);
// for lambda > 1 it is the p_xz = 0 upper-bound table (see header note).
inline CorrelatorTable two_site_table(const IsingPoint& point, int l) {
  CorrelatorTable t;
  t.p[kPauliI][kPauliI] = 1.0;
  t.p[kPauliX][kPauliX] = point.xx(l);
  t.p[kPauliY][kPauliY] = point.yy(l);
  t.p[kPauliZ][kPauliZ] = point.zz(l);
  t.p[kPauliI][kPauliX] = t.p[kPauliX][kPauliI] = point.sx_mean();
  t.p[kPauliI][kPauliZ] = t.p[kPauliZ][kPauliI] = point.sz_mean();
  t.validate();
  return t;
}

// Validated two-site state. Throws PsdError (reporting lambda, l and the
// offending eigenvalue) when the table is unphysical, which is the generic
// situation for lambda > 1.
inline DensityMatrix two_site_rho(const IsingPoint& point, int l) {
  try {
    return rho_from_pauli(two_site_table(point, l));
  } catch (const PsdError& e) {
    throw PsdError("two_site_rho at lambda = " + std::to_string(point.lambda()) +
                       ", l = " + std::to_string(l) + ": eigenvalue " +
                       std::to_string(e.eigenvalue()),
                   e.eigenvalue());
  }
}

// E_G^(1) = S_L(rho_j) = 1 - <sx>^2 - <sz>^2.
inline double eg1_ising(const IsingPoint& point) {
  const double sx = point.sx_mean();
  const double sz = point.sz_mean();
  return 1.0 - sx * sx - sz * sz;
}

inline double eg1_ising(double lambda, const QuadratureSpec& quad) {
  const double sz = g_correlator(lambda, 0, quad);
  const double sx = sigma_x_mean(lambda);
  return 1.0 - sx * sx - sz * sz;
}

// G(2,l) in the translation-invariant thermodynamic limit: a single pair
// purity, computed from the Pauli table.
inline double g2l_ising(const IsingPoint& point, int l) {
  return 4.0 / 3.0 * (1.0 - purity_from_pauli(two_site_table(point, l)));
}

inline double g2l_ising(double lambda, int l, const QuadratureSpec& quad) {
  return g2l_ising(IsingPoint(lambda, l, quad), l);
}

// E_G^(2) truncated at l_max: the mean of G(2,l) over l = 1..l_max.
inline double eg2_ising(const IsingPoint& point, int l_max) {
  if (l_max < 1 || l_max > point.l_max()) {
    throw std::invalid_argument("eg2_ising: l_max out of range");
  }
  double sum = 0.0;
  for (int l = 1; l <= l_max; ++l) sum += g2l_ising(point, l);
  return sum / l_max;
}

inline double eg2_ising(double lambda, int l_max, const QuadratureSpec& quad) {
  return eg2_ising(IsingPoint(lambda, l_max, quad), l_max);
}

}  // namespace qent
