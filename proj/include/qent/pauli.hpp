#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qent/density_matrix.hpp"
#include "qent/tolerances.hpp"

namespace qent {

// Pauli axis indices used throughout: 0 = identity, 1 = x, 2 = y, 3 = z.
enum PauliAxis : int { kPauliI = 0, kPauliX = 1, kPauliY = 2, kPauliZ = 3 };

inline const Eigen::Matrix2cd& pauli_matrix(int axis) {
  static const std::array<Eigen::Matrix2cd, 4> mats = [] {
    std::array<Eigen::Matrix2cd, 4> m;
    const Complex i{0.0, 1.0};
    m[kPauliI] << 1, 0, 0, 1;
    m[kPauliX] << 0, 1, 1, 0;
    m[kPauliY] << 0, -i, i, 0;
    m[kPauliZ] << 1, 0, 0, -1;
    return m;
  }();
  return mats[axis];
}

inline Eigen::Matrix4cd pauli_kron(int a, int b) {
  Eigen::Matrix4cd out;
  const auto& pa = pauli_matrix(a);
  const auto& pb = pauli_matrix(b);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.block<2, 2>(2 * r, 2 * c) = pa(r, c) * pb;
  return out;
}

// The 16 real coefficients p[a][b] of the two-qubit Pauli expansion
//   rho = (1/4) sum_{a,b} p[a][b] sigma^a x sigma^b.
// p[0][0] = 1 by normalization, all entries in [-1, 1].
struct CorrelatorTable {
  std::array<std::array<double, 4>, 4> p{};

  void validate() const {
    if (std::abs(p[0][0] - 1.0) > tol::kNorm) {
      throw std::invalid_argument("CorrelatorTable: p[0][0] must be 1, got " +
                                  std::to_string(p[0][0]));
    }
    for (const auto& row : p) {
      for (double v : row) {
        if (std::abs(v) > 1.0 + 1e-9) {
          throw std::invalid_argument(
              "CorrelatorTable: coefficient magnitude " + std::to_string(v) +
              " exceeds 1");
        }
      }
    }
  }
};

// p[a][b] = Tr[(sigma^a x sigma^b) rho]; the first factor acts on the
// most-significant qubit of the pair. Rejects inputs whose coefficients
// carry more imaginary residue than round-off allows.
inline CorrelatorTable pauli_decompose(const DensityMatrix& rho) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("pauli_decompose: needs a 4x4 density matrix");
  }
  CorrelatorTable table;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const Complex c = (pauli_kron(a, b) * rho.entries()).trace();
      if (std::abs(c.imag()) > tol::kImagResidue) {
        throw std::runtime_error(
            "pauli_decompose: imaginary residue " + std::to_string(c.imag()) +
            " in p[" + std::to_string(a) + "][" + std::to_string(b) + "]");
      }
      table.p[a][b] = c.real();
    }
  }
  table.validate();
  return table;
}

inline MatrixXcd matrix_from_pauli(const CorrelatorTable& table) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      if (table.p[a][b] != 0.0) m += table.p[a][b] * pauli_kron(a, b);
    }
  }
  return 0.25 * m;
}

// Reassemble the state and validate positivity; an unphysical table (one
// whose matrix has an eigenvalue below the PSD floor) is rejected.
inline DensityMatrix rho_from_pauli(const CorrelatorTable& table) {
  table.validate();
  return DensityMatrix::validated(matrix_from_pauli(table));
}

// Tr rho^2 = (1/4) sum p[a][b]^2, from Pauli orthogonality
// Tr[sigma^a sigma^b] = 2 delta_ab. Defined for any table, physical or not.
inline double purity_from_pauli(const CorrelatorTable& table) {
  double s = 0.0;
  for (const auto& row : table.p) {
    for (double v : row) s += v * v;
  }
  return 0.25 * s;
}

}  // namespace qent
