#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qent/density_matrix.hpp"
#include "qent/state_vector.hpp"

namespace qent {

// Subsystem dimension cap for partial_trace: 2^12 = 4096.
inline constexpr int kMaxKeptQubits = 12;

// Reduced density matrix of the qubits in `keep`, tracing out the rest.
// Qubit order in the result follows `keep`: keep[0] is the most significant
// bit of the subsystem index (same convention as StateVector).
//
// The state is reshaped into an M x T matrix (kept index by traced index)
// and the reduction is the Gram matrix M M^dagger, which is Hermitian and
// PSD by construction and has trace |psi|^2 = 1.
inline DensityMatrix partial_trace(const StateVector& psi,
                                   const std::vector<int>& keep) {
  const int n = psi.n_qubits();
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep is empty");
  if (static_cast<int>(keep.size()) > kMaxKeptQubits) {
    throw std::invalid_argument("partial_trace: keeping " +
                                std::to_string(keep.size()) +
                                " qubits exceeds the dimension cap 2^" +
                                std::to_string(kMaxKeptQubits));
  }
  std::vector<bool> kept(n, false);
  for (int q : keep) {
    if (q < 0 || q >= n) {
      throw std::invalid_argument("partial_trace: qubit index " +
                                  std::to_string(q) + " out of range");
    }
    if (kept[q]) {
      throw std::invalid_argument("partial_trace: duplicate qubit index " +
                                  std::to_string(q));
    }
    kept[q] = true;
  }

  const int k = static_cast<int>(keep.size());
  const Eigen::Index rows = Eigen::Index{1} << k;
  const Eigen::Index cols = Eigen::Index{1} << (n - k);

  // Traced qubits in ascending order; order is irrelevant to the result.
  std::vector<int> traced;
  traced.reserve(n - k);
  for (int q = 0; q < n; ++q) {
    if (!kept[q]) traced.push_back(q);
  }

  MatrixXcd m(rows, cols);
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t i = 0; i < dim; ++i) {
    std::uint64_t r = 0;
    for (int j = 0; j < k; ++j) {
      r = (r << 1) | static_cast<std::uint64_t>(qubit_value(i, n, keep[j]));
    }
    std::uint64_t t = 0;
    for (int q : traced) {
      t = (t << 1) | static_cast<std::uint64_t>(qubit_value(i, n, q));
    }
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(t)) = psi.amp(i);
  }

  MatrixXcd rho = m * m.adjoint();
  rho = 0.5 * (rho + rho.adjoint().eval());  // scrub round-off asymmetry
  return DensityMatrix(std::move(rho));
}

}  // namespace qent
