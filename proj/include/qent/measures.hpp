#pragma once

#include <stdexcept>
#include <string>

#include "qent/partial_trace.hpp"
#include "qent/state_vector.hpp"

namespace qent {

// Global entanglement E_G^(1): the mean over sites of the linear entropy
// between one qubit and the rest, 2 - (2/N) sum_j Tr(rho_j^2).
inline double meyer_wallach(const StateVector& psi) {
  const int n = psi.n_qubits();
  if (n < 2) throw std::invalid_argument("meyer_wallach: needs >= 2 qubits");
  double purity_sum = 0.0;
  for (int j = 0; j < n; ++j) {
    purity_sum += purity(partial_trace(psi, {j}));
  }
  return 2.0 - 2.0 / n * purity_sum;
}

// G(2,l): average linear entropy of two-qubit blocks at separation l with
// the rest, (4/3)(1 - (1/(N-l)) sum_{j=0}^{N-l-1} Tr rho_{j,j+l}^2).
// Open-chain pair indexing: pairs (j, j+l) without wrap-around.
inline double g2_of_state(const StateVector& psi, int l) {
  const int n = psi.n_qubits();
  if (l < 1 || l > n - 1) {
    throw std::invalid_argument("g2_of_state: separation " + std::to_string(l) +
                                " out of range for " + std::to_string(n) +
                                " qubits");
  }
  double purity_sum = 0.0;
  for (int j = 0; j + l < n; ++j) {
    purity_sum += purity(partial_trace(psi, {j, j + l}));
  }
  return 4.0 / 3.0 * (1.0 - purity_sum / (n - l));
}

// Cyclic variant: averages over all N pairs (j, (j+l) mod N). For states of
// periodic chains this respects the ring structure; the open form above is
// the default everywhere.
inline double g2_of_state_cyclic(const StateVector& psi, int l) {
  const int n = psi.n_qubits();
  if (l < 1 || l > n - 1) {
    throw std::invalid_argument("g2_of_state_cyclic: separation out of range");
  }
  double purity_sum = 0.0;
  for (int j = 0; j < n; ++j) {
    purity_sum += purity(partial_trace(psi, {j, (j + l) % n}));
  }
  return 4.0 / 3.0 * (1.0 - purity_sum / n);
}

// E_G^(2): arithmetic mean of G(2,l) over all separations l = 1..N-1.
inline double eg2_of_state(const StateVector& psi) {
  const int n = psi.n_qubits();
  if (n < 3) throw std::invalid_argument("eg2_of_state: needs >= 3 qubits");
  double sum = 0.0;
  for (int l = 1; l <= n - 1; ++l) sum += g2_of_state(psi, l);
  return sum / (n - 1);
}

}  // namespace qent
