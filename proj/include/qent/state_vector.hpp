#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "qent/tolerances.hpp"

namespace qent {

using Complex = std::complex<double>;
using VectorXcd = Eigen::VectorXcd;
using MatrixXcd = Eigen::MatrixXcd;

// Bit convention, used by every module in this library:
//   qubit 0 is the MOST significant bit of the basis index.
// For n qubits, basis index b encodes qubit q in bit (n-1-q), so
// |q0 q1 ... q_{n-1}> has index q0*2^{n-1} + q1*2^{n-2} + ... + q_{n-1}.
inline int qubit_bit_position(int n_qubits, int qubit) {
  return n_qubits - 1 - qubit;
}

inline int qubit_value(std::uint64_t basis_index, int n_qubits, int qubit) {
  return static_cast<int>((basis_index >> qubit_bit_position(n_qubits, qubit)) & 1u);
}

// Dense representation wall: 2^20 complex amplitudes = 16 MiB per vector.
inline constexpr int kMaxDenseQubits = 20;

// Normalized pure state of n qubits, amplitudes in the convention above.
class StateVector {
 public:
  StateVector(int n_qubits, VectorXcd amplitudes)
      : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    if (n_qubits_ < 1 || n_qubits_ > kMaxDenseQubits) {
      throw std::invalid_argument("StateVector: n_qubits must be in [1, " +
                                  std::to_string(kMaxDenseQubits) + "], got " +
                                  std::to_string(n_qubits_));
    }
    if (amps_.size() != (Eigen::Index{1} << n_qubits_)) {
      throw std::invalid_argument("StateVector: amplitude count " +
                                  std::to_string(amps_.size()) + " != 2^" +
                                  std::to_string(n_qubits_));
    }
    const double nrm2 = amps_.squaredNorm();
    if (std::abs(nrm2 - 1.0) > tol::kNorm) {
      throw std::invalid_argument("StateVector: not normalized, |psi|^2 = " +
                                  std::to_string(nrm2));
    }
  }

  static StateVector normalized(int n_qubits, VectorXcd amplitudes) {
    const double nrm = amplitudes.norm();
    if (nrm == 0.0) throw std::invalid_argument("StateVector: zero vector");
    return StateVector(n_qubits, amplitudes / nrm);
  }

  static StateVector basis_state(int n_qubits, std::uint64_t index) {
    VectorXcd v = VectorXcd::Zero(Eigen::Index{1} << n_qubits);
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(n_qubits, std::move(v));
  }

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return amps_.size(); }
  const VectorXcd& amplitudes() const { return amps_; }
  Complex amp(std::uint64_t basis_index) const {
    return amps_(static_cast<Eigen::Index>(basis_index));
  }

 private:
  int n_qubits_;
  VectorXcd amps_;
};

}  // namespace qent
