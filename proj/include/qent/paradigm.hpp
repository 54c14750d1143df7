#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "qent/state_vector.hpp"

namespace qent {

enum class ParadigmTag { GHZ, W, EPR };

inline std::string to_string(ParadigmTag tag) {
  switch (tag) {
    case ParadigmTag::GHZ: return "GHZ";
    case ParadigmTag::W: return "W";
    case ParadigmTag::EPR: return "EPR";
  }
  throw std::logic_error("unknown paradigm tag");
}

// One of the three paradigmatic entangled families at a given size.
// EPR_N is a tensor product of N/2 Bell pairs, so N must be even; the
// entangled pairs are (0,1), (2,3), ... in qubit indices (adjacent sites).
struct ParadigmFamily {
  ParadigmTag tag;
  int n;

  ParadigmFamily(ParadigmTag t, int n_qubits) : tag(t), n(n_qubits) {
    if (n < 2 || n > kMaxDenseQubits) {
      throw std::invalid_argument("ParadigmFamily: N must be in [2, " +
                                  std::to_string(kMaxDenseQubits) + "]");
    }
    if (tag == ParadigmTag::EPR && n % 2 != 0) {
      throw std::invalid_argument("ParadigmFamily: EPR_N requires even N");
    }
  }
};

struct MeasureTriple {
  double eg1;
  double g21;
  double eg2;
};

inline StateVector build_state(const ParadigmFamily& family) {
  const int n = family.n;
  const Eigen::Index dim = Eigen::Index{1} << n;
  VectorXcd v = VectorXcd::Zero(dim);
  switch (family.tag) {
    case ParadigmTag::GHZ: {
      const double a = 1.0 / std::sqrt(2.0);
      v(0) = a;
      v(dim - 1) = a;
      break;
    }
    case ParadigmTag::W: {
      const double a = 1.0 / std::sqrt(static_cast<double>(n));
      for (int j = 0; j < n; ++j) {
        v(Eigen::Index{1} << qubit_bit_position(n, j)) = a;
      }
      break;
    }
    case ParadigmTag::EPR: {
      // |Phi+>^(n/2): every basis state whose pairs (2j, 2j+1) agree,
      // amplitude 2^{-n/4} each (2^{n/2} of them).
      const double a = std::pow(2.0, -0.25 * n);
      const std::uint64_t pairs = std::uint64_t{1} << (n / 2);
      for (std::uint64_t bits = 0; bits < pairs; ++bits) {
        std::uint64_t idx = 0;
        for (int j = n / 2 - 1; j >= 0; --j) {
          const std::uint64_t b = (bits >> j) & 1u;
          idx = (idx << 2) | (b << 1) | b;
        }
        v(static_cast<Eigen::Index>(idx)) = a;
      }
      break;
    }
  }
  return StateVector(n, std::move(v));
}

// Closed forms for (E_G^(1), G(2,1), E_G^(2)). Each value is an integer
// ratio evaluated with a single floating division.
inline MeasureTriple closed_form(const ParadigmFamily& family) {
  const double n = family.n;
  switch (family.tag) {
    case ParadigmTag::GHZ:
      return {1.0, 2.0 / 3.0, 2.0 / 3.0};
    case ParadigmTag::EPR:
      return {1.0, (n - 2.0) / (2.0 * (n - 1.0)),
              (2.0 * n - 1.0) * (n - 2.0) / (2.0 * (n - 1.0) * (n - 1.0))};
    case ParadigmTag::W: {
      const double g = 16.0 * (n - 2.0) / (3.0 * n * n);
      return {4.0 * (n - 1.0) / (n * n), g, g};
    }
  }
  throw std::logic_error("unknown paradigm tag");
}

// N -> infinity limits of the closed forms.
inline MeasureTriple thermodynamic_limits(ParadigmTag tag) {
  switch (tag) {
    case ParadigmTag::GHZ: return {1.0, 2.0 / 3.0, 2.0 / 3.0};
    case ParadigmTag::EPR: return {1.0, 0.5, 1.0};
    case ParadigmTag::W: return {0.0, 0.0, 0.0};
  }
  throw std::logic_error("unknown paradigm tag");
}

}  // namespace qent
