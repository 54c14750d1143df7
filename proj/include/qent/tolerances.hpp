#pragma once

namespace qent::tol {

// Normalization / trace / Hermiticity checks on constructed objects.
inline constexpr double kNorm = 1e-10;

// Eigenvalues of a density matrix may dip slightly negative from round-off.
inline constexpr double kPsdFloor = -1e-8;

// Eigenvalues below this contribute zero to entropy sums (0*log 0 = 0).
inline constexpr double kEntropyFloor = 1e-14;

// Largest imaginary residue tolerated when a quantity must be real.
inline constexpr double kImagResidue = 1e-10;

}  // namespace qent::tol
