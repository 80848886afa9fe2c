#pragma once

#include "gkmtr/wave.hpp"

namespace gkmtr {

// Affine coordinates b_{i,j}(hbar) of the tau-function, read from the
// fermionic two-point function.  Entries stored for i <= imax, j <= jmax,
// i + j <= wmax, per hbar-order m = 1..hmax (the hbar^0 part vanishes).
struct BTable {
  int hmax = 0;
  int imax = 0;
  int jmax = 0;
  int wmax = 0;
  std::vector<std::vector<Scalar>> b;  // b[m][(i)*(jmax+1)+j]

  const Scalar& get(int m, int i, int j) const;
  // b_{i,j} as an hbar-polynomial (coefficients for hbar^0..hmax)
  std::vector<Scalar> hbar_poly(int i, int j) const;
  bool in_range(int i, int j) const {
    return i >= 0 && j >= 0 && i <= imax && j <= jmax && i + j <= wmax;
  }
};

// Two-point function via W(Q*(w), Q(z))(Psi*(w) Psi(z)) / (x(w) - x(z)):
// per hbar-order the division is exact polynomial division in w over the
// z-coefficient ring; a surviving remainder is an internal error.  The
// expansion-membership (no nonnegative powers of w or z) is asserted.
// For deformed potentials the Gaussian frame is admissible but not
// canonical, so this dispatches to the frame route below.
BTable two_point(const Potential& P, int hmax, int imax, int jmax, int wmax = -1);

// Affine coordinates by canonicalizing the wave frame directly: Gaussian
// elimination of the nonnegative z-powers of Psi_1..Psi_K against higher
// frames, then b_{k-1,i} is the z^{-i-1} tail of the k-th canonical vector.
// Works for polynomial and deformed potentials alike; for polynomial ones it
// is the independent cross-check of the division formula.
BTable two_point_frame(const Potential& P, int hmax, int imax, int jmax, int wmax = -1);

}  // namespace gkmtr
