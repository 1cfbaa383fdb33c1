#pragma once

#include "cismr/types.hpp"

namespace cismr::psd {

/// Full spectrum of a symmetric matrix, eigenvalues sorted descending.
/// Eigenvector signs follow a fixed convention (largest-magnitude entry
/// non-negative, ties broken by lowest index) so repeated calls on identical
/// input are bit-identical.
struct EigenSystem {
    Vector values;
    Matrix vectors;
};

EigenSystem sym_eigen(const Matrix& m);

struct InvSqrtDiag {
    int floored = 0;      // eigenvalues raised to the floor
    double floor = 0.0;   // floor actually applied
};

/// Symmetric inverse square root with eigenvalue flooring at
/// rel_floor * max(eigenvalue). Throws NumericError if the matrix is
/// indefinite beyond tolerance or identically zero.
Matrix inv_sqrt(const Matrix& m, double rel_floor = 1e-10, InvSqrtDiag* diag = nullptr);

/// Symmetric PSD square root, negative eigenvalues clipped at zero.
Matrix sqrt_psd(const Matrix& m, double rel_floor = 1e-10);

/// Nearest-correlation repair by alternating projections between the PSD cone
/// and the unit-diagonal set. Returns the first iterate with min eigenvalue
/// >= -tol and unit diagonal within tol; off-diagonals end in [-1, 1].
Matrix nearest_correlation(const Matrix& m, double tol = 1e-8, int max_iter = 100);

} // namespace cismr::psd
