#pragma once

#include "nkh/matrix.hpp"

namespace nkh {

struct So3Diag {
  Matrix m;     // in SO(3)
  Matrix n;     // in SO(3)
  Matrix diag;  // m * C * n^T, diagonal, entries may be negative
};

/// Diagonalizes an invertible real 3x3 matrix as M C N^T = diag with
/// M, N in SO(3).  Float backend runs an SVD (Jacobi eigensolver on C^T C)
/// with determinant-sign repair; the exact backends are accepted only when
/// C is already diagonal.
So3Diag so3_diagonalize(const Matrix& c, double tol = 1e-12, int max_sweeps = 64);

/// Cyclic Jacobi eigensolver for a symmetric float matrix.
/// Returns (V, eigenvalues) with S = V diag(eig) V^T, V orthogonal.
std::pair<Matrix, std::vector<double>> jacobi_symmetric_eigen(const Matrix& s,
                                                              int max_sweeps = 64);

/// Random special orthogonal matrix with exact rational entries, built from
/// the Cayley transform of a skew matrix.  Used by invariance tests.
Matrix rational_so_matrix(int n, unsigned long seed);

}  // namespace nkh
