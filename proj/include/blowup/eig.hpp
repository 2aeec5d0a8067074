#pragma once

#include <complex>
#include <vector>

#include "blowup/chebyshev.hpp"

// Dense real nonsymmetric eigensolver: Householder Hessenberg reduction and
// Francis double-shift QR for eigenvalues, inverse iteration on the shifted
// matrix for eigenvectors. Sized for the collocated operators (n <= ~600).

namespace blowup::eig {

using Complex = std::complex<double>;

// All eigenvalues of A (square, row-major). Throws EigFailure past the
// iteration cap (30 n sweeps).
std::vector<Complex> eigenvalues(const cheb::Matrix& A);

// One eigenvector for the given (converged) eigenvalue by inverse iteration
// with a deterministic start; returns a unit 2-norm complex vector.
std::vector<Complex> inverse_iteration(const cheb::Matrix& A, Complex lambda,
                                       int iterations = 3);

}  // namespace blowup::eig
