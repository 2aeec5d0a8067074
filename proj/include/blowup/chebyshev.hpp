#pragma once

#include <complex>
#include <cstddef>
#include <vector>

// Chebyshev-Gauss-Lobatto collocation: nodes, nodal differentiation matrices,
// Clenshaw-Curtis weights, nodal<->coefficient transforms, and the exact
// coefficient-space operators (differentiation, multiplication by y, by an
// expanded function) used to assemble well-conditioned spectral operators.

namespace blowup::cheb {

struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;  // row-major

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    const double* data() const { return a.data(); }
    double* data() { return a.data(); }
};

Matrix matmul(const Matrix& A, const Matrix& B);
std::vector<double> apply(const Matrix& A, const std::vector<double>& x);
std::vector<std::complex<double>> apply(const Matrix& A,
                                        const std::vector<std::complex<double>>& x);

struct CollocationGrid {
    int N = 0;                       // polynomial degree; N+1 nodes
    std::vector<double> nodes;       // cos(j pi / N), decreasing from 1 to -1
    Matrix diff_matrix;              // first-derivative collocation operator
    Matrix diff2;                    // cached second derivative
    std::vector<double> quad_weights;  // Clenshaw-Curtis
    Matrix synthesis;                // coefficients -> nodal values
    Matrix analysis;                 // nodal values -> coefficients
    Matrix coeff_diff;               // d/dy in coefficient space
    Matrix cheb_l2;                  // exact Gram of T_i,T_j in L^2(-1,1)

    std::size_t size() const { return nodes.size(); }
};

CollocationGrid make_grid(int N);

// Coefficient-space multiplication operators (exact on the truncated space).
Matrix mult_by_y(int N);
Matrix mult_by_series(const std::vector<double>& v, int N);

// Chebyshev expansions on [-1,1], plain coefficients (c0 multiplies T_0):
//   1/(nu+y), 1/(nu+y)^2, log(nu+y), for nu > 1.
std::vector<double> series_inv_nu_plus_y(double nu, int nterms);
std::vector<double> series_inv_sq_nu_plus_y(double nu, int nterms);
std::vector<double> series_log_nu_plus_y(double nu, int nterms);

// Zero coefficients below tau * max|coeff| (spectral noise-floor truncation).
void denoise(std::vector<double>& coeffs, double tau = 1e-13);

}  // namespace blowup::cheb
