#pragma once

#include <complex>
#include <string>
#include <vector>

#include "blowup/chebyshev.hpp"

// The collocated linearized operator L_alpha on [-1,1]: nodal applications,
// the Sobolev-type inner products, the discrete spectrum against the known
// eigen-structure, and the generalized-eigenfunction log obstruction.

namespace blowup::linop {

using Complex = std::complex<double>;
using cheb::CollocationGrid;
using cheb::Matrix;

struct GridFunctionPair {
    std::vector<Complex> q1, q2;

    GridFunctionPair() = default;
    explicit GridFunctionPair(std::size_t n) : q1(n), q2(n) {}
    std::size_t size() const { return q1.size(); }
};

GridFunctionPair from_real(const std::vector<double>& q1, const std::vector<double>& q2);

// Componentwise collocation application; no boundary conditions are imposed
// (the operator degenerates at y = +-1).
GridFunctionPair apply_L_alpha(double alpha, const CollocationGrid& g,
                               const GridFunctionPair& q);

// Modified free wave operator with the q1(-1) subtraction.
GridFunctionPair apply_free_modified(const CollocationGrid& g, const GridFunctionPair& q);

// <q,r>_k: top derivatives of both components plus the order-0 form with its
// boundary term. Throws UnderResolved when k+1 > N/2.
Complex inner_k(const CollocationGrid& g, const GridFunctionPair& q, const GridFunctionPair& r,
                int k);
double norm_k(const CollocationGrid& g, const GridFunctionPair& q, int k);

// <<q,r>>_k = <<q1,r1>>_{k+1} + <<q2,r2>>_k with <<f,g>>_m = (d^m f, d^m g) + (f,g).
Complex inner_dblk(const CollocationGrid& g, const GridFunctionPair& q,
                   const GridFunctionPair& r, int k);
double norm_dblk(const CollocationGrid& g, const GridFunctionPair& q, int k);

// Re <Lfree q, q>_k + 0.5 |q|_k^2  (<= quadrature tolerance for resolved q).
double free_dissipativity_check(const CollocationGrid& g, const GridFunctionPair& q, int k);

// Explicit solve of -Lfree q = f by antiderivatives (dense route used to
// cross-check apply_free_modified).
GridFunctionPair solve_minus_free(const CollocationGrid& g, const GridFunctionPair& f);

// Symmetry modes from their exact Chebyshev expansions.
GridFunctionPair mode_f0(double alpha, const CollocationGrid& g);
GridFunctionPair mode_f1(double alpha, const CollocationGrid& g);
GridFunctionPair mode_g0(double alpha, const CollocationGrid& g);

// Exact coefficient-space assembly of L_alpha (2(N+1) square) and the diagonal
// similarity scaling used to keep the eigensolve well conditioned.
Matrix assemble_coefficient_operator(double alpha, const CollocationGrid& g);
std::vector<double> similarity_scaling(const CollocationGrid& g, int p1 = 2, int p2 = 1);
Matrix scaled_coefficient_operator(double alpha, const CollocationGrid& g, int p1 = 2,
                                   int p2 = 1);

enum class EigenClass { mode_zero, mode_one, stable_halfplane, unresolved };

struct EigenEntry {
    Complex value;
    // |(L - lambda) v| / |v| in the <<.,.>>_0 norm. The k_norm-weighted norm
    // spans ~13 decades between the lowest and highest retained modes at
    // N = 64, so a relative residual there cannot resolve below ~1e-4 in
    // double precision; the order-0 member of the same family can.
    double residual = 0.0;
    EigenClass cls = EigenClass::unresolved;
    bool resolved = false;
};

struct SpectralReport {
    double alpha = 0.0;
    int N = 0;
    int k_norm = 4;
    std::vector<EigenEntry> eigenvalues;      // sorted by descending real part
    std::vector<GridFunctionPair> vectors;    // filled on request, same order
};

// Dense eigensolve of the collocated operator (conjugated to the Chebyshev
// coefficient basis for conditioning; same spectrum). Requires N <= 256.
SpectralReport assemble_and_eig(double alpha, const CollocationGrid& g, int k_norm = 4,
                                bool keep_vectors = false);

// |(L - lambda) v| / |v| in the <<.,.>>_k norm, with coefficients below the
// representation accuracy of v (1e-13 of its largest coefficient) truncated
// before differentiating.
double eigen_residual(double alpha, const CollocationGrid& g, const GridFunctionPair& v,
                      Complex lambda, int k_norm);

std::string to_json(const SpectralReport& rep);
void write_report_json(const SpectralReport& rep, const std::string& path);

// max(|L g0 - f0|, |L^2 g0|) in the <<.,.>>_0 norm.
double jordan_block_check(double alpha, const CollocationGrid& g);

struct AppendixBResult {
    double c_log = 0.0;        // fitted coefficient of (1+y)^2 log(1+y)
    double residual = 0.0;     // max fit residual over the window
    double A = 0.0, B = 0.0, C = 0.0;  // fitted smooth coefficients
    double taylor_c0 = 0.0, taylor_c1 = 0.0, taylor_c2 = 0.0;  // G at -1
};

// The alpha = 3 log obstruction: quadrature of the generalized-eigenfunction
// integral formula near y = -1 and a local-model fit; c_log ~ -27/4.
AppendixBResult appendixB_obstruction(double delta = 1e-6, double window = 0.1, int npts = 60);

// Source function g of the obstruction ODE (for direct checks).
double appendixB_g(double y);

}  // namespace blowup::linop
