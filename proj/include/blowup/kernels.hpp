#pragma once

#include <cstddef>
#include <string>

// Dense double-precision inner loops behind the spectral and finite-difference
// code. Scalar reference implementations always exist; on x86-64 an AVX2+FMA
// variant is selected at runtime (override with BLOWUPLAB_SIMD=scalar|avx2).

namespace blowup::kernels {

// y[i] += a*x[i]
void axpy(std::size_t n, double a, const double* x, double* y);
// y[i] = a*x[i] + b*y[i]
void axpby(std::size_t n, double a, const double* x, double b, double* y);
// x[i] *= a
void scal(std::size_t n, double a, double* x);
// sum x[i]*y[i]
double dot(std::size_t n, const double* x, const double* y);
// out[i] = x[i]*y[i]
void vmul(std::size_t n, const double* x, const double* y, double* out);
// y = A*x, A row-major rows x cols
void matvec(std::size_t rows, std::size_t cols, const double* A, const double* x, double* y);

// Name of the active lane: "scalar" or "avx2".
const std::string& active_lane();
// Force a lane (used by the equivalence tests). Returns false if unavailable.
bool force_lane(const std::string& name);

namespace detail {
// Scalar reference kernels, exposed for equivalence testing.
void axpy_scalar(std::size_t, double, const double*, double*);
void axpby_scalar(std::size_t, double, const double*, double, double*);
void scal_scalar(std::size_t, double, double*);
double dot_scalar(std::size_t, const double*, const double*);
void vmul_scalar(std::size_t, const double*, const double*, double*);
void matvec_scalar(std::size_t, std::size_t, const double*, const double*, double*);
#if defined(__x86_64__)
void axpy_avx2(std::size_t, double, const double*, double*);
void axpby_avx2(std::size_t, double, const double*, double, double*);
void scal_avx2(std::size_t, double, double*);
double dot_avx2(std::size_t, const double*, const double*);
void vmul_avx2(std::size_t, const double*, const double*, double*);
void matvec_avx2(std::size_t, std::size_t, const double*, const double*, double*);
#endif
}  // namespace detail

}  // namespace blowup::kernels
