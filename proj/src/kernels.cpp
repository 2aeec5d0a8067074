#include "blowup/kernels.hpp"

#include <cstdlib>

namespace blowup::kernels {

namespace detail {

void axpy_scalar(std::size_t n, double a, const double* x, double* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpby_scalar(std::size_t n, double a, const double* x, double b, double* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] = a * x[i] + b * y[i];
}

void scal_scalar(std::size_t n, double a, double* x) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

double dot_scalar(std::size_t n, const double* x, const double* y) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

void vmul_scalar(std::size_t n, const double* x, const double* y, double* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * y[i];
}

void matvec_scalar(std::size_t rows, std::size_t cols, const double* A, const double* x,
                   double* y) {
    for (std::size_t i = 0; i < rows; ++i) {
        const double* row = A + i * cols;
        double s = 0.0;
        for (std::size_t j = 0; j < cols; ++j) s += row[j] * x[j];
        y[i] = s;
    }
}

}  // namespace detail

namespace {

struct Dispatch {
    void (*axpy)(std::size_t, double, const double*, double*);
    void (*axpby)(std::size_t, double, const double*, double, double*);
    void (*scal)(std::size_t, double, double*);
    double (*dot)(std::size_t, const double*, const double*);
    void (*vmul)(std::size_t, const double*, const double*, double*);
    void (*matvec)(std::size_t, std::size_t, const double*, const double*, double*);
    std::string lane;
};

Dispatch make_scalar() {
    using namespace detail;
    return {axpy_scalar, axpby_scalar, scal_scalar, dot_scalar, vmul_scalar, matvec_scalar,
            "scalar"};
}

#if defined(__x86_64__)
Dispatch make_avx2() {
    using namespace detail;
    return {axpy_avx2, axpby_avx2, scal_avx2, dot_avx2, vmul_avx2, matvec_avx2, "avx2"};
}
#endif

bool avx2_available() {
#if defined(__x86_64__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Dispatch select_initial() {
    const char* env = std::getenv("BLOWUPLAB_SIMD");
    std::string want = env ? env : "auto";
#if defined(__x86_64__)
    if (want == "avx2") return avx2_available() ? make_avx2() : make_scalar();
    if (want == "scalar") return make_scalar();
    if (avx2_available()) return make_avx2();
#endif
    return make_scalar();
}

Dispatch& dispatch() {
    static Dispatch d = select_initial();
    return d;
}

}  // namespace

void axpy(std::size_t n, double a, const double* x, double* y) { dispatch().axpy(n, a, x, y); }
void axpby(std::size_t n, double a, const double* x, double b, double* y) {
    dispatch().axpby(n, a, x, b, y);
}
void scal(std::size_t n, double a, double* x) { dispatch().scal(n, a, x); }
double dot(std::size_t n, const double* x, const double* y) { return dispatch().dot(n, x, y); }
void vmul(std::size_t n, const double* x, const double* y, double* out) {
    dispatch().vmul(n, x, y, out);
}
void matvec(std::size_t rows, std::size_t cols, const double* A, const double* x, double* y) {
    dispatch().matvec(rows, cols, A, x, y);
}

const std::string& active_lane() { return dispatch().lane; }

bool force_lane(const std::string& name) {
    if (name == "scalar") {
        dispatch() = make_scalar();
        return true;
    }
#if defined(__x86_64__)
    if (name == "avx2" && avx2_available()) {
        dispatch() = make_avx2();
        return true;
    }
#endif
    return false;
}

}  // namespace blowup::kernels
