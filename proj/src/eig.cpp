#include "blowup/eig.hpp"

#include <cmath>
#include <limits>

#include "blowup/errors.hpp"
#include "blowup/kernels.hpp"

namespace blowup::eig {

namespace {

using cheb::Matrix;

void hessenberg(Matrix& A) {
    const std::size_t n = A.rows;
    if (n < 3) return;
    std::vector<double> v(n), tmp(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        // Householder vector for column k below the subdiagonal.
        double nrm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) nrm += A(i, k) * A(i, k);
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) continue;
        double tail = 0.0;
        for (std::size_t i = k + 2; i < n; ++i) tail += A(i, k) * A(i, k);
        if (tail == 0.0) continue;
        const double x0 = A(k + 1, k);
        const double alpha = (x0 >= 0.0) ? -nrm : nrm;
        double vn = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = A(i, k);
            if (i == k + 1) v[i] -= alpha;
            vn += v[i] * v[i];
        }
        vn = std::sqrt(vn);
        if (vn == 0.0) continue;
        for (std::size_t i = k + 1; i < n; ++i) v[i] /= vn;
        // A <- (I - 2vv^T) A  on rows k+1..n-1, cols k..n-1
        for (std::size_t j = k; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) s += v[i] * A(i, j);
            s *= 2.0;
            for (std::size_t i = k + 1; i < n; ++i) A(i, j) -= s * v[i];
        }
        // A <- A (I - 2vv^T) on cols k+1..n-1, all rows
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) s += A(i, j) * v[j];
            s *= 2.0;
            for (std::size_t j = k + 1; j < n; ++j) A(i, j) -= s * v[j];
        }
    }
    // clean below the first subdiagonal
    for (std::size_t i = 2; i < n; ++i)
        for (std::size_t j = 0; j + 1 < i; ++j) A(i, j) = 0.0;
}

void eig2x2(double a, double b, double c, double d, Complex& e1, Complex& e2) {
    const double tr = a + d;
    const double det = a * d - b * c;
    const double disc = 0.25 * tr * tr - det;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        e1 = {0.5 * tr + s, 0.0};
        e2 = {0.5 * tr - s, 0.0};
    } else {
        const double s = std::sqrt(-disc);
        e1 = {0.5 * tr, s};
        e2 = {0.5 * tr, -s};
    }
}

std::vector<Complex> francis(Matrix& H, int max_sweeps_per_n) {
    const std::size_t n = H.rows;
    const double eps = std::numeric_limits<double>::epsilon();
    std::vector<Complex> evs;
    evs.reserve(n);
    long hi = static_cast<long>(n) - 1;
    long iters = 0;
    const long budget = static_cast<long>(max_sweeps_per_n) * static_cast<long>(n);
    while (hi >= 0) {
        // deflation scan
        long lo = hi;
        while (lo > 0) {
            double s = std::abs(H(lo - 1, lo - 1)) + std::abs(H(lo, lo));
            if (s == 0.0) s = 1.0;
            if (std::abs(H(lo, lo - 1)) < eps * s) {
                H(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            evs.emplace_back(H(hi, hi), 0.0);
            --hi;
            continue;
        }
        if (lo == hi - 1) {
            Complex e1, e2;
            eig2x2(H(lo, lo), H(lo, hi), H(hi, lo), H(hi, hi), e1, e2);
            evs.push_back(e1);
            evs.push_back(e2);
            hi -= 2;
            continue;
        }
        if (++iters > budget) throw EigFailure("Francis QR exceeded iteration budget");
        // double shift from the trailing 2x2 (occasional exceptional shift)
        double trc, det;
        if (iters % 31 == 0) {
            const double s1 = std::abs(H(hi, hi - 1)) + std::abs(H(hi - 1, hi - 2));
            trc = 2.0 * (H(hi, hi) + 0.75 * s1);
            const double t = H(hi, hi) + 0.75 * s1;
            det = t * t;
        } else {
            trc = H(hi - 1, hi - 1) + H(hi, hi);
            det = H(hi - 1, hi - 1) * H(hi, hi) - H(hi - 1, hi) * H(hi, hi - 1);
        }
        double x = H(lo, lo) * H(lo, lo) + H(lo, lo + 1) * H(lo + 1, lo) - trc * H(lo, lo) + det;
        double y = H(lo + 1, lo) * (H(lo, lo) + H(lo + 1, lo + 1) - trc);
        double z = H(lo + 2, lo + 1) * H(lo + 1, lo);
        for (long k = lo; k <= hi - 2; ++k) {
            // Householder on (x,y,z)
            const double nrm = std::sqrt(x * x + y * y + z * z);
            if (nrm > 0.0) {
                const double alpha = (x >= 0.0) ? -nrm : nrm;
                double v0 = x - alpha, v1 = y, v2 = z;
                const double vn = std::sqrt(v0 * v0 + v1 * v1 + v2 * v2);
                if (vn > 0.0) {
                    v0 /= vn;
                    v1 /= vn;
                    v2 /= vn;
                    const long r0 = std::max(lo, k - 1);
                    for (std::size_t j = r0; j < n; ++j) {
                        const double s =
                            2.0 * (v0 * H(k, j) + v1 * H(k + 1, j) + v2 * H(k + 2, j));
                        H(k, j) -= s * v0;
                        H(k + 1, j) -= s * v1;
                        H(k + 2, j) -= s * v2;
                    }
                    const long r1 = std::min(hi, k + 3);
                    for (long i = 0; i <= r1; ++i) {
                        const double s =
                            2.0 * (H(i, k) * v0 + H(i, k + 1) * v1 + H(i, k + 2) * v2);
                        H(i, k) -= s * v0;
                        H(i, k + 1) -= s * v1;
                        H(i, k + 2) -= s * v2;
                    }
                }
            }
            x = H(k + 1, k);
            y = H(k + 2, k);
            z = (k + 3 <= hi) ? H(k + 3, k) : 0.0;
        }
        // final Givens on (x,y)
        const double r = std::hypot(x, y);
        if (r > 0.0) {
            const double cg = x / r, sg = y / r;
            for (std::size_t j = hi - 2; j < n; ++j) {
                const double t1 = H(hi - 1, j), t2 = H(hi, j);
                H(hi - 1, j) = cg * t1 + sg * t2;
                H(hi, j) = -sg * t1 + cg * t2;
            }
            for (long i = 0; i <= hi; ++i) {
                const double t1 = H(i, hi - 1), t2 = H(i, hi);
                H(i, hi - 1) = cg * t1 + sg * t2;
                H(i, hi) = -sg * t1 + cg * t2;
            }
        }
    }
    return evs;
}

}  // namespace

std::vector<Complex> eigenvalues(const cheb::Matrix& A) {
    if (A.rows != A.cols) throw EigFailure("matrix must be square");
    Matrix H = A;
    hessenberg(H);
    return francis(H, 30);
}

std::vector<Complex> inverse_iteration(const cheb::Matrix& A, Complex lambda, int iterations) {
    const std::size_t n = A.rows;
    // Complex LU of (A - lambda I) with partial pivoting. A tiny diagonal
    // regularization keeps the factorization usable at converged eigenvalues.
    std::vector<Complex> M(n * n);
    double anorm = 0.0;
    for (std::size_t i = 0; i < n * n; ++i) anorm = std::max(anorm, std::abs(A.a[i]));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            M[i * n + j] = Complex{A(i, j), 0.0} - (i == j ? lambda : Complex{0.0, 0.0});
    std::vector<std::size_t> piv(n);
    const double tiny = 1e-300 + 1e-20 * anorm * std::numeric_limits<double>::epsilon();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(M[k * n + k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(M[i * n + k]);
            if (v > best) {
                best = v;
                p = i;
            }
        }
        piv[k] = p;
        if (p != k)
            for (std::size_t j = 0; j < n; ++j) std::swap(M[k * n + j], M[p * n + j]);
        if (std::abs(M[k * n + k]) < tiny) M[k * n + k] = Complex{tiny, tiny};
        const Complex pivot = M[k * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex l = M[i * n + k] / pivot;
            M[i * n + k] = l;
            if (l != Complex{0.0, 0.0})
                for (std::size_t j = k + 1; j < n; ++j) M[i * n + j] -= l * M[k * n + j];
        }
    }
    auto solve = [&](std::vector<Complex>& b) {
        for (std::size_t k = 0; k < n; ++k) {
            if (piv[k] != k) std::swap(b[k], b[piv[k]]);
            for (std::size_t i = k + 1; i < n; ++i) b[i] -= M[i * n + k] * b[k];
        }
        for (std::size_t k = n; k-- > 0;) {
            for (std::size_t j = k + 1; j < n; ++j) b[k] -= M[k * n + j] * b[j];
            b[k] /= M[k * n + k];
        }
    };
    // deterministic pseudo-random start (64-bit LCG)
    std::vector<Complex> v(n);
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    auto next = [&]() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return double(state >> 11) / double(1ull << 53);
    };
    for (std::size_t i = 0; i < n; ++i) v[i] = {next() - 0.5, next() - 0.5};
    for (int it = 0; it < iterations; ++it) {
        solve(v);
        double nrm = 0.0;
        for (const auto& z : v) nrm += std::norm(z);
        nrm = std::sqrt(nrm);
        if (!(nrm > 0.0) || !std::isfinite(nrm)) throw EigFailure("inverse iteration broke down");
        for (auto& z : v) z /= nrm;
    }
    return v;
}

}  // namespace blowup::eig
