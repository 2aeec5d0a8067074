#include "blowup/chebyshev.hpp"

#include <cmath>
#include <stdexcept>

#include "blowup/kernels.hpp"

namespace blowup::cheb {

Matrix matmul(const Matrix& A, const Matrix& B) {
    if (A.cols != B.rows) throw std::logic_error("matmul shape mismatch");
    Matrix C(A.rows, B.cols);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t k = 0; k < A.cols; ++k) {
            const double aik = A(i, k);
            if (aik == 0.0) continue;
            kernels::axpy(B.cols, aik, &B.a[k * B.cols], &C.a[i * B.cols]);
        }
    return C;
}

std::vector<double> apply(const Matrix& A, const std::vector<double>& x) {
    if (A.cols != x.size()) throw std::logic_error("apply shape mismatch");
    std::vector<double> y(A.rows);
    kernels::matvec(A.rows, A.cols, A.data(), x.data(), y.data());
    return y;
}

std::vector<std::complex<double>> apply(const Matrix& A,
                                        const std::vector<std::complex<double>>& x) {
    if (A.cols != x.size()) throw std::logic_error("apply shape mismatch");
    std::vector<double> re(x.size()), im(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        re[i] = x[i].real();
        im[i] = x[i].imag();
    }
    std::vector<double> yr(A.rows), yi(A.rows);
    kernels::matvec(A.rows, A.cols, A.data(), re.data(), yr.data());
    kernels::matvec(A.rows, A.cols, A.data(), im.data(), yi.data());
    std::vector<std::complex<double>> y(A.rows);
    for (std::size_t i = 0; i < A.rows; ++i) y[i] = {yr[i], yi[i]};
    return y;
}

CollocationGrid make_grid(int N) {
    if (N < 2) throw std::invalid_argument("grid needs N >= 2");
    CollocationGrid g;
    g.N = N;
    const int n = N + 1;
    g.nodes.resize(n);
    for (int j = 0; j <= N; ++j) g.nodes[j] = std::cos(M_PI * j / N);
    g.nodes[0] = 1.0;
    g.nodes[N] = -1.0;

    // Trefethen-style differentiation matrix with negative-sum diagonal.
    g.diff_matrix = Matrix(n, n);
    std::vector<double> c(n, 1.0);
    c[0] = 2.0;
    c[N] = 2.0;
    for (int i = 0; i <= N; ++i)
        if (i % 2 == 1) c[i] = -c[i];
    for (int i = 0; i <= N; ++i) {
        double rowsum = 0.0;
        for (int j = 0; j <= N; ++j) {
            if (i == j) continue;
            const double v = (c[i] / c[j]) / (g.nodes[i] - g.nodes[j]);
            g.diff_matrix(i, j) = v;
            rowsum += v;
        }
        g.diff_matrix(i, i) = -rowsum;
    }
    g.diff2 = matmul(g.diff_matrix, g.diff_matrix);

    // Clenshaw-Curtis weights matched to the node set.
    g.quad_weights.assign(n, 0.0);
    if (N % 2 == 0) {
        g.quad_weights[0] = 1.0 / (double(N) * N - 1.0);
        g.quad_weights[N] = g.quad_weights[0];
        for (int i = 1; i < N; ++i) {
            const double th = M_PI * i / N;
            double v = 1.0;
            for (int k = 1; k < N / 2; ++k) v -= 2.0 * std::cos(2.0 * k * th) / (4.0 * k * k - 1.0);
            v -= std::cos(N * th) / (double(N) * N - 1.0);
            g.quad_weights[i] = 2.0 * v / N;
        }
    } else {
        g.quad_weights[0] = 1.0 / (double(N) * N);
        g.quad_weights[N] = g.quad_weights[0];
        for (int i = 1; i < N; ++i) {
            const double th = M_PI * i / N;
            double v = 1.0;
            for (int k = 1; k <= (N - 1) / 2; ++k)
                v -= 2.0 * std::cos(2.0 * k * th) / (4.0 * k * k - 1.0);
            g.quad_weights[i] = 2.0 * v / N;
        }
    }

    // Nodal <-> Chebyshev coefficient transforms (DCT-I pair).
    g.synthesis = Matrix(n, n);
    g.analysis = Matrix(n, n);
    for (int j = 0; j <= N; ++j)
        for (int k = 0; k <= N; ++k) g.synthesis(j, k) = std::cos(M_PI * j * k / N);
    for (int k = 0; k <= N; ++k)
        for (int j = 0; j <= N; ++j) {
            double v = std::cos(M_PI * j * k / N) * 2.0 / N;
            if (j == 0 || j == N) v *= 0.5;
            if (k == 0 || k == N) v *= 0.5;
            g.analysis(k, j) = v;
        }

    // d/dy in coefficient space: c'_n = (2/c_n) sum_{p>n, p+n odd} p c_p.
    g.coeff_diff = Matrix(n, n);
    for (int m = 0; m <= N; ++m)
        for (int p = m + 1; p <= N; ++p)
            if ((p + m) % 2 == 1) g.coeff_diff(m, p) = (m == 0 ? 1.0 : 2.0) * p;

    // Exact integrals int T_i T_j dy via int T_k dy = 2/(1-k^2) for even k.
    auto ck = [](int k) { return (k % 2 == 1) ? 0.0 : 2.0 / (1.0 - double(k) * k); };
    g.cheb_l2 = Matrix(n, n);
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j) g.cheb_l2(i, j) = 0.5 * (ck(i + j) + ck(i > j ? i - j : j - i));

    return g;
}

Matrix mult_by_y(int N) {
    const int n = N + 1;
    Matrix M(n, n);
    for (int m = 0; m <= N; ++m) {
        if (m == 0) {
            if (N >= 1) M(1, 0) += 1.0;
        } else {
            if (m + 1 <= N) M(m + 1, m) += 0.5;
            M(m - 1, m) += 0.5;
        }
    }
    return M;
}

Matrix mult_by_series(const std::vector<double>& v, int N) {
    const int n = N + 1;
    Matrix M(n, n);
    const int K = static_cast<int>(v.size());
    for (int m = 0; m <= N; ++m)
        for (int k = 0; k < K; ++k) {
            if (k + m <= N) M(k + m, m) += 0.5 * v[k];
            const int d = std::abs(k - m);
            if (d <= N) M(d, m) += 0.5 * v[k];
        }
    return M;
}

std::vector<double> series_inv_nu_plus_y(double nu, int nterms) {
    // 1/(nu+y) = (1/s)[1 + 2 sum (-t)^n T_n], s = sqrt(nu^2-1), t = nu - s
    const double s = std::sqrt(nu * nu - 1.0);
    const double t = nu - s;
    std::vector<double> v(nterms);
    v[0] = 1.0 / s;
    double p = 1.0;
    for (int m = 1; m < nterms; ++m) {
        p *= -t;
        v[m] = 2.0 * p / s;
    }
    return v;
}

std::vector<double> series_inv_sq_nu_plus_y(double nu, int nterms) {
    // 1/(nu+y)^2 = -d/dy 1/(nu+y); differentiate the series termwise:
    // d/dy T_m contributes to lower coefficients; easiest closed route is
    // 1/(nu+y)^2 = (1/s^2)[d/dnu s ...]; use -d/dnu of 1/(nu+y) instead:
    // d/dnu [ (1/s)(1+2 sum (-t)^n T_n) ] with ds/dnu = nu/s, dt/dnu = 1 - nu/s = -t/s.
    const double s = std::sqrt(nu * nu - 1.0);
    const double t = nu - s;
    std::vector<double> v(nterms);
    const double dsdnu = nu / s;
    const double dtdnu = 1.0 - dsdnu;  // = -t/s
    v[0] = dsdnu / (s * s);
    double pn = 1.0;  // (-t)^(n-1) tracker
    for (int m = 1; m < nterms; ++m) {
        // d/dnu [2 (-t)^m / s] = 2 m (-t)^(m-1) (-dtdnu) / s - 2 (-t)^m dsdnu / s^2
        const double mt_m = pn * (-t);
        v[m] = -(2.0 * m * pn * (-dtdnu) / s - 2.0 * mt_m * dsdnu / (s * s));
        pn = mt_m;
    }
    return v;
}

std::vector<double> series_log_nu_plus_y(double nu, int nterms) {
    // nu + y = (1/(2t))(1 + 2t cos th + t^2)  =>  log(nu+y) = -log(2t) + 2 sum (-1)^{n+1} t^n T_n / n
    const double s = std::sqrt(nu * nu - 1.0);
    const double t = nu - s;
    std::vector<double> v(nterms);
    v[0] = -std::log(2.0 * t);
    double p = 1.0;
    for (int m = 1; m < nterms; ++m) {
        p *= t;
        v[m] = 2.0 * ((m % 2 == 1) ? 1.0 : -1.0) * p / m;
    }
    return v;
}

void denoise(std::vector<double>& coeffs, double tau) {
    double mx = 0.0;
    for (double c : coeffs) mx = std::max(mx, std::abs(c));
    if (mx == 0.0) return;
    const double cut = tau * mx;
    for (double& c : coeffs)
        if (std::abs(c) < cut) c = 0.0;
}

}  // namespace blowup::cheb
