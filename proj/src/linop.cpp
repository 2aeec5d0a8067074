#include "blowup/linop.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "blowup/eig.hpp"
#include "blowup/errors.hpp"
#include "blowup/io.hpp"
#include "blowup/kernels.hpp"
#include "blowup/quadrature.hpp"

namespace blowup::linop {

namespace {

void check_compat(const CollocationGrid& g, const GridFunctionPair& q) {
    if (q.q1.size() != g.size() || q.q2.size() != g.size())
        throw DimensionMismatch("grid function does not match grid");
}

std::vector<double> real_part(const std::vector<Complex>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].real();
    return r;
}

std::vector<double> imag_part(const std::vector<Complex>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].imag();
    return r;
}

}  // namespace

GridFunctionPair from_real(const std::vector<double>& q1, const std::vector<double>& q2) {
    GridFunctionPair q(q1.size());
    for (std::size_t i = 0; i < q1.size(); ++i) {
        q.q1[i] = {q1[i], 0.0};
        q.q2[i] = {q2[i], 0.0};
    }
    return q;
}

GridFunctionPair apply_L_alpha(double alpha, const CollocationGrid& g,
                               const GridFunctionPair& q) {
    check_compat(g, q);
    const std::size_t n = g.size();
    const double nu = std::sqrt(1.0 + alpha);
    auto dq1 = cheb::apply(g.diff_matrix, q.q1);
    auto d2q1 = cheb::apply(g.diff2, q.q1);
    auto dq2 = cheb::apply(g.diff_matrix, q.q2);
    GridFunctionPair out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double y = g.nodes[i];
        out.q1[i] = -y * dq1[i] + q.q2[i];
        out.q2[i] = d2q1[i] - (2.0 * alpha / (nu + y)) * dq1[i] - q.q2[i] - y * dq2[i];
    }
    return out;
}

GridFunctionPair apply_free_modified(const CollocationGrid& g, const GridFunctionPair& q) {
    check_compat(g, q);
    const std::size_t n = g.size();
    auto dq1 = cheb::apply(g.diff_matrix, q.q1);
    auto d2q1 = cheb::apply(g.diff2, q.q1);
    auto dq2 = cheb::apply(g.diff_matrix, q.q2);
    const Complex bnd = q.q1[n - 1];  // value at y = -1 (nodes decrease)
    GridFunctionPair out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double y = g.nodes[i];
        out.q1[i] = -y * dq1[i] + q.q2[i] - bnd;
        out.q2[i] = d2q1[i] - q.q2[i] - y * dq2[i];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Inner products as fixed quadratic forms in Chebyshev coefficient space.
// Bilinearity is then exact by construction, which the Gram/dual-basis
// machinery requires.

namespace {

struct FormCache {
    // scalar forms: D^m' E D^m (+E), per m
    std::map<int, Matrix> deriv_gram;  // Dm^T E Dm
    Matrix boundary;                   // b b^T with b_n = (-1)^n
    std::vector<Matrix> coeff_pow;     // cached powers of coeff_diff
};

std::map<int, FormCache>& cache_map() {
    static std::map<int, FormCache> m;
    return m;
}
std::mutex cache_mu;

const Matrix& coeff_diff_pow(const CollocationGrid& g, FormCache& fc, int m) {
    if (fc.coeff_pow.empty()) {
        Matrix ident(g.size(), g.size());
        for (std::size_t i = 0; i < g.size(); ++i) ident(i, i) = 1.0;
        fc.coeff_pow.push_back(ident);
    }
    while (static_cast<int>(fc.coeff_pow.size()) <= m)
        fc.coeff_pow.push_back(cheb::matmul(g.coeff_diff, fc.coeff_pow.back()));
    return fc.coeff_pow[m];
}

const Matrix& deriv_gram(const CollocationGrid& g, int m) {
    std::lock_guard<std::mutex> lk(cache_mu);
    FormCache& fc = cache_map()[g.N];
    auto it = fc.deriv_gram.find(m);
    if (it != fc.deriv_gram.end()) return it->second;
    const Matrix& Dm = coeff_diff_pow(g, fc, m);
    // Dm^T * E * Dm
    Matrix EDm = cheb::matmul(g.cheb_l2, Dm);
    Matrix DmT(Dm.cols, Dm.rows);
    for (std::size_t i = 0; i < Dm.rows; ++i)
        for (std::size_t j = 0; j < Dm.cols; ++j) DmT(j, i) = Dm(i, j);
    Matrix G = cheb::matmul(DmT, EDm);
    return fc.deriv_gram.emplace(m, std::move(G)).first->second;
}

// b^T a = value at y=-1 of the Chebyshev series.
double value_at_minus1(const std::vector<double>& coeffs) {
    double s = 0.0;
    for (std::size_t m = 0; m < coeffs.size(); ++m)
        s += (m % 2 == 0) ? coeffs[m] : -coeffs[m];
    return s;
}

// Quadratic form x^T (Dm^T E Dm) y via cached matrices.
double form_apply(const Matrix& G, const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> t(G.rows);
    kernels::matvec(G.rows, G.cols, G.data(), y.data(), t.data());
    return kernels::dot(x.size(), x.data(), t.data());
}

struct CoeffPair {
    std::vector<double> re1, im1, re2, im2;
};

CoeffPair to_coeffs(const CollocationGrid& g, const GridFunctionPair& q) {
    CoeffPair c;
    c.re1 = cheb::apply(g.analysis, real_part(q.q1));
    c.im1 = cheb::apply(g.analysis, imag_part(q.q1));
    c.re2 = cheb::apply(g.analysis, real_part(q.q2));
    c.im2 = cheb::apply(g.analysis, imag_part(q.q2));
    return c;
}

// sum over the four real combinations of  <x, y>_G = x^T G conj(y)
Complex hermitian_form(const Matrix& G, const std::vector<double>& xr,
                       const std::vector<double>& xi, const std::vector<double>& yr,
                       const std::vector<double>& yi) {
    const double rr = form_apply(G, xr, yr);
    const double ii = form_apply(G, xi, yi);
    const double ir = form_apply(G, xi, yr);
    const double ri = form_apply(G, xr, yi);
    return {rr + ii, ir - ri};
}

}  // namespace

Complex inner_k(const CollocationGrid& g, const GridFunctionPair& q, const GridFunctionPair& r,
                int k) {
    check_compat(g, q);
    check_compat(g, r);
    if (k < 0) throw DomainError("k >= 0 required");
    if (k + 1 > g.N / 2) throw UnderResolved("k+1 exceeds the trusted differentiation order");
    const CoeffPair a = to_coeffs(g, q);
    const CoeffPair b = to_coeffs(g, r);
    const Matrix& G1 = deriv_gram(g, 1);
    const Matrix& G0 = deriv_gram(g, 0);
    Complex s = hermitian_form(G1, a.re1, a.im1, b.re1, b.im1);
    s += hermitian_form(G0, a.re2, a.im2, b.re2, b.im2);
    const Complex qb{value_at_minus1(a.re1), value_at_minus1(a.im1)};
    const Complex rb{value_at_minus1(b.re1), value_at_minus1(b.im1)};
    s += qb * std::conj(rb);
    if (k >= 1) {
        const Matrix& Gk1 = deriv_gram(g, k + 1);
        const Matrix& Gk = deriv_gram(g, k);
        s += hermitian_form(Gk1, a.re1, a.im1, b.re1, b.im1);
        s += hermitian_form(Gk, a.re2, a.im2, b.re2, b.im2);
    }
    return s;
}

double norm_k(const CollocationGrid& g, const GridFunctionPair& q, int k) {
    return std::sqrt(std::max(0.0, inner_k(g, q, q, k).real()));
}

Complex inner_dblk(const CollocationGrid& g, const GridFunctionPair& q,
                   const GridFunctionPair& r, int k) {
    check_compat(g, q);
    check_compat(g, r);
    if (k < 0) throw DomainError("k >= 0 required");
    if (k + 1 > g.N / 2) throw UnderResolved("k+1 exceeds the trusted differentiation order");
    const CoeffPair a = to_coeffs(g, q);
    const CoeffPair b = to_coeffs(g, r);
    const Matrix& E = deriv_gram(g, 0);
    const Matrix& Gk1 = deriv_gram(g, k + 1);
    const Matrix& Gk = deriv_gram(g, k);
    Complex s = hermitian_form(Gk1, a.re1, a.im1, b.re1, b.im1);
    s += hermitian_form(E, a.re1, a.im1, b.re1, b.im1);
    s += hermitian_form(Gk, a.re2, a.im2, b.re2, b.im2);
    s += hermitian_form(E, a.re2, a.im2, b.re2, b.im2);
    return s;
}

double norm_dblk(const CollocationGrid& g, const GridFunctionPair& q, int k) {
    return std::sqrt(std::max(0.0, inner_dblk(g, q, q, k).real()));
}

double free_dissipativity_check(const CollocationGrid& g, const GridFunctionPair& q, int k) {
    const GridFunctionPair Lq = apply_free_modified(g, q);
    const double n2 = inner_k(g, q, q, k).real();
    return inner_k(g, Lq, q, k).real() + 0.5 * n2;
}

// ---------------------------------------------------------------------------

namespace {

// antiderivative of a plain-coefficient Chebyshev series, constant chosen so
// the value at y = -1 is zero
std::vector<double> antideriv_from_minus1(const std::vector<double>& b) {
    const std::size_t n = b.size();
    std::vector<double> B(n + 1, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
        if (m == 0) {
            B[1] += b[0];
        } else if (m == 1) {
            B[2] += b[1] / 4.0;
            B[0] += b[1] / 4.0;  // arbitrary constant part; fixed below anyway
        } else {
            B[m + 1] += b[m] / (2.0 * (m + 1.0));
            B[m - 1] -= b[m] / (2.0 * (m - 1.0));
        }
    }
    B.resize(n);  // drop the top mode (consistent truncation)
    const double at_m1 = value_at_minus1(B);
    B[0] -= at_m1;
    return B;
}

double integral_of_series(const std::vector<double>& c) {
    double s = 0.0;
    for (std::size_t m = 0; m < c.size(); m += 2) s += c[m] * 2.0 / (1.0 - double(m) * m);
    return s;
}

}  // namespace

GridFunctionPair solve_minus_free(const CollocationGrid& g, const GridFunctionPair& f) {
    check_compat(g, f);
    const std::size_t n = g.size();
    // real and imaginary parts independently
    auto solve_real = [&](const std::vector<double>& f1, const std::vector<double>& f2,
                          std::vector<double>& q1, std::vector<double>& q2) {
        auto df1 = cheb::apply(g.diff_matrix, f1);
        std::vector<double> F(n);
        for (std::size_t i = 0; i < n; ++i) F[i] = f1[i] + g.nodes[i] * df1[i] + f2[i];
        auto Fc = cheb::apply(g.analysis, F);
        const double q1m1 = 0.5 * integral_of_series(Fc);
        std::vector<double> Fc0 = Fc;
        Fc0[0] -= q1m1;  // F - q1(-1)
        auto inner_c = antideriv_from_minus1(Fc0);
        auto inner_nodal = cheb::apply(g.synthesis, inner_c);
        // integrand = inner / (y^2 - 1), endpoints by L'Hopital
        std::vector<double> integrand(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double y = g.nodes[i];
            if (i == 0)
                integrand[i] = (F[i] - q1m1) / 2.0;
            else if (i == n - 1)
                integrand[i] = (F[i] - q1m1) / -2.0;
            else
                integrand[i] = inner_nodal[i] / (y * y - 1.0);
        }
        auto ic = cheb::apply(g.analysis, integrand);
        auto q1c = antideriv_from_minus1(ic);
        q1 = cheb::apply(g.synthesis, q1c);
        for (auto& v : q1) v += q1m1;
        auto dq1 = cheb::apply(g.diff_matrix, q1);
        q2.resize(n);
        for (std::size_t i = 0; i < n; ++i) q2[i] = g.nodes[i] * dq1[i] + q1m1 - f1[i];
    };
    std::vector<double> q1r, q2r, q1i, q2i;
    solve_real(real_part(f.q1), real_part(f.q2), q1r, q2r);
    solve_real(imag_part(f.q1), imag_part(f.q2), q1i, q2i);
    GridFunctionPair q(n);
    for (std::size_t i = 0; i < n; ++i) {
        q.q1[i] = {q1r[i], q1i[i]};
        q.q2[i] = {q2r[i], q2i[i]};
    }
    return q;
}

// ---------------------------------------------------------------------------
// Symmetry modes from exact Chebyshev expansions.

namespace {

struct ModeCoeffs {
    std::vector<double> c1, c2;
};

ModeCoeffs mode_coeffs_f0(const CollocationGrid& g) {
    ModeCoeffs m;
    m.c1.assign(g.size(), 0.0);
    m.c2.assign(g.size(), 0.0);
    m.c1[0] = 1.0;
    return m;
}

ModeCoeffs mode_coeffs_f1(double alpha, const CollocationGrid& g) {
    const double nu = std::sqrt(1.0 + alpha);
    const int n = static_cast<int>(g.size());
    auto v = cheb::series_inv_nu_plus_y(nu, n);
    auto w = cheb::series_inv_sq_nu_plus_y(nu, n);
    ModeCoeffs m;
    m.c1.resize(n);
    m.c2.resize(n);
    for (int i = 0; i < n; ++i) {
        m.c1[i] = alpha * nu * v[i];
        m.c2[i] = alpha * (1.0 + alpha) * w[i];
    }
    return m;
}

ModeCoeffs mode_coeffs_g0(double alpha, const CollocationGrid& g) {
    const double nu = std::sqrt(1.0 + alpha);
    const int n = static_cast<int>(g.size());
    auto v = cheb::series_inv_nu_plus_y(nu, n);   // 1/(nu+y)
    auto w = cheb::series_inv_sq_nu_plus_y(nu, n);  // 1/(nu+y)^2
    auto lg = cheb::series_log_nu_plus_y(nu, n);
    ModeCoeffs m;
    m.c1.resize(n);
    m.c2.resize(n);
    for (int i = 0; i < n; ++i) {
        // comp1 = -log(nu+y) - alpha/(2 nu) 1/(nu+y)
        m.c1[i] = -lg[i] - alpha / (2.0 * nu) * v[i];
        // comp2 = 1 - y/(nu+y) + alpha/(2 nu) y/(nu+y)^2
        //       = nu/(nu+y) + alpha/(2 nu) (1/(nu+y) - nu/(nu+y)^2)
        m.c2[i] = nu * v[i] + alpha / (2.0 * nu) * (v[i] - nu * w[i]);
    }
    return m;
}

GridFunctionPair synth_mode(const CollocationGrid& g, const ModeCoeffs& m) {
    auto n1 = cheb::apply(g.synthesis, m.c1);
    auto n2 = cheb::apply(g.synthesis, m.c2);
    return from_real(n1, n2);
}

}  // namespace

GridFunctionPair mode_f0(double alpha, const CollocationGrid& g) {
    (void)alpha;
    return synth_mode(g, mode_coeffs_f0(g));
}
GridFunctionPair mode_f1(double alpha, const CollocationGrid& g) {
    return synth_mode(g, mode_coeffs_f1(alpha, g));
}
GridFunctionPair mode_g0(double alpha, const CollocationGrid& g) {
    return synth_mode(g, mode_coeffs_g0(alpha, g));
}

// ---------------------------------------------------------------------------

Matrix assemble_coefficient_operator(double alpha, const CollocationGrid& g) {
    const int n = static_cast<int>(g.size());
    const int N = g.N;
    const double nu = std::sqrt(1.0 + alpha);
    const Matrix& Dc = g.coeff_diff;
    Matrix My = cheb::mult_by_y(N);
    auto vser = cheb::series_inv_nu_plus_y(nu, n + 40);
    for (auto& c : vser) c *= 2.0 * alpha;
    Matrix Mv = cheb::mult_by_series(vser, N);
    Matrix MyDc = cheb::matmul(My, Dc);
    Matrix D2 = cheb::matmul(Dc, Dc);
    Matrix MvDc = cheb::matmul(Mv, Dc);
    Matrix M(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            M(i, j) = -MyDc(i, j);
            M(n + i, j) = D2(i, j) - MvDc(i, j);
            M(n + i, n + j) = -MyDc(i, j);
        }
    for (int i = 0; i < n; ++i) {
        M(i, n + i) += 1.0;
        M(n + i, n + i) += -1.0;
    }
    return M;
}

std::vector<double> similarity_scaling(const CollocationGrid& g, int p1, int p2) {
    const std::size_t n = g.size();
    std::vector<double> d(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = std::pow(1.0 + double(i), p1);
        d[n + i] = std::pow(1.0 + double(i), p2);
    }
    return d;
}

Matrix scaled_coefficient_operator(double alpha, const CollocationGrid& g, int p1, int p2) {
    Matrix M = assemble_coefficient_operator(alpha, g);
    const auto d = similarity_scaling(g, p1, p2);
    for (std::size_t i = 0; i < M.rows; ++i)
        for (std::size_t j = 0; j < M.cols; ++j) M(i, j) *= d[i] / d[j];
    return M;
}

namespace {

double max_coeff_mag(const CollocationGrid& g, const GridFunctionPair& q) {
    double mx = 0.0;
    for (const auto* comp : {&q.q1, &q.q2}) {
        auto re = cheb::apply(g.analysis, real_part(*comp));
        auto im = cheb::apply(g.analysis, imag_part(*comp));
        for (std::size_t i = 0; i < re.size(); ++i)
            mx = std::max(mx, std::hypot(re[i], im[i]));
    }
    return mx;
}

}  // namespace

double eigen_residual(double alpha, const CollocationGrid& g, const GridFunctionPair& v,
                      Complex lambda, int k_norm) {
    const double scale = max_coeff_mag(g, v);
    if (scale == 0.0) return 0.0;
    const double floor_mag = 1e-14 * scale;
    const std::size_t n = g.size();
    // coefficient stacks of v
    std::vector<Complex> a(2 * n);
    {
        auto re1 = cheb::apply(g.analysis, real_part(v.q1));
        auto im1 = cheb::apply(g.analysis, imag_part(v.q1));
        auto re2 = cheb::apply(g.analysis, real_part(v.q2));
        auto im2 = cheb::apply(g.analysis, imag_part(v.q2));
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = {re1[i], im1[i]};
            a[n + i] = {re2[i], im2[i]};
        }
    }
    // resolved band of the eigenvector: beyond it the discretization carries
    // no information and the <<.,.>>_k weights only amplify apply noise
    std::size_t band = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(a[i]) >= floor_mag || std::abs(a[n + i]) >= floor_mag) band = i;
    band = std::min(band + 2, n - 1);
    for (std::size_t i = 0; i < 2 * n; ++i)
        if (std::abs(a[i]) < floor_mag) a[i] = 0.0;
    // residual through the exactly-assembled coefficient operator
    const Matrix C = assemble_coefficient_operator(alpha, g);
    std::vector<Complex> r(2 * n, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < 2 * n; ++i) {
        Complex acc{0.0, 0.0};
        const double* row = &C.a[i * 2 * n];
        for (std::size_t j = 0; j < 2 * n; ++j) acc += row[j] * a[j];
        r[i] = acc - lambda * a[i];
    }
    GridFunctionPair rc(n), vvc(n);
    auto synth = [&](const std::vector<Complex>& stack, std::size_t off, bool banded,
                     std::vector<Complex>& dst) {
        std::vector<double> re(n, 0.0), im(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            if (banded && i > band) break;
            re[i] = stack[off + i].real();
            im[i] = stack[off + i].imag();
        }
        auto nr = cheb::apply(g.synthesis, re);
        auto ni = cheb::apply(g.synthesis, im);
        for (std::size_t i = 0; i < n; ++i) dst[i] = {nr[i], ni[i]};
    };
    synth(r, 0, true, rc.q1);
    synth(r, n, true, rc.q2);
    synth(a, 0, false, vvc.q1);
    synth(a, n, false, vvc.q2);
    const double denom = norm_dblk(g, vvc, k_norm);
    return denom > 0.0 ? norm_dblk(g, rc, k_norm) / denom : 0.0;
}

namespace {

// top-25% Chebyshev coefficient energy fraction of an eigenvector (both
// components combined)
bool resolved_vector(const std::vector<Complex>& coeffs, std::size_t n) {
    double tot = 0.0, tail = 0.0;
    const std::size_t cut = (3 * n) / 4;
    for (std::size_t comp = 0; comp < 2; ++comp) {
        for (std::size_t i = 0; i < n; ++i) {
            const double e = std::norm(coeffs[comp * n + i]);
            tot += e;
            if (i >= cut) tail += e;
        }
    }
    return tot == 0.0 || tail <= 1e-6 * tot;
}

}  // namespace

SpectralReport assemble_and_eig(double alpha, const CollocationGrid& g, int k_norm,
                                bool keep_vectors) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    if (g.N > 256) throw DomainError("dense solve limited to N <= 256");
    const std::size_t n = g.size();
    const Matrix Ms = scaled_coefficient_operator(alpha, g);
    const auto d = similarity_scaling(g);
    auto values = eig::eigenvalues(Ms);
    std::sort(values.begin(), values.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });

    SpectralReport rep;
    rep.alpha = alpha;
    rep.N = g.N;
    rep.k_norm = k_norm;
    rep.eigenvalues.reserve(values.size());
    for (const Complex lam : values) {
        EigenEntry e;
        e.value = lam;
        auto vec = eig::inverse_iteration(Ms, lam);
        // unscale to plain coefficients
        for (std::size_t i = 0; i < 2 * n; ++i) vec[i] /= d[i];
        e.resolved = resolved_vector(vec, n);
        // synthesize to nodal and measure the residual through the nodal apply
        GridFunctionPair v(n);
        {
            std::vector<Complex> c1(vec.begin(), vec.begin() + n);
            std::vector<Complex> c2(vec.begin() + n, vec.end());
            v.q1 = cheb::apply(g.synthesis, c1);
            v.q2 = cheb::apply(g.synthesis, c2);
        }
        e.residual = eigen_residual(alpha, g, v, lam, 0);
        if (!e.resolved)
            e.cls = EigenClass::unresolved;
        else if (std::abs(lam) < 1e-6)
            e.cls = EigenClass::mode_zero;
        else if (std::abs(lam - 1.0) < 1e-6)
            e.cls = EigenClass::mode_one;
        else if (lam.real() <= -1.0 + 0.1)
            e.cls = EigenClass::stable_halfplane;
        else
            e.cls = EigenClass::unresolved;
        rep.eigenvalues.push_back(std::move(e));
        if (keep_vectors) rep.vectors.push_back(std::move(v));
    }
    return rep;
}

std::string to_json(const SpectralReport& rep) {
    std::string s = "{\n";
    s += "  \"alpha\": " + io::format_double(rep.alpha) + ",\n";
    s += "  \"N\": " + std::to_string(rep.N) + ",\n";
    s += "  \"k_norm\": " + std::to_string(rep.k_norm) + ",\n";
    s += "  \"eigenvalues\": [\n";
    for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i) {
        const auto& e = rep.eigenvalues[i];
        const char* cls = e.cls == EigenClass::mode_zero         ? "mode_zero"
                          : e.cls == EigenClass::mode_one        ? "mode_one"
                          : e.cls == EigenClass::stable_halfplane ? "stable_halfplane"
                                                                  : "unresolved";
        s += "    {\"re\": " + io::format_double(e.value.real()) +
             ", \"im\": " + io::format_double(e.value.imag()) +
             ", \"residual\": " + io::format_double(e.residual) + ", \"class\": \"" + cls +
             "\"}";
        s += (i + 1 < rep.eigenvalues.size()) ? ",\n" : "\n";
    }
    s += "  ]\n}\n";
    return s;
}

void write_report_json(const SpectralReport& rep, const std::string& path) {
    io::atomic_write(path, to_json(rep));
}

namespace {

void denoise_pair(const CollocationGrid& g, GridFunctionPair& q) {
    auto clean = [&](std::vector<Complex>& comp) {
        auto re = cheb::apply(g.analysis, real_part(comp));
        auto im = cheb::apply(g.analysis, imag_part(comp));
        cheb::denoise(re);
        cheb::denoise(im);
        auto nr = cheb::apply(g.synthesis, re);
        auto ni = cheb::apply(g.synthesis, im);
        for (std::size_t i = 0; i < comp.size(); ++i) comp[i] = {nr[i], ni[i]};
    };
    clean(q.q1);
    clean(q.q2);
}

}  // namespace

double jordan_block_check(double alpha, const CollocationGrid& g) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    const GridFunctionPair g0 = mode_g0(alpha, g);
    const GridFunctionPair f0 = mode_f0(alpha, g);
    GridFunctionPair Lg0 = apply_L_alpha(alpha, g, g0);
    GridFunctionPair r1(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        r1.q1[i] = Lg0.q1[i] - f0.q1[i];
        r1.q2[i] = Lg0.q2[i] - f0.q2[i];
    }
    // truncate the spectral noise tail before the second application
    denoise_pair(g, Lg0);
    const GridFunctionPair L2g0 = apply_L_alpha(alpha, g, Lg0);
    return std::max(norm_dblk(g, r1, 0), norm_dblk(g, L2g0, 0));
}

// ---------------------------------------------------------------------------
// Appendix B obstruction (alpha = 3).

double appendixB_g(double y) {
    return std::log(2.0 + y) + (y * y - 0.75 * y - 2.5) / ((2.0 + y) * (2.0 + y));
}

namespace {

double appendixB_G(double z) {
    return (1.0 - z) * ((2.0 + z) * (2.0 + z) * std::log(2.0 + z) + z * z - 0.75 * z - 2.5);
}

Complex appendixB_G(Complex z) {
    return (1.0 - z) * ((2.0 + z) * (2.0 + z) * std::log(2.0 + z) + z * z - 0.75 * z - 2.5);
}

// w(u) = u^2 int_{u}^{2} G(zeta-1)/zeta^3 dzeta via the log substitution
double appendixB_w(double u) {
    auto f = [](double tau) { return appendixB_G(std::exp(tau) - 1.0) * std::exp(-2.0 * tau); };
    const double a = std::log(u), b = std::log(2.0);
    const int panels = std::max(8, static_cast<int>(std::ceil((b - a) * 6.0)));
    return u * u * quad::composite_gl(f, a, b, panels);
}

}  // namespace

AppendixBResult appendixB_obstruction(double delta, double window, int npts) {
    if (!(delta > 0.0) || !(window > delta) || npts < 10)
        throw DomainError("bad Appendix B fit window");
    AppendixBResult out;
    // Taylor coefficients of G at z = -1 by a Cauchy integral on |z+1| = 1/2.
    {
        const int M = 256;
        const double r = 0.5;
        Complex c0{}, c1{}, c2{};
        for (int j = 0; j < M; ++j) {
            const double th = 2.0 * M_PI * j / M;
            const Complex zj = Complex{-1.0, 0.0} + r * std::exp(Complex{0.0, th});
            const Complex v = appendixB_G(zj);
            c0 += v;
            c1 += v * std::exp(Complex{0.0, -th});
            c2 += v * std::exp(Complex{0.0, -2.0 * th});
        }
        out.taylor_c0 = (c0 / double(M)).real();
        out.taylor_c1 = (c1 / double(M)).real() / r;
        out.taylor_c2 = (c2 / double(M)).real() / (r * r);
    }
    // Least-squares fit of the local model A + Bu + Cu^2 + clog u^2 log u
    // (+ a cubic term absorbing the next order of the remainder).
    std::vector<double> us(npts), ws(npts);
    for (int i = 0; i < npts; ++i) {
        const double t = double(i) / (npts - 1.0);
        us[i] = std::exp(std::log(delta) + t * (std::log(window) - std::log(delta)));
        ws[i] = appendixB_w(us[i]);
    }
    const int m = 5;
    auto basis = [](double u, int j) -> double {
        switch (j) {
            case 0: return 1.0;
            case 1: return u;
            case 2: return u * u;
            case 3: return u * u * std::log(u);
            default: return u * u * u;
        }
    };
    double AtA[m][m] = {};
    double Atb[m] = {};
    for (int i = 0; i < npts; ++i)
        for (int a = 0; a < m; ++a) {
            const double ba = basis(us[i], a);
            Atb[a] += ba * ws[i];
            for (int b = 0; b < m; ++b) AtA[a][b] += ba * basis(us[i], b);
        }
    // gaussian elimination with partial pivoting
    double x[m];
    {
        double M2[m][m + 1];
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) M2[i][j] = AtA[i][j];
            M2[i][m] = Atb[i];
        }
        for (int k = 0; k < m; ++k) {
            int p = k;
            for (int i = k + 1; i < m; ++i)
                if (std::abs(M2[i][k]) > std::abs(M2[p][k])) p = i;
            for (int j = 0; j <= m; ++j) std::swap(M2[k][j], M2[p][j]);
            for (int i = k + 1; i < m; ++i) {
                const double f = M2[i][k] / M2[k][k];
                for (int j = k; j <= m; ++j) M2[i][j] -= f * M2[k][j];
            }
        }
        for (int k = m - 1; k >= 0; --k) {
            double s = M2[k][m];
            for (int j = k + 1; j < m; ++j) s -= M2[k][j] * x[j];
            x[k] = s / M2[k][k];
        }
    }
    out.A = x[0];
    out.B = x[1];
    out.C = x[2];
    out.c_log = x[3];
    double resid = 0.0;
    for (int i = 0; i < npts; ++i) {
        double fit = 0.0;
        for (int j = 0; j < m; ++j) fit += x[j] * basis(us[i], j);
        resid = std::max(resid, std::abs(fit - ws[i]));
    }
    out.residual = resid;
    return out;
}

}  // namespace blowup::linop
