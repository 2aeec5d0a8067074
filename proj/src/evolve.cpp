#include "blowup/evolve.hpp"

#include <algorithm>
#include <cmath>

#include "blowup/errors.hpp"
#include "blowup/io.hpp"
#include "blowup/kernels.hpp"

namespace blowup::evolve {

namespace {

// 64-bit LCG (fixed-seed pseudo-randomness; seeds recorded in outputs)
struct Lcg {
    std::uint64_t state;
    explicit Lcg(std::uint64_t seed) : state(seed * 0x9e3779b97f4a7c15ull + 1ull) {}
    double uniform() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return double(state >> 11) / double(1ull << 53);
    }
    double sym() { return 2.0 * uniform() - 1.0; }
};

std::vector<double> lsq_fit(const std::vector<double>& s, const std::vector<double>& v,
                            const std::vector<std::function<double(double)>>& basis) {
    const int m = static_cast<int>(basis.size());
    std::vector<double> AtA(m * m, 0.0), Atb(m, 0.0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (int a = 0; a < m; ++a) {
            const double ba = basis[a](s[i]);
            Atb[a] += ba * v[i];
            for (int b = 0; b < m; ++b) AtA[a * m + b] += ba * basis[b](s[i]);
        }
    }
    // gaussian elimination
    std::vector<double> M(AtA);
    std::vector<double> x(Atb);
    for (int k = 0; k < m; ++k) {
        int p = k;
        for (int i = k + 1; i < m; ++i)
            if (std::abs(M[i * m + k]) > std::abs(M[p * m + k])) p = i;
        for (int j = 0; j < m; ++j) std::swap(M[k * m + j], M[p * m + j]);
        std::swap(x[k], x[p]);
        for (int i = k + 1; i < m; ++i) {
            const double f = M[i * m + k] / M[k * m + k];
            for (int j = k; j < m; ++j) M[i * m + j] -= f * M[k * m + j];
            x[i] -= f * x[k];
        }
    }
    for (int k = m - 1; k >= 0; --k) {
        for (int j = k + 1; j < m; ++j) x[k] -= M[k * m + j] * x[j];
        x[k] /= M[k * m + k];
    }
    return x;
}

}  // namespace

double cfl_dt(int grid_N) {
    const double hmin = 1.0 - std::cos(M_PI / grid_N);
    return 0.5 * hmin / 2.0;
}

GridFunctionPair nonlinearity(const CollocationGrid& g, const GridFunctionPair& q) {
    if (q.q1.size() != g.size() || q.q2.size() != g.size())
        throw DimensionMismatch("grid function does not match grid");
    auto dq1 = cheb::apply(g.diff_matrix, q.q1);
    GridFunctionPair out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        out.q1[i] = 0.0;
        out.q2[i] = dq1[i] * dq1[i];
    }
    return out;
}

Lab::Lab(double alpha, int grid_N, int k_norm)
    : alpha_(alpha), k_norm_(k_norm), grid_(cheb::make_grid(grid_N)) {
    Ms_ = linop::scaled_coefficient_operator(alpha, grid_);
    dscale_ = linop::similarity_scaling(grid_);
    const std::size_t n = grid_.size();
    // <<.,.>>_k Gram on coefficient stacks: block diag of (G_{k+1}+E, G_k+E).
    // Reuse linop's nodal-route forms by assembling from grid primitives here.
    auto pow_mat = [&](int m) {
        cheb::Matrix P(n, n);
        for (std::size_t i = 0; i < n; ++i) P(i, i) = 1.0;
        for (int j = 0; j < m; ++j) P = cheb::matmul(grid_.coeff_diff, P);
        return P;
    };
    auto gram_scalar = [&](int m) {
        cheb::Matrix Dm = pow_mat(m);
        cheb::Matrix EDm = cheb::matmul(grid_.cheb_l2, Dm);
        cheb::Matrix DmT(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) DmT(j, i) = Dm(i, j);
        cheb::Matrix G = cheb::matmul(DmT, EDm);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) G(i, j) += grid_.cheb_l2(i, j);
        return G;
    };
    cheb::Matrix G1 = gram_scalar(k_norm_ + 1);
    cheb::Matrix G2 = gram_scalar(k_norm_);
    gram_pair_ = cheb::Matrix(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            gram_pair_(i, j) = G1(i, j);
            gram_pair_(n + i, n + j) = G2(i, j);
        }
    // exact symmetry-mode coefficients
    auto stack = [&](const GridFunctionPair& p) {
        std::vector<double> c(2 * n);
        auto c1 = cheb::apply(grid_.analysis, p.q1);
        auto c2 = cheb::apply(grid_.analysis, p.q2);
        for (std::size_t i = 0; i < n; ++i) {
            c[i] = c1[i].real();
            c[n + i] = c2[i].real();
        }
        std::vector<double> h1(c.begin(), c.begin() + n), h2(c.begin() + n, c.end());
        cheb::denoise(h1);
        cheb::denoise(h2);
        std::copy(h1.begin(), h1.end(), c.begin());
        std::copy(h2.begin(), h2.end(), c.begin() + n);
        return c;
    };
    g0_ = stack(linop::mode_g0(alpha, grid_));
    f0_ = stack(linop::mode_f0(alpha, grid_));
    f1_ = stack(linop::mode_f1(alpha, grid_));
    // Gram and duals (basis order [g0, f0, f1])
    const std::array<const std::vector<double>*, 3> basis{&g0_, &f0_, &f1_};
    std::array<std::array<double, 3>, 3> G{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) G[i][j] = inner(*basis[i], *basis[j]);
    gram_ = G;
    // invert 3x3
    std::array<std::array<double, 3>, 3> Gi{};
    {
        double det = G[0][0] * (G[1][1] * G[2][2] - G[1][2] * G[2][1]) -
                     G[0][1] * (G[1][0] * G[2][2] - G[1][2] * G[2][0]) +
                     G[0][2] * (G[1][0] * G[2][1] - G[1][1] * G[2][0]);
        if (!(std::abs(det) > 0.0)) throw SingularGram("gram matrix of the symmetry modes");
        auto cof = [&](int r, int c) {
            int r1 = (r + 1) % 3, r2 = (r + 2) % 3, c1 = (c + 1) % 3, c2 = (c + 2) % 3;
            if (r1 > r2) std::swap(r1, r2);
            if (c1 > c2) std::swap(c1, c2);
            const double m = G[r1][c1] * G[r2][c2] - G[r1][c2] * G[r2][c1];
            return (((r + c) % 2) ? -m : m);
        };
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) Gi[i][j] = cof(j, i) / det;
    }
    for (int i = 0; i < 3; ++i) {
        duals_[i].assign(2 * n, 0.0);
        for (int j = 0; j < 3; ++j)
            kernels::axpy(2 * n, Gi[i][j], basis[j]->data(), duals_[i].data());
    }
}

std::vector<double> Lab::coeffs_of(const GridFunctionPair& q) const {
    const std::size_t n = grid_.size();
    std::vector<double> c(2 * n);
    auto c1 = cheb::apply(grid_.analysis, q.q1);
    auto c2 = cheb::apply(grid_.analysis, q.q2);
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = c1[i].real();
        c[n + i] = c2[i].real();
    }
    return c;
}

GridFunctionPair Lab::pair_of(const std::vector<double>& coeffs) const {
    const std::size_t n = grid_.size();
    std::vector<double> c1(coeffs.begin(), coeffs.begin() + n);
    std::vector<double> c2(coeffs.begin() + n, coeffs.end());
    auto n1 = cheb::apply(grid_.synthesis, c1);
    auto n2 = cheb::apply(grid_.synthesis, c2);
    return linop::from_real(n1, n2);
}

double Lab::inner(const std::vector<double>& a, const std::vector<double>& b) const {
    std::vector<double> t(b.size());
    kernels::matvec(gram_pair_.rows, gram_pair_.cols, gram_pair_.data(), b.data(), t.data());
    return kernels::dot(a.size(), a.data(), t.data());
}

std::array<double, 3> Lab::project(const std::vector<double>& a) const {
    return {inner(a, duals_[0]), inner(a, duals_[1]), inner(a, duals_[2])};
}

std::vector<double> Lab::stable_part(const std::vector<double>& a) const {
    auto c = project(a);
    std::vector<double> r(a);
    kernels::axpy(r.size(), -c[0], g0_.data(), r.data());
    kernels::axpy(r.size(), -c[1], f0_.data(), r.data());
    kernels::axpy(r.size(), -c[2], f1_.data(), r.data());
    return r;
}

void Lab::rhs(const std::vector<double>& u, std::vector<double>& out, bool nonlinear,
              std::vector<double>& sa, std::vector<double>& sb) const {
    const std::size_t n = grid_.size();
    out.resize(2 * n);
    kernels::matvec(2 * n, 2 * n, Ms_.data(), u.data(), out.data());
    if (!nonlinear) return;
    // N(q) in the scaled basis: unscale q1, differentiate, square at nodes,
    // transform back, scale into the second component.
    sa.resize(n);
    sb.resize(n);
    for (std::size_t i = 0; i < n; ++i) sa[i] = u[i] / dscale_[i];
    std::vector<double>& dq = sb;
    // coefficient derivative then synthesis
    std::vector<double> tmp(n);
    kernels::matvec(n, n, grid_.coeff_diff.data(), sa.data(), tmp.data());
    kernels::matvec(n, n, grid_.synthesis.data(), tmp.data(), dq.data());
    kernels::vmul(n, dq.data(), dq.data(), dq.data());
    kernels::matvec(n, n, grid_.analysis.data(), dq.data(), tmp.data());
    for (std::size_t i = 0; i < n; ++i) out[n + i] += dscale_[n + i] * tmp[i];
}

EvolutionTrace Lab::integrate(const std::vector<double>& coeffs0, double s_max, double dt,
                              bool nonlinear, int stride,
                              std::vector<std::vector<double>>* states,
                              double blowup_guard_eps) const {
    const std::size_t n2 = 2 * grid_.size();
    // truncate the spectral noise tail, then scale into the evolution basis
    std::vector<double> u(coeffs0);
    {
        std::vector<double> h1(u.begin(), u.begin() + grid_.size());
        std::vector<double> h2(u.begin() + grid_.size(), u.end());
        cheb::denoise(h1);
        cheb::denoise(h2);
        std::copy(h1.begin(), h1.end(), u.begin());
        std::copy(h2.begin(), h2.end(), u.begin() + grid_.size());
    }
    for (std::size_t i = 0; i < n2; ++i) u[i] *= dscale_[i];
    const int nstep = std::max(1, static_cast<int>(std::llround(s_max / dt)));
    dt = s_max / nstep;  // land exactly on s_max
    EvolutionTrace tr;
    std::vector<double> k1(n2), k2(n2), k3(n2), k4(n2), w(n2), sa, sb, plain(n2);
    double prev_stable = -1.0;
    int grow_streak = 0;
    auto sample = [&](double s) {
        for (std::size_t i = 0; i < n2; ++i) plain[i] = u[i] / dscale_[i];
        {
            std::vector<double> h1(plain.begin(), plain.begin() + grid_.size());
            std::vector<double> h2(plain.begin() + grid_.size(), plain.end());
            cheb::denoise(h1);
            cheb::denoise(h2);
            std::copy(h1.begin(), h1.end(), plain.begin());
            std::copy(h2.begin(), h2.end(), plain.begin() + grid_.size());
        }
        tr.times.push_back(s);
        const double nk = norm(plain);
        tr.norm_k.push_back(nk);
        auto c = project(plain);
        tr.proj_g0.push_back(c[0]);
        tr.proj_f0.push_back(c[1]);
        tr.proj_f1.push_back(c[2]);
        const double st = norm(stable_part(plain));
        tr.stable_norm.push_back(st);
        if (states) states->push_back(plain);
        if (!std::isfinite(nk)) throw NonFiniteState("evolution produced non-finite norm");
        if (nk > 1e12) throw Instability("norm exceeded 1e12 (CFL violation signal)");
        if (blowup_guard_eps > 0.0) {
            grow_streak = (prev_stable >= 0.0 && st > prev_stable) ? grow_streak + 1 : 0;
            if (st > 1e3 * blowup_guard_eps && grow_streak >= 5)
                throw BlowupInFrame("stable-part norm grew past 1e3*eps");
            prev_stable = st;
        }
    };
    double s = 0.0;
    for (int i = 0; i < nstep; ++i) {
        if (i % stride == 0) sample(s);
        rhs(u, k1, nonlinear, sa, sb);
        w = u;
        kernels::axpy(n2, 0.5 * dt, k1.data(), w.data());
        rhs(w, k2, nonlinear, sa, sb);
        w = u;
        kernels::axpy(n2, 0.5 * dt, k2.data(), w.data());
        rhs(w, k3, nonlinear, sa, sb);
        w = u;
        kernels::axpy(n2, dt, k3.data(), w.data());
        rhs(w, k4, nonlinear, sa, sb);
        kernels::axpy(n2, dt / 6.0, k1.data(), u.data());
        kernels::axpy(n2, dt / 3.0, k2.data(), u.data());
        kernels::axpy(n2, dt / 3.0, k3.data(), u.data());
        kernels::axpy(n2, dt / 6.0, k4.data(), u.data());
        s += dt;
    }
    sample(s_max);
    return tr;
}

EvolutionTrace evolve_linear(double alpha, const CollocationGrid& g, const GridFunctionPair& q0,
                             const EvolutionConfig& cfg) {
    Lab lab(alpha, g.N, cfg.k_norm);
    auto c0 = lab.coeffs_of(q0);
    {
        std::vector<double> h1(c0.begin(), c0.begin() + g.size());
        std::vector<double> h2(c0.begin() + g.size(), c0.end());
        cheb::denoise(h1);
        cheb::denoise(h2);
        std::copy(h1.begin(), h1.end(), c0.begin());
        std::copy(h2.begin(), h2.end(), c0.begin() + g.size());
    }
    const double dt = cfg.dt > 0.0 ? cfg.dt : cfl_dt(g.N);
    const int stride = std::max(1, static_cast<int>(cfg.s_max / dt / 200.0));
    EvolutionTrace tr = lab.integrate(c0, cfg.s_max, dt, false, stride);
    tr.fitted = {cfg.alpha0, cfg.kappa0, cfg.T0, 0.0, 0, true};
    return tr;
}

EvolutionTrace evolve_nonlinear(const EvolutionConfig& cfg,
                                const std::function<double(double)>& pert1,
                                const std::function<double(double)>& pert2) {
    Lab lab(cfg.alpha0, cfg.grid_N, cfg.k_norm);
    const auto& g = lab.grid();
    std::vector<double> n1(g.size()), n2v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        n1[i] = pert1(g.nodes[i]);
        n2v[i] = pert2(g.nodes[i]);
    }
    auto c0 = lab.coeffs_of(linop::from_real(n1, n2v));
    {
        std::vector<double> h1(c0.begin(), c0.begin() + g.size());
        std::vector<double> h2(c0.begin() + g.size(), c0.end());
        cheb::denoise(h1);
        cheb::denoise(h2);
        std::copy(h1.begin(), h1.end(), c0.begin());
        std::copy(h2.begin(), h2.end(), c0.begin() + g.size());
    }
    const double eps = lab.norm(c0);
    const double dt = cfg.dt > 0.0 ? cfg.dt : cfl_dt(cfg.grid_N);
    const int stride = std::max(1, static_cast<int>(cfg.s_max / dt / 250.0));
    EvolutionTrace tr = lab.integrate(c0, cfg.s_max, dt, true, stride, nullptr, eps);
    tr.fitted = {cfg.alpha0, cfg.kappa0, cfg.T0, 0.0, 0, true};
    return tr;
}

GridFunctionPair initial_data_map(const EvolutionConfig& cfg, double alpha, double kappa,
                                  double T, const std::function<double(double)>& f,
                                  const std::function<double(double)>& gfun) {
    if (!(T < cfg.T0 * std::sqrt(1.0 + cfg.alpha0)))
        throw HypothesisViolation("initial-data map requires T < T0 sqrt(1+alpha0)");
    if (!(alpha > 0.0) || !(T > 0.0)) throw DomainError("alpha, T must be positive");
    const CollocationGrid g = cheb::make_grid(cfg.grid_N);
    const double nu0 = std::sqrt(1.0 + cfg.alpha0);
    const double nu = std::sqrt(1.0 + alpha);
    const double r = T / cfg.T0;
    // Small-difference form of f0^T - f_{alpha,kappa}: the naive difference of
    // the two O(1) profiles cancels catastrophically and leaves an absolute
    // 1e-6 floor in the high-k mode projections.
    std::vector<double> q1(g.size()), q2(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double y = g.nodes[i];
        const double fT1 = f(T * y);
        const double fT2 = T * gfun(T * y);
        //   U0 - Ua = (kappa0 - kappa) + alpha0 log1p(d/(nu0+ry)) + (alpha-alpha0) log(nu+y)
        const double d = (nu - nu0) + (1.0 - r) * y;
        q1[i] = fT1 + (cfg.kappa0 - kappa) + cfg.alpha0 * std::log1p(d / (nu0 + r * y)) +
                (alpha - cfg.alpha0) * std::log(nu + y);
        //   r a0 - a + y (a/(nu+y) - r^2 a0/(nu0+ry))
        const double num = (alpha * nu0 - r * r * cfg.alpha0 * nu) + y * r * (alpha - r * cfg.alpha0);
        q2[i] = fT2 + (r * cfg.alpha0 - alpha) + y * num / ((nu + y) * (nu0 + r * y));
    }
    return linop::from_real(q1, q2);
}

GramDual gram_dual_basis(double alpha, const CollocationGrid& g, int k_norm) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    Lab lab(alpha, g.N, k_norm);
    GramDual out;
    out.gram = lab.gram();
    for (int i = 0; i < 3; ++i) out.duals[i] = lab.pair_of(lab.duals()[i]);
    return out;
}

double Perturbation::operator_f(double x) const {
    double s = 0.0;
    for (std::size_t m = 0; m < cos_f.size(); ++m) s += cos_f[m] * std::cos(double(m) * x);
    return scale * s;
}

double Perturbation::operator_g(double x) const {
    double s = 0.0;
    for (std::size_t m = 0; m < cos_g.size(); ++m) s += cos_g[m] * std::cos(double(m) * x);
    return scale * s;
}

Perturbation random_perturbation(const EvolutionConfig& cfg, double eps, std::uint64_t seed) {
    Lcg rng(seed);
    Perturbation p;
    p.cos_f.resize(6);
    p.cos_g.resize(6);
    for (auto& c : p.cos_f) c = rng.sym();
    for (auto& c : p.cos_g) c = rng.sym();
    // normalize the mapped data perturbation f^T at base parameters
    Lab lab(cfg.alpha0, cfg.grid_N, cfg.k_norm);
    const auto& g = lab.grid();
    std::vector<double> n1(g.size()), n2(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double y = g.nodes[i];
        n1[i] = p.operator_f(cfg.T0 * y);
        n2[i] = cfg.T0 * p.operator_g(cfg.T0 * y);
    }
    const double nrm = lab.norm(lab.coeffs_of(linop::from_real(n1, n2)));
    p.scale = (nrm > 0.0) ? eps / nrm : 1.0;
    return p;
}

FittedParams fit_modulation(const EvolutionConfig& cfg, const std::function<double(double)>& f,
                            const std::function<double(double)>& gfun, double tol, int max_iter,
                            double s_fit) {
    Lab lab(cfg.alpha0, cfg.grid_N, cfg.k_norm);
    const double dt = cfg.dt > 0.0 ? cfg.dt : cfl_dt(cfg.grid_N);
    double al = cfg.alpha0, ka = cfg.kappa0, T = cfg.T0;
    FittedParams out;
    for (int it = 0; it < max_iter; ++it) {
        out.iterations = it + 1;
        GridFunctionPair q0 = initial_data_map(cfg, al, ka, T, f, gfun);
        auto c0 = lab.coeffs_of(q0);
        const int stride = std::max(1, static_cast<int>(s_fit / dt / 200.0));
        EvolutionTrace tr = lab.integrate(c0, s_fit, dt, true, stride);
        // fit the mode contents from the late window with decay-leak terms:
        //   proj_g0(s) = a0 + A e^-s
        //   proj_f0(s) = p0 + a0 s + B e^-s
        //   proj_f1(s) = c1 e^s + C e^-s
        std::vector<double> sw, g0w, f0w, f1w;
        for (std::size_t i = 0; i < tr.times.size(); ++i) {
            if (tr.times[i] < 0.5 * s_fit) continue;
            sw.push_back(tr.times[i]);
            g0w.push_back(tr.proj_g0[i]);
            f0w.push_back(tr.proj_f0[i]);
            f1w.push_back(tr.proj_f1[i]);
        }
        auto one = [](double) { return 1.0; };
        auto lin = [](double s) { return s; };
        auto em = [](double s) { return std::exp(-s); };
        auto ep = [](double s) { return std::exp(s); };
        const double a0 = lsq_fit(sw, g0w, {one, em})[0];
        const double p0 = lsq_fit(sw, f0w, {one, lin, em})[0];
        const double c1 = lsq_fit(sw, f1w, {ep, em})[0];
        out.residual = std::abs(a0) + std::abs(p0) + std::abs(c1);
        if (out.residual < tol) {
            out.converged = true;
            break;
        }
        // Newton step from the first-order parameter response of the data map
        al += a0;
        T = cfg.T0 * (T / cfg.T0 - c1);
        ka += p0 + al * c1;
    }
    out.alpha_star = al;
    out.kappa_star = ka;
    out.T_star = T;
    return out;
}

double log_slope(const EvolutionTrace& tr, const std::vector<double>& series, double s_lo,
                 double s_hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        const double s = tr.times[i];
        if (s < s_lo || s > s_hi) continue;
        const double v = series[i];
        if (!(v > 0.0)) continue;
        const double ln = std::log(v);
        sx += s;
        sy += ln;
        sxx += s * s;
        sxy += s * ln;
        ++n;
    }
    if (n < 2) throw DomainError("not enough samples in the slope window");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void write_trace_csv(const EvolutionTrace& tr, const std::string& path) {
    io::CsvWriter csv(path, {"s", "norm_k", "proj_f0", "proj_f1", "proj_g0", "stable_norm"});
    for (std::size_t i = 0; i < tr.times.size(); ++i)
        csv.row({tr.times[i], tr.norm_k[i], tr.proj_f0[i], tr.proj_f1[i], tr.proj_g0[i],
                 tr.stable_norm[i]});
    csv.commit();
}

std::string trace_summary_json(const EvolutionTrace& tr, const EvolutionConfig& cfg,
                               double rate_slope) {
    std::string s = "{\n";
    s += "  \"alpha_star\": " + io::format_double(tr.fitted.alpha_star) + ",\n";
    s += "  \"kappa_star\": " + io::format_double(tr.fitted.kappa_star) + ",\n";
    s += "  \"T_star\": " + io::format_double(tr.fitted.T_star) + ",\n";
    s += "  \"fit_residual\": " + io::format_double(tr.fitted.residual) + ",\n";
    s += "  \"rate_slope\": " + io::format_double(rate_slope) + ",\n";
    s += "  \"seed\": " + std::to_string(cfg.seed) + ",\n";
    s += "  \"config\": {\"alpha0\": " + io::format_double(cfg.alpha0) +
         ", \"kappa0\": " + io::format_double(cfg.kappa0) +
         ", \"T0\": " + io::format_double(cfg.T0) + ", \"x0\": " + io::format_double(cfg.x0) +
         ", \"k_norm\": " + std::to_string(cfg.k_norm) + ", \"w0\": " + io::format_double(cfg.w0) +
         ", \"dt\": " + io::format_double(cfg.dt > 0 ? cfg.dt : cfl_dt(cfg.grid_N)) +
         ", \"s_max\": " + io::format_double(cfg.s_max) +
         ", \"grid_N\": " + std::to_string(cfg.grid_N) + "}\n";
    s += "}\n";
    return s;
}

}  // namespace blowup::evolve
