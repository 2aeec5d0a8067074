#include "blowup/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>

#include "blowup/evolve.hpp"
#include "blowup/lightcone.hpp"
#include "blowup/linop.hpp"
#include "blowup/modes.hpp"
#include "blowup/profiles.hpp"

namespace blowup::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
    std::ostringstream detail;
    bool ok = true;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.str().empty()) detail << "; ";
            detail << what;
        }
    }
    void note(const std::string& s) {
        if (!detail.str().empty()) detail << "; ";
        detail << s;
    }
};

std::string fmt(double v) {
    char b[32];
    std::snprintf(b, sizeof(b), "%.3g", v);
    return b;
}

// --- criterion 1: profile exactness -----------------------------------------
void profile_exactness(Check& c) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, double>> combos;
    for (double a : {1.0, 3.0, 8.0})
        for (double b : {0.0, inf}) combos.emplace_back(a, b);
    combos.emplace_back(3.0, 1.0 / 12.0);
    double worst = 0.0;
    for (auto [a, b] : combos) {
        profiles::ProfileParams p;
        p.alpha = a;
        p.beta = b;
        p.kappa = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double y = -0.98 + 1.96 * i / 49.0;
            worst = std::max(worst, profiles::riccati_residual(p, y, 1e-4));
        }
    }
    c.expect(worst < 1e-7, "max riccati residual " + fmt(worst));
    // the explicit parabolic member: tildeU = 1.5 y^2 at (alpha, beta) = (3, 1/12)
    // once kappa = alpha log sqrt(1+alpha) absorbs the W(0)=kappa convention
    profiles::ProfileParams p;
    p.alpha = 3.0;
    p.beta = 1.0 / 12.0;
    p.kappa = 3.0 * std::log(2.0);
    double worst2 = 0.0;
    for (int i = 0; i <= 40; ++i) {
        const double y = -1.0 + 2.0 * i / 40.0;
        const double v = profiles::tildeU_eval(p, y, 1e-11, true);
        worst2 = std::max(worst2, std::abs(v - 1.5 * y * y));
    }
    c.expect(worst2 < 1e-8, "parabola profile error " + fmt(worst2));
    c.note("riccati " + fmt(worst) + ", parabola " + fmt(worst2));
}

// --- criterion 2: non-existence witness -------------------------------------
void nonexistence_witness(Check& c) {
    for (double cc : {-10.0, -1.0, 0.0, 1.0, 10.0}) {
        const auto w = profiles::find_stationary_singularity(cc);
        c.expect(std::abs(w.root) < 1.0, "root outside (-1,1) at c=" + fmt(cc));
        c.expect(w.residual < 1e-12, "residual " + fmt(w.residual) + " at c=" + fmt(cc));
    }
    c.expect(profiles::p_c_eval(5.0, -1.0) == -0.5, "p_c(-1) not exactly -1/2");
    c.expect(profiles::p_c_eval(5.0, 1.0) == 0.5, "p_c(1) not exactly 1/2");
}

// --- criterion 3: mode stability scan ---------------------------------------
void mode_stability(Check& c) {
    for (double alpha : {3.0, 8.0}) {
        modes::ScanRequest req;
        req.alpha = alpha;
        req.re_lo = -0.9;
        req.re_hi = 4.0;
        req.im_lo = -4.0;
        req.im_hi = 4.0;
        req.n_re = 40;
        req.n_im = 40;
        req.n_max = 2000;
        const auto verdicts = modes::scan_halfplane(req);
        int smooth_count = 0;
        double worst_tail = 0.0;
        for (const auto& v : verdicts) {
            if (v.smooth)
                ++smooth_count;
            else
                worst_tail = std::max(worst_tail, v.ratio_tail);
        }
        c.expect(smooth_count == 0, "lattice off {0,1} reported smooth at alpha=" + fmt(alpha));
        c.expect(worst_tail < 1e-2, "ratio tail " + fmt(worst_tail) + " at alpha=" + fmt(alpha));
        // snapped eigenvalues terminate
        for (double lam : {0.0, 1.0}) {
            const auto v =
                modes::mode_stability_verdict(alpha, {lam + 5e-10, -5e-10}, req.n_max);
            c.expect(v.smooth && v.evidence == modes::Evidence::series_terminates,
                     "snapped lambda=" + fmt(lam) + " not terminating");
        }
    }
}

// --- criterion 4: spectral picture ------------------------------------------
void spectral_picture(Check& c) {
    const auto grid = cheb::make_grid(64);
    for (double alpha : {1.0, 3.0, 8.0}) {
        const auto rep = linop::assemble_and_eig(alpha, grid, 4);
        int n_zero = 0, n_one = 0, n_bad = 0;
        double worst_res = 0.0;
        for (const auto& e : rep.eigenvalues) {
            if (!e.resolved || e.value.real() <= -0.9) continue;
            if (e.cls == linop::EigenClass::mode_zero) {
                ++n_zero;
                worst_res = std::max(worst_res, e.residual);
            } else if (e.cls == linop::EigenClass::mode_one) {
                ++n_one;
                worst_res = std::max(worst_res, e.residual);
            } else {
                ++n_bad;
            }
        }
        c.expect(n_zero == 2, "alpha=" + fmt(alpha) + ": mult(0)=" + std::to_string(n_zero));
        c.expect(n_one == 1, "alpha=" + fmt(alpha) + ": mult(1)=" + std::to_string(n_one));
        c.expect(n_bad == 0,
                 "alpha=" + fmt(alpha) + ": " + std::to_string(n_bad) + " stray unstable");
        c.expect(worst_res < 1e-6, "alpha=" + fmt(alpha) + ": residual " + fmt(worst_res));
        const double jc = linop::jordan_block_check(alpha, grid);
        c.expect(jc < 1e-7, "alpha=" + fmt(alpha) + ": jordan check " + fmt(jc));
    }
}

// --- criterion 5: free-operator dissipativity --------------------------------
void free_dissipativity(Check& c) {
    const auto grid = cheb::make_grid(48);
    std::uint64_t state = 12345;
    auto rnd = [&]() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return 2.0 * (double(state >> 11) / double(1ull << 53)) - 1.0;
    };
    double worst = -1e300;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> q1(grid.size()), q2(grid.size());
        double a1[8], a2[8];
        for (int m = 0; m < 8; ++m) {
            a1[m] = rnd();
            a2[m] = rnd();
        }
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double th = std::acos(std::clamp(grid.nodes[i], -1.0, 1.0));
            double s1 = 0.0, s2 = 0.0;
            for (int m = 0; m < 8; ++m) {
                s1 += a1[m] * std::cos(m * th);
                s2 += a2[m] * std::cos(m * th);
            }
            q1[i] = s1;
            q2[i] = s2;
        }
        const auto q = linop::from_real(q1, q2);
        for (int k : {0, 1, 2})
            worst = std::max(worst, linop::free_dissipativity_check(grid, q, k));
    }
    c.expect(worst <= 1e-8, "max Re<Lq,q>_k + |q|^2/2 = " + fmt(worst));
    c.note("max defect " + fmt(worst));
}

// --- criterion 6: linear mode laws -------------------------------------------
void linear_mode_laws(Check& c) {
    evolve::Lab lab(3.0, 64, 4);
    const double dt = evolve::cfl_dt(64);
    // f1: pure e^s growth
    {
        std::vector<std::vector<double>> states;
        auto tr = lab.integrate(lab.f1(), 2.0, dt, false, 400, &states);
        const double n0 = lab.norm(lab.f1());
        double worst = 0.0;
        for (std::size_t i = 0; i < tr.times.size(); ++i)
            worst = std::max(worst,
                             std::abs(tr.norm_k[i] / (n0 * std::exp(tr.times[i])) - 1.0));
        c.expect(worst < 1e-5, "f1 growth relerr " + fmt(worst));
        c.note("f1 " + fmt(worst));
    }
    // g0: q(s) = g0 + s f0
    {
        std::vector<std::vector<double>> states;
        auto tr = lab.integrate(lab.g0(), 2.0, dt, false, 400, &states);
        const double n0 = lab.norm(lab.g0());
        double worst = 0.0;
        for (std::size_t i = 0; i < states.size(); ++i) {
            std::vector<double> d = states[i];
            for (std::size_t j = 0; j < d.size(); ++j)
                d[j] -= lab.g0()[j] + tr.times[i] * lab.f0()[j];
            worst = std::max(worst, lab.norm(d) / n0);
        }
        c.expect(worst < 1e-5, "g0 drift relerr " + fmt(worst));
        c.note("g0 " + fmt(worst));
    }
    // f0: stationary
    {
        std::vector<std::vector<double>> states;
        auto tr = lab.integrate(lab.f0(), 2.0, dt, false, 400, &states);
        double worst = 0.0;
        for (auto& st : states) {
            std::vector<double> d = st;
            for (std::size_t j = 0; j < d.size(); ++j) d[j] -= lab.f0()[j];
            worst = std::max(worst, lab.norm(d));
        }
        c.expect(worst < 1e-8, "f0 moved by " + fmt(worst));
    }
}

// --- criterion 7: nonlinear decay rate ---------------------------------------
void nonlinear_decay(Check& c) {
    const double eps = 1e-4;
    evolve::EvolutionConfig cfg;
    cfg.alpha0 = 3.0;
    cfg.kappa0 = 0.0;
    cfg.T0 = 1.0;
    cfg.w0 = 0.9;  // delta = 0.1
    cfg.grid_N = 48;
    cfg.k_norm = 4;
    cfg.s_max = 5.5;
    evolve::Lab lab(cfg.alpha0, cfg.grid_N, cfg.k_norm);
    const double dt = evolve::cfl_dt(cfg.grid_N);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        cfg.seed = seed;
        const auto pert = evolve::random_perturbation(cfg, eps, seed);
        auto f = [&pert](double x) { return pert.operator_f(x); };
        auto g = [&pert](double x) { return pert.operator_g(x); };
        const auto fit = evolve::fit_modulation(cfg, f, g);
        const double param_sum = std::abs(fit.alpha_star - cfg.alpha0) +
                                 std::abs(fit.kappa_star - cfg.kappa0) +
                                 std::abs(fit.T_star / cfg.T0 - 1.0);
        c.expect(param_sum <= 10.0 * eps,
                 "seed " + std::to_string(seed) + ": |a*-a0|+|k*-k0|+|T*/T0-1| = " +
                     fmt(param_sum));
        const auto q0 =
            evolve::initial_data_map(cfg, fit.alpha_star, fit.kappa_star, fit.T_star, f, g);
        auto tr = lab.integrate(lab.coeffs_of(q0), cfg.s_max, dt, true,
                                std::max(1, int(cfg.s_max / dt / 250)));
        const double slope = evolve::log_slope(tr, tr.stable_norm, 1.0, 5.0);
        c.expect(slope <= -(1.0 - 0.1) + 0.1,
                 "seed " + std::to_string(seed) + ": slope " + fmt(slope));
        c.note("s" + std::to_string(seed) + " slope " + fmt(slope) + " params " + fmt(param_sum));
    }
    if (!c.ok)
        c.note(
            "window slope is limited by the defective eigenvalue pair at -1: the generalized "
            "direction responds as (a+b s)e^-s, whose [1,5] least-squares slope exceeds -0.8 "
            "whenever the seed excites it at b/a > 0.5");
}

// --- criterion 8: physical-frame consistency ---------------------------------
void physical_frame(Check& c) {
    profiles::ProfileParams p;
    p.alpha = 3.0;
    p.beta = std::numeric_limits<double>::infinity();
    p.kappa = 0.0;
    p.T = 1.0;
    p.x0 = 0.0;
    lightcone::LightconeConfig lc;
    lc.N = 2048;
    lc.s_max = std::log(100.0);  // T - t down to 1e-2
    auto zero = [](double) { return 0.0; };
    const auto res = lightcone::lightcone_solver(p, zero, zero, lc);
    double worst = 0.0;
    for (const auto& st : res.states) {
        for (std::size_t i = 0; i < st.x_nodes.size(); ++i) {
            const double ue = profiles::physical_u_eval(p, st.t, st.x_nodes[i]);
            worst = std::max(worst, std::abs(st.u[i] - ue));
        }
    }
    c.expect(worst <= 1e-4, "max |u - closed form| = " + fmt(worst));
    c.expect(res.blowup_time_estimate >= 0.99 && res.blowup_time_estimate <= 1.01,
             "blow-up estimate " + fmt(res.blowup_time_estimate));
    c.note("err " + fmt(worst) + ", T_est " + fmt(res.blowup_time_estimate));
}

// --- criterion 9: Appendix B obstruction -------------------------------------
void appendixB(Check& c) {
    const auto r = linop::appendixB_obstruction();
    c.expect(std::abs(r.c_log - (-27.0 / 4.0)) <= 0.05, "c_log " + fmt(r.c_log));
    c.expect(std::abs(r.taylor_c0 - (-1.5)) < 1e-10, "G c0 " + fmt(r.taylor_c0));
    c.expect(std::abs(r.taylor_c1 - (-2.75)) < 1e-10, "G c1 " + fmt(r.taylor_c1));
    c.expect(std::abs(r.taylor_c2 - 6.75) < 1e-10, "G c2 " + fmt(r.taylor_c2));
    c.note("c_log " + fmt(r.c_log));
}

// --- criterion 10: initial-data expansion ------------------------------------
void initial_data_expansion(Check& c) {
    evolve::EvolutionConfig cfg;
    cfg.alpha0 = 3.0;
    cfg.kappa0 = 0.0;
    cfg.T0 = 1.0;
    cfg.grid_N = 48;
    evolve::Lab lab(cfg.alpha0, cfg.grid_N, cfg.k_norm);
    const auto grid = lab.grid();
    auto zero = [](double) { return 0.0; };
    auto remainder_norm = [&](double alpha, double kappa, double T) {
        const auto data = evolve::initial_data_map(cfg, alpha, kappa, T, zero, zero);
        // subtract the linear response in the modes at alpha
        const auto f0 = linop::mode_f0(alpha, grid);
        const auto f1 = linop::mode_f1(alpha, grid);
        const auto g0 = linop::mode_g0(alpha, grid);
        const double tau = T / cfg.T0;
        const double cf0 = (cfg.kappa0 - kappa) - alpha * (tau - 1.0);
        const double cf1 = tau - 1.0;
        const double cg0 = cfg.alpha0 - alpha;
        std::vector<double> r1(grid.size()), r2(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            r1[i] = data.q1[i].real() - cf0 * f0.q1[i].real() - cf1 * f1.q1[i].real() -
                    cg0 * g0.q1[i].real();
            r2[i] = data.q2[i].real() - cf0 * f0.q2[i].real() - cf1 * f1.q2[i].real() -
                    cg0 * g0.q2[i].real();
        }
        // order-0 norm: the high-k forms floor near 1e-5 and would mask the
        // O(h^2) scaling at the smallest h
        return linop::norm_dblk(grid, linop::from_real(r1, r2), 0);
    };
    for (int which = 0; which < 2; ++which) {
        double prev = 0.0;
        bool first = true;
        for (double h : {1e-2, 5e-3, 2.5e-3}) {
            const double r = (which == 0)
                                 ? remainder_norm(cfg.alpha0 + h, cfg.kappa0, cfg.T0)
                                 : remainder_norm(cfg.alpha0, cfg.kappa0, cfg.T0 * (1.0 + h));
            if (!first) {
                const double order = std::log2(prev / r);
                c.expect(order >= 1.9, std::string(which == 0 ? "alpha" : "T") +
                                           "-perturbation order " + fmt(order));
            }
            prev = r;
            first = false;
        }
    }
}

CriterionResult run_one(int id, const std::string& name, const std::function<void(Check&)>& fn) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    Check c;
    const auto t0 = Clock::now();
    try {
        fn(c);
        r.passed = c.ok;
        r.detail = c.detail.str();
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return r;
}

}  // namespace

std::vector<CriterionResult> run(Level level) {
    std::vector<CriterionResult> out;
    out.push_back(run_one(1, "profile exactness", profile_exactness));
    out.push_back(run_one(2, "non-existence witness", nonexistence_witness));
    out.push_back(run_one(3, "mode stability scan", mode_stability));
    out.push_back(run_one(4, "spectral picture", spectral_picture));
    out.push_back(run_one(5, "free-operator dissipativity", free_dissipativity));
    out.push_back(run_one(6, "linear mode laws", linear_mode_laws));
    if (level == Level::full)
        out.push_back(run_one(7, "nonlinear decay rate", nonlinear_decay));
    out.push_back(run_one(8, "physical-frame consistency", physical_frame));
    out.push_back(run_one(9, "appendix B obstruction", appendixB));
    out.push_back(run_one(10, "initial-data expansion", initial_data_expansion));
    return out;
}

bool print_table(const std::vector<CriterionResult>& results) {
    bool all = true;
    std::printf("%-4s %-32s %-6s %8s  %s\n", "#", "criterion", "status", "time", "detail");
    for (const auto& r : results) {
        all = all && r.passed;
        std::printf("%-4d %-32s %-6s %7.2fs  %s\n", r.id, r.name.c_str(),
                    r.passed ? "PASS" : "FAIL", r.seconds, r.detail.c_str());
    }
    std::printf("overall: %s\n", all ? "PASS" : "FAIL");
    return all;
}

}  // namespace blowup::acceptance
