#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "blowup/errors.hpp"
#include "blowup/linop.hpp"

using namespace blowup;
using linop::GridFunctionPair;

namespace {

GridFunctionPair pair_from(const cheb::CollocationGrid& g,
                           const std::function<double(double)>& f1,
                           const std::function<double(double)>& f2) {
    std::vector<double> a(g.size()), b(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        a[i] = f1(g.nodes[i]);
        b[i] = f2(g.nodes[i]);
    }
    return linop::from_real(a, b);
}

std::uint64_t lcg_state = 99;
double rnd() {
    lcg_state = lcg_state * 6364136223846793005ull + 1442695040888963407ull;
    return 2.0 * (double(lcg_state >> 11) / double(1ull << 53)) - 1.0;
}

GridFunctionPair random_resolved(const cheb::CollocationGrid& g, int modes = 8) {
    std::vector<double> c1(modes), c2(modes);
    for (int m = 0; m < modes; ++m) {
        c1[m] = rnd();
        c2[m] = rnd();
    }
    return pair_from(
        g,
        [&](double y) {
            double s = 0.0;
            const double th = std::acos(std::clamp(y, -1.0, 1.0));
            for (int m = 0; m < modes; ++m) s += c1[m] * std::cos(m * th);
            return s;
        },
        [&](double y) {
            double s = 0.0;
            const double th = std::acos(std::clamp(y, -1.0, 1.0));
            for (int m = 0; m < modes; ++m) s += c2[m] * std::cos(m * th);
            return s;
        });
}

}  // namespace

TEST_CASE("apply_L_alpha on the symmetry modes") {
    const auto g = cheb::make_grid(48);
    for (double alpha : {1.0, 3.0}) {
        const auto f0 = linop::mode_f0(alpha, g);
        const auto Lf0 = linop::apply_L_alpha(alpha, g, f0);
        CHECK(linop::norm_dblk(g, Lf0, 0) < 1e-10);

        const auto f1 = linop::mode_f1(alpha, g);
        auto Lf1 = linop::apply_L_alpha(alpha, g, f1);
        for (std::size_t i = 0; i < g.size(); ++i) {
            Lf1.q1[i] -= f1.q1[i];
            Lf1.q2[i] -= f1.q2[i];
        }
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK(std::abs(Lf1.q1[i]) < 1e-8);
            CHECK(std::abs(Lf1.q2[i]) < 1e-8);
        }

        const auto g0 = linop::mode_g0(alpha, g);
        auto Lg0 = linop::apply_L_alpha(alpha, g, g0);
        for (std::size_t i = 0; i < g.size(); ++i) {
            Lg0.q1[i] -= f0.q1[i];
            Lg0.q2[i] -= f0.q2[i];
        }
        CHECK(linop::norm_dblk(g, Lg0, 0) < 1e-8);
    }
}

TEST_CASE("apply_free_modified on simple data") {
    const auto g = cheb::make_grid(16);
    // q = (1,0) -> (-1, 0)
    auto r = linop::apply_free_modified(g, pair_from(g, [](double) { return 1.0; },
                                                     [](double) { return 0.0; }));
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(r.q1[i].real() == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(std::abs(r.q2[i]) < 1e-10);
    }
    // q = (y,0) -> (-y+1, 0)
    r = linop::apply_free_modified(g, pair_from(g, [](double y) { return y; },
                                                [](double) { return 0.0; }));
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(r.q1[i].real() == doctest::Approx(-g.nodes[i] + 1.0).epsilon(1e-10));
    // q = (0,1) -> (1, -1)
    r = linop::apply_free_modified(g, pair_from(g, [](double) { return 0.0; },
                                                [](double) { return 1.0; }));
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(r.q1[i].real() == doctest::Approx(1.0));
        CHECK(r.q2[i].real() == doctest::Approx(-1.0));
    }
}

TEST_CASE("inner products: hand values") {
    const auto g = cheb::make_grid(32);
    const auto one0 = pair_from(g, [](double) { return 1.0; }, [](double) { return 0.0; });
    CHECK(linop::inner_k(g, one0, one0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
    const auto y0 = pair_from(g, [](double y) { return y; }, [](double) { return 0.0; });
    CHECK(linop::inner_k(g, y0, y0, 0).real() == doctest::Approx(3.0).epsilon(1e-12));
    const auto z1 = pair_from(g, [](double) { return 0.0; }, [](double) { return 1.0; });
    CHECK(linop::inner_k(g, z1, z1, 0).real() == doctest::Approx(2.0).epsilon(1e-12));
    // <<.,.>>: (1,0) -> 2 for any k; (0,1),k=0 -> 4; (y,0),k=1 -> 2/3
    CHECK(linop::inner_dblk(g, one0, one0, 0).real() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(linop::inner_dblk(g, one0, one0, 3).real() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(linop::inner_dblk(g, z1, z1, 0).real() == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(linop::inner_dblk(g, y0, y0, 1).real() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK_THROWS_AS(linop::inner_k(g, one0, one0, 40), UnderResolved);
}

TEST_CASE("free dissipativity") {
    const auto g = cheb::make_grid(48);
    const auto one0 = pair_from(g, [](double) { return 1.0; }, [](double) { return 0.0; });
    CHECK(linop::free_dissipativity_check(g, one0, 0) == doctest::Approx(-0.5).epsilon(1e-10));
    const auto y0 = pair_from(g, [](double y) { return y; }, [](double) { return 0.0; });
    CHECK(linop::free_dissipativity_check(g, y0, 0) <= 1e-8);
    for (int trial = 0; trial < 20; ++trial) {
        const auto q = random_resolved(g);
        for (int k : {0, 1, 2}) CHECK(linop::free_dissipativity_check(g, q, k) <= 1e-8);
    }
}

TEST_CASE("norm equivalence bracket") {
    // |q|_k vs |q1|_{H^{k+1}} + |q2|_{H^k} stays within [1/10, 10]
    const auto g = cheb::make_grid(48);
    for (int trial = 0; trial < 100; ++trial) {
        const auto q = random_resolved(g);
        for (int k : {0, 1, 2}) {
            const double nk = linop::norm_k(g, q, k);
            // full Sobolev stacks summed term by term
            double h1 = 0.0, h2 = 0.0;
            for (int m = 0; m <= k + 1; ++m) {
                auto d = q.q1;
                for (int j = 0; j < m; ++j) d = cheb::apply(g.diff_matrix, d);
                double s = 0.0;
                for (std::size_t i = 0; i < g.size(); ++i)
                    s += g.quad_weights[i] * std::norm(d[i]);
                h1 += s;
                if (m <= k) {
                    auto e = q.q2;
                    for (int j = 0; j < m; ++j) e = cheb::apply(g.diff_matrix, e);
                    double t = 0.0;
                    for (std::size_t i = 0; i < g.size(); ++i)
                        t += g.quad_weights[i] * std::norm(e[i]);
                    h2 += t;
                }
            }
            const double sobolev = std::sqrt(h1) + std::sqrt(h2);
            const double ratio = nk / sobolev;
            CHECK(ratio > 0.1);
            CHECK(ratio < 10.0);
        }
    }
}

TEST_CASE("derivatives commute with L up to the shifted operator and a remainder") {
    // d^k L = L_{alpha,k} d^k + L'_{alpha,k} checked at the level of the
    // discrete coefficient operators (the nodal route drowns k=3 in corner
    // roundoff); the remainder operator is built from sampled d^m V.
    const int N = 48;
    const auto g = cheb::make_grid(N);
    const double alpha = 3.0, nu = 2.0;
    const std::size_t n = g.size();
    const auto C = linop::assemble_coefficient_operator(alpha, g);
    std::uint64_t st = 99;
    auto rnd = [&]() {
        st = st * 6364136223846793005ull + 1442695040888963407ull;
        return 2.0 * (double(st >> 11) / double(1ull << 53)) - 1.0;
    };
    auto matapp = [&](const cheb::Matrix& M, const std::vector<double>& x) {
        std::vector<double> y(M.rows, 0.0);
        for (std::size_t i = 0; i < M.rows; ++i) {
            double s = 0;
            for (std::size_t j = 0; j < M.cols; ++j) s += M(i, j) * x[j];
            y[i] = s;
        }
        return y;
    };
    const auto My = cheb::mult_by_y(N);
    auto vser = cheb::series_inv_nu_plus_y(nu, n + 40);
    for (auto& c : vser) c *= 2.0 * alpha;
    const auto Mv = cheb::mult_by_series(vser, N);
    const auto MyDc = cheb::matmul(My, g.coeff_diff);
    const auto D2 = cheb::matmul(g.coeff_diff, g.coeff_diff);
    const auto MvDc = cheb::matmul(Mv, g.coeff_diff);
    for (int k : {1, 2, 3}) {
        std::vector<double> aq(2 * n, 0.0);
        for (int m = 0; m < 6; ++m) {
            aq[m] = rnd();
            aq[n + m] = rnd();
        }
        auto La = matapp(C, aq);
        std::vector<double> l1(La.begin(), La.begin() + n), l2(La.begin() + n, La.end());
        for (int j = 0; j < k; ++j) {
            l1 = cheb::apply(g.coeff_diff, l1);
            l2 = cheb::apply(g.coeff_diff, l2);
        }
        std::vector<double> d1(aq.begin(), aq.begin() + n), d2(aq.begin() + n, aq.end());
        for (int j = 0; j < k; ++j) {
            d1 = cheb::apply(g.coeff_diff, d1);
            d2 = cheb::apply(g.coeff_diff, d2);
        }
        auto r1 = matapp(MyDc, d1);
        for (std::size_t i = 0; i < n; ++i) r1[i] = -double(k) * d1[i] - r1[i] + d2[i];
        auto t1 = matapp(D2, d1);
        auto t2 = matapp(MvDc, d1);
        auto t3 = matapp(MyDc, d2);
        std::vector<double> r2(n);
        for (std::size_t i = 0; i < n; ++i) r2[i] = t1[i] - t2[i] - (1.0 + k) * d2[i] - t3[i];
        std::vector<double> q1c(aq.begin(), aq.begin() + n);
        for (int j = 0; j <= k - 1; ++j) {
            double bc = 1.0;
            for (int t = 0; t < j; ++t) bc = bc * (k - t) / (t + 1);
            const int m = k - j;
            std::vector<double> w(n);
            for (std::size_t i = 0; i < n; ++i) {
                double fact = 1.0;
                for (int t = 2; t <= m; ++t) fact *= t;
                w[i] = 2.0 * alpha * ((m % 2 == 0) ? -1.0 : 1.0) * fact /
                       std::pow(nu + g.nodes[i], m + 1);
            }
            auto wser_c = cheb::apply(g.analysis, w);
            const auto Mw = cheb::mult_by_series(wser_c, N);
            auto dj = q1c;
            for (int t = 0; t < j + 1; ++t) dj = cheb::apply(g.coeff_diff, dj);
            auto add = matapp(Mw, dj);
            for (std::size_t i = 0; i < n; ++i) r2[i] += bc * add[i];
        }
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            worst = std::max(worst, std::abs(l1[i] - r1[i]));
            worst = std::max(worst, std::abs(l2[i] - r2[i]));
        }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("free-operator solve inverts apply_free_modified") {
    const auto g = cheb::make_grid(48);
    const auto f = pair_from(g, [](double y) { return std::cos(2.0 * y); },
                             [](double y) { return std::sin(y) + 0.5; });
    const auto q = linop::solve_minus_free(g, f);
    auto back = linop::apply_free_modified(g, q);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        worst = std::max(worst, std::abs(back.q1[i] + f.q1[i]));
        worst = std::max(worst, std::abs(back.q2[i] + f.q2[i]));
    }
    CHECK(worst < 1e-7);
}

TEST_CASE("spectral report structure at alpha=3") {
    const auto g = cheb::make_grid(64);
    const auto rep = linop::assemble_and_eig(3.0, g, 4);
    int n_zero = 0, n_one = 0;
    for (const auto& e : rep.eigenvalues) {
        if (e.cls == linop::EigenClass::mode_zero) {
            ++n_zero;
            CHECK(e.residual < 1e-6);
        }
        if (e.cls == linop::EigenClass::mode_one) {
            ++n_one;
            CHECK(e.residual < 1e-6);
        }
        if (e.resolved && e.cls == linop::EigenClass::stable_halfplane)
            CHECK(e.value.real() <= -0.9);
    }
    CHECK(n_zero == 2);
    CHECK(n_one == 1);
    // json emission has the required fields
    const auto js = linop::to_json(rep);
    CHECK(js.find("\"alpha\"") != std::string::npos);
    CHECK(js.find("\"residual\"") != std::string::npos);
    CHECK(js.find("mode_zero") != std::string::npos);
}

TEST_CASE("eigenvector at lambda=1 matches f1 up to scale") {
    const auto g = cheb::make_grid(64);
    const auto rep = linop::assemble_and_eig(3.0, g, 4, true);
    const auto f1 = linop::mode_f1(3.0, g);
    for (std::size_t e = 0; e < rep.eigenvalues.size(); ++e) {
        if (rep.eigenvalues[e].cls != linop::EigenClass::mode_one) continue;
        const auto& v = rep.vectors[e];
        // cosine distance in the <<.,.>>_0 pairing
        const auto ip = linop::inner_dblk(g, v, f1, 0);
        const double nv = linop::norm_dblk(g, v, 0);
        const double nf = linop::norm_dblk(g, f1, 0);
        const double cosine = std::abs(ip) / (nv * nf);
        CHECK(1.0 - cosine < 1e-6);
    }
}

TEST_CASE("eigenfunction residuals decay spectrally with N") {
    double prev = 1e300;
    for (int N : {16, 32, 64}) {
        const auto g = cheb::make_grid(N);
        const auto f1 = linop::mode_f1(3.0, g);
        const double r = linop::eigen_residual(3.0, g, f1, {1.0, 0.0}, 0);
        CHECK((r < prev / 100.0 || r < 1e-10));
        prev = r;
    }
}

TEST_CASE("jordan block check") {
    const auto g = cheb::make_grid(64);
    CHECK(linop::jordan_block_check(3.0, g) < 1e-7);
    CHECK(linop::jordan_block_check(1.0, g) < 1e-7);
    CHECK_THROWS_AS(linop::jordan_block_check(0.0, g), DomainError);
}

TEST_CASE("appendix B pieces") {
    // g(0) = log 2 - 5/8 - ... : log(2) + (0 - 0 - 2.5)/4
    CHECK(linop::appendixB_g(0.0) == doctest::Approx(std::log(2.0) - 0.625).epsilon(1e-14));
    const auto r = linop::appendixB_obstruction();
    CHECK(r.taylor_c0 == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(r.taylor_c1 == doctest::Approx(-2.75).epsilon(1e-12));
    CHECK(r.taylor_c2 == doctest::Approx(6.75).epsilon(1e-12));
    CHECK(std::abs(r.c_log + 27.0 / 4.0) < 0.05);
    CHECK(std::abs(r.A + 0.75) < 1e-4);
    CHECK(std::abs(r.B + 2.75) < 1e-3);
}

TEST_CASE("dimension mismatch is rejected") {
    const auto g = cheb::make_grid(16);
    GridFunctionPair bad(5);
    CHECK_THROWS_AS(linop::apply_L_alpha(3.0, g, bad), DimensionMismatch);
}
