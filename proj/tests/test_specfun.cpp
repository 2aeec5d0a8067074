#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "blowup/errors.hpp"
#include "blowup/specfun.hpp"

using namespace blowup;
using specfun::Complex;

TEST_CASE("pochhammer basics") {
    CHECK(specfun::pochhammer({2.0, 0.0}, 3).real() == doctest::Approx(24.0));
    CHECK(specfun::pochhammer({0.0, 0.0}, 1) == Complex{0.0, 0.0});
    CHECK(specfun::pochhammer({0.5, 0.0}, 2).real() == doctest::Approx(0.75));
    CHECK(specfun::pochhammer({1.3, -0.2}, 0) == Complex{1.0, 0.0});
}

TEST_CASE("pochhammer recurrence (a)_{n+1} = (a)_n (a+n)") {
    const Complex samples[] = {{0.5, 0.0}, {-2.5, 1.0}, {3.0, -4.0}, {1e-3, 1e-3}};
    for (const Complex a : samples)
        for (int n = 0; n <= 50; n += 7) {
            const Complex lhs = specfun::pochhammer(a, n + 1);
            const Complex rhs = specfun::pochhammer(a, n) * (a + double(n));
            CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
        }
}

TEST_CASE("log_gamma fixed values") {
    CHECK(std::abs(specfun::log_gamma({1.0, 0.0})) < 1e-13);
    CHECK(specfun::log_gamma({0.5, 0.0}).real() ==
          doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-12));
    CHECK(specfun::log_gamma({6.0, 0.0}).real() == doctest::Approx(std::log(120.0)).epsilon(1e-13));
    CHECK_THROWS_AS(specfun::log_gamma({-3.0, 0.0}), PoleOfGamma);
}

TEST_CASE("exp(log_gamma) recovers Gamma to 1e-12 relative on [0.5, 20]") {
    // oracle: Gamma from the recursion Gamma(z+1) = z Gamma(z) seeded by
    // integers/half-integers, which are exact
    for (int k = 1; k <= 20; ++k) {
        double g = 1.0;  // Gamma(k) = (k-1)!
        for (int j = 2; j < k; ++j) g *= j;
        const double got = std::exp(specfun::log_gamma({double(k), 0.0}).real());
        CHECK(got == doctest::Approx(g).epsilon(1e-12));
    }
    double ghalf = std::sqrt(M_PI);  // Gamma(1/2)
    for (int k = 0; k <= 19; ++k) {
        const double z = 0.5 + k;
        const double got = std::exp(specfun::log_gamma({z, 0.0}).real());
        CHECK(got == doctest::Approx(ghalf).epsilon(1e-12));
        ghalf *= z;
    }
}

TEST_CASE("gauss_2f1 trivial and terminating cases") {
    const auto at_zero = specfun::gauss_2f1({0.3, 0.1}, {-1.2, 0.0}, {2.4, 0.0}, {0.0, 0.0});
    CHECK(at_zero.value == Complex{1.0, 0.0});
    CHECK(at_zero.terms_used == 1);

    const auto lam0 = specfun::gauss_2f1({0.0, 0.0}, {-1.0, 0.0}, {2.0, 0.0}, {0.5, 0.0});
    CHECK(lam0.value == Complex{1.0, 0.0});
    CHECK(lam0.terminated);
}

TEST_CASE("gauss_2f1(1,1;2;z) = -log(1-z)/z") {
    for (double z : {0.5, -0.7, 0.12, 0.93}) {
        const auto r = specfun::gauss_2f1({1, 0}, {1, 0}, {2, 0}, {z, 0}, 1e-14);
        CHECK(r.value.real() == doctest::Approx(-std::log1p(-z) / z).epsilon(1e-12));
    }
    // frozen: 2 ln 2 at z = 1/2
    const auto r = specfun::gauss_2f1({1, 0}, {1, 0}, {2, 0}, {0.5, 0});
    CHECK(r.value.real() == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("terminating series equals the Horner-evaluated polynomial") {
    // oracle: explicit coefficients via Pochhammer products, Horner evaluation
    const Complex a{-4.0, 0.0}, b{1.3, -0.4}, c{0.9, 0.2};
    for (double z : {0.3, -0.8, 1.7}) {  // termination makes |z|>1 legal
        Complex coeff[5];
        for (int n = 0; n <= 4; ++n) {
            Complex num = specfun::pochhammer(a, n) * specfun::pochhammer(b, n);
            Complex den = specfun::pochhammer(c, n);
            double fact = 1.0;
            for (int j = 2; j <= n; ++j) fact *= j;
            coeff[n] = num / (den * fact);
        }
        Complex horner = coeff[4];
        for (int n = 3; n >= 0; --n) horner = horner * z + coeff[n];
        const auto r = specfun::gauss_2f1(a, b, c, {z, 0.0});
        CHECK(r.terminated);
        CHECK(std::abs(r.value - horner) <= 1e-13 * (1.0 + std::abs(horner)));
    }
}

TEST_CASE("gauss_2f1 error paths") {
    CHECK_THROWS_AS(specfun::gauss_2f1({0.3, 0}, {0.4, 0}, {-2.0, 0}, {0.5, 0}), PoleOfC);
    CHECK_THROWS_AS(specfun::gauss_2f1({0.3, 0}, {0.4, 0}, {1.0, 0}, {0.999999, 0}, 1e-12, 50),
                    NoConvergence);
    CHECK_THROWS_AS(specfun::gauss_2f1({0.3, 0}, {0.4, 0}, {1.0, 0}, {1.5, 0}), DomainError);
    CHECK_THROWS_AS(specfun::gauss_2f1({std::nan(""), 0}, {0.4, 0}, {1.0, 0}, {0.5, 0}),
                    DomainError);
}

TEST_CASE("contiguous relation c F(a,b) - c F(a+1,b) + b z F(a+1,b+1;c+1) = 0") {
    const Complex a{0.35, 0.4}, b{-0.7, 0.1}, c{1.6, -0.3};
    for (double z : {0.2, -0.4, 0.6}) {
        const Complex f1 = specfun::gauss_2f1(a, b, c, {z, 0}, 1e-14).value;
        const Complex f2 = specfun::gauss_2f1(a + 1.0, b, c, {z, 0}, 1e-14).value;
        const Complex f3 = specfun::gauss_2f1(a + 1.0, b + 1.0, c + 1.0, {z, 0}, 1e-14).value;
        const Complex rel = c * f1 - c * f2 + b * z * f3;
        CHECK(std::abs(rel) < 1e-10);
    }
}

TEST_CASE("coefficient ratio r_n") {
    // direct substitution: lambda=2, alpha=3, n=0 -> (2*1)/((2+2)*1) = 1/2
    CHECK(specfun::coefficient_ratio_rn({2.0, 0.0}, 3.0, 0).real() == doctest::Approx(0.5));
    CHECK_THROWS_AS(specfun::coefficient_ratio_rn({0.0, 0.0}, 3.0, 0), DegenerateCoefficient);
    CHECK_THROWS_AS(specfun::coefficient_ratio_rn({1.0, 0.0}, 3.0, 5), DegenerateCoefficient);
    // r_n -> 1
    const Complex lam{0.5, 0.0};
    CHECK(std::abs(specfun::coefficient_ratio_rn(lam, 3.0, 1000) - 1.0) < 0.01);
}

TEST_CASE("r_n agrees with the log-Pochhammer route to 1e-12 relative") {
    // independent oracle: a_n = (l)_n (l-1)_n / ((l+root)_n n!) in log space
    const double alpha = 3.0;
    const double root = std::sqrt(1.0 + alpha);
    const Complex lams[] = {{0.5, 2.0}, {2.3, -1.1}, {-0.4, 0.7}};
    for (const Complex lam : lams)
        for (int n : {1, 5, 20, 100, 200}) {
            auto log_an = [&](int m) {
                return specfun::log_pochhammer(lam, m) + specfun::log_pochhammer(lam - 1.0, m) -
                       specfun::log_pochhammer(lam + root, m) -
                       specfun::log_gamma({double(m) + 1.0, 0.0});
            };
            const Complex oracle = std::exp(log_an(n + 1) - log_an(n));
            const Complex got = specfun::coefficient_ratio_rn(lam, alpha, n);
            CHECK(std::abs(got - oracle) <= 1e-12 * std::abs(oracle));
        }
}

TEST_CASE("checked complex rejects NaN") {
    CHECK_THROWS_AS(specfun::checked({std::nan(""), 0.0}), DomainError);
    CHECK(specfun::checked({1.0, -2.0}) == Complex{1.0, -2.0});
}
