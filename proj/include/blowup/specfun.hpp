#pragma once

#include <complex>
#include <cstdint>

// Special-function kernels behind the mode-stability scan and the Frobenius
// machinery: Pochhammer symbols, log-Gamma, and the Gauss hypergeometric
// series with explicit convergence control.

namespace blowup::specfun {

using Complex = std::complex<double>;

// Rejects NaN components; returns the value unchanged otherwise.
Complex checked(Complex z);

struct SeriesEvaluation {
    Complex value{0.0, 0.0};
    int terms_used = 0;
    double truncation_estimate = 0.0;  // bound on the first omitted term
    bool terminated = false;           // a coefficient hit exact zero
};

// True when z is within tol of a nonpositive integer (imaginary part included).
bool is_nonpositive_integer(Complex z, double tol = 1e-12);

// Rising factorial (a)_n; (a)_0 = 1 exactly. Total function.
Complex pochhammer(Complex a, int n);

// Principal-branch log Gamma (Lanczos with reflection for Re z < 1/2).
Complex log_gamma(Complex z);

// log (a)_n = lgamma(a+n) - lgamma(a); requires a not a nonpositive integer.
Complex log_pochhammer(Complex a, int n);

constexpr double kDefaultTol = 1e-12;
constexpr int kDefaultMaxTerms = 100000;

// 2F1(a,b;c;z) by the running-ratio series. Requires |z| < 1 unless the
// series terminates. Throws PoleOfC / NoConvergence.
SeriesEvaluation gauss_2f1(Complex a, Complex b, Complex c, Complex z,
                           double tol = kDefaultTol, int max_terms = kDefaultMaxTerms);

// r_n(lambda) = (lambda+n)(lambda+n-1) / ((lambda+sqrt(1+alpha)+n)(n+1)).
// Throws DegenerateCoefficient for lambda in {0,1}.
Complex coefficient_ratio_rn(Complex lambda, double alpha, int n);

}  // namespace blowup::specfun
