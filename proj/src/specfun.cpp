#include "blowup/specfun.hpp"

#include <cmath>

#include "blowup/errors.hpp"

namespace blowup::specfun {

Complex checked(Complex z) {
    if (std::isnan(z.real()) || std::isnan(z.imag()))
        throw DomainError("NaN component in complex value");
    return z;
}

bool is_nonpositive_integer(Complex z, double tol) {
    if (std::abs(z.imag()) > tol) return false;
    const double r = z.real();
    if (r > 0.5) return false;
    return std::abs(r - std::round(r)) <= tol;
}

Complex pochhammer(Complex a, int n) {
    Complex p{1.0, 0.0};
    for (int k = 0; k < n; ++k) p *= a + double(k);
    return p;
}

Complex log_gamma(Complex z) {
    checked(z);
    if (is_nonpositive_integer(z))
        throw PoleOfGamma("log_gamma at nonpositive integer");
    // Reflection for Re z < 1/2: lgamma(z) = log(pi/sin(pi z)) - lgamma(1-z).
    if (z.real() < 0.5) {
        const Complex lp = std::log(M_PI / std::sin(M_PI * z));
        return lp - log_gamma(1.0 - z);
    }
    // Lanczos, g = 7, 9 coefficients.
    static const double coeffs[9] = {
        0.99999999999980993,  676.5203681218851,   -1259.1392167224028,
        771.32342877765313,   -176.61502916214059, 12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    const Complex zm1 = z - 1.0;
    Complex x{coeffs[0], 0.0};
    for (int i = 1; i < 9; ++i) x += coeffs[i] / (zm1 + double(i));
    const Complex t = zm1 + 7.5;
    return 0.5 * std::log(2.0 * M_PI) + (zm1 + 0.5) * std::log(t) - t + std::log(x);
}

Complex log_pochhammer(Complex a, int n) {
    if (n == 0) return {0.0, 0.0};
    return log_gamma(a + double(n)) - log_gamma(a);
}

SeriesEvaluation gauss_2f1(Complex a, Complex b, Complex c, Complex z, double tol,
                           int max_terms) {
    checked(a);
    checked(b);
    checked(c);
    checked(z);
    const bool terminating = is_nonpositive_integer(a) || is_nonpositive_integer(b);
    if (!terminating && std::abs(z) >= 1.0)
        throw DomainError("gauss_2f1 requires |z| < 1 for non-terminating series");

    SeriesEvaluation out;
    Complex sum{0.0, 0.0};
    Complex term{1.0, 0.0};  // t_0
    for (int n = 0; n < max_terms; ++n) {
        sum += term;
        out.terms_used = n + 1;
        const Complex an = a + double(n);
        const Complex bn = b + double(n);
        const Complex cn = c + double(n);
        // Exact-zero detection of the Pochhammer factors (polynomial cases).
        if ((is_nonpositive_integer(a) && std::abs(an) <= 1e-12 * (1.0 + std::abs(a))) ||
            (is_nonpositive_integer(b) && std::abs(bn) <= 1e-12 * (1.0 + std::abs(b)))) {
            out.value = sum;
            out.terminated = true;
            out.truncation_estimate = 0.0;
            return out;
        }
        if (is_nonpositive_integer(c) && std::abs(cn) <= 1e-12 * (1.0 + std::abs(c)))
            throw PoleOfC("c hit a nonpositive integer before termination");
        term *= an * bn / (cn * double(n + 1)) * z;
        const double mag = std::abs(term);  // magnitude of t_{n+1}
        if (mag <= tol) {
            out.value = sum;
            out.truncation_estimate = mag;
            return out;
        }
    }
    throw NoConvergence("gauss_2f1 hit max_terms with estimate above tol");
}

Complex coefficient_ratio_rn(Complex lambda, double alpha, int n) {
    checked(lambda);
    if (is_nonpositive_integer(lambda) || is_nonpositive_integer(lambda - 1.0))
        throw DegenerateCoefficient("series terminates for lambda in {0,1}");
    const double root = std::sqrt(1.0 + alpha);
    return (lambda + double(n)) * (lambda + double(n) - 1.0) /
           ((lambda + root + double(n)) * double(n + 1));
}

}  // namespace blowup::specfun
