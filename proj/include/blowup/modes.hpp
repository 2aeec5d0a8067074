#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

// The eigenvalue problem for the linearization: Heun-form coefficients, the
// Lorentz reduction to hypergeometric form, Frobenius local analysis, and the
// coefficient-based mode-stability decision.

namespace blowup::modes {

using Complex = std::complex<double>;

struct EigenProblem {
    double alpha = 3.0;
    Complex lambda{0.0, 0.0};

    double root() const { return std::sqrt(1.0 + alpha); }
    double gamma() const { return 1.0 / root(); }  // Lorentz boost
};

// Heun normal-form data of the eigen-equation in the z chart.
struct HeunCoefficients {
    Complex gamma, delta, a, b, c;
    double d;
    double epsilon;  // always 2
};

HeunCoefficients heun_coefficients(const EigenProblem& pb);

enum class SingularPoint { zero, one };

struct IndicialData {
    SingularPoint singular_point = SingularPoint::zero;
    Complex s_plus, s_minus;  // Re s_plus >= Re s_minus
    bool integer_gap = false;
    bool log_possible = false;
};

// Indicial roots in the z' (hypergeometric) chart: {0, 1+root-lambda} at z'=0
// and {0, 1-root-lambda} at z'=1.
IndicialData indicial_roots(const EigenProblem& pb, SingularPoint point);

enum class ExponentChoice { plus, minus };

struct FrobeniusSeries {
    Complex exponent;
    std::vector<Complex> coeffs;  // a0 = 1
    SingularPoint center = SingularPoint::zero;
    double radius_estimate = 0.0;
    bool terminated = false;
};

// Local Frobenius solution of the hypergeometric form. Throws LogCase when the
// requested branch requires a log term, ResonantDivision on unexpected zero
// recurrence denominators.
FrobeniusSeries frobenius_series(const EigenProblem& pb, SingularPoint center,
                                 ExponentChoice choice, int n_terms);

// psi(y') = ((1 - g y')/sqrt(1-g^2))^(-lambda) phi((y'-g)/(1-g y')), g = 1/root.
Complex lorentz_transform_eigenfunction(const EigenProblem& pb,
                                        const std::function<Complex(double)>& phi,
                                        double yprime);
// Mobius argument (y'-g)/(1-g y').
double lorentz_argument(const EigenProblem& pb, double yprime);

enum class Evidence { series_terminates, radius_one, ratio_limit };

struct ModeVerdict {
    Complex lambda;
    bool smooth = false;
    Evidence evidence = Evidence::ratio_limit;
    double ratio_tail = 0.0;
};

constexpr int kDefaultNmax = 2000;
// Lattice points this close to 0 or 1 snap to the exact eigenvalue.
constexpr double kSnapTol = 1e-9;

ModeVerdict mode_stability_verdict(double alpha, Complex lambda, int n_max = kDefaultNmax);

struct ScanRequest {
    double alpha = 3.0;
    double re_lo = -0.9, re_hi = 4.0;
    double im_lo = -4.0, im_hi = 4.0;
    int n_re = 40, n_im = 40;
    int n_max = kDefaultNmax;
    int jobs = 0;  // 0 = hardware concurrency
};

// Verdicts in lattice order (re-major, then im), deterministic.
std::vector<ModeVerdict> scan_halfplane(const ScanRequest& req);

void write_scan_csv(const std::vector<ModeVerdict>& verdicts, const std::string& path);

}  // namespace blowup::modes
