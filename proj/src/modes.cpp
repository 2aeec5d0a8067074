#include "blowup/modes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "blowup/errors.hpp"
#include "blowup/io.hpp"
#include "blowup/specfun.hpp"

namespace blowup::modes {

using specfun::is_nonpositive_integer;

HeunCoefficients heun_coefficients(const EigenProblem& pb) {
    if (!(pb.alpha > 0.0)) throw DomainError("alpha must be positive");
    const double r = pb.root();
    const Complex l = pb.lambda;
    HeunCoefficients h;
    h.gamma = l - r;
    h.delta = l + r;
    h.d = -(r - 1.0) / 2.0;
    h.a = l;
    h.b = l + 1.0;
    h.c = -0.5 * (l * l + l) * (r - 1.0);
    h.epsilon = 2.0;
    return h;
}

IndicialData indicial_roots(const EigenProblem& pb, SingularPoint point) {
    const double r = pb.root();
    const Complex other =
        (point == SingularPoint::zero) ? 1.0 + r - pb.lambda : 1.0 - r - pb.lambda;
    IndicialData d;
    d.singular_point = point;
    if (other.real() >= 0.0) {
        d.s_plus = other;
        d.s_minus = {0.0, 0.0};
    } else {
        d.s_plus = {0.0, 0.0};
        d.s_minus = other;
    }
    const Complex gap = d.s_plus - d.s_minus;
    d.integer_gap = std::abs(gap.imag()) <= 1e-9 && gap.real() >= -1e-9 &&
                    std::abs(gap.real() - std::round(gap.real())) <= 1e-9;
    d.log_possible = d.integer_gap;
    return d;
}

double lorentz_argument(const EigenProblem& pb, double yprime) {
    const double g = pb.gamma();
    return (yprime - g) / (1.0 - g * yprime);
}

Complex lorentz_transform_eigenfunction(const EigenProblem& pb,
                                        const std::function<Complex(double)>& phi,
                                        double yprime) {
    if (std::abs(yprime) > 1.0 + 1e-14) throw DomainError("|y'| <= 1 required");
    const double g = pb.gamma();
    const double base = (1.0 - g * yprime) / std::sqrt(1.0 - g * g);
    // base > 0 on the domain, so the principal branch is just exp(-lambda log base)
    const Complex pref = std::exp(-pb.lambda * std::log(base));
    return pref * phi(lorentz_argument(pb, yprime));
}

FrobeniusSeries frobenius_series(const EigenProblem& pb, SingularPoint center,
                                 ExponentChoice choice, int n_terms) {
    if (n_terms < 2) throw DomainError("n_terms >= 2 required");
    // Hypergeometric data in the local chart w (w = z' or 1-z').
    const double r = pb.root();
    const Complex a = pb.lambda;
    const Complex b = pb.lambda - 1.0;
    const Complex C =
        (center == SingularPoint::zero) ? pb.lambda - r : pb.lambda + r;  // local c

    const IndicialData ind = indicial_roots(pb, center);
    const Complex s = (choice == ExponentChoice::plus) ? ind.s_plus : ind.s_minus;
    const bool minus_with_gap = (choice == ExponentChoice::minus) && ind.integer_gap;
    const int gap =
        minus_with_gap ? static_cast<int>(std::llround((ind.s_plus - ind.s_minus).real())) : -1;
    if (minus_with_gap && gap == 0)
        throw LogCase("double indicial root forces a log term in the second solution");

    FrobeniusSeries out;
    out.exponent = s;
    out.center = center;
    out.coeffs.assign(n_terms, Complex{0.0, 0.0});
    out.coeffs[0] = 1.0;
    bool dead = false;  // all remaining coefficients forced zero
    for (int k = 1; k < n_terms; ++k) {
        if (dead) break;
        const Complex num = (s + double(k - 1) + a) * (s + double(k - 1) + b);
        const Complex den = (s + double(k)) * (s + double(k) - 1.0 + C);
        if (std::abs(den) <= 1e-12 * (1.0 + std::abs(s + double(k)))) {
            // resonance: log-free continuation only if the numerator side dies too
            const Complex forcing = out.coeffs[k - 1] * num;
            if (std::abs(forcing) <= 1e-12 * std::abs(out.coeffs[0])) {
                out.coeffs[k] = 0.0;
                continue;
            }
            if (minus_with_gap && k == gap)
                throw LogCase("integer indicial gap requires a log term");
            throw ResonantDivision("recurrence denominator vanished");
        }
        out.coeffs[k] = out.coeffs[k - 1] * num / den;
        if (out.coeffs[k] == Complex{0.0, 0.0}) dead = true;
    }
    if (dead) {
        out.terminated = true;
        out.radius_estimate = std::numeric_limits<double>::infinity();
        return out;
    }
    // radius from the tail ratio (r_k -> 1/R)
    double acc = 0.0;
    int cnt = 0;
    for (int k = n_terms - 4; k < n_terms; ++k) {
        if (k < 1) continue;
        const double c0 = std::abs(out.coeffs[k - 1]);
        const double c1 = std::abs(out.coeffs[k]);
        if (c0 > 0.0 && c1 > 0.0) {
            acc += c1 / c0;
            ++cnt;
        }
    }
    out.radius_estimate = (cnt > 0 && acc > 0.0) ? cnt / acc : 0.0;
    return out;
}

ModeVerdict mode_stability_verdict(double alpha, Complex lambda, int n_max) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    if (n_max < 100) throw DomainError("n_max >= 100 required");
    if (lambda.real() <= -1.0) throw OutOfHalfPlane("mode test applies to Re lambda > -1");
    ModeVerdict v;
    // Snap to the exact symmetry eigenvalues before testing.
    if (std::abs(lambda - Complex{0.0, 0.0}) < kSnapTol) lambda = {0.0, 0.0};
    if (std::abs(lambda - Complex{1.0, 0.0}) < kSnapTol) lambda = {1.0, 0.0};
    v.lambda = lambda;
    // a_n(lambda) = (lambda)_n (lambda-1)_n / ((lambda+root)_n n!): some a_n is
    // exactly zero iff a Pochhammer factor hits zero, i.e. lambda in {0,1}
    // on Re lambda > -1.
    if (is_nonpositive_integer(lambda, 1e-12) || is_nonpositive_integer(lambda - 1.0, 1e-12)) {
        v.smooth = true;
        v.evidence = Evidence::series_terminates;
        v.ratio_tail = 0.0;
        return v;
    }
    v.smooth = false;
    v.evidence = Evidence::ratio_limit;
    v.ratio_tail = std::abs(specfun::coefficient_ratio_rn(lambda, alpha, n_max) - 1.0);
    return v;
}

std::vector<ModeVerdict> scan_halfplane(const ScanRequest& req) {
    if (req.re_lo <= -1.0) throw OutOfHalfPlane("scan range must satisfy Re > -1");
    if (req.n_re < 1 || req.n_im < 1) throw DomainError("grid dims >= 1");
    const std::size_t total = std::size_t(req.n_re) * req.n_im;
    std::vector<ModeVerdict> out(total);
    auto lattice = [&](std::size_t idx) {
        const int i = static_cast<int>(idx) / req.n_im;
        const int j = static_cast<int>(idx) % req.n_im;
        const double re =
            (req.n_re == 1) ? req.re_lo : req.re_lo + (req.re_hi - req.re_lo) * i / (req.n_re - 1.0);
        const double im =
            (req.n_im == 1) ? req.im_lo : req.im_lo + (req.im_hi - req.im_lo) * j / (req.n_im - 1.0);
        return Complex{re, im};
    };
    unsigned jobs = req.jobs > 0 ? req.jobs : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, 64);
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    for (unsigned t = 0; t < jobs; ++t) {
        pool.emplace_back([&, t]() {
            try {
                for (std::size_t idx = t; idx < total; idx += jobs)
                    out[idx] = mode_stability_verdict(req.alpha, lattice(idx), req.n_max);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
    return out;
}

void write_scan_csv(const std::vector<ModeVerdict>& verdicts, const std::string& path) {
    io::CsvWriter csv(path, {"re_lambda", "im_lambda", "smooth", "evidence", "ratio_tail"});
    for (const auto& v : verdicts) {
        const char* ev = v.evidence == Evidence::series_terminates ? "series_terminates"
                         : v.evidence == Evidence::radius_one      ? "radius_one"
                                                                   : "ratio_limit";
        csv.raw_row({io::format_double(v.lambda.real()), io::format_double(v.lambda.imag()),
                     v.smooth ? "1" : "0", ev, io::format_double(v.ratio_tail)});
    }
    csv.commit();
}

}  // namespace blowup::modes
