#include "blowup/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "blowup/errors.hpp"
#include "blowup/io.hpp"
#include "blowup/quadrature.hpp"

namespace blowup::profiles {

bool ProfileParams::reduced_regularity() const {
    if (beta <= 0.0 || beta_is_inf()) return false;
    const double r = root();
    return std::abs(r - std::round(r)) > 1e-12;
}

void ProfileParams::validate() const {
    if (permissive) return;
    if (!(alpha > 0.0))
        throw DomainError(
            "alpha must be positive for the smooth family (a singular point would lie "
            "inside the light cone otherwise)");
    if (beta < 0.0) throw DomainError("beta must be >= 0 (or inf)");
    if (!(T > 0.0)) throw DomainError("T must be positive");
}

double p_c_eval(double c, double y) {
    if (y == -1.0) return -0.5;
    if (y == 1.0) return 0.5;
    const double q = y * y - 1.0;
    return c * q + 0.25 * (2.0 * y + q * std::log(std::abs((y - 1.0) / (y + 1.0))));
}

StationaryWitness find_stationary_singularity(double c) {
    double lo = -1.0, hi = 1.0;
    double flo = p_c_eval(c, lo);
    StationaryWitness w;
    w.c = c;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = p_c_eval(c, mid);
        if (std::abs(fm) < 1e-13 || hi - lo < 1e-16) {
            w.root = mid;
            w.residual = std::abs(fm);
            return w;
        }
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    w.root = 0.5 * (lo + hi);
    w.residual = std::abs(p_c_eval(c, w.root));
    return w;
}

double dW_dy(const ProfileParams& p, double y) {
    if (std::abs(y) > 1.0 + 1e-14) throw DomainError("dW_dy requires |y| <= 1");
    y = std::clamp(y, -1.0, 1.0);
    const double nu = p.root();
    const double base = 2.0 * p.alpha * nu / ((nu - y) * (nu + y));
    if (p.beta_is_inf()) return 0.0;
    if (p.beta == 0.0) return base;
    if (y == 1.0) return base;  // the beta-weighted factor vanishes
    if (y == -1.0) return 0.0;  // it diverges
    // bracket = mu ((1-y)/(1+y))^nu (nu+y)/(nu-y) + 1 with mu = 2 alpha nu beta;
    // evaluate 1/bracket = sigmoid(-t) in log space so both beta limits stay stable.
    const double t = std::log(2.0 * p.alpha * nu * p.beta) +
                     nu * (std::log1p(-y) - std::log1p(y)) + std::log(nu + y) -
                     std::log(nu - y);
    const double inv_bracket = (t > 0.0) ? std::exp(-t) / (1.0 + std::exp(-t))
                                         : 1.0 / (1.0 + std::exp(t));
    return base * inv_bracket;
}

double dtildeU_dy(const ProfileParams& p, double y) {
    return -p.alpha / (p.root() + y) + dW_dy(p, y);
}

namespace {

// Integrand of the closed tildeU display; equals H_{alpha,beta}(z).
double profile_integrand(const ProfileParams& p, double z) {
    return H_eval(p.alpha, p.beta, z);
}

}  // namespace

double tildeU_eval(const ProfileParams& p, double y, double quad_tol, bool force_quadrature) {
    if (std::abs(y) > 1.0 + 1e-14) throw DomainError("tildeU_eval requires |y| <= 1");
    y = std::clamp(y, -1.0, 1.0);
    const double nu = p.root();
    if (!force_quadrature) {
        if (p.beta_is_inf()) return -p.alpha * std::log(nu + y) + p.kappa;
        if (p.beta == 0.0) return -p.alpha * std::log(nu - y) + p.kappa;
    }
    if (!(quad_tol > 0.0)) throw DomainError("quad_tol must be positive");
    const double integral =
        quad::adaptive_gl([&](double z) { return profile_integrand(p, z); }, 0.0, y, quad_tol);
    return p.kappa - p.alpha * std::log(nu) + integral;
}

double riccati_residual(const ProfileParams& p, double y, double h) {
    if (!(h > 0.0)) throw DomainError("stencil width must be positive");
    if (std::abs(y) > 1.0 - 2.0 * h)
        throw DomainError("riccati_residual requires |y| <= 1 - 2h");
    const double up = dtildeU_dy(p, y);
    const double upp = (dtildeU_dy(p, y + h) - dtildeU_dy(p, y - h)) / (2.0 * h);
    return std::abs(2.0 * y * up + (y * y - 1.0) * upp + p.alpha - up * up);
}

double H_eval(double alpha, double beta, double y) {
    if (std::abs(y) > 1.0 + 1e-14) throw DomainError("H_eval requires |y| <= 1");
    y = std::clamp(y, -1.0, 1.0);
    const double nu = std::sqrt(1.0 + alpha);
    if (std::isinf(beta)) return -alpha / (nu + y);
    if (beta == 0.0) return alpha / (nu - y);
    if (y == -1.0) return -1.0 - nu;
    if (y == 1.0) return 1.0 + nu;
    // H = alpha/(nu+y) (1 - mu R) / (d + mu R), R = ((1-y)/(1+y))^nu,
    // mu = 2 alpha nu beta, d = (nu-y)/(nu+y); evaluate via e^{+-t}, t = log(mu R).
    const double d = (nu - y) / (nu + y);
    const double t = std::log(2.0 * alpha * nu * beta) + nu * (std::log1p(-y) - std::log1p(y));
    double ratio;
    if (t <= 0.0) {
        const double e = std::exp(t);
        ratio = (1.0 - e) / (d + e);
    } else {
        const double e = std::exp(-t);
        ratio = (e - 1.0) / (d * e + 1.0);
    }
    return alpha / (nu + y) * ratio;
}

double physical_u_eval(const ProfileParams& p, double t, double x, double quad_tol) {
    p.validate();
    if (t < 0.0 || t >= p.T || std::abs(x - p.x0) > p.T - t + 1e-14)
        throw OutsideLightcone("(t,x) outside the backward lightcone");
    const double y = std::clamp((x - p.x0) / (p.T - t), -1.0, 1.0);
    return -p.alpha * std::log1p(-t / p.T) + tildeU_eval(p, y, quad_tol);
}

std::vector<ProfileSample> sample_profile(const ProfileParams& p, int samples, double quad_tol) {
    p.validate();
    if (samples < 2) throw DomainError("need at least 2 samples");
    std::vector<ProfileSample> rows;
    rows.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        const double y = -1.0 + 2.0 * i / (samples - 1.0);
        ProfileSample s;
        s.y = y;
        s.tildeU = tildeU_eval(p, y, quad_tol);
        s.dtildeU = dtildeU_dy(p, y);
        s.H = H_eval(p.alpha, p.beta, y);
        rows.push_back(s);
    }
    return rows;
}

void write_profile_csv(const std::vector<ProfileSample>& rows, const std::string& path) {
    io::CsvWriter csv(path, {"y", "tildeU", "dtildeU", "H"});
    for (const auto& r : rows) csv.row({r.y, r.tildeU, r.dtildeU, r.H});
    csv.commit();
}

}  // namespace blowup::profiles
