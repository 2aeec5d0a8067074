#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

// The five-parameter blow-up family: self-similar profiles tildeU, the
// derivative profile H, and the stationary non-existence witness p_c.

namespace blowup::profiles {

struct ProfileParams {
    double alpha = 3.0;
    double beta = std::numeric_limits<double>::infinity();  // 0, finite positive, or inf
    double kappa = 0.0;
    double T = 1.0;
    double x0 = 0.0;
    bool permissive = false;  // allow alpha <= 0 for exploration

    bool beta_is_inf() const { return std::isinf(beta); }
    double root() const { return std::sqrt(1.0 + alpha); }
    // 0 < beta < inf with sqrt(1+alpha) not an integer: C^k regularity only
    // up to k <= sqrt(1+alpha).
    bool reduced_regularity() const;
    void validate() const;  // throws DomainError unless permissive
};

struct StationaryWitness {
    double c = 0.0;
    double root = 0.0;
    double residual = 0.0;
};

// p_c(y) = c(y^2-1) + (1/4)(2y + (y^2-1) log|(y-1)/(y+1)|), endpoint limits
// p_c(-1) = -1/2 and p_c(1) = 1/2 returned exactly.
double p_c_eval(double c, double y);

// Bisection root of p_c in (-1,1); |p_c(root)| < 1e-12.
StationaryWitness find_stationary_singularity(double c);

// dW/dy from the closed second form of the W-equation; beta tokens 0/inf use
// their closed forms. Throws DomainError when |y| > 1.
double dW_dy(const ProfileParams& p, double y);

// tildeU_{alpha,beta,kappa}(y). Closed forms for beta in {0,inf}; adaptive
// quadrature of the profile integrand otherwise (or when force_quadrature).
double tildeU_eval(const ProfileParams& p, double y, double quad_tol = 1e-10,
                   bool force_quadrature = false);

// d/dy tildeU = -alpha/(root+y) + dW/dy (equals H_{alpha,beta}).
double dtildeU_dy(const ProfileParams& p, double y);

// |2y U' + (y^2-1) U'' + alpha - (U')^2| with analytic U' and centered-
// difference U''. Requires |y| <= 1 - 2h.
double riccati_residual(const ProfileParams& p, double y, double h = 1e-4);

// Stationary profile of the derivative equation; endpoint limits for finite
// positive beta are -1-root at y=-1 and 1+root at y=+1.
double H_eval(double alpha, double beta, double y);

// u(t,x) on the backward lightcone; throws OutsideLightcone.
double physical_u_eval(const ProfileParams& p, double t, double x, double quad_tol = 1e-10);

struct ProfileSample {
    double y, tildeU, dtildeU, H;
};

std::vector<ProfileSample> sample_profile(const ProfileParams& p, int samples,
                                          double quad_tol = 1e-10);

// CSV with header y,tildeU,dtildeU,H at 17 significant digits.
void write_profile_csv(const std::vector<ProfileSample>& rows, const std::string& path);

}  // namespace blowup::profiles
