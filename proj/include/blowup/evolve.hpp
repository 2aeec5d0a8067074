#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "blowup/linop.hpp"

// Time integration of the linearized and full nonlinear systems in
// self-similar variables, the initial-data map, and modulation-parameter
// fitting against the symmetry modes.

namespace blowup::evolve {

using linop::CollocationGrid;
using linop::GridFunctionPair;

struct EvolutionConfig {
    double alpha0 = 3.0;
    double kappa0 = 0.0;
    double T0 = 1.0;
    double x0 = 0.0;
    int k_norm = 4;
    double w0 = 0.9;  // 1 - delta
    double dt = 0.0;  // 0: advection CFL rule 0.5*h_min/(1+max|y|)
    double s_max = 5.0;
    int grid_N = 48;
    std::uint64_t seed = 1;
};

double cfl_dt(int grid_N);

struct FittedParams {
    double alpha_star = 0.0, kappa_star = 0.0, T_star = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct EvolutionTrace {
    std::vector<double> times;
    std::vector<double> norm_k;
    std::vector<double> proj_f0, proj_f1, proj_g0;
    std::vector<double> stable_norm;  // after subtracting symmetry-mode content
    FittedParams fitted;
};

// N(q) = (0, (d_y q1)^2) with collocation differentiation.
GridFunctionPair nonlinearity(const CollocationGrid& g, const GridFunctionPair& q);

// Precomputed spectral context shared by the evolution entry points.
class Lab {
public:
    Lab(double alpha, int grid_N, int k_norm);

    const CollocationGrid& grid() const { return grid_; }
    double alpha() const { return alpha_; }
    int k_norm() const { return k_norm_; }

    // real Chebyshev coefficient stacks (2(N+1)) of the symmetry modes
    const std::vector<double>& f0() const { return f0_; }
    const std::vector<double>& f1() const { return f1_; }
    const std::vector<double>& g0() const { return g0_; }
    const std::array<std::vector<double>, 3>& duals() const { return duals_; }
    const std::array<std::array<double, 3>, 3>& gram() const { return gram_; }

    std::vector<double> coeffs_of(const GridFunctionPair& q) const;  // real part
    GridFunctionPair pair_of(const std::vector<double>& coeffs) const;

    double inner(const std::vector<double>& a, const std::vector<double>& b) const;
    double norm(const std::vector<double>& a) const { return std::sqrt(std::max(0.0, inner(a, a))); }
    // contents along [g0, f0, f1]
    std::array<double, 3> project(const std::vector<double>& a) const;
    std::vector<double> stable_part(const std::vector<double>& a) const;

    // RK4 of du/ds = L u (+ N(u)) in the scaled coefficient basis; samples the
    // trace every `stride` steps. Throws Instability past norm 1e12.
    EvolutionTrace integrate(const std::vector<double>& coeffs0, double s_max, double dt,
                             bool nonlinear, int stride,
                             std::vector<std::vector<double>>* states = nullptr,
                             double blowup_guard_eps = 0.0) const;

private:
    double alpha_;
    int k_norm_;
    CollocationGrid grid_;
    cheb::Matrix Ms_;                 // scaled coefficient operator
    std::vector<double> dscale_;
    cheb::Matrix gram_pair_;          // <<.,.>>_k Gram on coefficient stacks
    std::vector<double> f0_, f1_, g0_;
    std::array<std::vector<double>, 3> duals_;
    std::array<std::array<double, 3>, 3> gram_;

    void rhs(const std::vector<double>& u, std::vector<double>& out, bool nonlinear,
             std::vector<double>& scratch_a, std::vector<double>& scratch_b) const;
};

// Classical RK4 integration of the linearized flow; trace records the
// <<.,.>>_{k_norm} norm and dual-basis projections.
EvolutionTrace evolve_linear(double alpha, const CollocationGrid& g, const GridFunctionPair& q0,
                             const EvolutionConfig& cfg);

// Full nonlinear system at fixed (alpha0, kappa0, T0); the perturbation is a
// pair of callables in the similarity variable y.
EvolutionTrace evolve_nonlinear(const EvolutionConfig& cfg,
                                const std::function<double(double)>& pert1,
                                const std::function<double(double)>& pert2);

// Def 6.2 map: f^T + f0^T - f_{alpha,kappa} sampled on the grid. The
// callables are physical-space (f, g) on the initial interval.
GridFunctionPair initial_data_map(const EvolutionConfig& cfg, double alpha, double kappa,
                                  double T, const std::function<double(double)>& f,
                                  const std::function<double(double)>& gfun);

struct GramDual {
    std::array<std::array<double, 3>, 3> gram;  // basis order [g0, f0, f1]
    std::array<GridFunctionPair, 3> duals;
};

GramDual gram_dual_basis(double alpha, const CollocationGrid& g, int k_norm);

// Iterative modulation fit: adjusts (alpha, kappa, T) until the dual-basis
// contents of the evolved correction vanish below tol.
FittedParams fit_modulation(const EvolutionConfig& cfg, const std::function<double(double)>& f,
                            const std::function<double(double)>& gfun, double tol = 1e-8,
                            int max_iter = 12, double s_fit = 4.0);

// Deterministic random smooth physical perturbation, normalized so the mapped
// data perturbation has <<.,.>>_{k_norm} norm eps.
struct Perturbation {
    std::vector<double> cos_f, cos_g;  // cosine coefficients
    double scale = 1.0;
    double operator_f(double x) const;
    double operator_g(double x) const;
};

Perturbation random_perturbation(const EvolutionConfig& cfg, double eps, std::uint64_t seed);

// least-squares slope of log(norm) over [s_lo, s_hi]
double log_slope(const EvolutionTrace& tr, const std::vector<double>& series, double s_lo,
                 double s_hi);

void write_trace_csv(const EvolutionTrace& tr, const std::string& path);
std::string trace_summary_json(const EvolutionTrace& tr, const EvolutionConfig& cfg,
                               double rate_slope);

}  // namespace blowup::evolve
