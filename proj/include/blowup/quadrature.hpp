#pragma once

#include <functional>

namespace blowup::quad {

// 15-point Gauss-Legendre on [a,b].
double gl15(const std::function<double(double)>& f, double a, double b);

// Adaptive composite Gauss-Legendre with bisection refinement and an
// absolute-error target. Throws QuadratureFailure past max_depth.
double adaptive_gl(const std::function<double(double)>& f, double a, double b, double abs_tol,
                   int max_depth = 40);

// Fixed composite GL15 with `panels` equal panels (for smooth integrands on
// transformed coordinates).
double composite_gl(const std::function<double(double)>& f, double a, double b, int panels);

}  // namespace blowup::quad
