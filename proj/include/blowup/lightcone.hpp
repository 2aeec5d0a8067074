#pragma once

#include <functional>
#include <vector>

#include "blowup/profiles.hpp"

// Physical-space lightcone solver for u_tt - u_xx = (u_x)^2 with unit-Courant
// characteristic integration on a grid whose endpoints track the shrinking
// backward cone (one node dropped per side per step).

namespace blowup::lightcone {

struct LightconeState {
    double t = 0.0;
    std::vector<double> x_nodes;
    std::vector<double> u, u_t;
};

struct LightconeConfig {
    int N = 2048;          // initial cells over [x0-T, x0+T]
    double s_max = 4.6;    // stop at t = T (1 - e^{-s_max})
    int store_stride = 32; // keep every k-th state (plus the final one)
};

struct LightconeResult {
    std::vector<LightconeState> states;
    std::vector<double> fit_times;    // (t, max|u_t|) series for the blow-up fit
    std::vector<double> fit_maxut;
    double blowup_time_estimate = 0.0;
    double dt = 0.0;
};

// f, g perturb u(0,x) and u_t(0,x) on the initial interval.
LightconeResult lightcone_solver(const profiles::ProfileParams& params,
                                 const std::function<double(double)>& f,
                                 const std::function<double(double)>& g,
                                 const LightconeConfig& cfg);

}  // namespace blowup::lightcone
