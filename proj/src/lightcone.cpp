#include "blowup/lightcone.hpp"

#include <cmath>

#include "blowup/errors.hpp"
#include "blowup/kernels.hpp"

namespace blowup::lightcone {

// The marched field is v = exp(-u/alpha), for which the blow-up family is a
// linear function of (t,x) and the equation reads
//   v_tt - v_xx = ((v_t^2 - v_x^2) - alpha v_x^2) / v.
// In Riemann form R = v_t + v_x (left-moving), L = v_t - v_x (right-moving),
// dt = dx transports exactly; the source integrates by a trapezoid rule with
// one corrector pass along each characteristic.

LightconeResult lightcone_solver(const profiles::ProfileParams& params,
                                 const std::function<double(double)>& f,
                                 const std::function<double(double)>& g,
                                 const LightconeConfig& cfg) {
    params.validate();
    if (cfg.N < 16) throw DomainError("lightcone grid too small");
    const double T = params.T, x0 = params.x0, alpha = params.alpha;
    const int N = cfg.N;
    const double dx = 2.0 * T / N;
    const double dt = dx;
    const double t_stop = T * (1.0 - std::exp(-cfg.s_max));

    std::vector<double> x(N + 1), u(N + 1), p(N + 1), w(N + 1);
    for (int i = 0; i <= N; ++i) {
        x[i] = x0 - T + i * dx;
        const double y = (x[i] - x0) / T;
        const double du = profiles::dtildeU_dy(params, y);
        u[i] = profiles::tildeU_eval(params, y) + f(x[i]);
        p[i] = alpha / T + du * y / T + g(x[i]);
        w[i] = du / T;
    }
    // perturbed u needs the perturbed slope too
    if (f) {
        const double h = dx;
        for (int i = 0; i <= N; ++i) {
            const double xm = (i == 0) ? x[i] : x[i] - h;
            const double xp = (i == N) ? x[i] : x[i] + h;
            w[i] += (f(xp) - f(xm)) / (xp - xm);
        }
    }

    std::vector<double> v(N + 1), R(N + 1), L(N + 1);
    for (int i = 0; i <= N; ++i) {
        v[i] = std::exp(-u[i] / alpha);
        const double vt = -v[i] * p[i] / alpha;
        const double vx = -v[i] * w[i] / alpha;
        R[i] = vt + vx;
        L[i] = vt - vx;
    }

    LightconeResult out;
    out.dt = dt;
    int lo = 0, hi = N;
    double t = 0.0;
    auto snapshot = [&]() {
        LightconeState st;
        st.t = t;
        st.x_nodes.assign(x.begin() + lo, x.begin() + hi + 1);
        st.u.resize(hi - lo + 1);
        st.u_t.resize(hi - lo + 1);
        double mx = 0.0;
        for (int i = lo; i <= hi; ++i) {
            if (!(v[i] > 0.0) || !std::isfinite(v[i]))
                throw NonFiniteState("field left the representable basin");
            st.u[i - lo] = -alpha * std::log(v[i]);
            const double vt = 0.5 * (R[i] + L[i]);
            st.u_t[i - lo] = -alpha * vt / v[i];
            mx = std::max(mx, std::abs(st.u_t[i - lo]));
        }
        out.fit_times.push_back(t);
        out.fit_maxut.push_back(mx);
        return st;
    };
    out.states.push_back(snapshot());

    std::vector<double> Rn, Ln, vn;
    int step = 0;
    while (t + dt <= t_stop + 1e-12 * T && hi - lo >= 4) {
        const int m = hi - lo - 1;  // interior nodes of the next level
        Rn.assign(m, 0.0);
        Ln.assign(m, 0.0);
        vn.assign(m, 0.0);
        auto source = [&](double Ri, double Li, double vi) {
            const double vt = 0.5 * (Ri + Li), vx = 0.5 * (Ri - Li);
            return ((vt * vt - vx * vx) - alpha * vx * vx) / vi;
        };
        for (int k = 0; k < m; ++k) {
            const int i = lo + 1 + k;
            const double Fdep_R = source(R[i + 1], L[i + 1], v[i + 1]);
            const double Fdep_L = source(R[i - 1], L[i - 1], v[i - 1]);
            // predictor
            double Rp = R[i + 1] + 0.5 * dt * Fdep_R;
            double Lp = L[i - 1] + 0.5 * dt * Fdep_L;
            double vp = v[i] + 0.5 * dt * 0.5 * (R[i] + L[i]);
            const double Farr = source(Rp, Lp, vp);
            // corrector
            Rn[k] = R[i + 1] + 0.5 * dt * (Fdep_R + Farr);
            Ln[k] = L[i - 1] + 0.5 * dt * (Fdep_L + Farr);
            vn[k] = v[i] + 0.5 * dt * (0.5 * (R[i] + L[i]) + 0.5 * (Rn[k] + Ln[k]));
        }
        ++lo;
        --hi;
        t += dt;
        for (int k = 0; k < m; ++k) {
            R[lo + k] = Rn[k];
            L[lo + k] = Ln[k];
            v[lo + k] = vn[k];
        }
        ++step;
        if (step % cfg.store_stride == 0 || t + dt > t_stop + 1e-12 * T || hi - lo < 4)
            out.states.push_back(snapshot());
        else {
            // still track max|u_t| for the blow-up fit
            double mx = 0.0;
            for (int i = lo; i <= hi; ++i) {
                if (!(v[i] > 0.0) || !std::isfinite(v[i]))
                    throw NonFiniteState("field left the representable basin");
                mx = std::max(mx, std::abs(-alpha * 0.5 * (R[i] + L[i]) / v[i]));
            }
            out.fit_times.push_back(t);
            out.fit_maxut.push_back(mx);
        }
    }

    // blow-up time from 1/max|u_t| ~ (T-t)/alpha over the last decade of T-t
    const double tf = out.fit_times.back();
    const double window = 10.0 * (T - tf);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < out.fit_times.size(); ++i) {
        if (T - out.fit_times[i] > window) continue;
        const double xi = out.fit_times[i];
        const double yi = 1.0 / out.fit_maxut[i];
        sx += xi;
        sy += yi;
        sxx += xi * xi;
        sxy += xi * yi;
        ++n;
    }
    if (n >= 2) {
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        const double intercept = (sy - slope * sx) / n;
        out.blowup_time_estimate = -intercept / slope;
    }
    return out;
}

}  // namespace blowup::lightcone
