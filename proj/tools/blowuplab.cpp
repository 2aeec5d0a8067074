// blowuplab: batch frontend for the blow-up laboratory. Subcommands emit
// deterministic CSV/JSON artifacts plus a canonical config echo.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "blowup/acceptance.hpp"
#include "blowup/errors.hpp"
#include "blowup/evolve.hpp"
#include "blowup/io.hpp"
#include "blowup/lightcone.hpp"
#include "blowup/linop.hpp"
#include "blowup/modes.hpp"
#include "blowup/profiles.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string out_dir(const std::string& flag_value) {
    if (const char* env = std::getenv("BLOWUPLAB_OUT")) return env;
    return flag_value.empty() ? "." : flag_value;
}

void echo_config(const std::string& dir, const std::string& name, const json& cfg) {
    blowup::io::atomic_write((fs::path(dir) / (name + "_config.json")).string(),
                             cfg.dump(2) + "\n");
}

double parse_beta(const std::string& s) {
    if (s == "inf" || s == "Inf" || s == "INF") return std::numeric_limits<double>::infinity();
    return std::stod(s);
}

void parse_range(const std::string& s, double& lo, double& hi) {
    const auto pos = s.find(':');
    if (pos == std::string::npos) throw blowup::DomainError("range must be lo:hi");
    lo = std::stod(s.substr(0, pos));
    hi = std::stod(s.substr(pos + 1));
}

void parse_grid(const std::string& s, int& n, int& m) {
    const auto pos = s.find('x');
    if (pos == std::string::npos) throw blowup::DomainError("grid must be NxM");
    n = std::stoi(s.substr(0, pos));
    m = std::stoi(s.substr(pos + 1));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"blowuplab: generalized self-similar blow-up laboratory"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_flag;
    int jobs = 0;
    app.add_option("--out", out_flag, "output directory (env BLOWUPLAB_OUT overrides)");
    app.add_option("--jobs", jobs, "worker cap for parallel sweeps");

    // ---- profile
    auto* sp = app.add_subcommand("profile", "emit profile samples y,tildeU,dtildeU,H");
    double p_alpha = 3.0, p_kappa = 0.0, p_T = 1.0, p_x0 = 0.0;
    std::string p_beta = "inf";
    int p_samples = 201;
    sp->add_option("--alpha", p_alpha, "family parameter alpha > 0");
    sp->add_option("--beta", p_beta, "beta >= 0 or 'inf'");
    sp->add_option("--kappa", p_kappa, "profile offset");
    sp->add_option("--T", p_T, "blow-up time");
    sp->add_option("--x0", p_x0, "blow-up point");
    sp->add_option("--samples", p_samples, "number of rows");

    // ---- scan-modes
    auto* sm = app.add_subcommand("scan-modes", "mode-stability verdicts on a lattice");
    double m_alpha = 3.0;
    std::string m_re = "-0.9:3", m_im = "-3:3", m_grid = "20x20";
    int m_nmax = blowup::modes::kDefaultNmax;
    sm->add_option("--alpha", m_alpha, "family parameter alpha > 0");
    sm->add_option("--re", m_re, "real range lo:hi");
    sm->add_option("--im", m_im, "imaginary range lo:hi");
    sm->add_option("--grid", m_grid, "lattice NxM");
    sm->add_option("--nmax", m_nmax, "ratio-test index");

    // ---- spectrum
    auto* ss = app.add_subcommand("spectrum", "discrete spectrum of the collocated operator");
    double s_alpha = 3.0;
    int s_N = 64, s_k = 4;
    bool s_dump = false;
    ss->add_option("--alpha", s_alpha, "family parameter alpha > 0");
    ss->add_option("--N", s_N, "collocation degree (<= 256)");
    ss->add_option("--k-norm", s_k, "Sobolev index of the residual norm");
    ss->add_flag("--dump-vectors", s_dump, "also write eigenvector samples");

    // ---- evolve-linear
    auto* el = app.add_subcommand("evolve-linear", "RK4 of the linearized flow");
    double el_alpha = 3.0, el_smax = 2.0;
    int el_N = 64, el_k = 4;
    std::string el_mode = "f1";
    el->add_option("--alpha", el_alpha, "family parameter alpha > 0");
    el->add_option("--N", el_N, "collocation degree");
    el->add_option("--k-norm", el_k, "trace norm index");
    el->add_option("--smax", el_smax, "final slow time");
    el->add_option("--mode", el_mode, "initial data: f0|f1|g0");

    // ---- evolve-nonlinear
    auto* en = app.add_subcommand("evolve-nonlinear", "full nonlinear evolution with modulation");
    blowup::evolve::EvolutionConfig ecfg;
    double en_eps = 1e-4;
    bool en_nofit = false;
    en->add_option("--alpha0", ecfg.alpha0, "base alpha");
    en->add_option("--kappa0", ecfg.kappa0, "base kappa");
    en->add_option("--T0", ecfg.T0, "base T");
    en->add_option("--N", ecfg.grid_N, "collocation degree");
    en->add_option("--k-norm", ecfg.k_norm, "trace norm index");
    en->add_option("--smax", ecfg.s_max, "final slow time");
    en->add_option("--eps", en_eps, "perturbation size");
    en->add_option("--seed", ecfg.seed, "perturbation seed");
    en->add_option("--w0", ecfg.w0, "target decay rate 1-delta");
    en->add_flag("--no-fit", en_nofit, "skip the modulation fit");

    // ---- lightcone
    auto* lc = app.add_subcommand("lightcone", "physical-space solver on the shrinking cone");
    double lc_alpha = 3.0, lc_T = 1.0, lc_x0 = 0.0, lc_kappa = 0.0, lc_smax = std::log(100.0);
    std::string lc_beta = "inf";
    int lc_N = 2048;
    lc->add_option("--alpha", lc_alpha, "family parameter alpha > 0");
    lc->add_option("--beta", lc_beta, "beta >= 0 or 'inf'");
    lc->add_option("--kappa", lc_kappa, "profile offset");
    lc->add_option("--T", lc_T, "blow-up time");
    lc->add_option("--x0", lc_x0, "blow-up point");
    lc->add_option("--N", lc_N, "initial cells");
    lc->add_option("--smax", lc_smax, "stop at T(1-e^-smax)");

    // ---- verify
    auto* vf = app.add_subcommand("verify", "run the acceptance criteria");
    std::string vf_level = "fast";
    vf->add_option("--level", vf_level, "fast|full");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        const std::string dir = out_dir(out_flag);
        if (sp->parsed()) {
            blowup::profiles::ProfileParams params;
            params.alpha = p_alpha;
            params.beta = parse_beta(p_beta);
            params.kappa = p_kappa;
            params.T = p_T;
            params.x0 = p_x0;
            params.validate();
            if (p_samples < 2) throw blowup::DomainError("--samples must be >= 2");
            const auto rows = blowup::profiles::sample_profile(params, p_samples);
            blowup::profiles::write_profile_csv(rows, (fs::path(dir) / "profile.csv").string());
            echo_config(dir, "profile",
                        json{{"command", "profile"},
                             {"alpha", p_alpha},
                             {"beta", p_beta},
                             {"kappa", p_kappa},
                             {"T", p_T},
                             {"x0", p_x0},
                             {"samples", p_samples}});
        } else if (sm->parsed()) {
            blowup::modes::ScanRequest req;
            req.alpha = m_alpha;
            parse_range(m_re, req.re_lo, req.re_hi);
            parse_range(m_im, req.im_lo, req.im_hi);
            parse_grid(m_grid, req.n_re, req.n_im);
            req.n_max = m_nmax;
            req.jobs = jobs;
            if (!(m_alpha > 0.0)) throw blowup::DomainError("--alpha must be > 0");
            const auto verdicts = blowup::modes::scan_halfplane(req);
            blowup::modes::write_scan_csv(verdicts, (fs::path(dir) / "scan.csv").string());
            echo_config(dir, "scan",
                        json{{"command", "scan-modes"},
                             {"alpha", m_alpha},
                             {"re", m_re},
                             {"im", m_im},
                             {"grid", m_grid},
                             {"nmax", m_nmax},
                             {"jobs", jobs}});
        } else if (ss->parsed()) {
            if (!(s_alpha > 0.0)) throw blowup::DomainError("--alpha must be > 0");
            const auto grid = blowup::cheb::make_grid(s_N);
            const auto rep = blowup::linop::assemble_and_eig(s_alpha, grid, s_k, s_dump);
            blowup::linop::write_report_json(rep, (fs::path(dir) / "spectrum.json").string());
            if (s_dump) {
                blowup::io::CsvWriter csv((fs::path(dir) / "eigenvectors.csv").string(),
                                          {"eig_index", "re_lambda", "im_lambda", "y", "re_q1",
                                           "im_q1", "re_q2", "im_q2"});
                for (std::size_t e = 0; e < rep.vectors.size(); ++e) {
                    const auto& v = rep.vectors[e];
                    for (std::size_t i = 0; i < grid.size(); ++i)
                        csv.raw_row({std::to_string(e),
                                     blowup::io::format_double(rep.eigenvalues[e].value.real()),
                                     blowup::io::format_double(rep.eigenvalues[e].value.imag()),
                                     blowup::io::format_double(grid.nodes[i]),
                                     blowup::io::format_double(v.q1[i].real()),
                                     blowup::io::format_double(v.q1[i].imag()),
                                     blowup::io::format_double(v.q2[i].real()),
                                     blowup::io::format_double(v.q2[i].imag())});
                }
                csv.commit();
            }
            echo_config(dir, "spectrum",
                        json{{"command", "spectrum"},
                             {"alpha", s_alpha},
                             {"N", s_N},
                             {"k_norm", s_k},
                             {"dump_vectors", s_dump}});
        } else if (el->parsed()) {
            if (!(el_alpha > 0.0)) throw blowup::DomainError("--alpha must be > 0");
            const auto grid = blowup::cheb::make_grid(el_N);
            blowup::linop::GridFunctionPair q0 =
                el_mode == "f0"   ? blowup::linop::mode_f0(el_alpha, grid)
                : el_mode == "g0" ? blowup::linop::mode_g0(el_alpha, grid)
                : el_mode == "f1" ? blowup::linop::mode_f1(el_alpha, grid)
                                  : throw blowup::DomainError("--mode must be f0|f1|g0");
            blowup::evolve::EvolutionConfig cfg;
            cfg.alpha0 = el_alpha;
            cfg.k_norm = el_k;
            cfg.s_max = el_smax;
            cfg.grid_N = el_N;
            const auto tr = blowup::evolve::evolve_linear(el_alpha, grid, q0, cfg);
            blowup::evolve::write_trace_csv(tr, (fs::path(dir) / "trace.csv").string());
            echo_config(dir, "evolve_linear",
                        json{{"command", "evolve-linear"},
                             {"alpha", el_alpha},
                             {"N", el_N},
                             {"k_norm", el_k},
                             {"smax", el_smax},
                             {"mode", el_mode},
                             {"dt", blowup::evolve::cfl_dt(el_N)}});
        } else if (en->parsed()) {
            const auto pert = blowup::evolve::random_perturbation(ecfg, en_eps, ecfg.seed);
            auto f = [&pert](double x) { return pert.operator_f(x); };
            auto g = [&pert](double x) { return pert.operator_g(x); };
            blowup::evolve::FittedParams fit{ecfg.alpha0, ecfg.kappa0, ecfg.T0, 0.0, 0, true};
            if (!en_nofit) fit = blowup::evolve::fit_modulation(ecfg, f, g);
            blowup::evolve::Lab lab(ecfg.alpha0, ecfg.grid_N, ecfg.k_norm);
            const auto q0 = blowup::evolve::initial_data_map(ecfg, fit.alpha_star,
                                                             fit.kappa_star, fit.T_star, f, g);
            const double dt = ecfg.dt > 0 ? ecfg.dt : blowup::evolve::cfl_dt(ecfg.grid_N);
            auto tr = lab.integrate(lab.coeffs_of(q0), ecfg.s_max, dt, true,
                                    std::max(1, int(ecfg.s_max / dt / 250)));
            tr.fitted = fit;
            const double slope = blowup::evolve::log_slope(
                tr, tr.stable_norm, 1.0, std::min(5.0, ecfg.s_max));
            blowup::evolve::write_trace_csv(tr, (fs::path(dir) / "trace.csv").string());
            blowup::io::atomic_write((fs::path(dir) / "summary.json").string(),
                                     blowup::evolve::trace_summary_json(tr, ecfg, slope));
            echo_config(dir, "evolve_nonlinear",
                        json{{"command", "evolve-nonlinear"},
                             {"alpha0", ecfg.alpha0},
                             {"kappa0", ecfg.kappa0},
                             {"T0", ecfg.T0},
                             {"N", ecfg.grid_N},
                             {"k_norm", ecfg.k_norm},
                             {"smax", ecfg.s_max},
                             {"eps", en_eps},
                             {"seed", ecfg.seed},
                             {"w0", ecfg.w0},
                             {"fit", !en_nofit},
                             {"dt", ecfg.dt > 0 ? ecfg.dt : blowup::evolve::cfl_dt(ecfg.grid_N)}});
        } else if (lc->parsed()) {
            blowup::profiles::ProfileParams params;
            params.alpha = lc_alpha;
            params.beta = parse_beta(lc_beta);
            params.kappa = lc_kappa;
            params.T = lc_T;
            params.x0 = lc_x0;
            params.validate();
            blowup::lightcone::LightconeConfig cfg;
            cfg.N = lc_N;
            cfg.s_max = lc_smax;
            auto zero = [](double) { return 0.0; };
            const auto res = blowup::lightcone::lightcone_solver(params, zero, zero, cfg);
            const auto& fin = res.states.back();
            {
                blowup::io::CsvWriter csv((fs::path(dir) / "lightcone_final.csv").string(),
                                          {"x", "u", "u_t"});
                for (std::size_t i = 0; i < fin.x_nodes.size(); ++i)
                    csv.row({fin.x_nodes[i], fin.u[i], fin.u_t[i]});
                csv.commit();
            }
            blowup::io::atomic_write(
                (fs::path(dir) / "lightcone_summary.json").string(),
                json{{"blowup_time_estimate", res.blowup_time_estimate},
                     {"dt", res.dt},
                     {"final_time", fin.t}}
                        .dump(2) +
                    "\n");
            echo_config(dir, "lightcone",
                        json{{"command", "lightcone"},
                             {"alpha", lc_alpha},
                             {"beta", lc_beta},
                             {"kappa", lc_kappa},
                             {"T", lc_T},
                             {"x0", lc_x0},
                             {"N", lc_N},
                             {"smax", lc_smax}});
        } else if (vf->parsed()) {
            const auto level = vf_level == "full" ? blowup::acceptance::Level::full
                               : vf_level == "fast"
                                   ? blowup::acceptance::Level::fast
                                   : throw blowup::DomainError("--level must be fast|full");
            const auto results = blowup::acceptance::run(level);
            const bool ok = blowup::acceptance::print_table(results);
            return ok ? 0 : 2;
        }
    } catch (const blowup::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const blowup::HypothesisViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const blowup::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
