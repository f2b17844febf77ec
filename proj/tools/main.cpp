// focaldec: trajectories, period maps, renormalization experiments and
// focal-decomposition index grids for anharmonic oscillators.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "focaldec/dynamics.hpp"
#include "focaldec/elliptic.hpp"
#include "focaldec/errors.hpp"
#include "focaldec/focal.hpp"
#include "focaldec/gridio.hpp"
#include "focaldec/period.hpp"
#include "focaldec/potentials.hpp"
#include "focaldec/renorm.hpp"

namespace {

using namespace focaldec;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_grid(const std::string& s) {
    // a:b:steps
    double a, b;
    int steps;
    char c1, c2;
    std::istringstream is(s);
    if (!(is >> a >> c1 >> b >> c2 >> steps) || c1 != ':' || c2 != ':' || steps < 1 ||
        !(is >> std::ws).eof())
        throw UsageError("grid must be <a>:<b>:<steps>, got '" + s + "'");
    std::vector<double> g(steps);
    for (int i = 0; i < steps; ++i)
        g[i] = (steps == 1) ? a : a + (b - a) * i / (steps - 1);
    return g;
}

std::pair<double, double> parse_band(const std::string& s) {
    double a, b;
    char c1;
    std::istringstream is(s);
    if (!(is >> a >> c1 >> b) || c1 != ':' || !(is >> std::ws).eof() || !(a < b))
        throw UsageError("band must be <a>:<b> with a < b, got '" + s + "'");
    return {a, b};
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    return os;
}

int run(int argc, char** argv) {
    CLI::App app{"renormalization and focal decomposition of anharmonic oscillators"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    app.add_option("--threads", threads, "worker thread cap for grid subcommands")
        ->check(CLI::PositiveNumber);

    // elliptic
    auto* sc_ell = app.add_subcommand("elliptic", "evaluate sn, cn, dn, sd and K");
    double u = 0.0, m = 0.0;
    sc_ell->add_option("--u", u, "argument")->required();
    sc_ell->add_option("--m", m, "parameter m = k^2 in [0,1)")->required();

    // trajectory
    auto* sc_traj = app.add_subcommand("trajectory", "integrate one trajectory to CSV");
    std::string pot_desc = "quartic:+1", mode_str = "adaptive", out_path, image_path;
    double v = 0.0, t_max = 10.0, tol = 0.0;
    sc_traj->add_option("--potential", pot_desc, "potential descriptor")->required();
    sc_traj->add_option("--v", v, "initial dimensionless velocity")->required();
    sc_traj->add_option("--t-max", t_max, "end time")->required();
    sc_traj->add_option("--mode", mode_str, "adaptive|symplectic")
        ->check(CLI::IsMember({"adaptive", "symplectic"}));
    sc_traj->add_option("--tol", tol, "local error tolerance (step size in symplectic mode)");
    sc_traj->add_option("--out", out_path, "output CSV path")->required();

    // period
    auto* sc_per = app.add_subcommand("period", "period map T(v) to CSV");
    std::string vgrid_str;
    bool do_fit = false;
    std::optional<double> single_v;
    sc_per->add_option("--potential", pot_desc, "potential descriptor")->required();
    auto* opt_v = sc_per->add_option_function<double>(
        "--v", [&](double val) { single_v = val; }, "single velocity");
    auto* opt_vg = sc_per->add_option("--v-grid", vgrid_str, "grid <a>:<b>:<steps>");
    opt_v->excludes(opt_vg);
    sc_per->add_flag("--fit", do_fit, "append fitted v^2 coefficient");
    sc_per->add_option("--out", out_path, "output CSV path")->required();

    // renorm
    auto* sc_ren = app.add_subcommand("renorm", "convergence of renormalized trajectories");
    std::vector<int> n_list;
    double eps = 0.2;
    int t_samples = 64;
    std::string cells_path;
    sc_ren->add_option("--potential", pot_desc, "potential descriptor")->required();
    sc_ren->add_option("--n", n_list, "renormalization steps (comma separated)")
        ->required()
        ->delimiter(',');
    sc_ren->add_option("--eps", eps, "window exponent, in (0, 1/3)")->required();
    sc_ren->add_option("--v-grid", vgrid_str, "grid <a>:<b>:<steps>");
    sc_ren->add_option("--t-samples", t_samples, "time samples per window")
        ->check(CLI::Range(2, 1 << 20));
    sc_ren->add_option("--out", out_path, "summary CSV path")->required();
    sc_ren->add_option("--cells-out", cells_path, "per-cell CSV path");

    // focal
    auto* sc_foc = app.add_subcommand("focal", "focal decomposition index grid");
    std::string focal_mode = "asymptotic", band_str;
    int ell = -1, t_steps = 512, x_steps = 256, samples = 1001, n_renorm = 100;
    double x_max = 0.0;
    sc_foc->add_option("--mode", focal_mode, "asymptotic|numeric|renormalized")
        ->check(CLI::IsMember({"asymptotic", "numeric", "renormalized"}));
    sc_foc->add_option("--ell", ell, "branch sign for asymptotic mode")
        ->check(CLI::IsMember({-1, 1}));
    sc_foc->add_option("--potential", pot_desc, "potential descriptor");
    sc_foc->add_option("--t-max", t_max, "largest endpoint time")->required();
    sc_foc->add_option("--t-steps", t_steps, "t resolution")->check(CLI::Range(1, 1 << 20));
    sc_foc->add_option("--x-steps", x_steps, "x resolution")->check(CLI::Range(1, 1 << 20));
    sc_foc->add_option("--x-max", x_max, "half-width of the x range (numeric mode)");
    sc_foc->add_option("--v-band", band_str, "scan band <a>:<b> (numeric mode)");
    sc_foc->add_option("--samples", samples, "scan resolution in v")
        ->check(CLI::Range(2, 1 << 24));
    sc_foc->add_option("--n", n_renorm, "renormalization step (renormalized mode)")
        ->check(CLI::PositiveNumber);
    sc_foc->add_option("--out", out_path, "output CSV path")->required();
    sc_foc->add_option("--image", image_path, "optional PGM image path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (*sc_ell) {
            const EllipticTriple tri = jacobi_eval(u, m);
            std::cout << "u,m,sn,cn,dn,sd,K\n"
                      << format_value(u) << ',' << format_value(m) << ','
                      << format_value(tri.sn) << ',' << format_value(tri.cn) << ','
                      << format_value(tri.dn) << ',' << format_value(tri.sn / tri.dn)
                      << ',' << format_value(complete_k(m)) << '\n';
            return 0;
        }

        if (*sc_traj) {
            const PotentialSpec p = [&] {
                try {
                    return make_potential(pot_desc);
                } catch (const std::domain_error& e) {
                    throw UsageError(e.what());
                }
            }();
            const IntegrationMode mode = (mode_str == "adaptive")
                                             ? IntegrationMode::Adaptive
                                             : IntegrationMode::Symplectic;
            const TrajectorySample s = integrate(p, v, t_max, mode, tol);
            auto os = open_out(out_path);
            write_trajectory_csv(os, s);
            return 0;
        }

        if (*sc_per) {
            const PotentialSpec p = [&] {
                try {
                    return make_potential(pot_desc);
                } catch (const std::domain_error& e) {
                    throw UsageError(e.what());
                }
            }();
            std::vector<double> vg;
            if (single_v) vg.push_back(*single_v);
            else if (!vgrid_str.empty()) vg = parse_grid(vgrid_str);
            else throw UsageError("period: need --v or --v-grid");
            std::vector<double> T(vg.size());
            for (std::size_t i = 0; i < vg.size(); ++i) T[i] = period(p, vg[i]);
            double fit = std::numeric_limits<double>::quiet_NaN();
            if (do_fit) fit = period_expansion_coefficient(p, vg);
            auto os = open_out(out_path);
            write_period_csv(os, vg, T, fit);
            return 0;
        }

        if (*sc_ren) {
            if (!(eps > 0.0 && eps < 1.0 / 3.0))
                throw UsageError("renorm: --eps must lie in (0, 1/3)");
            const PotentialSpec p = [&] {
                try {
                    return make_potential(pot_desc);
                } catch (const std::domain_error& e) {
                    throw UsageError(e.what());
                }
            }();
            std::vector<double> vg;
            if (!vgrid_str.empty()) vg = parse_grid(vgrid_str);
            std::vector<ConvergenceCell> cells;
            std::function<void(const ConvergenceCell&)> sink;
            if (!cells_path.empty())
                sink = [&cells](const ConvergenceCell& c) { cells.push_back(c); };
            const auto rows = convergence_experiment(p, eps, n_list, vg, t_samples, sink);
            auto os = open_out(out_path);
            write_convergence_csv(os, rows);
            if (!cells_path.empty()) {
                auto cs = open_out(cells_path);
                write_convergence_cells_csv(cs, cells);
            }
            return 0;
        }

        if (*sc_foc) {
            FocalGrid g;
            if (focal_mode == "asymptotic") {
                if (t_steps < 2 || x_steps < 2)
                    throw UsageError("focal asymptotic: --t-steps and --x-steps must be >= 2");
                g = asymptotic_grid(ell, t_max, t_steps, x_steps, threads);
            } else {
                const PotentialSpec p = [&] {
                    try {
                        return make_potential(pot_desc);
                    } catch (const std::domain_error& e) {
                        throw UsageError(e.what());
                    }
                }();
                if (focal_mode == "numeric") {
                    std::pair<double, double> band;
                    if (!band_str.empty()) band = parse_band(band_str);
                    else {
                        const double cap = 0.995 * p.mu() * p.omega() * p.v_max();
                        if (!std::isfinite(cap))
                            throw UsageError(
                                "focal numeric: --v-band required for unbounded wells");
                        band = {-cap, cap};
                    }
                    const double xm = (x_max > 0.0) ? x_max : 1.0;
                    g = numeric_grid(p, t_max, t_steps, xm, x_steps, band, samples,
                                     1e-10, threads);
                } else {
                    g = renormalized_grid(p, n_renorm, t_max, t_steps, x_steps, samples,
                                          threads);
                }
            }
            auto os = open_out(out_path);
            write_focal_csv(os, g);
            if (!image_path.empty()) {
                auto img = open_out(image_path);
                write_focal_pgm(img, g);
            }
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const band_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const window_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const integration_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
