#include "focaldec/renorm.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "focaldec/dynamics.hpp"
#include "focaldec/errors.hpp"
#include "focaldec/period.hpp"

namespace focaldec {

namespace {
constexpr double kPi = std::numbers::pi;

void check_window(const PotentialSpec& p, int n, double t) {
    if (n < 1) throw std::domain_error("renorm: n must be >= 1");
    if (!(t >= 0.0)) throw std::domain_error("renorm: t must be >= 0");
    const double window = kWindowConstant * n;
    if (t > window) {
        std::ostringstream os;
        os << "renorm: t=" << t << " exceeds the valid window K*n=" << window
           << " for n=" << n << " (potential " << p.descriptor() << ")";
        throw window_error(os.str());
    }
}
}  // namespace

double scaling_parameter(int n, double t) {
    if (n < 1) throw std::domain_error("scaling_parameter: n must be >= 1");
    if (!(t >= 0.0)) throw std::domain_error("scaling_parameter: t must be >= 0");
    return std::sqrt(8.0 * t / (3.0 * kPi * n));
}

double scaling_velocity(const PotentialSpec& p, int n, double t) {
    check_window(p, n, t);
    if (t == 0.0) return 0.0;
    const int ell = p.ell();
    const double target = 2.0 * kPi - 2.0 * ell * t / n;
    if (target <= 0.0)
        throw window_error("scaling_velocity: target period not positive");

    // Bracket the monotone branch: T moves away from 2*pi in the
    // direction of -ell as v grows.
    double lo = 0.0;           // T(lo) = 2*pi
    double hi = 0.0;
    const double cap = p.v_max();
    double step = std::min(0.125, 0.25 * cap);
    for (double v = step;; v = std::min(v + step, cap * (1.0 - 1e-12))) {
        const double Tv = period(p, v);
        if ((ell > 0 && Tv <= target) || (ell < 0 && Tv >= target)) {
            hi = v;
            break;
        }
        lo = v;
        if (v >= cap * (1.0 - 1e-12)) {
            std::ostringstream os;
            os << "scaling_velocity: T=" << target
               << " unreachable inside the periodic band (t too large for n=" << n
               << ")";
            throw window_error(os.str());
        }
    }
    // Bisection on T(v) - target; T is monotone on the branch.
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double Tm = period(p, mid);
        if (std::fabs(Tm - target) <= 1e-12) return mid;
        if ((ell > 0) ? (Tm > target) : (Tm < target)) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

ScalingContext make_scaling_context(const PotentialSpec& p, int n, double t) {
    check_window(p, n, t);
    return {n,
            t,
            p.ell(),
            scaling_parameter(n, t),
            scaling_velocity(p, n, t),
            kWindowConstant * n};
}

double asymptotic_trajectory(int ell, double v, double t) {
    return v * std::sin(ell * t * (v * v - 1.0));
}

double phase_remainder(int ell, double v, double t) {
    return -ell * t * (1.0 - v * v);
}

double renormalized_trajectory_with_gamma(const PotentialSpec& p, int n,
                                          double gamma_scale, double v, double t) {
    check_window(p, n, t);
    if (t == 0.0 || v == 0.0) return 0.0;  // removable singularity of the scaling
    const int ell = p.ell();
    const double vv = gamma_scale * v;
    if (!(std::fabs(vv) < p.v_max())) {
        std::ostringstream os;
        os << "renormalized_trajectory: scaled velocity " << vv
           << " outside periodic band " << p.v_max();
        throw band_error(os.str());
    }
    const double phase = n * kPi - ell * t;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;

    double x;
    if (p.kind() == PotentialKind::Quartic) {
        x = exact_quartic_solution(ell, vv, phase);
    } else {
        // Reduce the evaluation time modulo the period; the phase error is
        // dominated by n * deltaT, so tighten the period tolerance for large n.
        const double period_tol = (n > 10000) ? 1e-13 : 1e-11;
        const double T = period(p, vv, period_tol);
        double tau = std::fmod(phase, T);
        if (tau < 0.0) tau += T;
        x = trajectory_position(p, vv, tau, 1e-12);
    }
    return sign * x / gamma_scale;
}

double renormalized_trajectory(const PotentialSpec& p, int n, double v, double t) {
    if (t == 0.0 || v == 0.0) {
        check_window(p, n, t);
        return 0.0;
    }
    return renormalized_trajectory_with_gamma(p, n, scaling_parameter(n, t), v, t);
}

std::vector<ConvergenceRow> convergence_experiment(
    const PotentialSpec& p, double eps, std::span<const int> n_list,
    std::span<const double> v_grid, int t_samples,
    const std::function<void(const ConvergenceCell&)>& cell_sink) {
    if (!(eps > 0.0 && eps < 1.0 / 3.0))
        throw std::domain_error("convergence_experiment: eps must lie in (0, 1/3)");
    if (t_samples < 2)
        throw std::domain_error("convergence_experiment: t_samples must be >= 2");

    std::vector<double> default_grid;
    if (v_grid.empty()) {
        for (int i = -10; i <= 10; ++i) default_grid.push_back(0.1 * i);
        v_grid = default_grid;
    }

    const int ell = p.ell();
    std::vector<ConvergenceRow> rows;
    for (const int n : n_list) {
        if (n < 1) throw std::domain_error("convergence_experiment: n must be >= 1");
        const double window =
            kWindowConstant * std::pow(static_cast<double>(n), 1.0 / 3.0 - eps);
        double sup = 0.0;
        for (const double v : v_grid) {
            for (int j = 0; j < t_samples; ++j) {
                const double t = window * j / (t_samples - 1);
                const double xn = renormalized_trajectory(p, n, v, t);
                const double X = asymptotic_trajectory(ell, v, t);
                const double err = std::fabs(xn - X);
                sup = std::max(sup, err);
                if (cell_sink) cell_sink({n, v, t, xn, X, err});
            }
        }
        rows.push_back({n, sup, window});
    }
    return rows;
}

}  // namespace focaldec
