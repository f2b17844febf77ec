#ifndef FOCALDEC_RENORM_HPP
#define FOCALDEC_RENORM_HPP

#include <functional>
#include <span>
#include <vector>

#include "focaldec/potentials.hpp"

namespace focaldec {

/// Default window constant: renormalized trajectories accept t <= K*n.
inline constexpr double kWindowConstant = 0.1;

/// Gamma_{n,t} = sqrt(8 t / (3 pi n)), the (n,t)-scaling parameter.
double scaling_parameter(int n, double t);

/// gamma_{n,t}: the unique positive velocity with T(gamma) = 2 pi - 2 ell t / n,
/// found by bracketed bisection on the monotone branch of the period map,
/// to |T - target| <= 1e-12. Throws window_error when the target period
/// is not attainable inside the periodic band or t > K*n.
double scaling_velocity(const PotentialSpec& p, int n, double t);

/// The (n,t)-scaling data for one renormalization step.
struct ScalingContext {
    int n;
    double t;
    int ell;
    double Gamma;
    double gamma;
    double valid_window;  // upper bound on admissible t for this n
};

ScalingContext make_scaling_context(const PotentialSpec& p, int n, double t);

/// X_ell(v; t) = v sin(ell t (v^2 - 1)): the universal limit trajectory.
double asymptotic_trajectory(int ell, double v, double t);

/// R_{ell,v,t} = -ell t (1 - v^2): the phase remainder of the half-period
/// balance n pi - ell t = (n/2) T(Gamma v) + R + O(t^{3/2}/sqrt(n)).
double phase_remainder(int ell, double v, double t);

/// x_n(v; t) = (-1)^n Gamma^{-1} x(Gamma v; n pi - ell t).
///
/// Quartic potentials evaluate through the closed-form elliptic solution
/// (exact at any phase). Other potentials reduce the time modulo the
/// period T(Gamma v) -- computed to 1e-11, tightened to 1e-13 for
/// n > 1e4 -- and integrate only the reduced time. t = 0 returns the
/// limit value 0 directly.
double renormalized_trajectory(const PotentialSpec& p, int n, double v, double t);

/// Same with the velocity scale supplied by the caller instead of
/// Gamma_{n,t}; the deterministic core used by scaling experiments.
double renormalized_trajectory_with_gamma(const PotentialSpec& p, int n,
                                          double gamma_scale, double v, double t);

/// One row of a convergence table: sup-norm error of x_n against X_ell
/// over the sampled window [0, K n^{1/3 - eps}] x v_grid.
struct ConvergenceRow {
    int n;
    double sup_error;
    double window;
};

/// Per-cell record, emitted when a cell sink is supplied.
struct ConvergenceCell {
    int n;
    double v;
    double t;
    double x_n;
    double X;
    double abs_err;
};

/// Sup-error table of the renormalization against the universal limit.
/// eps must lie in (0, 1/3). v_grid defaults (when empty) to
/// {-1, -0.9, ..., 1}; each window uses t_samples uniform samples.
std::vector<ConvergenceRow> convergence_experiment(
    const PotentialSpec& p, double eps, std::span<const int> n_list,
    std::span<const double> v_grid = {}, int t_samples = 64,
    const std::function<void(const ConvergenceCell&)>& cell_sink = nullptr);

}  // namespace focaldec

#endif
