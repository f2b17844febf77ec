#ifndef FOCALDEC_DYNAMICS_HPP
#define FOCALDEC_DYNAMICS_HPP

#include <span>
#include <vector>

#include "focaldec/potentials.hpp"

namespace focaldec {

/// Closed-form coefficients of the elliptic solution of
/// xdd = -x - ell x^3, x(0)=0, xd(0)=v.
///
/// With s = (1 + 2 ell v^2)^(1/2):
///   a = (1 + s)^(1/2),  b = (-ell + ell s)^(1/2)
/// and for ell=+1 the solution is A sd(lambda t; m) with
///   A = sign(v) a b / (a^2+b^2)^(1/2), lambda = ((a^2+b^2)/2)^(1/2),
///   m = b^2/(a^2+b^2);
/// for ell=-1 it is A sn(lambda t; m) with
///   A = sign(v) b, lambda = a/sqrt(2), m = (b/a)^2.
struct QuarticSolutionParams {
    double a;
    double b;
    double A;
    double lambda;
    double m;
    int ell;
};

/// Coefficients above for the given branch and initial velocity.
/// Throws band_error when |v| is at or beyond the periodic band
/// (for ell=-1 that is |v| >= sqrt(1/2)).
QuarticSolutionParams quartic_params(int ell, double v);

/// Exact periodic solution x_ell(v; t) of the quartic oscillator.
double exact_quartic_solution(int ell, double v, double t);

/// A time series (t_i, x_i, xd_i, E_i) along one trajectory.
struct TrajectorySample {
    std::vector<double> t;
    std::vector<double> x;
    std::vector<double> xdot;
    std::vector<double> energy;
};

enum class IntegrationMode { Adaptive, Symplectic };

/// Integrate xdd = -V'(x) from x(0)=0, xd(0)=v up to t_end (>= 0).
///
/// Adaptive mode is an embedded Dormand-Prince 5(4) pair with dense
/// output and local error tolerance `tol` (default 1e-10). Symplectic
/// mode is fixed-step velocity Verlet; there `tol` is the step size
/// (default 1e-3). One row per accepted step. Aborts with
/// integration_error on step underflow or when |E(t)-E(0)| exceeds
/// 1e3*tol. t_end above 1e4 is rejected: long-time evaluation must be
/// phase-reduced by the caller.
TrajectorySample integrate(const PotentialSpec& p, double v, double t_end,
                           IntegrationMode mode = IntegrationMode::Adaptive,
                           double tol = 0.0);

/// x(v; t) at a single time, by adaptive integration.
double trajectory_position(const PotentialSpec& p, double v, double t,
                           double tol = 1e-10);

/// x(v; t_k) on a sorted time grid, one integration pass (dense output).
std::vector<double> sample_positions(const PotentialSpec& p, double v,
                                     std::span<const double> times,
                                     double tol = 1e-10);

/// e_ell(v) = 1 + j_ell v^2 with j_{+1} = 1/2, j_{-1} = -1/4.
double e_factor(int ell, double v);

/// g_ell(t) = t cos t + ell (sin t cos^2 t + 2 sin t).
double g_factor(int ell, double t);

/// v sin(e_ell(v) t) - (1/8) v^3 g_ell(e_ell(v) t): the third-order
/// small-velocity form of the quartic trajectory.
double third_order_approx(int ell, double v, double t);

}  // namespace focaldec

#endif
