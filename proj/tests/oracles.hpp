#ifndef FOCALDEC_TEST_ORACLES_HPP
#define FOCALDEC_TEST_ORACLES_HPP

// Independent numerical routes used only by tests: these deliberately
// avoid the library's AGM, Gauss-Legendre and Dormand-Prince paths so
// that agreement is evidence, not tautology.

#include <functional>
#include <span>
#include <vector>

#include "focaldec/potentials.hpp"

namespace oracles {

/// Recursive adaptive Simpson quadrature.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-13);

/// K(m) straight from the defining integral.
double complete_k_quadrature(double m, double tol = 1e-13);

/// sn(u; m) by root-solving the incomplete integral F(phi; m) = u,
/// valid for 0 <= u <= K(m).
double jacobi_sn_inversion(double u, double m);

/// x(v; t) for xdd = -V'(x) by an adaptive Cash-Karp 4(5) pair.
double ck_position(const focaldec::PotentialSpec& p, double v, double t,
                   double tol = 1e-12);

/// Generic second-order flow qdd = acc(q) from (q0, v0), same integrator.
double ck_position_generic(const std::function<double(double)>& acc, double q0,
                           double v0, double t, double tol = 1e-12);

/// x(v; t_k) on a sorted grid; steps land exactly on each t_k.
std::vector<double> ck_positions(const focaldec::PotentialSpec& p, double v,
                                 std::span<const double> times, double tol = 1e-12);

/// First return to x = 0 with xdot > 0, by fixed-step RK4 plus bisection.
double first_return_time(const focaldec::PotentialSpec& p, double v);

/// Central-difference derivative of given order (1, 2 or 4) with
/// Richardson extrapolation.
double finite_difference(const std::function<double(double)>& f, double x, int order,
                         double h = 0.02);

/// Sign-change count of v*sin(ell*t*(v^2-1)) - x over `samples` interior
/// points of (-1, 1).
int brute_force_asymptotic_count(int ell, double t, double x, long samples);

}  // namespace oracles

#endif
