#ifndef FOCALDEC_PERIOD_HPP
#define FOCALDEC_PERIOD_HPP

#include <span>

#include "focaldec/potentials.hpp"

namespace focaldec {

/// The two solutions of V(x) = v^2/2 adjacent to the origin.
struct TurningPoints {
    double x_min;  // <= 0
    double x_max;  // >= 0
};

/// Locate both turning points by outward bracketing and bisection to
/// machine precision. Requires 0 < |v| < periodic_band(p); throws
/// band_error otherwise.
TurningPoints turning_points(const PotentialSpec& p, double v);

/// Minimal period of the orbit launched from x=0 with dimensionless
/// speed v:
///   T(v) = sqrt(2) * integral of (v^2/2 - V(x))^(-1/2) over [x_min, x_max].
///
/// T(0) = 2*pi exactly (continuity convention). Each half-well is mapped
/// by x = x_c + Delta*sin(phi), which turns the inverse-square-root
/// endpoint singularity into a smooth integrand, then integrated by
/// Gauss-Legendre with order doubling from 64 until two consecutive
/// orders agree within `tol` (default 1e-12).
double period(const PotentialSpec& p, double v, double tol = 1e-12);

/// Period in physical time units for a physical launch speed nu:
/// T_phys(nu) = T(nu/(mu*omega))/omega.
double period_physical(const PotentialSpec& p, double nu, double tol = 1e-12);

/// Least-squares coefficient beta of T(v) - 2*pi = beta*v^2 on the grid.
/// For this potential class beta approximates -3*pi*ell/4.
double period_expansion_coefficient(const PotentialSpec& p,
                                    std::span<const double> v_grid);

}  // namespace focaldec

#endif
