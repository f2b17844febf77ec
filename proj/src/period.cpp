#include "focaldec/period.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "focaldec/errors.hpp"
#include "focaldec/quadrature.hpp"

namespace focaldec {

namespace {

// Root of V(x) = E on one side of the well, bisected to ulp width.
// V is strictly monotone between 0 and the barrier on this side, so the
// turning point is bracketed by [0, barrier] when the barrier is finite;
// unbounded sides are bracketed by outward marching.
double turning_on_side(const PotentialSpec& p, double energy, int side) {
    double outer = p.barrier_position(side);
    if (!std::isfinite(outer)) {
        double step = 1e-4;
        outer = side * step;
        while (p.eval(outer, 0) < energy) {
            step *= 1.25;
            outer += side * step;
            if (std::fabs(outer) > 1e6)
                throw band_error("turning_points: no turning point found on this side");
        }
    }
    double lo = 0.0, hi = outer;  // V(lo) < E <= V(hi)
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (p.eval(mid, 0) < energy) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

// sqrt(2) * time from 0 to the signed turning point xt (one half-well,
// a quarter-ish of the orbit; the full period is the sum over both sides
// doubled by the symmetry of the motion in each half).
double half_well_time(const PotentialSpec& p, double xt, int order) {
    const GaussRule& rule = gauss_legendre(order);
    const double xc = 0.5 * xt;
    const double delta = 0.5 * xt;  // signed
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.node.size(); ++i) {
        const double phi = rule.node[i] * (std::numbers::pi / 2);
        const double x = xc + delta * std::sin(phi);
        // xt - x = delta*(1 - sin(phi)), with 1 - sin computed stably
        const double sh = std::sin(std::numbers::pi / 4 - phi / 2);
        const double xt_minus_x = delta * 2.0 * sh * sh;
        const double gap = p.energy_gap(xt, x, xt_minus_x);
        sum += rule.weight[i] * delta * std::cos(phi) / std::sqrt(gap);
    }
    return std::numbers::sqrt2 * sum * (std::numbers::pi / 2);
}

}  // namespace

TurningPoints turning_points(const PotentialSpec& p, double v) {
    if (v == 0.0 || !(std::fabs(v) < p.v_max())) {
        std::ostringstream os;
        os << "turning_points: |v| must lie inside the periodic band, got v=" << v
           << " with band limit v_max=" << p.v_max();
        throw band_error(os.str());
    }
    const double energy = 0.5 * v * v;
    return {turning_on_side(p, energy, -1), turning_on_side(p, energy, +1)};
}

double period(const PotentialSpec& p, double v, double tol) {
    if (v == 0.0) return 2.0 * std::numbers::pi;
    const TurningPoints tp = turning_points(p, v);
    // time over [x_min, 0] equals minus the signed half-well integral
    double prev = 0.0;
    for (int order = 64; order <= 1024; order *= 2) {
        const double value =
            half_well_time(p, tp.x_max, order) - half_well_time(p, tp.x_min, order);
        if (order > 64 && std::fabs(value - prev) <= tol) return value;
        prev = value;
    }
    return prev;
}

double period_physical(const PotentialSpec& p, double nu, double tol) {
    const double v = nu / (p.mu() * p.omega());
    return period(p, v, tol) / p.omega();
}

double period_expansion_coefficient(const PotentialSpec& p,
                                    std::span<const double> v_grid) {
    double num = 0.0, den = 0.0;
    for (const double v : v_grid) {
        const double v2 = v * v;
        num += (period(p, v) - 2.0 * std::numbers::pi) * v2;
        den += v2 * v2;
    }
    if (den == 0.0)
        throw std::domain_error("period_expansion_coefficient: empty or zero grid");
    return num / den;
}

}  // namespace focaldec
