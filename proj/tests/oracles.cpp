#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oracles {

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

double complete_k_quadrature(double m, double tol) {
    return adaptive_simpson(
        [m](double th) {
            const double s = std::sin(th);
            return 1.0 / std::sqrt(1.0 - m * s * s);
        },
        0.0, std::numbers::pi / 2.0, tol);
}

double jacobi_sn_inversion(double u, double m) {
    auto F = [m](double phi) {
        return adaptive_simpson(
            [m](double th) {
                const double s = std::sin(th);
                return 1.0 / std::sqrt(1.0 - m * s * s);
            },
            0.0, phi, 1e-14);
    };
    if (u < 0.0) throw std::domain_error("jacobi_sn_inversion: u must be >= 0");
    double lo = 0.0, hi = std::numbers::pi / 2.0;
    if (F(hi) < u) throw std::domain_error("jacobi_sn_inversion: u beyond K(m)");
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (F(mid) < u) lo = mid;
        else hi = mid;
    }
    return std::sin(0.5 * (lo + hi));
}

namespace {

// Cash-Karp 4(5) tableau
constexpr double ca2 = 1.0 / 5, ca3 = 3.0 / 10, ca4 = 3.0 / 5, ca5 = 1.0,
                 ca6 = 7.0 / 8;
constexpr double b21 = 1.0 / 5;
constexpr double b31 = 3.0 / 40, b32 = 9.0 / 40;
constexpr double b41 = 3.0 / 10, b42 = -9.0 / 10, b43 = 6.0 / 5;
constexpr double b51 = -11.0 / 54, b52 = 5.0 / 2, b53 = -70.0 / 27, b54 = 35.0 / 27;
constexpr double b61 = 1631.0 / 55296, b62 = 175.0 / 512, b63 = 575.0 / 13824,
                 b64 = 44275.0 / 110592, b65 = 253.0 / 4096;
constexpr double c1 = 37.0 / 378, c3 = 250.0 / 621, c4 = 125.0 / 594,
                 c6 = 512.0 / 1771;
constexpr double dc1 = c1 - 2825.0 / 27648, dc3 = c3 - 18575.0 / 48384,
                 dc4 = c4 - 13525.0 / 55296, dc5 = -277.0 / 14336,
                 dc6 = c6 - 1.0 / 4;

struct CkState {
    double x, u;
};

template <class Acc, class Stop>
CkState cash_karp_drive(Acc&& acc, double q0, double v, double t_end, double tol,
                        Stop&& on_step) {
    CkState y{q0, v};
    double t = 0.0, h = 1e-3;
    while (t < t_end) {
        h = std::min(h, t_end - t);
        const double k1x = y.u, k1u = acc(y.x);
        const double x2 = y.x + h * b21 * k1x, u2 = y.u + h * b21 * k1u;
        const double k2x = u2, k2u = acc(x2);
        const double x3 = y.x + h * (b31 * k1x + b32 * k2x),
                     u3 = y.u + h * (b31 * k1u + b32 * k2u);
        const double k3x = u3, k3u = acc(x3);
        const double x4 = y.x + h * (b41 * k1x + b42 * k2x + b43 * k3x),
                     u4 = y.u + h * (b41 * k1u + b42 * k2u + b43 * k3u);
        const double k4x = u4, k4u = acc(x4);
        const double x5 = y.x + h * (b51 * k1x + b52 * k2x + b53 * k3x + b54 * k4x),
                     u5 = y.u + h * (b51 * k1u + b52 * k2u + b53 * k3u + b54 * k4u);
        const double k5x = u5, k5u = acc(x5);
        const double x6 =
            y.x + h * (b61 * k1x + b62 * k2x + b63 * k3x + b64 * k4x + b65 * k5x);
        const double u6 =
            y.u + h * (b61 * k1u + b62 * k2u + b63 * k3u + b64 * k4u + b65 * k5u);
        const double k6x = u6, k6u = acc(x6);

        const double xn = y.x + h * (c1 * k1x + c3 * k3x + c4 * k4x + c6 * k6x);
        const double un = y.u + h * (c1 * k1u + c3 * k3u + c4 * k4u + c6 * k6u);
        const double ex =
            h * (dc1 * k1x + dc3 * k3x + dc4 * k4x + dc5 * k5x + dc6 * k6x);
        const double eu =
            h * (dc1 * k1u + dc3 * k3u + dc4 * k4u + dc5 * k5u + dc6 * k6u);
        const double scale_x = tol * (1.0 + std::fabs(y.x));
        const double scale_u = tol * (1.0 + std::fabs(y.u));
        const double err =
            std::max(std::fabs(ex) / scale_x, std::fabs(eu) / scale_u);
        if (err <= 1.0) {
            t += h;
            y = {xn, un};
            if (!on_step(t, y)) return y;
        }
        const double fac =
            std::clamp(0.9 * std::pow(std::max(err, 1e-12), -0.2), 0.2, 5.0);
        h *= fac;
        if (h < 1e-15) throw std::runtime_error("cash_karp: step underflow");
    }
    return y;
}

}  // namespace

double ck_position(const focaldec::PotentialSpec& p, double v, double t, double tol) {
    if (t <= 0.0 || v == 0.0) return 0.0;
    const CkState s =
        cash_karp_drive([&p](double x) { return -p.eval(x, 1); }, 0.0, v, t, tol,
                        [](double, const CkState&) { return true; });
    return s.x;
}

double ck_position_generic(const std::function<double(double)>& acc, double q0,
                           double v0, double t, double tol) {
    if (t <= 0.0) return q0;
    const CkState s = cash_karp_drive(acc, q0, v0, t, tol,
                                      [](double, const CkState&) { return true; });
    return s.x;
}

std::vector<double> ck_positions(const focaldec::PotentialSpec& p, double v,
                                 std::span<const double> times, double tol) {
    // restart integration segment by segment so every requested time is a
    // step endpoint (slower than dense output, but entirely independent)
    std::vector<double> out(times.size(), 0.0);
    for (std::size_t i = 0; i < times.size(); ++i)
        out[i] = ck_position(p, v, times[i], tol);
    return out;
}

double first_return_time(const focaldec::PotentialSpec& p, double v) {
    // fixed-step RK4 with sign watch on x, after the first half period
    auto acc = [&p](double x) { return -p.eval(x, 1); };
    auto rk4 = [&](double x, double u, double h) {
        const double k1x = u, k1u = acc(x);
        const double k2x = u + 0.5 * h * k1u, k2u = acc(x + 0.5 * h * k1x);
        const double k3x = u + 0.5 * h * k2u, k3u = acc(x + 0.5 * h * k2x);
        const double k4x = u + h * k3u, k4u = acc(x + h * k3x);
        return CkState{x + h / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x),
                       u + h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u)};
    };
    const double h = 1e-4;
    double t = 0.0;
    CkState y{0.0, v};
    CkState prev = y;
    for (long i = 0; i < 200000; ++i) {
        prev = y;
        y = rk4(y.x, y.u, h);
        t += h;
        const bool crossed = (v > 0.0) ? (prev.x < 0.0 && y.x >= 0.0)
                                       : (prev.x > 0.0 && y.x <= 0.0);
        if (t > h && crossed && ((v > 0.0) ? y.u > 0.0 : y.u < 0.0)) {
            // bisect inside [t-h, t] by re-stepping from prev
            double lo = 0.0, hi = h;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                const CkState ym = rk4(prev.x, prev.u, mid);
                const bool past = (v > 0.0) ? (ym.x >= 0.0) : (ym.x <= 0.0);
                if (past) hi = mid;
                else lo = mid;
            }
            return t - h + 0.5 * (lo + hi);
        }
    }
    throw std::runtime_error("first_return_time: no return found");
}

double finite_difference(const std::function<double(double)>& f, double x, int order,
                         double h) {
    auto stencil = [&](double hh) {
        switch (order) {
            case 1: return (f(x + hh) - f(x - hh)) / (2.0 * hh);
            case 2: return (f(x + hh) - 2.0 * f(x) + f(x - hh)) / (hh * hh);
            case 4:
                return (f(x + 2 * hh) - 4.0 * f(x + hh) + 6.0 * f(x) - 4.0 * f(x - hh) +
                        f(x - 2 * hh)) /
                       (hh * hh * hh * hh);
            default:
                throw std::domain_error("finite_difference: order must be 1, 2 or 4");
        }
    };
    // one Richardson step, both stencils are O(h^2)
    const double coarse = stencil(h), fine = stencil(h / 2.0);
    return (4.0 * fine - coarse) / 3.0;
}

int brute_force_asymptotic_count(int ell, double t, double x, long samples) {
    int count = 0;
    int prev_sign = 0;
    for (long i = 1; i < samples; ++i) {
        const double v = -1.0 + 2.0 * static_cast<double>(i) / samples;
        const double g = v * std::sin(ell * t * (v * v - 1.0)) - x;
        const int s = (g > 0.0) ? 1 : (g < 0.0 ? -1 : 0);
        if (s == 0) continue;
        if (prev_sign != 0 && s != prev_sign) ++count;
        prev_sign = s;
    }
    return count;
}

}  // namespace oracles
