#include "focaldec/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "focaldec/elliptic.hpp"
#include "focaldec/errors.hpp"

namespace focaldec {

QuarticSolutionParams quartic_params(int ell, double v) {
    if (ell != 1 && ell != -1)
        throw std::domain_error("quartic_params: ell must be +1 or -1");
    const double disc = 1.0 + 2.0 * ell * v * v;
    if (ell == -1 && (disc <= 0.0 || std::fabs(v) >= std::sqrt(0.5))) {
        std::ostringstream os;
        os << "quartic_params: |v|=" << std::fabs(v)
           << " outside the periodic band (v_max=sqrt(1/2)) for ell=-1";
        throw band_error(os.str());
    }
    const double s = std::sqrt(disc);
    const double a2 = 1.0 + s;
    // b^2 = -ell + ell*s, rationalized to avoid cancellation at small v
    const double b2 = 2.0 * v * v / (1.0 + s);
    QuarticSolutionParams q;
    q.ell = ell;
    q.a = std::sqrt(a2);
    q.b = std::sqrt(b2);
    const double sgn = (v > 0.0) ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
    if (ell == 1) {
        q.A = sgn * q.a * q.b / std::sqrt(a2 + b2);
        q.lambda = std::sqrt(0.5 * (a2 + b2));
        q.m = b2 / (a2 + b2);
    } else {
        q.A = sgn * q.b;
        q.lambda = q.a / std::numbers::sqrt2;
        q.m = b2 / a2;
    }
    return q;
}

double exact_quartic_solution(int ell, double v, double t) {
    if (!std::isfinite(t))
        throw std::domain_error("exact_quartic_solution: t must be finite");
    if (v == 0.0) return 0.0;
    const QuarticSolutionParams q = quartic_params(ell, v);
    const EllipticTriple e = jacobi_eval(q.lambda * t, q.m);
    return (ell == 1) ? q.A * e.sn / e.dn : q.A * e.sn;
}

namespace {

// Dormand-Prince 5(4) coefficients (Hairer, Norsett & Wanner,
// Solving Ordinary Differential Equations I, DOPRI5).
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output coefficients
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

// One accepted step: endpoint states plus the position-row stage
// derivatives needed by the dense-output interpolant.
struct Step {
    double t0, h;
    double x0, u0, x1, u1;
    double k1x, k3x, k4x, k5x, k6x, k7x;
};

// DOPRI5 driver over [0, t_end], t_end > 0, for xdd = -V'(x).
// Calls sink(step) after every accepted step.
template <class Sink>
void dopri5(const PotentialSpec& p, double v, double t_end, double tol, Sink&& sink) {
    if (tol <= 0.0) tol = 1e-10;
    const double e0 = 0.5 * v * v;
    const double drift_cap = 1e3 * tol;

    auto acc = [&p](double x) { return -p.eval(x, 1); };

    double x = 0.0, u = v;
    double k1x = u, k1u = acc(x);
    double t = 0.0;
    double h = std::min(0.01, t_end);
    const double hmin = 1e-14 * std::max(1.0, t_end);
    bool last = false;

    while (true) {
        if (t + h >= t_end) {
            h = t_end - t;
            last = true;
        }
        const double x2 = x + h * a21 * k1x, u2 = u + h * a21 * k1u;
        const double k2x = u2, k2u = acc(x2);
        const double x3 = x + h * (a31 * k1x + a32 * k2x),
                     u3 = u + h * (a31 * k1u + a32 * k2u);
        const double k3x = u3, k3u = acc(x3);
        const double x4 = x + h * (a41 * k1x + a42 * k2x + a43 * k3x),
                     u4 = u + h * (a41 * k1u + a42 * k2u + a43 * k3u);
        const double k4x = u4, k4u = acc(x4);
        const double x5 = x + h * (a51 * k1x + a52 * k2x + a53 * k3x + a54 * k4x),
                     u5 = u + h * (a51 * k1u + a52 * k2u + a53 * k3u + a54 * k4u);
        const double k5x = u5, k5u = acc(x5);
        const double x6 = x + h * (a61 * k1x + a62 * k2x + a63 * k3x + a64 * k4x + a65 * k5x),
                     u6 = u + h * (a61 * k1u + a62 * k2u + a63 * k3u + a64 * k4u + a65 * k5u);
        const double k6x = u6, k6u = acc(x6);
        const double xn = x + h * (b1 * k1x + b3 * k3x + b4 * k4x + b5 * k5x + b6 * k6x);
        const double un = u + h * (b1 * k1u + b3 * k3u + b4 * k4u + b5 * k5u + b6 * k6u);
        const double k7x = un, k7u = acc(xn);

        const double errx =
            h * (e1 * k1x + e3 * k3x + e4 * k4x + e5 * k5x + e6 * k6x + e7 * k7x);
        const double erru =
            h * (e1 * k1u + e3 * k3u + e4 * k4u + e5 * k5u + e6 * k6u + e7 * k7u);
        const double sx = tol + tol * std::max(std::fabs(x), std::fabs(xn));
        const double su = tol + tol * std::max(std::fabs(u), std::fabs(un));
        const double err =
            std::sqrt(0.5 * ((errx / sx) * (errx / sx) + (erru / su) * (erru / su)));

        if (err <= 1.0) {
            sink(Step{t, h, x, u, xn, un, k1x, k3x, k4x, k5x, k6x, k7x});
            t += h;
            x = xn;
            u = un;
            k1x = k7x;  // FSAL
            k1u = k7u;
            const double energy = 0.5 * u * u + p.eval(x, 0);
            if (std::fabs(energy - e0) > drift_cap) {
                std::ostringstream os;
                os << "integrate: energy drift " << std::fabs(energy - e0)
                   << " exceeds 1e3*tol = " << drift_cap << " at t = " << t;
                throw integration_error(os.str());
            }
            if (last) return;
        } else {
            last = false;
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        fac = std::clamp(fac, 0.2, 5.0);
        h *= fac;
        if (h < hmin)
            throw integration_error("integrate: step size underflow");
    }
}

// dense evaluation inside an accepted step, theta in [0,1]
inline double dense_x(const Step& s, double theta) {
    const double ydiff = s.x1 - s.x0;
    const double bspl = s.h * s.k1x - ydiff;
    const double r4 = ydiff - s.h * s.k7x - bspl;
    const double r5 = s.h * (d1 * s.k1x + d3 * s.k3x + d4 * s.k4x + d5 * s.k5x +
                             d6 * s.k6x + d7 * s.k7x);
    const double th1 = 1.0 - theta;
    return s.x0 + theta * (ydiff + th1 * (bspl + theta * (r4 + th1 * r5)));
}

void check_t_end(double t_end) {
    if (!(t_end >= 0.0))
        throw std::domain_error("integrate: t_end must be >= 0");
    if (t_end > 1e4)
        throw std::domain_error(
            "integrate: t_end > 1e4 rejected; reduce time modulo the period first");
}

void check_band(const PotentialSpec& p, double v) {
    if (!(std::fabs(v) < p.v_max())) {
        std::ostringstream os;
        os << "integrate: |v|=" << std::fabs(v) << " outside periodic band v_max="
           << p.v_max();
        throw band_error(os.str());
    }
}

}  // namespace

TrajectorySample integrate(const PotentialSpec& p, double v, double t_end,
                           IntegrationMode mode, double tol) {
    check_t_end(t_end);
    check_band(p, v);
    TrajectorySample out;
    auto push = [&](double t, double x, double u) {
        out.t.push_back(t);
        out.x.push_back(x);
        out.xdot.push_back(u);
        out.energy.push_back(0.5 * u * u + p.eval(x, 0));
    };
    push(0.0, 0.0, v);
    if (t_end == 0.0) return out;

    if (mode == IntegrationMode::Adaptive) {
        dopri5(p, v, t_end, tol,
               [&](const Step& s) { push(s.t0 + s.h, s.x1, s.u1); });
        return out;
    }

    // velocity Verlet, fixed step
    double h = (tol > 0.0) ? tol : 1e-3;
    const long nsteps = std::max(1L, std::lround(std::ceil(t_end / h - 1e-12)));
    h = t_end / static_cast<double>(nsteps);
    double x = 0.0, u = v;
    double a = -p.eval(x, 1);
    const double drift_cap = 1e3 * h;
    for (long i = 1; i <= nsteps; ++i) {
        const double uh = u + 0.5 * h * a;
        x += h * uh;
        a = -p.eval(x, 1);
        u = uh + 0.5 * h * a;
        push(h * static_cast<double>(i), x, u);
        if (std::fabs(out.energy.back() - out.energy.front()) > drift_cap)
            throw integration_error("integrate: symplectic energy drift excessive");
    }
    return out;
}

double trajectory_position(const PotentialSpec& p, double v, double t, double tol) {
    check_t_end(t);
    check_band(p, v);
    if (t == 0.0 || v == 0.0) return 0.0;
    double last_x = 0.0;
    dopri5(p, v, t, tol, [&](const Step& s) { last_x = s.x1; });
    return last_x;
}

std::vector<double> sample_positions(const PotentialSpec& p, double v,
                                     std::span<const double> times, double tol) {
    std::vector<double> out(times.size(), 0.0);
    if (times.empty()) return out;
    const double t_end = times.back();
    check_t_end(t_end);
    check_band(p, v);
    if (v == 0.0) return out;
    std::size_t next = 0;
    while (next < times.size() && times[next] <= 0.0) out[next++] = 0.0;
    if (t_end <= 0.0 || next >= times.size()) return out;
    Step final_step{};
    dopri5(p, v, t_end, tol, [&](const Step& s) {
        while (next < times.size() && times[next] <= s.t0 + s.h) {
            const double theta = std::clamp((times[next] - s.t0) / s.h, 0.0, 1.0);
            out[next++] = dense_x(s, theta);
        }
        final_step = s;
    });
    // grid points within rounding of t_end may remain after the last step
    while (next < times.size()) out[next++] = final_step.x1;
    return out;
}

double e_factor(int ell, double v) {
    const double j = (ell == 1) ? 0.5 : -0.25;
    return 1.0 + j * v * v;
}

double g_factor(int ell, double t) {
    const double c = std::cos(t), s = std::sin(t);
    return t * c + ell * (s * c * c + 2.0 * s);
}

double third_order_approx(int ell, double v, double t) {
    const double et = e_factor(ell, v) * t;
    return v * std::sin(et) - 0.125 * v * v * v * g_factor(ell, et);
}

}  // namespace focaldec
