#include "focaldec/potentials.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace focaldec {

namespace {

const double kSqrt6 = std::sqrt(6.0);

double poly_eval(const std::vector<double>& c, double x) {
    double r = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
}

std::vector<double> poly_derive(const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<double>(i));
    return d;
}

// Taylor shift: coefficients of P(center + y) as a polynomial in y.
std::vector<double> poly_shift(std::vector<double> c, double center) {
    const int n = static_cast<int>(c.size());
    for (int i = 0; i < n - 1; ++i)
        for (int j = n - 2; j >= i; --j) c[j] += center * c[j + 1];
    return c;
}

}  // namespace

PotentialSpec PotentialSpec::quartic(int ell) {
    if (ell != 1 && ell != -1)
        throw std::domain_error("quartic: ell must be +1 or -1");
    PotentialSpec p;
    p.kind_ = PotentialKind::Quartic;
    p.ell_ = ell;
    p.coeffs_ = {0.0, 0.0, 0.5, 0.0, 0.25 * ell};
    // ell=-1 well is capped by the barrier V(+-1) = 1/4.
    if (ell == -1) {
        p.v_max_ = std::sqrt(0.5);
        p.barrier_lo_ = -1.0;
        p.barrier_hi_ = 1.0;
    }
    return p;
}

PotentialSpec PotentialSpec::perturbed_quartic(int ell, double c5, double c6, double c7,
                                               double c8) {
    if (ell != 1 && ell != -1)
        throw std::domain_error("perturbed_quartic: ell must be +1 or -1");
    PotentialSpec p;
    p.kind_ = PotentialKind::PerturbedQuartic;
    p.ell_ = ell;
    p.coeffs_ = {0.0, 0.0, 0.5, 0.0, 0.25 * ell, c5, c6, c7, c8};
    while (p.coeffs_.size() > 5 && p.coeffs_.back() == 0.0) p.coeffs_.pop_back();
    p.locate_barriers();
    return p;
}

PotentialSpec PotentialSpec::pendulum() {
    PotentialSpec p;
    p.kind_ = PotentialKind::Pendulum;
    p.ell_ = -1;
    p.mu_ = kSqrt6;
    // separatrix energy of 1 - cos q is 2, so |nu| < 2 physically
    p.v_max_ = 2.0 / kSqrt6;
    p.barrier_lo_ = -std::numbers::pi / kSqrt6;
    p.barrier_hi_ = std::numbers::pi / kSqrt6;
    return p;
}

PotentialSpec PotentialSpec::polynomial(std::vector<double> coeffs, double mass) {
    if (mass <= 0.0) throw std::domain_error("polynomial: mass must be positive");
    if (coeffs.size() < 3)
        throw std::domain_error("polynomial: potential needs degree >= 2");
    const std::vector<double> d1 = poly_derive(coeffs);
    const std::vector<double> d2 = poly_derive(d1);

    // Equilibrium: the root of V' nearest the origin with V'' > 0,
    // searched on [-50, 50].
    const int kScan = 200000;
    const double lo = -50.0, hi = 50.0;
    double best = std::numeric_limits<double>::quiet_NaN();
    auto consider = [&](double root) {
        if (poly_eval(d2, root) > 0.0 &&
            (!std::isfinite(best) || std::fabs(root) < std::fabs(best)))
            best = root;
    };
    double prev_x = lo, prev_f = poly_eval(d1, lo);
    if (prev_f == 0.0) consider(prev_x);
    for (int i = 1; i <= kScan; ++i) {
        const double x = lo + (hi - lo) * i / kScan;
        const double f = poly_eval(d1, x);
        if (f == 0.0) {
            consider(x);
        } else if (prev_f != 0.0 && prev_f * f < 0.0) {
            double a = prev_x, b = x, fa = prev_f;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (a + b);
                if (mid == a || mid == b) break;
                const double fm = poly_eval(d1, mid);
                if ((fm < 0.0) == (fa < 0.0)) { a = mid; fa = fm; }
                else b = mid;
            }
            consider(0.5 * (a + b));
        }
        prev_x = x;
        prev_f = f;
    }
    if (!std::isfinite(best))
        throw std::domain_error("polynomial: no elliptic equilibrium found in [-50,50]");

    double coeff_scale = 0.0;
    for (double c : coeffs) coeff_scale = std::max(coeff_scale, std::fabs(c));
    const double v2 = poly_eval(d2, best);
    const std::vector<double> d3 = poly_derive(d2);
    const std::vector<double> d4 = poly_derive(d3);
    const double v3 = poly_eval(d3, best);
    const double v4 = poly_eval(d4, best);
    if (!(v2 > 1e-8 * coeff_scale))
        throw std::domain_error("polynomial: V''(q*) must be positive");
    if (std::fabs(v4) <= 1e-8 * coeff_scale)
        throw std::domain_error("polynomial: V''''(q*) = 0, isochronous-degenerate");
    // the quartic normal form has no cubic term: x^2/2 + (ell/4) x^4 + O(x^5)
    const double mu_est = std::sqrt(6.0 * v2 / std::fabs(v4));
    if (std::fabs(v3) * mu_est > 1e-6 * v2)
        throw std::domain_error(
            "polynomial: V'''(q*) != 0 breaks the quartic normal form");

    PotentialSpec p;
    p.kind_ = PotentialKind::Polynomial;
    p.q_star_ = best;
    p.mass_ = mass;
    p.ell_ = (v4 > 0.0) ? 1 : -1;
    p.omega_ = std::sqrt(v2 / mass);
    p.mu_ = std::sqrt(6.0 * v2 / std::fabs(v4));
    // Normalized coefficients: V(x) = [P(q* + mu x) - P(q*)] / (m mu^2 omega^2).
    std::vector<double> shifted = poly_shift(coeffs, best);
    const double denom = mass * p.mu_ * p.mu_ * p.omega_ * p.omega_;
    std::vector<double> norm(shifted.size(), 0.0);
    double scale = 1.0;
    for (std::size_t k = 0; k < shifted.size(); ++k) {
        norm[k] = shifted[k] * scale / denom;
        scale *= p.mu_;
    }
    norm[0] = 0.0;  // energy offset, V(0) = 0
    norm[1] = 0.0;  // equilibrium residual below roundoff
    p.coeffs_ = std::move(norm);
    p.locate_barriers();
    return p;
}

double PotentialSpec::eval(double x, int order) const {
    if (order < 0 || order > 5)
        throw std::domain_error("eval_potential: order must be in 0..5");
    if (kind_ == PotentialKind::Pendulum) {
        // V(x) = (1 - cos(sqrt6 x)) / 6 and its derivatives
        const double s = kSqrt6;
        switch (order) {
            case 0: return (1.0 - std::cos(s * x)) / 6.0;
            case 1: return std::sin(s * x) * s / 6.0;
            case 2: return std::cos(s * x);
            case 3: return -std::sin(s * x) * s;
            case 4: return -std::cos(s * x) * 6.0;
            default: return std::sin(s * x) * 6.0 * s;
        }
    }
    std::vector<double> c = coeffs_;
    for (int k = 0; k < order; ++k) c = poly_derive(c);
    return poly_eval(c, x);
}

double PotentialSpec::energy_gap(double turning, double x, double turning_minus_x) const {
    if (kind_ == PotentialKind::Pendulum) {
        // V(xt) - V(x) = (1/3) sin(sqrt6 (x+xt)/2) sin(sqrt6 (xt-x)/2)
        return (1.0 / 3.0) * std::sin(kSqrt6 * (x + turning) / 2.0) *
               std::sin(kSqrt6 * turning_minus_x / 2.0);
    }
    // Deflate P(y) = V(xt) - V(y) by its root xt: P = (y - xt) Q(y),
    // via synthetic division; then V(xt) - V(x) = -(xt - x) Q(x).
    const std::size_t n = coeffs_.size();
    double q = -coeffs_[n - 1];
    double Q = q;
    for (std::size_t i = n - 1; i-- > 1;) {
        q = -coeffs_[i] + q * turning;
        Q = Q * x + q;
    }
    return -turning_minus_x * Q;
}

PhysicalPoint PotentialSpec::to_physical(double x, double t, double v) const {
    return {mu_ * x + q_star_, t / omega_, mu_ * omega_ * v};
}

std::array<double, 3> PotentialSpec::from_physical(double q, double tau, double nu) const {
    return {(q - q_star_) / mu_, omega_ * tau, nu / (mu_ * omega_)};
}

void PotentialSpec::locate_barriers() {
    // March outward from 0 on each side looking for the first critical
    // point of V'; the lower adjacent barrier caps the periodic band.
    // The march step is capped at 1% of the current position so a narrow
    // hump cannot be skipped.
    double band = std::numeric_limits<double>::infinity();
    for (int side = -1; side <= 1; side += 2) {
        double x_prev = 0.0;
        bool found = false;
        double step = 1e-3;
        while (std::fabs(x_prev) < 100.0) {
            const double x = x_prev + side * step;
            const double f = eval(x, 1) * side;  // V' has sign `side` inside the well
            if (f <= 0.0) {
                double a = x_prev, b = x;
                for (int it = 0; it < 200; ++it) {
                    const double mid = 0.5 * (a + b);
                    if (mid == a || mid == b) break;
                    if (eval(mid, 1) * side > 0.0) a = mid;
                    else b = mid;
                }
                const double xb = 0.5 * (a + b);
                (side > 0 ? barrier_hi_ : barrier_lo_) = xb;
                const double barrier = eval(xb, 0);
                if (barrier > 0.0) band = std::min(band, std::sqrt(2.0 * barrier));
                found = true;
                break;
            }
            x_prev = x;
            step = std::min(step * 1.25, 0.01 * std::fabs(x) + 1e-3);
        }
        if (!found)
            (side > 0 ? barrier_hi_ : barrier_lo_) =
                side * std::numeric_limits<double>::infinity();
    }
    v_max_ = band;
}

std::string PotentialSpec::descriptor() const {
    switch (kind_) {
        case PotentialKind::Quartic:
            return ell_ == 1 ? "quartic:+1" : "quartic:-1";
        case PotentialKind::Pendulum:
            return "pendulum";
        case PotentialKind::PerturbedQuartic: {
            std::ostringstream os;
            os << "perturbed:" << (ell_ == 1 ? "+1" : "-1");
            const char* names[] = {"c5", "c6", "c7", "c8"};
            for (std::size_t k = 5; k < coeffs_.size(); ++k)
                if (coeffs_[k] != 0.0) {
                    char buf[48];
                    std::snprintf(buf, sizeof buf, ":%s=%.17g", names[k - 5], coeffs_[k]);
                    os << buf;
                }
            return os.str();
        }
        default: {
            std::ostringstream os;
            os << "poly:<normalized around q*=" << q_star_ << ">";
            return os.str();
        }
    }
}

PotentialSpec make_potential(const std::string& descriptor) {
    auto fail = [&]() -> PotentialSpec {
        throw std::domain_error("unrecognized potential descriptor: " + descriptor);
    };
    if (descriptor == "pendulum") return PotentialSpec::pendulum();
    if (descriptor.rfind("quartic:", 0) == 0) {
        const std::string s = descriptor.substr(8);
        if (s == "+1" || s == "1") return PotentialSpec::quartic(1);
        if (s == "-1") return PotentialSpec::quartic(-1);
        return fail();
    }
    if (descriptor.rfind("perturbed:", 0) == 0) {
        std::istringstream is(descriptor.substr(10));
        std::string tok;
        if (!std::getline(is, tok, ':')) return fail();
        int ell;
        if (tok == "+1" || tok == "1") ell = 1;
        else if (tok == "-1") ell = -1;
        else return fail();
        double c[4] = {0.0, 0.0, 0.0, 0.0};
        while (std::getline(is, tok, ':')) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos || eq < 2 || tok[0] != 'c') return fail();
            const int idx = tok[1] - '5';
            if (idx < 0 || idx > 3) return fail();
            try {
                c[idx] = std::stod(tok.substr(eq + 1));
            } catch (const std::exception&) {
                return fail();
            }
        }
        return PotentialSpec::perturbed_quartic(ell, c[0], c[1], c[2], c[3]);
    }
    if (descriptor.rfind("poly:", 0) == 0) {
        std::istringstream is(descriptor.substr(5));
        std::vector<double> coeffs;
        std::string tok;
        while (std::getline(is, tok, ',')) {
            try {
                coeffs.push_back(std::stod(tok));
            } catch (const std::exception&) {
                return fail();
            }
        }
        if (coeffs.empty()) return fail();
        return PotentialSpec::polynomial(std::move(coeffs));
    }
    return fail();
}

}  // namespace focaldec
