#include "focaldec/elliptic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace focaldec {

namespace {
constexpr int kMaxIter = 32;
constexpr double kAgmTol = 1e-15;
constexpr double kArgCap = 1e8;

void check_parameter(double m) {
    if (!(m >= 0.0 && m < 1.0))
        throw std::domain_error("elliptic: parameter m must lie in [0,1)");
}

void check_argument(double u) {
    if (!std::isfinite(u))
        throw std::domain_error("elliptic: argument u must be finite");
    if (std::fabs(u) > kArgCap)
        throw std::domain_error("elliptic: |u| > 1e8 rejected, phase-reduce first");
}
}  // namespace

EllipticTriple jacobi_eval(double u, double m) {
    check_parameter(m);
    check_argument(u);
    if (m == 0.0)
        return {std::sin(u), std::cos(u), 1.0};

    double scale[kMaxIter];    // AGM means a_i
    double ratio[kMaxIter];    // geometric partners b_i
    double a = 1.0;
    double emc = 1.0 - m;      // complementary parameter, > 0 here
    double c = a;
    int last = 0;
    for (int i = 0; i < kMaxIter; ++i) {
        last = i;
        scale[i] = a;
        emc = std::sqrt(emc);
        ratio[i] = emc;
        c = 0.5 * (a + emc);
        if (std::fabs(a - emc) <= kAgmTol * a)
            break;
        emc *= a;
        a = c;
    }

    // Trigonometric limit at the rescaled argument, then undo the
    // Landen steps. The cotangent-like variable c keeps sn^2+cn^2=1
    // exact by construction; dn comes from the stable scale recurrence.
    u *= c;
    double sn = std::sin(u);
    double cn = std::cos(u);
    double dn = 1.0;
    if (sn != 0.0) {
        a = cn / sn;
        c *= a;
        for (int i = last; i >= 0; --i) {
            const double b = scale[i];
            a *= c;
            c *= dn;
            dn = (ratio[i] + a) / (b + a);
            a = c / b;
        }
        a = 1.0 / std::sqrt(c * c + 1.0);
        sn = (sn >= 0.0) ? a : -a;
        cn = c * sn;
    }
    return {sn, cn, dn};
}

double jacobi_sd(double u, double m) {
    const EllipticTriple e = jacobi_eval(u, m);
    return e.sn / e.dn;
}

double complete_k(double m) {
    check_parameter(m);
    if (m == 0.0)
        return std::numbers::pi / 2.0;
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    for (int i = 0; i < kMaxIter && std::fabs(a - b) > kAgmTol * a; ++i) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return std::numbers::pi / (2.0 * a);
}

}  // namespace focaldec
