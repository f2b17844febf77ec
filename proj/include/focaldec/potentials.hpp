#ifndef FOCALDEC_POTENTIALS_HPP
#define FOCALDEC_POTENTIALS_HPP

#include <array>
#include <limits>
#include <string>
#include <vector>

namespace focaldec {

enum class PotentialKind { Quartic, PerturbedQuartic, Pendulum, Polynomial };

/// Physical-coordinate triple (q, tau, nu) matching a dimensionless (x, t, v).
struct PhysicalPoint {
    double q;
    double tau;
    double nu;
};

/// A one-dimensional potential with a nondegenerate anharmonic minimum,
/// together with its equilibrium data and the dimensionless normal form.
///
/// Every instance carries the affine change of coordinates
///   x = (q - q*)/mu,  t = omega*tau,  v = nu/(mu*omega)
/// under which the potential becomes V(x) = x^2/2 + (ell/4) x^4 + O(|x|^5)
/// with V(0)=0, V'(0)=0, V''(0)=1, V''''(0)=6*ell. All dynamics in this
/// library is computed in the dimensionless frame.
///
/// Instances are immutable after construction; evaluation is pure and
/// safe for concurrent use.
class PotentialSpec {
  public:
    /// V(x) = x^2/2 + (ell/4) x^4 with ell = +1 or -1.
    static PotentialSpec quartic(int ell);

    /// Quartic plus f(x) = c5 x^5 + c6 x^6 + c7 x^7 + c8 x^8 in the
    /// dimensionless frame.
    static PotentialSpec perturbed_quartic(int ell, double c5, double c6 = 0.0,
                                           double c7 = 0.0, double c8 = 0.0);

    /// The pendulum, physical potential 1 - cos q with unit mass:
    /// q* = 0, omega = 1, mu = sqrt(6), ell = -1.
    static PotentialSpec pendulum();

    /// A physical polynomial potential sum_i coeffs[i] q^i. The elliptic
    /// equilibrium nearest the origin is located automatically; rejects
    /// potentials with V''(q*) <= 0 or V''''(q*) = 0 there.
    static PotentialSpec polynomial(std::vector<double> coeffs, double mass = 1.0);

    PotentialKind kind() const { return kind_; }
    double q_star() const { return q_star_; }
    double mass() const { return mass_; }
    double omega() const { return omega_; }
    double mu() const { return mu_; }
    int ell() const { return ell_; }

    /// Periodic band limit in dimensionless velocity: orbits with
    /// |v| < v_max() are periodic. +infinity for confining double-sided wells.
    double v_max() const { return v_max_; }

    /// order-th derivative of the normalized potential at x, order in 0..5.
    double eval(double x, int order = 0) const;

    /// V(turning) - V(x), evaluated without cancellation near the turning
    /// point. `turning_minus_x` must equal turning - x; passing the
    /// distance separately lets quadrature code supply it in a stable form.
    double energy_gap(double turning, double x, double turning_minus_x) const;

    PhysicalPoint to_physical(double x, double t, double v) const;
    std::array<double, 3> from_physical(double q, double tau, double nu) const;

    /// Position of the first critical point of V' on the given side of the
    /// well (side = +1 or -1), +/-infinity when that side is unbounded.
    /// V is strictly monotone between 0 and this point.
    double barrier_position(int side) const {
        return side > 0 ? barrier_hi_ : barrier_lo_;
    }

    /// Canonical descriptor string, e.g. "quartic:+1".
    std::string descriptor() const;

  private:
    PotentialSpec() = default;

    PotentialKind kind_ = PotentialKind::Quartic;
    double q_star_ = 0.0;
    double mass_ = 1.0;
    double omega_ = 1.0;
    double mu_ = 1.0;
    int ell_ = 1;
    double v_max_ = std::numeric_limits<double>::infinity();
    double barrier_lo_ = -std::numeric_limits<double>::infinity();
    double barrier_hi_ = std::numeric_limits<double>::infinity();
    // Normalized polynomial coefficients, ascending; empty for the pendulum.
    std::vector<double> coeffs_;

    void locate_barriers();
};

/// Parse a CLI descriptor: quartic:+1, quartic:-1, pendulum,
/// perturbed:+1:c5=0.1[:c6=...][:c7=...][:c8=...], poly:a0,a1,a2,...
PotentialSpec make_potential(const std::string& descriptor);

inline double eval_potential(const PotentialSpec& p, double x, int order = 0) {
    return p.eval(x, order);
}

inline double periodic_band(const PotentialSpec& p) { return p.v_max(); }

}  // namespace focaldec

#endif
