#ifndef FOCALDEC_ELLIPTIC_HPP
#define FOCALDEC_ELLIPTIC_HPP

namespace focaldec {

/// Jacobi elliptic function values (sn, cn, dn) at a common argument.
///
/// The parameter convention follows Abramowitz & Stegun chapter 16:
/// all routines take the parameter m = k^2, not the modulus k.
/// For m in [0,1) the triple satisfies sn^2 + cn^2 = 1 and
/// dn^2 + m*sn^2 = 1, with dn >= sqrt(1-m) > 0.
struct EllipticTriple {
    double sn;
    double cn;
    double dn;
};

/// Evaluate sn, cn, dn at argument u with parameter m in [0,1).
///
/// Descending Landen/AGM transformation (A&S 16.4, in the arrangement of
/// Bulirsch's sncndn): the modulus is driven to zero through the AGM
/// scale sequence, the trigonometric limit is evaluated, and the
/// functions are recovered by the inverse transformation. Iteration is
/// capped at 32 with convergence threshold 1e-15.
///
/// Throws std::domain_error if m is outside [0,1), u is non-finite, or
/// |u| > 1e8 (callers are expected to phase-reduce first).
EllipticTriple jacobi_eval(double u, double m);

/// sd(u;m) = sn(u;m)/dn(u;m); bounded by 1/sqrt(1-m).
double jacobi_sd(double u, double m);

/// Complete elliptic integral of the first kind K(m), by the
/// arithmetic-geometric mean. K(0) = pi/2; strictly increasing in m.
/// Throws std::domain_error outside [0,1).
double complete_k(double m);

}  // namespace focaldec

#endif
