#ifndef FOCALDEC_QUADRATURE_HPP
#define FOCALDEC_QUADRATURE_HPP

#include <span>
#include <vector>

namespace focaldec {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> node;
    std::vector<double> weight;
};

/// Rule of the given order, computed by Newton iteration on the Legendre
/// recurrence and cached. Thread-safe.
const GaussRule& gauss_legendre(int order);

}  // namespace focaldec

#endif
