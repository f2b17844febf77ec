#ifndef FOCALDEC_ERRORS_HPP
#define FOCALDEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace focaldec {

/// Initial speed outside the periodic band of the potential.
class band_error : public std::domain_error {
  public:
    explicit band_error(const std::string& what) : std::domain_error(what) {}
};

/// Shifted time t outside the admissible window for the given n.
class window_error : public std::domain_error {
  public:
    explicit window_error(const std::string& what) : std::domain_error(what) {}
};

/// Numerical integration failed (step underflow, energy drift).
class integration_error : public std::runtime_error {
  public:
    explicit integration_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace focaldec

#endif
