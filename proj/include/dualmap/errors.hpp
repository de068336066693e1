#ifndef DUALMAP_ERRORS_HPP
#define DUALMAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dualmap {

// Input outside the domain of an operation: bad exponent, violated
// precondition, an element that is not where it has to be.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A witness construction was asked for with parameters that do not satisfy
// the hypotheses of the result it reproduces.
struct HypothesisError : std::invalid_argument {
  explicit HypothesisError(const std::string& what)
      : std::invalid_argument("hypothesis violated: " + what) {}
};

// Probe pair coincides with the base point, so the quotient is 0/0.
struct DegeneratePair : std::domain_error {
  using std::domain_error::domain_error;
};

// A probe curve was evaluated outside the t-window where its construction
// is valid.
struct OutsideWindow : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace dualmap

#endif  // DUALMAP_ERRORS_HPP
