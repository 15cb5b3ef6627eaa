#ifndef CFL_ERROR_HPP
#define CFL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cfl {

/// Malformed or out-of-contract input (bad vertex ids, illegal parameters).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to converge or lost feasibility.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact routine exceeded its work budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant was violated by data handed between stages.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cfl

#endif  // CFL_ERROR_HPP
