#pragma once

#include <stdexcept>
#include <string>

namespace cinfmc {

// Bad argument: out-of-range size, index, or dimension mismatch.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Evaluation at a pole of a closed-form transform.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A structural assumption of the analysis does not hold (k > l, beta > eta, ...).
class AssumptionViolated : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Degenerate parameters: infinite edge, unbounded support, eta = 1.
class DegenerateParameter : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Numerically singular matrix where an inverse is required.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cinfmc
