#pragma once

#include <stdexcept>
#include <string>

namespace padiclie {

// The answer would depend on p-adic digits beyond the working precision.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched contexts, bad shapes, malformed or non-canonical input.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotInvertibleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotSubmoduleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Parameters fall outside the hypotheses under which a check is meaningful.
class HypothesisViolated : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An enumeration or search would exceed its configured size limit.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computed value disagrees with the closed form it is checked against.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace padiclie
