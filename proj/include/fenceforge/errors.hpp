#pragma once

#include <stdexcept>

namespace fenceforge {

/// A modelling assumption does not hold for the given scene (CLI exit code 1).
class AssumptionViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Q(R) has no points: no fence exists at this radius.
class EmptyErosion : public AssumptionViolation {
 public:
  using AssumptionViolation::AssumptionViolation;
};

/// Malformed scene input (CLI exit code 1).
class SceneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two independently computed results disagree (CLI exit code 2).
class ConsistencyFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fenceforge
