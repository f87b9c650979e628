// Error types thrown by the library. Every failure mode carries a typed
// exception so callers can distinguish contract violations from numerical
// breakdown.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace s4 {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shape or size mismatch between arguments, message names the offending field.
struct DimensionError : Error {
  using Error::Error;
};

// Non-finite entries or otherwise invalid parameter data.
struct ValidationError : Error {
  using Error::Error;
};

// Change-of-basis matrix too ill-conditioned to trust.
struct ConditioningError : Error {
  ConditioningError(const std::string& msg, double cond)
      : Error(msg), condition_estimate(cond) {}
  double condition_estimate;
};

// Discretization pole: step size places an eigenvalue on the bilinear pole.
struct PoleError : Error {
  using Error::Error;
};

// A required matrix inverse does not exist (beyond the bilinear pole case).
struct SingularityError : Error {
  using Error::Error;
};

// The small rank-correction solve in the Woodbury path is singular.
struct RankCorrectionError : Error {
  RankCorrectionError(const std::string& msg, std::ptrdiff_t node)
      : Error(msg), node_index(node) {}
  std::ptrdiff_t node_index;
};

// State blew up to non-finite values while stepping; step index if known.
struct DivergenceError : Error {
  explicit DivergenceError(const std::string& msg, std::ptrdiff_t step = -1)
      : Error(msg), step_index(step) {}
  std::ptrdiff_t step_index;
};

// Cauchy node coincides with a pole.
struct SingularKernelError : Error {
  SingularKernelError(const std::string& msg, std::size_t node, std::size_t pole)
      : Error(msg), node_index(node), pole_index(pole) {}
  std::size_t node_index;
  std::size_t pole_index;
};

// Mismatched lengths handed to an operation that requires equal ones.
struct ContractError : Error {
  using Error::Error;
};

// Exact-integer path asked to exceed its managed size range.
struct SizeError : Error {
  using Error::Error;
};

// Benchmark declined to run because the estimated cost exceeds the budget.
struct RefusalError : Error {
  RefusalError(const std::string& msg, double flops)
      : Error(msg), estimated_flops(flops) {}
  double estimated_flops;
};

}  // namespace s4
