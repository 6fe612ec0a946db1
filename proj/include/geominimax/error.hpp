#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace geominimax {

enum class ErrorKind {
  kContract,          // caller broke a precondition (base mismatch, wrong shape)
  kParameter,         // invalid scalar parameter
  kDomain,            // value outside a function's domain
  kDegenerateInput,   // rank deficiency, sampling failure
  kNumericalFailure,  // iterative method did not converge
  kStepTooLong,       // exponential map beyond the injectivity guard
  kNoUniqueGeodesic,  // log/transport across the cut locus
  kEvaluation,        // objective returned a non-finite value
  kDiverged,          // solver divergence signal
  kConfig,            // experiment configuration rejected
  kIo,                // filesystem failure
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& message);

}  // namespace geominimax
