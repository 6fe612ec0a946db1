#include "geominimax/error.hpp"

namespace geominimax {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kContract: return "contract";
    case ErrorKind::kParameter: return "parameter";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kDegenerateInput: return "degenerate-input";
    case ErrorKind::kNumericalFailure: return "numerical-failure";
    case ErrorKind::kStepTooLong: return "step-too-long";
    case ErrorKind::kNoUniqueGeodesic: return "no-unique-geodesic";
    case ErrorKind::kEvaluation: return "evaluation";
    case ErrorKind::kDiverged: return "diverged";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + " error: " + message),
      kind_(kind) {}

void raise(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace geominimax
