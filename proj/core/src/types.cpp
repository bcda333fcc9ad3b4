#include "qca/types.hpp"

namespace qca {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::VelocityUndefined: return "velocity-undefined";
    case ErrorCode::ProjectorUndefined: return "projector-undefined";
    case ErrorCode::EmptyBand: return "empty-band";
    case ErrorCode::BranchDegenerate: return "branch-degenerate";
    case ErrorCode::SingularDenominator: return "singular-denominator";
    case ErrorCode::DegenerateExpansion: return "degenerate-expansion";
  }
  return "unknown";
}

namespace pauli {

Mat2 identity() { return Mat2::Identity(); }

Mat2 x() {
  Mat2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Mat2 y() {
  Mat2 m;
  m << 0.0, -kI, kI, 0.0;
  return m;
}

Mat2 z() {
  Mat2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

}  // namespace pauli
}  // namespace qca
