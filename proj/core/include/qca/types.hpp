#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qca {

using Complex = std::complex<double>;
inline constexpr Complex kI{0.0, 1.0};

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

// Spinor-space operators never exceed 4x4; the bounded storage keeps them off the heap.
using SpinMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;
using SpinVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1, 0, 4, 1>;

enum class ErrorCode {
  InvalidArgument,
  VelocityUndefined,
  ProjectorUndefined,
  EmptyBand,
  BranchDegenerate,
  SingularDenominator,
  DegenerateExpansion,
};

const char* to_string(ErrorCode code) noexcept;

/// Library error carrying a machine-readable code next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

namespace pauli {
Mat2 identity();
Mat2 x();
Mat2 y();
Mat2 z();
}  // namespace pauli

/// Infinity norm (max absolute entry) of a complex matrix difference.
template <typename A, typename B>
double max_abs_diff(const Eigen::MatrixBase<A>& lhs, const Eigen::MatrixBase<B>& rhs) {
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace qca
