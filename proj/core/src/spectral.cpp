#include "qca/spectral.hpp"

#include <cmath>

namespace qca {

namespace {

constexpr double kDegenerate = 1e-12;

SpinMatrix identity_like(const SpinMatrix& m) { return SpinMatrix::Identity(m.rows(), m.cols()); }

}  // namespace

SpectralForm spectral_form(const SpinMatrix& u) {
  const auto s = static_cast<double>(u.rows());
  SpectralForm f;
  f.cos_omega = u.trace().real() / s;
  f.generator = (u - u.adjoint()) / (2.0 * kI);
  const double r2 = (f.generator * f.generator).trace().real() / s;
  f.sin_omega = std::sqrt(std::max(0.0, r2));
  f.omega = std::atan2(f.sin_omega, f.cos_omega);
  return f;
}

SpinMatrix unitary_power(const SpectralForm& f, double t) {
  // sin(t w) / sin(w), continued to its limit at w = 0.
  const double ratio = f.sin_omega > kDegenerate ? std::sin(t * f.omega) / f.sin_omega : t;
  return std::cos(t * f.omega) * identity_like(f.generator) + (kI * ratio) * f.generator;
}

SpinMatrix unitary_power(const SpectralForm& f, std::int64_t steps) {
  const auto t = static_cast<double>(steps);
  if (f.sin_omega > kDegenerate) return unitary_power(f, t);
  // Near w = pi: U^N = (-1)^N (I - i N K') to first order in K.
  const double sign = f.cos_omega < 0.0 && (steps % 2 != 0) ? -1.0 : 1.0;
  const double ratio = f.cos_omega < 0.0 ? -sign * t : t;
  return sign * identity_like(f.generator) + (kI * ratio) * f.generator;
}

BandProjectors band_projectors(const SpectralForm& f, double tolerance) {
  if (f.sin_omega < tolerance) {
    throw Error(ErrorCode::ProjectorUndefined, "bands touch (sin w = " + std::to_string(f.sin_omega) + ")");
  }
  const SpinMatrix id = identity_like(f.generator);
  const SpinMatrix khat = f.generator / f.sin_omega;
  return {0.5 * (id - khat), 0.5 * (id + khat)};
}

SpinMatrix principal_hamiltonian(const SpectralForm& f) {
  if (f.sin_omega < kDegenerate && f.cos_omega < 0.0) {
    throw Error(ErrorCode::BranchDegenerate, "Bloch matrix is -I; the logarithm branch is ambiguous");
  }
  const double ratio = f.sin_omega > kDegenerate ? f.omega / f.sin_omega : 1.0;
  return -ratio * f.generator;
}

}  // namespace qca
