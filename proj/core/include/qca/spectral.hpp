#pragma once

#include <cstdint>

#include "qca/types.hpp"

namespace qca {

/// U = cos(w) I + i K with K Hermitian and K^2 = sin(w)^2 I.
///
/// Every Bloch matrix of the automata has this form; the eigenvalue e^{-iw}
/// lives on the K = -sin(w) eigenspace.
struct SpectralForm {
  double cos_omega = 1.0;
  double sin_omega = 0.0;
  double omega = 0.0;  // in [0, pi]
  SpinMatrix generator;  // K
};

/// Splits U into scalar and traceless-Hermitian parts. U must have the form above.
SpectralForm spectral_form(const SpinMatrix& u);

/// U^t for real t, using the principal branch w in [0, pi].
SpinMatrix unitary_power(const SpectralForm& f, double t);
/// U^N for an integer step count; exact at w = 0 and w = pi.
SpinMatrix unitary_power(const SpectralForm& f, std::int64_t steps);

struct BandProjectors {
  SpinMatrix particle;      // eigenvalue e^{-iw}
  SpinMatrix antiparticle;  // eigenvalue e^{+iw}
};

/// Throws Error(ProjectorUndefined) when sin(w) < tolerance.
BandProjectors band_projectors(const SpectralForm& f, double tolerance = 1e-12);

/// Principal Hermitian log H with exp(-iH) = U; throws Error(BranchDegenerate) at U = -I.
SpinMatrix principal_hamiltonian(const SpectralForm& f);

}  // namespace qca
