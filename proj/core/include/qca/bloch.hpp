#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "qca/lattice.hpp"
#include "qca/model.hpp"
#include "qca/spectral.hpp"

namespace qca {

using Helicity = std::array<Mat2, 3>;

/// Wave-vector unitary with its helicity data.
///
/// Weyl: matrix = d I - i alpha.a. Dirac: d and a are the Weyl values scaled by n,
/// and matrix = d I - i gamma0 gamma.a + i m gamma0.
struct BlochMatrix {
  WaveVector k;
  SpinMatrix matrix;
  double d = 1.0;
  Vec3 a = Vec3::Zero();
};

struct DispersionSample {
  WaveVector k;
  double omega = 0.0;
  Vec3 v = Vec3::Zero();  // Cartesian gradient of omega, trailing entries zero for d < 3
  double speed = 0.0;
};

struct ProjectorPair {
  WaveVector k;
  Mat4 plus;   // particle band, eigenvalue e^{-iw}
  Mat4 minus;  // antiparticle band, eigenvalue e^{+iw}
};

enum class VelocityMode { Analytic, Numeric };

/// alpha set of the Weyl base: (sx, +-sy, sz) for A+-, (sx, -+sy, sz) for B+-.
Helicity alpha(const AutomatonModel& model);

/// (gamma0, gamma1, gamma2, gamma3) in the spinorial representation built on alpha(model).
/// For d = 1 the basis is reordered so that the two 2x2 blocks are contiguous.
std::array<Mat4, 4> gamma_matrices(const AutomatonModel& model);

/// Basis permutation applied to every 4x4 object of the 1D Dirac automaton.
std::array<int, 4> dirac_basis_order(int dimension);

BlochMatrix bloch(const AutomatonModel& model, const WaveVector& k);
/// 1D Dirac only: block 0 or 1 of the block-diagonal pair.
Mat2 dirac_line_block(const BlochMatrix& e, int block);

/// Three-exponential product (d = 3 Weyl only).
BlochMatrix bloch_product_form(const AutomatonModel& model, const WaveVector& k);

/// Reassembles a Dirac Bloch matrix from d, a and the gamma matrices.
Mat4 gamma_form(const AutomatonModel& model, const BlochMatrix& e);

SpectralForm spectral_form(const AutomatonModel& model, const WaveVector& k);

DispersionSample dispersion(const AutomatonModel& model, const WaveVector& k);

/// Throws Error(VelocityUndefined) where sin(w) vanishes.
DispersionSample group_velocity(const AutomatonModel& model, const WaveVector& k,
                                VelocityMode mode = VelocityMode::Analytic, double step = 1e-5);

/// Closed-form band projectors of a Dirac automaton.
ProjectorPair projectors(const AutomatonModel& model, const WaveVector& k);

/// Identities probed by symmetry_probe.
struct SymmetryTransform {
  enum class Kind { Parity, TimeReversal, ParityTime, AxisTranslation, HalfDiagonalTranslation,
                    HalfDiagonalMirror, L2Rotation, CPT };
  Kind kind = Kind::Parity;
  int axis = 0;       // AxisTranslation, L2Rotation: 0..2; half-diagonal: direction index 0..3
  int sign = 1;       // half-diagonal: +1 along +k_i, -1 along -k_i

  static SymmetryTransform parity() { return {Kind::Parity}; }
  static SymmetryTransform time_reversal() { return {Kind::TimeReversal}; }
  static SymmetryTransform parity_time() { return {Kind::ParityTime}; }
  static SymmetryTransform axis_translation(int axis) { return {Kind::AxisTranslation, axis}; }
  /// k -> k + sign sqrt3 pi/2 k_i, compared against -+ sign B-+.
  static SymmetryTransform half_diagonal_translation(int direction, int sign) {
    return {Kind::HalfDiagonalTranslation, direction, sign};
  }
  /// Same translation compared against -+ sign A-+.
  static SymmetryTransform half_diagonal_mirror(int direction, int sign) {
    return {Kind::HalfDiagonalMirror, direction, sign};
  }
  static SymmetryTransform l2_rotation(int axis) { return {Kind::L2Rotation, axis}; }
  static SymmetryTransform cpt() { return {Kind::CPT}; }
};

std::string to_string(const SymmetryTransform& t);

/// Max deviation ||lhs - rhs||_max over `samples` uniform in-zone k (plus k = 0).
/// Throws Error(InvalidArgument) when the transform does not apply to the model.
double symmetry_probe(const AutomatonModel& model, const SymmetryTransform& transform, int samples = 1000,
                      std::uint64_t seed = 1);

/// Deviation at a single k.
double symmetry_deviation(const AutomatonModel& model, const SymmetryTransform& transform, const WaveVector& k);

/// Uniform sample from the Brillouin zone by rejection from its bounding box.
template <typename Rng>
WaveVector random_in_zone(const LatticePresentation& p, Rng& rng);

}  // namespace qca

#include "qca/detail/random_in_zone.hpp"
