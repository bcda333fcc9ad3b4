#pragma once

#include <array>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "qca/types.hpp"

namespace qca {

enum class LatticeKind {
  Line,
  Square,
  Hexagonal,
  PrimitiveCubic,
  BodyCenteredCubic,
  Rhombohedral,
};

std::string to_string(LatticeKind kind);

/// Integer lattice vector expressed in the independent-generator basis.
/// Entries beyond the lattice dimension are zero.
using IntShift = std::array<int, 3>;

struct Generator {
  Vec3 cartesian;  // dimensionless lattice units, trailing components zero for d < 3
  IntShift shift;
};

/// Integer combination of the positive generators that evaluates to zero.
struct Relator {
  std::vector<int> coefficients;
};

/// Cartesian wave-vector with 1 to 3 components.
class WaveVector {
 public:
  WaveVector() = default;
  explicit WaveVector(double kx) : dim_(1), c_(kx, 0.0, 0.0) {}
  WaveVector(double kx, double ky) : dim_(2), c_(kx, ky, 0.0) {}
  WaveVector(double kx, double ky, double kz) : dim_(3), c_(kx, ky, kz) {}
  WaveVector(int dimension, const Vec3& components);

  int dimension() const noexcept { return dim_; }
  double operator[](int i) const { return c_[i]; }
  /// Components padded with zeros to three entries.
  const Vec3& components() const noexcept { return c_; }
  double norm() const { return c_.norm(); }

  WaveVector operator+(const WaveVector& o) const;
  WaveVector operator-(const WaveVector& o) const;
  WaveVector operator-() const { return {dim_, -c_}; }
  WaveVector operator*(double s) const { return {dim_, s * c_}; }

 private:
  int dim_ = 0;
  Vec3 c_ = Vec3::Zero();
};

/// Presentation of Z^d as a Cayley graph embedded in R^d.
///
/// The first `dimension()` positive generators are linearly independent and
/// define the integer coordinates used everywhere else (the evolution torus in
/// particular). Remaining generators are integer combinations of them.
class LatticePresentation {
 public:
  LatticePresentation(LatticeKind kind, int dimension, std::vector<Generator> generators,
                      std::vector<Relator> relators);

  LatticeKind kind() const noexcept { return kind_; }
  int dimension() const noexcept { return dim_; }
  std::span<const Generator> generators() const noexcept { return generators_; }
  std::span<const Relator> relators() const noexcept { return relators_; }
  /// Dual vectors of every independent generator subset; these bound the Brillouin zone.
  std::span<const Vec3> duals() const noexcept { return duals_; }

  /// Rows are the independent generators (top-left d x d block is meaningful).
  const Mat3& basis() const noexcept { return basis_; }

  /// Cartesian position of an integer lattice vector.
  Vec3 embed(const IntShift& shift) const;
  /// Cartesian wave-vector whose generator coordinates k.h_i equal `coords` for the independent generators.
  WaveVector wave_vector_from_coords(std::span<const double> coords) const;

  /// Vertices of the Brillouin-zone polytope (d <= 3).
  std::vector<Vec3> zone_vertices() const;
  /// Half-width of the axis-aligned box enclosing the Brillouin zone.
  double zone_extent() const noexcept { return extent_; }

 private:
  LatticeKind kind_;
  int dim_;
  std::vector<Generator> generators_;
  std::vector<Relator> relators_;
  std::vector<Vec3> duals_;
  Mat3 basis_ = Mat3::Identity();
  Mat3 basis_inverse_ = Mat3::Identity();
  double extent_ = 0.0;
};

/// Builds one of the presentations; throws Error(InvalidArgument) for an unknown (d, kind) pair.
LatticePresentation presentation(int dimension, LatticeKind kind);

/// Shared immutable instance of `presentation(dimension, kind)`.
const LatticePresentation& cached_presentation(int dimension, LatticeKind kind);

/// Closed Brillouin-zone test: -pi|h~|^2 <= k.h~ <= pi|h~|^2 for every dual h~.
bool in_brillouin(const LatticePresentation& p, const WaveVector& k, double slack = 1e-12);

/// Generator coordinates k_i = k.h_i for every positive generator.
std::vector<double> gen_coords(const LatticePresentation& p, const WaveVector& k);

}  // namespace qca
