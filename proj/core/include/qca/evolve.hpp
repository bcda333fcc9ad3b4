#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qca/bloch.hpp"
#include "qca/lattice.hpp"
#include "qca/model.hpp"

namespace qca {

enum class Representation { Position, WaveVector };

/// Spinor amplitudes on the generator-coordinate torus Z_N^d.
///
/// Storage is site-major with the s components contiguous; sites are
/// row-major in (n_1, ..., n_d).
class SpinorField {
 public:
  SpinorField(int dimension, int size, int spin, Representation rep = Representation::Position);

  int dimension() const noexcept { return dim_; }
  int size() const noexcept { return size_; }
  int spin() const noexcept { return spin_; }
  std::size_t sites() const noexcept { return sites_; }
  Representation representation() const noexcept { return rep_; }
  void set_representation(Representation rep) noexcept { rep_ = rep; }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }
  Complex& operator()(std::size_t site, int component) { return data_[site * static_cast<std::size_t>(spin_) + static_cast<std::size_t>(component)]; }
  Complex operator()(std::size_t site, int component) const { return data_[site * static_cast<std::size_t>(spin_) + static_cast<std::size_t>(component)]; }

  std::size_t site_index(const IntShift& coords) const;
  IntShift site_coords(std::size_t site) const;

  double norm_squared() const;
  void normalize();

 private:
  int dim_;
  int size_;
  int spin_;
  std::size_t sites_;
  Representation rep_;
  std::vector<Complex> data_;
};

enum class Band { None, Particle, Antiparticle };

struct PacketSpec {
  enum class Shape { Delta, Gaussian };
  Shape shape = Shape::Delta;
  Vec3 k0 = Vec3::Zero();          // Cartesian
  Vec3 variance = Vec3::Ones();    // Cartesian position variances, sites^2
  IntShift center{0, 0, 0};        // generator coordinates
  SpinVector spin;                 // defaults to e_1 when empty
  Band band = Band::None;
};

struct PrepareStats {
  std::size_t degenerate_fibers = 0;  // fibers zeroed because the bands touch
};

SpinorField prepare(const PacketSpec& spec, int size, const AutomatonModel& model, PrepareStats* stats = nullptr);

struct EvolutionPlan {
  AutomatonModel model;
  std::int64_t steps = 1;
  int size = 0;
};

/// Cartesian wave-vector of the fiber with generator phases 2 pi q / N, wrapped to (-pi, pi].
WaveVector fiber_wave_vector(const LatticePresentation& lattice, int size, const IntShift& q);

/// In-place change of representation; the forward transform is unitary-normalized.
void to_wavevector(SpinorField& field);
void to_position(SpinorField& field);

/// U^N on every fiber via the spectral form.
SpinorField step(const SpinorField& field, const EvolutionPlan& plan);
/// One step as a position-space convolution with the transition matrices.
SpinorField step_direct(const SpinorField& field, const AutomatonModel& model);

struct Observables {
  std::vector<double> site_probability;
  std::vector<double> component_probability;
  double norm = 0.0;
  Vec3 mean_coords = Vec3::Zero();  // circular mean, generator coordinates in [0, N)
  Vec3 mean = Vec3::Zero();         // Cartesian embedding of mean_coords
  Mat3 covariance = Mat3::Zero();   // Cartesian, minimal-image around the mean
  double participation_ratio = 0.0;
};

Observables observe(const SpinorField& field, const LatticePresentation& lattice);

/// Minimal-image Cartesian displacement between two generator-coordinate points.
Vec3 torus_displacement(const LatticePresentation& lattice, int size, const Vec3& from, const Vec3& to);

/// Probability of `evolved` outside the sites reachable from the support of `initial` in t steps.
double causal_leakage(const SpinorField& initial, const SpinorField& evolved, const AutomatonModel& model, int t);

/// Weight of the field in one band (fibers with touching bands count half).
double band_weight(const SpinorField& field, const AutomatonModel& model, Band band);

/// |<a|b>|
double overlap(const SpinorField& a, const SpinorField& b);

/// Bytes held by a field of this shape.
std::size_t field_bytes(int dimension, int size, int spin);

}  // namespace qca
