#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qca/bloch.hpp"
#include "qca/evolve.hpp"

namespace qca {

struct InterpolatingHamiltonian {
  WaveVector k;
  SpinMatrix matrix;
  double omega = 0.0;
};

/// Principal log of the Bloch matrix; throws Error(BranchDegenerate) where it equals -I.
InterpolatingHamiltonian interpolating_hamiltonian(const AutomatonModel& model, const WaveVector& k);

/// Argument of the first-order Hamiltonians: k/sqrt(d), with the 1D wave number on the z slot.
Vec3 linear_argument(const WaveVector& k);

/// alpha.k / sqrt(d) for a Weyl model.
SpinMatrix weyl_limit_hamiltonian(const AutomatonModel& model, const WaveVector& k);
/// n gamma0 gamma.k / sqrt(d) + m beta with beta = -gamma0.
SpinMatrix dirac_limit_hamiltonian(const AutomatonModel& model, const WaveVector& k);

/// sqrt(m^2 + k^2/3) - omega^E(k) for the 3D Dirac automaton over A+ (chirality +1) or A- (-1).
double delta_numeric(const WaveVector& k, double mass, int chirality = 1);
/// Closed-form three-term series; throws Error(SingularDenominator) at m = 0, k = 0.
double delta_analytic(const WaveVector& k, double mass);

struct DeltaFit {
  std::array<double, 3> coefficients{};  // on kxkykz/q^{1/2}, (kxkykz)^2/q^{3/2}, q^{3/2}
  std::array<double, 3> reference{};     // sqrt3, -3, 1/24
  std::array<double, 3> ratio{};         // coefficients / reference
  double rms_residual = 0.0;
  double rms_numeric = 0.0;
  int samples = 0;
};

/// Least-squares fit of delta_numeric over random k with |k| in [kmin, kmax].
DeltaFit fit_delta(double mass, double kmin, double kmax, int samples, std::uint64_t seed, int chirality = 1);

/// Weighted wave-vector sample of a packet.
struct KPacket {
  std::string description;
  std::vector<WaveVector> k;
  std::vector<double> weight;  // sums to 1
};

/// Gaussian |psi(k)|^2 with standard deviation sigma per axis on a (2 half_width + 1)^r grid
/// spanning +-span_sigmas sigma; r = 2 when planar (k_z fixed at k0_z), else 3.
KPacket gaussian_kpacket(const Vec3& k0, double sigma, int half_width, double span_sigmas, bool planar);
KPacket plane_wave(const Vec3& k0);

struct FidelityReport {
  std::string packet;
  double mass = 0.0;
  std::vector<std::pair<double, double>> samples;  // (N, F)
  double delta_mean = 0.0;
  double delta_spread = 0.0;
  std::string note;
};

/// F(N) = |sum_k w(k) exp(-i N Delta(k))| for each N.
FidelityReport fidelity(const KPacket& packet, double mass, std::span<const double> steps, int chirality = 1);
double fidelity_at(const KPacket& packet, double mass, double steps, int chirality = 1);
/// First N where F drops below `threshold` (log scan then bisection).
double fidelity_horizon(const KPacket& packet, double mass, double threshold = 0.9, int chirality = 1);

/// `count` log-spaced values from lo to hi, inclusive.
std::vector<double> log_spaced(double lo, double hi, int count);

struct SchrodingerExpansion {
  WaveVector k0;
  double omega0 = 0.0;
  Vec3 v = Vec3::Zero();
  Mat3 D = Mat3::Zero();
};

/// Throws Error(DegenerateExpansion) where the group velocity is undefined.
SchrodingerExpansion schrodinger_expansion(const AutomatonModel& model, const WaveVector& k0, double step = 1e-3);

/// Particle band fibers get exp(-i t (w0 + v.dk + dk.D.dk/2)), antiparticle fibers the conjugate phase.
SpinorField schrodinger_propagate(const SpinorField& field, const SchrodingerExpansion& expansion,
                                  const AutomatonModel& model, double t);

struct PlanckUnits {
  double length = 1.616255e-35;  // m
  double time = 5.391247e-44;    // s
  double mass = 2.176434e-8;     // kg

  static PlanckUnits codata() { return {}; }
  double c() const { return length / time; }
  double hbar() const { return mass * length * c(); }
};

enum class Quantity { Mass, Momentum, Time, Length, Velocity };
enum class Direction { ToPhysical, ToDimensionless };

Quantity parse_quantity(std::string_view tag);
std::string to_string(Quantity q);

/// mass m_P, momentum hbar k / (sqrt(d) l_P), time t_P, length sqrt(d) l_P, velocity sqrt(d) c.
double planck_convert(const PlanckUnits& units, Quantity quantity, Direction direction, double value,
                      int dimension = 3);

inline constexpr double kProtonMassKg = 1.67262192369e-27;
inline constexpr double kSecondsPerYear = 365.25 * 86400.0;

/// m^-3 steps for k ~ m.
double horizon_steps_relativistic(double mass);
/// k^-2 steps for k >> m.
double horizon_steps_ultrarelativistic(double k);

}  // namespace qca
