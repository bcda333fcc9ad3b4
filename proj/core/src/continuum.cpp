#include "qca/continuum.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace qca {

namespace {

struct DeltaTable {
  std::vector<double> delta;
  std::vector<double> weight;
  double mean = 0.0;
  double spread = 0.0;
};

DeltaTable tabulate(const KPacket& packet, double mass, int chirality) {
  if (packet.k.size() != packet.weight.size() || packet.k.empty()) {
    throw Error(ErrorCode::InvalidArgument, "packet needs matching, non-empty k and weight lists");
  }
  DeltaTable t;
  t.weight = packet.weight;
  double total = 0.0;
  for (double w : t.weight) total += w;
  for (double& w : t.weight) w /= total;
  t.delta.reserve(packet.k.size());
  for (const WaveVector& k : packet.k) t.delta.push_back(delta_numeric(k, mass, chirality));
  for (std::size_t i = 0; i < t.delta.size(); ++i) t.mean += t.weight[i] * t.delta[i];
  for (std::size_t i = 0; i < t.delta.size(); ++i) t.spread += t.weight[i] * std::pow(t.delta[i] - t.mean, 2);
  t.spread = std::sqrt(t.spread);
  return t;
}

// The mean phase is factored out; it drops under the modulus.
double evaluate(const DeltaTable& t, double steps) {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < t.delta.size(); ++i) {
    sum += t.weight[i] * std::polar(1.0, -std::fmod(steps * (t.delta[i] - t.mean), 2.0 * std::numbers::pi));
  }
  return std::min(1.0, std::abs(sum));
}

AutomatonModel dirac3(double mass, int chirality) {
  return AutomatonModel::dirac(3, chirality >= 0 ? Variant::APlus : Variant::AMinus, mass);
}

}  // namespace

InterpolatingHamiltonian interpolating_hamiltonian(const AutomatonModel& model, const WaveVector& k) {
  const SpectralForm f = spectral_form(model, k);
  return {k, principal_hamiltonian(f), f.omega};
}

Vec3 linear_argument(const WaveVector& k) {
  switch (k.dimension()) {
    case 1: return Vec3(0.0, 0.0, k[0]);
    case 2: return Vec3(k[0], k[1], 0.0) / std::sqrt(2.0);
    default: return k.components() / std::sqrt(3.0);
  }
}

SpinMatrix weyl_limit_hamiltonian(const AutomatonModel& model, const WaveVector& k) {
  if (model.family() != Family::Weyl) throw Error(ErrorCode::InvalidArgument, "Weyl limit needs a Weyl model");
  const Helicity al = alpha(model);
  const Vec3 u = linear_argument(k);
  return u[0] * al[0] + u[1] * al[1] + u[2] * al[2];
}

SpinMatrix dirac_limit_hamiltonian(const AutomatonModel& model, const WaveVector& k) {
  if (model.family() != Family::Dirac) throw Error(ErrorCode::InvalidArgument, "Dirac limit needs a Dirac model");
  const auto g = gamma_matrices(model);
  const Vec3 u = linear_argument(k);
  Mat4 h = -model.mass() * g[0];
  for (std::size_t j = 0; j < 3; ++j) h += (model.n() * u[static_cast<Eigen::Index>(j)]) * (g[0] * g[j + 1]);
  return h;
}

double delta_numeric(const WaveVector& k, double mass, int chirality) {
  if (k.dimension() != 3) throw Error(ErrorCode::InvalidArgument, "delta is defined for d = 3");
  const double continuum = std::sqrt(mass * mass + k.components().squaredNorm() / 3.0);
  return continuum - dispersion(dirac3(mass, chirality), k).omega;
}

double delta_analytic(const WaveVector& k, double mass) {
  if (k.dimension() != 3) throw Error(ErrorCode::InvalidArgument, "delta is defined for d = 3");
  const double q = mass * mass + k.components().squaredNorm() / 3.0;
  if (q <= 0.0) throw Error(ErrorCode::SingularDenominator, "m^2 + k^2/3 vanishes");
  const double p = k[0] * k[1] * k[2];
  return std::sqrt(3.0) * p / std::sqrt(q) - 3.0 * p * p / std::pow(q, 1.5) + std::pow(q, 1.5) / 24.0;
}

DeltaFit fit_delta(double mass, double kmin, double kmax, int samples, std::uint64_t seed, int chirality) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit;
  Eigen::MatrixXd a(samples, 3);
  Eigen::VectorXd b(samples);
  for (int i = 0; i < samples; ++i) {
    Vec3 dir(gauss(rng), gauss(rng), gauss(rng));
    dir.normalize();
    const double r = kmin * std::pow(kmax / kmin, unit(rng));
    const WaveVector k(3, r * dir);
    const double q = mass * mass + r * r / 3.0;
    const double p = k[0] * k[1] * k[2];
    a(i, 0) = p / std::sqrt(q);
    a(i, 1) = p * p / std::pow(q, 1.5);
    a(i, 2) = std::pow(q, 1.5);
    b[i] = delta_numeric(k, mass, chirality);
  }
  const Eigen::Vector3d x = a.colPivHouseholderQr().solve(b);
  DeltaFit fit;
  fit.samples = samples;
  fit.reference = {std::sqrt(3.0), -3.0, 1.0 / 24.0};
  for (std::size_t j = 0; j < 3; ++j) {
    fit.coefficients[j] = x[static_cast<Eigen::Index>(j)];
    fit.ratio[j] = fit.coefficients[j] / fit.reference[j];
  }
  fit.rms_residual = std::sqrt((a * x - b).squaredNorm() / samples);
  fit.rms_numeric = std::sqrt(b.squaredNorm() / samples);
  return fit;
}

KPacket gaussian_kpacket(const Vec3& k0, double sigma, int half_width, double span_sigmas, bool planar) {
  if (!(sigma > 0.0) || half_width < 1) throw Error(ErrorCode::InvalidArgument, "packet needs sigma > 0 and half_width >= 1");
  KPacket packet;
  packet.description = std::string(planar ? "planar" : "isotropic") + " gaussian sigma=" + std::to_string(sigma);
  const int axes = planar ? 2 : 3;
  const int side = 2 * half_width + 1;
  const int total = axes == 2 ? side * side : side * side * side;
  const double spacing = span_sigmas * sigma / half_width;
  double sum = 0.0;
  for (int idx = 0; idx < total; ++idx) {
    Vec3 offset = Vec3::Zero();
    int code = idx;
    for (int j = 0; j < axes; ++j) {
      offset[j] = (code % side - half_width) * spacing;
      code /= side;
    }
    const double w = std::exp(-offset.squaredNorm() / (2.0 * sigma * sigma));
    packet.k.emplace_back(3, k0 + offset);
    packet.weight.push_back(w);
    sum += w;
  }
  for (double& w : packet.weight) w /= sum;
  return packet;
}

KPacket plane_wave(const Vec3& k0) { return {"plane wave", {WaveVector(3, k0)}, {1.0}}; }

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi >= lo) || count < 1) throw Error(ErrorCode::InvalidArgument, "invalid log range");
  std::vector<double> out;
  if (count == 1) return {lo};
  const double step = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) out.push_back(lo * std::exp(step * i));
  out.back() = hi;
  return out;
}

FidelityReport fidelity(const KPacket& packet, double mass, std::span<const double> steps, int chirality) {
  const DeltaTable t = tabulate(packet, mass, chirality);
  FidelityReport report;
  report.packet = packet.description;
  report.mass = mass;
  report.delta_mean = t.mean;
  report.delta_spread = t.spread;
  report.note = "scalar-phase model: eigenvector mismatch between automaton and Dirac states is not included";
  for (double n : steps) report.samples.emplace_back(n, evaluate(t, n));
  return report;
}

double fidelity_at(const KPacket& packet, double mass, double steps, int chirality) {
  return evaluate(tabulate(packet, mass, chirality), steps);
}

double fidelity_horizon(const KPacket& packet, double mass, double threshold, int chirality) {
  const DeltaTable t = tabulate(packet, mass, chirality);
  double lo = 1.0;
  if (evaluate(t, lo) < threshold) return lo;
  double hi = lo;
  while (true) {
    hi = lo * 1.05;
    if (hi > 1e80) return std::numeric_limits<double>::infinity();
    if (evaluate(t, hi) < threshold) break;
    lo = hi;
  }
  for (int i = 0; i < 80; ++i) {
    const double mid = std::sqrt(lo * hi);
    (evaluate(t, mid) < threshold ? hi : lo) = mid;
  }
  return hi;
}

SchrodingerExpansion schrodinger_expansion(const AutomatonModel& model, const WaveVector& k0, double step) {
  DispersionSample s;
  try {
    s = group_velocity(model, k0);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::VelocityUndefined) throw;
    throw Error(ErrorCode::DegenerateExpansion, "expansion point is a band-touching wave-vector");
  }
  SchrodingerExpansion ex{k0, s.omega, s.v, Mat3::Zero()};
  const int d = k0.dimension();
  auto omega = [&](int i, double si, int j, double sj) {
    Vec3 off = Vec3::Zero();
    off[i] += si * step;
    off[j] += sj * step;
    return dispersion(model, k0 + WaveVector(d, off)).omega;
  };
  for (int i = 0; i < d; ++i) {
    ex.D(i, i) = (omega(i, 1, i, 0) - 2.0 * s.omega + omega(i, -1, i, 0)) / (step * step);
    for (int j = i + 1; j < d; ++j) {
      const double dij = (omega(i, 1, j, 1) - omega(i, 1, j, -1) - omega(i, -1, j, 1) + omega(i, -1, j, -1)) /
                         (4.0 * step * step);
      ex.D(i, j) = dij;
      ex.D(j, i) = dij;
    }
  }
  return ex;
}

SpinorField schrodinger_propagate(const SpinorField& field, const SchrodingerExpansion& ex, const AutomatonModel& model,
                                  double t) {
  if (field.dimension() != model.dimension() || field.spin() != model.spin_dimension()) {
    throw Error(ErrorCode::InvalidArgument, "field shape does not match " + model.name());
  }
  SpinorField out = field;
  const Representation original = out.representation();
  to_wavevector(out);
  const LatticePresentation& lattice = model.lattice();
  const int d = lattice.dimension();
  const std::vector<double> theta0 = gen_coords(lattice, ex.k0);
  const int s = out.spin();
  for (std::size_t site = 0; site < out.sites(); ++site) {
    const WaveVector k = fiber_wave_vector(lattice, out.size(), out.site_coords(site));
    const std::vector<double> theta = gen_coords(lattice, k);
    std::array<double, 3> dtheta{};
    for (int i = 0; i < d; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      dtheta[ui] = std::remainder(theta[ui] - theta0[ui], 2.0 * std::numbers::pi);
    }
    const Vec3 dk = lattice.wave_vector_from_coords(std::span<const double>(dtheta.data(), static_cast<std::size_t>(d))).components();
    const double phase = t * (ex.omega0 + ex.v.dot(dk) + 0.5 * dk.dot(ex.D * dk));
    const SpectralForm f = spectral_form(model, k);
    SpinMatrix particle = 0.5 * SpinMatrix::Identity(s, s);
    SpinMatrix antiparticle = particle;
    if (f.sin_omega >= 1e-12) {
      const BandProjectors p = band_projectors(f);
      particle = p.particle;
      antiparticle = p.antiparticle;
    }
    const SpinMatrix u = std::polar(1.0, -phase) * particle + std::polar(1.0, phase) * antiparticle;
    SpinVector v(s);
    for (int c = 0; c < s; ++c) v[c] = out(site, c);
    v = u * v;
    for (int c = 0; c < s; ++c) out(site, c) = v[c];
  }
  if (original == Representation::Position) to_position(out);
  return out;
}

Quantity parse_quantity(std::string_view tag) {
  if (tag == "mass") return Quantity::Mass;
  if (tag == "momentum") return Quantity::Momentum;
  if (tag == "time") return Quantity::Time;
  if (tag == "length") return Quantity::Length;
  if (tag == "velocity") return Quantity::Velocity;
  throw Error(ErrorCode::InvalidArgument, "unknown quantity '" + std::string(tag) + "'");
}

std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::Mass: return "mass";
    case Quantity::Momentum: return "momentum";
    case Quantity::Time: return "time";
    case Quantity::Length: return "length";
    case Quantity::Velocity: return "velocity";
  }
  return "unknown";
}

double planck_convert(const PlanckUnits& u, Quantity quantity, Direction direction, double value, int dimension) {
  if (dimension < 1 || dimension > 3) throw Error(ErrorCode::InvalidArgument, "dimension must be 1, 2 or 3");
  const double root_d = std::sqrt(static_cast<double>(dimension));
  double factor = 1.0;
  switch (quantity) {
    case Quantity::Mass: factor = u.mass; break;
    case Quantity::Momentum: factor = u.hbar() / (root_d * u.length); break;
    case Quantity::Time: factor = u.time; break;
    case Quantity::Length: factor = root_d * u.length; break;
    case Quantity::Velocity: factor = root_d * u.c(); break;
  }
  return direction == Direction::ToPhysical ? value * factor : value / factor;
}

double horizon_steps_relativistic(double mass) { return std::pow(mass, -3.0); }

double horizon_steps_ultrarelativistic(double k) { return std::pow(k, -2.0); }

}  // namespace qca
