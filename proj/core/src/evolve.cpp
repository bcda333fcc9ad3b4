#include "qca/evolve.hpp"

#include <cmath>
#include <numbers>

#include "qca/fft.hpp"
#include "qca/unitarity.hpp"

namespace qca {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int wrap_index(long long v, int n) {
  const long long r = v % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

// Wraps x into [-n/2, n/2).
double wrap_centered(double x, int n) {
  const double nd = n;
  double r = std::fmod(x + nd / 2.0, nd);
  if (r < 0.0) r += nd;
  return r - nd / 2.0;
}

Vec3 embed_real(const LatticePresentation& lattice, const Vec3& coords) {
  Vec3 out = Vec3::Zero();
  const auto gens = lattice.generators();
  for (int i = 0; i < lattice.dimension(); ++i) out += coords[i] * gens[static_cast<std::size_t>(i)].cartesian;
  return out;
}

void require_shape(const SpinorField& field, const AutomatonModel& model) {
  if (field.dimension() != model.dimension() || field.spin() != model.spin_dimension()) {
    throw Error(ErrorCode::InvalidArgument, "field shape does not match " + model.name());
  }
}

void transform(SpinorField& field, FftDirection direction) {
  const FftPlan& plan = cached_plan(field.dimension(), field.size(), field.spin(), direction);
  auto data = field.data();
  plan.execute(data);
  const double scale = 1.0 / std::sqrt(static_cast<double>(field.sites()));
  for (Complex& c : data) c *= scale;
}

SpinVector fiber(const SpinorField& f, std::size_t site) {
  SpinVector v(f.spin());
  for (int c = 0; c < f.spin(); ++c) v[c] = f(site, c);
  return v;
}

void set_fiber(SpinorField& f, std::size_t site, const SpinVector& v) {
  for (int c = 0; c < f.spin(); ++c) f(site, c) = v[c];
}

}  // namespace

SpinorField::SpinorField(int dimension, int size, int spin, Representation rep)
    : dim_(dimension), size_(size), spin_(spin), sites_(1), rep_(rep) {
  if (dimension < 1 || dimension > 3) throw Error(ErrorCode::InvalidArgument, "field dimension must be 1, 2 or 3");
  if (size < 1 || spin < 1) throw Error(ErrorCode::InvalidArgument, "field size and spin must be positive");
  for (int i = 0; i < dimension; ++i) sites_ *= static_cast<std::size_t>(size);
  data_.assign(sites_ * static_cast<std::size_t>(spin), Complex(0.0));
}

std::size_t SpinorField::site_index(const IntShift& coords) const {
  std::size_t idx = 0;
  for (int i = 0; i < dim_; ++i) {
    idx = idx * static_cast<std::size_t>(size_) + static_cast<std::size_t>(wrap_index(coords[static_cast<std::size_t>(i)], size_));
  }
  return idx;
}

IntShift SpinorField::site_coords(std::size_t site) const {
  IntShift c{0, 0, 0};
  for (int i = dim_ - 1; i >= 0; --i) {
    c[static_cast<std::size_t>(i)] = static_cast<int>(site % static_cast<std::size_t>(size_));
    site /= static_cast<std::size_t>(size_);
  }
  return c;
}

double SpinorField::norm_squared() const {
  double s = 0.0;
  for (const Complex& c : data_) s += std::norm(c);
  return s;
}

void SpinorField::normalize() {
  const double n = std::sqrt(norm_squared());
  if (n == 0.0) throw Error(ErrorCode::InvalidArgument, "cannot normalize a zero field");
  for (Complex& c : data_) c /= n;
}

std::size_t field_bytes(int dimension, int size, int spin) {
  std::size_t sites = 1;
  for (int i = 0; i < dimension; ++i) sites *= static_cast<std::size_t>(size);
  return sites * static_cast<std::size_t>(spin) * sizeof(Complex);
}

WaveVector fiber_wave_vector(const LatticePresentation& lattice, int size, const IntShift& q) {
  std::array<double, 3> theta{};
  for (int i = 0; i < lattice.dimension(); ++i) {
    int qi = wrap_index(q[static_cast<std::size_t>(i)], size);
    if (2 * qi > size) qi -= size;
    theta[static_cast<std::size_t>(i)] = kTwoPi * qi / size;
  }
  return lattice.wave_vector_from_coords(std::span<const double>(theta.data(), static_cast<std::size_t>(lattice.dimension())));
}

void to_wavevector(SpinorField& field) {
  if (field.representation() == Representation::WaveVector) return;
  transform(field, FftDirection::Forward);
  field.set_representation(Representation::WaveVector);
}

void to_position(SpinorField& field) {
  if (field.representation() == Representation::Position) return;
  transform(field, FftDirection::Backward);
  field.set_representation(Representation::Position);
}

SpinorField prepare(const PacketSpec& spec, int size, const AutomatonModel& model, PrepareStats* stats) {
  const int s = model.spin_dimension();
  const int d = model.dimension();
  const LatticePresentation& lattice = model.lattice();
  SpinVector spin = spec.spin;
  if (spin.size() == 0) {
    spin = SpinVector::Zero(s);
    spin[0] = 1.0;
  }
  if (spin.size() != s) throw Error(ErrorCode::InvalidArgument, "spin vector length does not match the model");
  if (std::abs(spin.norm() - 1.0) > 1e-9) throw Error(ErrorCode::InvalidArgument, "spin vector must be normalized");

  SpinorField field(d, size, s);
  if (spec.shape == PacketSpec::Shape::Delta) {
    set_fiber(field, field.site_index(spec.center), spin);
  } else {
    for (int j = 0; j < d; ++j) {
      if (!(spec.variance[j] > 0.0)) throw Error(ErrorCode::InvalidArgument, "packet variances must be positive");
    }
    const int images = d == 1 ? 3 : (d == 2 ? 9 : 27);
    for (std::size_t site = 0; site < field.sites(); ++site) {
      const IntShift n = field.site_coords(site);
      Complex amp = 0.0;
      for (int img = 0; img < images; ++img) {
        Vec3 delta = Vec3::Zero();
        int code = img;
        for (int i = 0; i < d; ++i) {
          const double base = wrap_centered(n[static_cast<std::size_t>(i)] - spec.center[static_cast<std::size_t>(i)], size);
          delta[i] = base + size * (code % 3 - 1);
          code /= 3;
        }
        const Vec3 r = embed_real(lattice, delta);
        double expo = 0.0;
        for (int j = 0; j < d; ++j) expo -= r[j] * r[j] / (4.0 * spec.variance[j]);
        amp += std::exp(expo) * std::polar(1.0, spec.k0.dot(r));
      }
      set_fiber(field, site, amp * spin);
    }
  }

  if (spec.band != Band::None) {
    to_wavevector(field);
    std::size_t degenerate = 0;
    for (std::size_t site = 0; site < field.sites(); ++site) {
      const WaveVector k = fiber_wave_vector(lattice, size, field.site_coords(site));
      const SpectralForm f = spectral_form(model, k);
      if (f.sin_omega < 1e-12) {
        set_fiber(field, site, SpinVector::Zero(s));
        ++degenerate;
        continue;
      }
      const BandProjectors p = band_projectors(f);
      const SpinMatrix& proj = spec.band == Band::Particle ? p.particle : p.antiparticle;
      set_fiber(field, site, proj * fiber(field, site));
    }
    to_position(field);
    if (stats) stats->degenerate_fibers = degenerate;
  }
  if (field.norm_squared() < 1e-24) throw Error(ErrorCode::EmptyBand, "packet has no weight in the requested band");
  field.normalize();
  return field;
}

SpinorField step(const SpinorField& field, const EvolutionPlan& plan) {
  require_shape(field, plan.model);
  if (plan.size != field.size()) throw Error(ErrorCode::InvalidArgument, "plan and field sizes differ");
  if (plan.steps < 0) throw Error(ErrorCode::InvalidArgument, "step count must be non-negative");
  SpinorField out = field;
  const Representation original = out.representation();
  to_wavevector(out);
  const LatticePresentation& lattice = plan.model.lattice();
  for (std::size_t site = 0; site < out.sites(); ++site) {
    const WaveVector k = fiber_wave_vector(lattice, out.size(), out.site_coords(site));
    const SpinMatrix u = unitary_power(spectral_form(plan.model, k), plan.steps);
    set_fiber(out, site, u * fiber(out, site));
  }
  if (original == Representation::Position) to_position(out);
  return out;
}

SpinorField step_direct(const SpinorField& field, const AutomatonModel& model) {
  require_shape(field, model);
  if (field.representation() != Representation::Position) {
    throw Error(ErrorCode::InvalidArgument, "direct step needs a position-space field");
  }
  const TransitionSet ts = transition_set(model);
  SpinorField out(field.dimension(), field.size(), field.spin());
  for (std::size_t site = 0; site < field.sites(); ++site) {
    const IntShift x = field.site_coords(site);
    SpinVector acc = SpinVector::Zero(field.spin());
    for (const TransitionEntry& e : ts.entries()) {
      const IntShift y{x[0] + e.shift[0], x[1] + e.shift[1], x[2] + e.shift[2]};
      acc += e.matrix * fiber(field, field.site_index(y));
    }
    set_fiber(out, site, acc);
  }
  return out;
}

Vec3 torus_displacement(const LatticePresentation& lattice, int size, const Vec3& from, const Vec3& to) {
  Vec3 delta = Vec3::Zero();
  for (int i = 0; i < lattice.dimension(); ++i) delta[i] = wrap_centered(to[i] - from[i], size);
  return embed_real(lattice, delta);
}

Observables observe(const SpinorField& field, const LatticePresentation& lattice) {
  if (field.representation() != Representation::Position) {
    throw Error(ErrorCode::InvalidArgument, "observables need a position-space field");
  }
  const int d = field.dimension();
  const int n = field.size();
  Observables o;
  o.site_probability.assign(field.sites(), 0.0);
  o.component_probability.assign(static_cast<std::size_t>(field.spin()), 0.0);
  for (std::size_t site = 0; site < field.sites(); ++site) {
    for (int c = 0; c < field.spin(); ++c) {
      const double p = std::norm(field(site, c));
      o.site_probability[site] += p;
      o.component_probability[static_cast<std::size_t>(c)] += p;
    }
    o.norm += o.site_probability[site];
  }
  if (o.norm == 0.0) return o;

  std::array<Complex, 3> phasor{};
  double sum_p2 = 0.0;
  for (std::size_t site = 0; site < field.sites(); ++site) {
    const double p = o.site_probability[site] / o.norm;
    const IntShift x = field.site_coords(site);
    for (int i = 0; i < d; ++i) phasor[static_cast<std::size_t>(i)] += p * std::polar(1.0, kTwoPi * x[static_cast<std::size_t>(i)] / n);
    sum_p2 += p * p;
  }
  o.participation_ratio = 1.0 / sum_p2;
  Vec3 centre = Vec3::Zero();
  for (int i = 0; i < d; ++i) centre[i] = std::arg(phasor[static_cast<std::size_t>(i)]) * n / kTwoPi;

  Vec3 mean_delta = Vec3::Zero();
  std::vector<Vec3> deltas(field.sites());
  for (std::size_t site = 0; site < field.sites(); ++site) {
    const IntShift x = field.site_coords(site);
    Vec3 delta = Vec3::Zero();
    for (int i = 0; i < d; ++i) delta[i] = wrap_centered(x[static_cast<std::size_t>(i)] - centre[i], n);
    deltas[site] = delta;
    mean_delta += (o.site_probability[site] / o.norm) * delta;
  }
  const Vec3 mean_r = embed_real(lattice, mean_delta);
  for (std::size_t site = 0; site < field.sites(); ++site) {
    const Vec3 r = embed_real(lattice, deltas[site]) - mean_r;
    o.covariance += (o.site_probability[site] / o.norm) * (r * r.transpose());
  }
  o.mean_coords = centre + mean_delta;
  for (int i = 0; i < d; ++i) o.mean_coords[i] = std::fmod(o.mean_coords[i] + n, static_cast<double>(n));
  o.mean = embed_real(lattice, o.mean_coords);
  return o;
}

double causal_leakage(const SpinorField& initial, const SpinorField& evolved, const AutomatonModel& model, int t) {
  require_shape(initial, model);
  require_shape(evolved, model);
  if (t < 0) throw Error(ErrorCode::InvalidArgument, "step count must be non-negative");
  std::vector<char> mask(initial.sites(), 0);
  std::size_t support = 0;
  for (std::size_t site = 0; site < initial.sites(); ++site) {
    for (int c = 0; c < initial.spin(); ++c) {
      if (initial(site, c) != Complex(0.0)) {
        mask[site] = 1;
        ++support;
        break;
      }
    }
  }
  if (support != 1) throw Error(ErrorCode::InvalidArgument, "causal leakage needs a single-site initial field");

  // Amplitude at y feeds x = y - h through A_h.
  std::vector<IntShift> moves;
  for (const TransitionEntry& e : transition_set(model).entries()) {
    if (e.matrix.cwiseAbs().maxCoeff() > 0.0) moves.push_back({-e.shift[0], -e.shift[1], -e.shift[2]});
  }
  for (int step = 0; step < t; ++step) {
    std::vector<char> next(mask.size(), 0);
    for (std::size_t site = 0; site < mask.size(); ++site) {
      if (!mask[site]) continue;
      const IntShift x = initial.site_coords(site);
      for (const IntShift& m : moves) next[initial.site_index({x[0] + m[0], x[1] + m[1], x[2] + m[2]})] = 1;
    }
    mask.swap(next);
  }
  double leak = 0.0;
  for (std::size_t site = 0; site < evolved.sites(); ++site) {
    if (mask[site]) continue;
    for (int c = 0; c < evolved.spin(); ++c) leak += std::norm(evolved(site, c));
  }
  return leak;
}

double band_weight(const SpinorField& field, const AutomatonModel& model, Band band) {
  require_shape(field, model);
  SpinorField k = field;
  to_wavevector(k);
  const double total = k.norm_squared();
  if (band == Band::None) return 1.0;
  double w = 0.0;
  for (std::size_t site = 0; site < k.sites(); ++site) {
    const SpinVector v = fiber(k, site);
    const SpectralForm f = spectral_form(model, fiber_wave_vector(model.lattice(), k.size(), k.site_coords(site)));
    if (f.sin_omega < 1e-12) {
      w += 0.5 * v.squaredNorm();
      continue;
    }
    const BandProjectors p = band_projectors(f);
    const SpinMatrix& proj = band == Band::Particle ? p.particle : p.antiparticle;
    w += (v.adjoint() * proj * v)(0, 0).real();
  }
  return w / total;
}

double overlap(const SpinorField& a, const SpinorField& b) {
  if (a.dimension() != b.dimension() || a.size() != b.size() || a.spin() != b.spin() ||
      a.representation() != b.representation()) {
    throw Error(ErrorCode::InvalidArgument, "fields have different shapes");
  }
  Complex s = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) s += std::conj(da[i]) * db[i];
  return std::abs(s);
}

}  // namespace qca
