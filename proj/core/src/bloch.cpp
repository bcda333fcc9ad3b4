#include "qca/bloch.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace qca {

namespace {

constexpr double kDegenerate = 1e-12;

struct WeylHelicity {
  double d;
  Vec3 a;
  Vec3 grad_d;  // Cartesian gradient of d
};

WeylHelicity weyl_helicity(const AutomatonModel& model, const WaveVector& k) {
  if (k.dimension() != model.dimension()) throw Error(ErrorCode::InvalidArgument, "wave-vector dimension mismatch");
  WeylHelicity h{};
  switch (model.dimension()) {
    case 3: {
      const double r = 1.0 / std::sqrt(3.0);
      const double sg = model.chirality();
      const double cx = std::cos(k[0] * r), cy = std::cos(k[1] * r), cz = std::cos(k[2] * r);
      const double sx = std::sin(k[0] * r), sy = std::sin(k[1] * r), sz = std::sin(k[2] * r);
      h.d = cx * cy * cz - sg * sx * sy * sz;
      h.a = Vec3(sx * cy * cz + sg * cx * sy * sz, cx * sy * cz - sg * sx * cy * sz, cx * cy * sz + sg * sx * sy * cz);
      h.grad_d = r * Vec3(-sx * cy * cz - sg * cx * sy * sz, -cx * sy * cz - sg * sx * cy * sz,
                          -cx * cy * sz - sg * sx * sy * cz);
      break;
    }
    case 2: {
      const double r = 1.0 / std::sqrt(2.0);
      const double cx = std::cos(k[0] * r), cy = std::cos(k[1] * r);
      const double sx = std::sin(k[0] * r), sy = std::sin(k[1] * r);
      h.d = cx * cy;
      h.a = Vec3(sx * cy, cx * sy, -sx * sy);
      h.grad_d = r * Vec3(-sx * cy, -cx * sy, 0.0);
      break;
    }
    default:
      h.d = std::cos(k[0]);
      h.a = Vec3(0.0, 0.0, std::sin(k[0]));
      h.grad_d = Vec3(-std::sin(k[0]), 0.0, 0.0);
      break;
  }
  return h;
}

Mat2 helicity_matrix(const Helicity& al, double d, const Vec3& a) {
  return d * Mat2::Identity() - kI * (a[0] * al[0] + a[1] * al[1] + a[2] * al[2]);
}

Mat4 permute(const Mat4& m, const std::array<int, 4>& order) {
  Mat4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = m(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  return out;
}

Mat4 blocks(const Mat2& tl, const Mat2& tr, const Mat2& bl, const Mat2& br) {
  Mat4 m;
  m << tl, tr, bl, br;
  return m;
}

// sin(w) from helicity data; Dirac a is already scaled by n.
double sine_of(const AutomatonModel& model, const Vec3& a) {
  if (model.family() == Family::Weyl) return a.norm();
  return std::sqrt(model.mass() * model.mass() + a.squaredNorm());
}

double omega_at(const AutomatonModel& model, const WaveVector& k) {
  const WeylHelicity h = weyl_helicity(model, k);
  const double n = model.family() == Family::Dirac ? model.n() : 1.0;
  return std::atan2(sine_of(model, n * h.a), n * h.d);
}

Mat2 exp_pauli(double theta, const Mat2& sigma) {
  return std::cos(theta) * Mat2::Identity() - (kI * std::sin(theta)) * sigma;
}

void require(bool ok, const AutomatonModel& model, const SymmetryTransform& t) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, to_string(t) + " does not apply to " + model.name());
}

Vec3 half_diagonal(int direction) {
  static const std::array<Vec3, 4> dirs{Vec3(1, 1, 1), Vec3(1, -1, -1), Vec3(-1, 1, -1), Vec3(-1, -1, 1)};
  if (direction < 0 || direction > 3) throw Error(ErrorCode::InvalidArgument, "half-diagonal direction must be 0..3");
  return dirs[static_cast<std::size_t>(direction)];
}

}  // namespace

Helicity alpha(const AutomatonModel& model) {
  const double ysign = static_cast<double>(model.chirality()) * (model.transposed() ? -1.0 : 1.0);
  return {pauli::x(), ysign * pauli::y(), pauli::z()};
}

std::array<int, 4> dirac_basis_order(int dimension) {
  if (dimension == 1) return {0, 2, 1, 3};
  return {0, 1, 2, 3};
}

std::array<Mat4, 4> gamma_matrices(const AutomatonModel& model) {
  const Helicity al = alpha(model);
  const Mat2 id = Mat2::Identity();
  const Mat2 zero = Mat2::Zero();
  const auto order = dirac_basis_order(model.dimension());
  std::array<Mat4, 4> g;
  g[0] = permute(blocks(zero, id, id, zero), order);
  for (std::size_t j = 0; j < 3; ++j) g[j + 1] = permute(blocks(zero, -al[j], al[j], zero), order);
  return g;
}

BlochMatrix bloch(const AutomatonModel& model, const WaveVector& k) {
  const WeylHelicity h = weyl_helicity(model, k);
  const Helicity al = alpha(model);
  const Mat2 w = helicity_matrix(al, h.d, h.a);
  if (model.family() == Family::Weyl) return {k, w, h.d, h.a};

  const double n = model.n();
  const Mat2 im = (kI * model.mass()) * Mat2::Identity();
  const Mat4 e = permute(blocks(n * w, im, im, n * w.adjoint()), dirac_basis_order(model.dimension()));
  return {k, e, n * h.d, n * h.a};
}

Mat2 dirac_line_block(const BlochMatrix& e, int block) {
  if (e.matrix.rows() != 4 || e.k.dimension() != 1 || block < 0 || block > 1) {
    throw Error(ErrorCode::InvalidArgument, "line block requires a 1D Dirac Bloch matrix and block 0 or 1");
  }
  return e.matrix.block<2, 2>(2 * block, 2 * block);
}

BlochMatrix bloch_product_form(const AutomatonModel& model, const WaveVector& k) {
  if (model.dimension() != 3 || model.family() != Family::Weyl) {
    throw Error(ErrorCode::InvalidArgument, "product form exists for the 3D Weyl automata only");
  }
  const double r = 1.0 / std::sqrt(3.0);
  const double sg = model.chirality();
  Mat2 m = exp_pauli(k[0] * r, pauli::x()) * exp_pauli(sg * k[1] * r, pauli::y()) * exp_pauli(k[2] * r, pauli::z());
  if (model.transposed()) m.transposeInPlace();
  const Helicity al = alpha(model);
  BlochMatrix out{k, m, 0.5 * m.trace().real(), Vec3::Zero()};
  for (int j = 0; j < 3; ++j) out.a[j] = (0.5 * kI * (al[static_cast<std::size_t>(j)] * m).trace()).real();
  return out;
}

Mat4 gamma_form(const AutomatonModel& model, const BlochMatrix& e) {
  if (model.family() != Family::Dirac) throw Error(ErrorCode::InvalidArgument, "gamma form needs a Dirac model");
  const auto g = gamma_matrices(model);
  Mat4 sum = Mat4::Zero();
  for (std::size_t j = 0; j < 3; ++j) sum += e.a[static_cast<Eigen::Index>(j)] * (g[0] * g[j + 1]);
  return e.d * Mat4::Identity() - kI * sum + (kI * model.mass()) * g[0];
}

SpectralForm spectral_form(const AutomatonModel& model, const WaveVector& k) {
  const BlochMatrix b = bloch(model, k);
  SpectralForm f = spectral_form(b.matrix);
  f.cos_omega = b.d;
  f.sin_omega = sine_of(model, b.a);
  f.omega = std::atan2(f.sin_omega, f.cos_omega);
  return f;
}

DispersionSample dispersion(const AutomatonModel& model, const WaveVector& k) {
  return {k, omega_at(model, k), Vec3::Zero(), 0.0};
}

DispersionSample group_velocity(const AutomatonModel& model, const WaveVector& k, VelocityMode mode, double step) {
  const WeylHelicity h = weyl_helicity(model, k);
  const double n = model.family() == Family::Dirac ? model.n() : 1.0;
  const double sine = sine_of(model, n * h.a);
  if (sine < kDegenerate) {
    throw Error(ErrorCode::VelocityUndefined, "dispersion is degenerate at this wave-vector");
  }
  DispersionSample out{k, std::atan2(sine, n * h.d), Vec3::Zero(), 0.0};
  if (mode == VelocityMode::Analytic) {
    out.v = -n * h.grad_d / sine;
  } else {
    for (int j = 0; j < k.dimension(); ++j) {
      Vec3 e = Vec3::Zero();
      e[j] = step;
      const WaveVector dk(k.dimension(), e);
      out.v[j] = (omega_at(model, k + dk) - omega_at(model, k - dk)) / (2.0 * step);
    }
  }
  out.speed = out.v.norm();
  return out;
}

ProjectorPair projectors(const AutomatonModel& model, const WaveVector& k) {
  if (model.family() != Family::Dirac) throw Error(ErrorCode::InvalidArgument, "projectors need a Dirac model");
  const BlochMatrix e = bloch(model, k);
  const double r = sine_of(model, e.a);
  if (r < kDegenerate) throw Error(ErrorCode::ProjectorUndefined, "massless Dirac bands touch at this wave-vector");
  const auto g = gamma_matrices(model);
  Mat4 kgen = model.mass() * g[0];
  for (std::size_t j = 0; j < 3; ++j) kgen -= e.a[static_cast<Eigen::Index>(j)] * (g[0] * g[j + 1]);
  const Mat4 id = Mat4::Identity();
  return {k, 0.5 * (id - kgen / r), 0.5 * (id + kgen / r)};
}

std::string to_string(const SymmetryTransform& t) {
  using K = SymmetryTransform::Kind;
  switch (t.kind) {
    case K::Parity: return "P";
    case K::TimeReversal: return "T";
    case K::ParityTime: return "PT";
    case K::AxisTranslation: return "axis-translation-" + std::to_string(t.axis);
    case K::HalfDiagonalTranslation:
      return std::string("half-diagonal-") + (t.sign > 0 ? "+" : "-") + std::to_string(t.axis);
    case K::HalfDiagonalMirror:
      return std::string("half-diagonal-mirror-") + (t.sign > 0 ? "+" : "-") + std::to_string(t.axis);
    case K::L2Rotation: return "L2-" + std::string(1, "xyz"[t.axis]);
    case K::CPT: return "CPT";
  }
  return "unknown";
}

double symmetry_deviation(const AutomatonModel& model, const SymmetryTransform& t, const WaveVector& k) {
  using K = SymmetryTransform::Kind;
  const bool weyl3 = model.dimension() == 3 && model.family() == Family::Weyl;
  const double sqrt3pi = std::sqrt(3.0) * std::numbers::pi;
  auto b = [&](const AutomatonModel& m, const WaveVector& q) { return bloch(m, q).matrix; };

  switch (t.kind) {
    case K::Parity:
      require(weyl3, model, t);
      return max_abs_diff(b(model, k), b(model.partner(), -k).conjugate());
    case K::TimeReversal:
      require(weyl3, model, t);
      return max_abs_diff(b(model, k).adjoint(), b(model.transpose_partner(), k).conjugate());
    case K::ParityTime:
      require(weyl3, model, t);
      return max_abs_diff(b(model, -k).adjoint(), b(model.partner().transpose_partner(), k));
    case K::AxisTranslation: {
      require(weyl3 && t.axis >= 0 && t.axis < 3, model, t);
      Vec3 shift = Vec3::Zero();
      shift[t.axis] = sqrt3pi;
      return max_abs_diff(b(model, k + WaveVector(3, shift)), -b(model, k));
    }
    case K::HalfDiagonalTranslation:
    case K::HalfDiagonalMirror: {
      require(weyl3 && (t.sign == 1 || t.sign == -1), model, t);
      const WaveVector kp = k + WaveVector(3, (t.sign * sqrt3pi / 2.0) * half_diagonal(t.axis));
      const AutomatonModel target =
          t.kind == K::HalfDiagonalTranslation ? model.partner().transpose_partner() : model.partner();
      const double factor = -static_cast<double>(t.sign * model.chirality());
      return max_abs_diff(b(model, kp), factor * b(target, k));
    }
    case K::L2Rotation: {
      require(weyl3 && t.axis >= 0 && t.axis < 3, model, t);
      const std::array<Mat2, 3> sig{pauli::x(), pauli::y(), pauli::z()};
      const Mat2 u = kI * sig[static_cast<std::size_t>(t.axis)];
      Vec3 rk = -k.components();
      rk[t.axis] = k[t.axis];
      const SpinMatrix lhs = u * b(model, k) * u.adjoint();
      return max_abs_diff(lhs, b(model, WaveVector(3, rk)));
    }
    case K::CPT: {
      require(model.dimension() == 3 && model.family() == Family::Dirac, model, t);
      const auto g = gamma_matrices(model);
      const Mat4 v = g[0] * g[2];
      const Mat4 e = b(model, -k);
      const Mat4 c = -g[2] * e.conjugate() * g[2];
      const Mat4 rhs = v * c.adjoint() * v.inverse();
      return max_abs_diff(b(model.partner(), k), rhs);
    }
  }
  return 0.0;
}

double symmetry_probe(const AutomatonModel& model, const SymmetryTransform& transform, int samples,
                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const LatticePresentation& p = model.lattice();
  double worst = symmetry_deviation(model, transform, WaveVector(p.dimension(), Vec3::Zero()));
  for (int i = 0; i < samples; ++i) {
    worst = std::max(worst, symmetry_deviation(model, transform, random_in_zone(p, rng)));
  }
  return worst;
}

}  // namespace qca
