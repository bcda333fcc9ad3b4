#include "qca/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace qca {

namespace {

constexpr double kDedupTolerance = 1e-9;

bool same_vector(const Vec3& a, const Vec3& b) { return (a - b).cwiseAbs().maxCoeff() < kDedupTolerance; }

void push_unique(std::vector<Vec3>& out, const Vec3& v) {
  if (std::none_of(out.begin(), out.end(), [&](const Vec3& w) { return same_vector(v, w); })) {
    out.push_back(v);
  }
}

// Calls f on every strictly increasing index tuple of length r drawn from [0, n).
template <typename F>
void for_each_combination(int n, int r, F&& f) {
  std::vector<int> idx(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i;
  if (r > n) return;
  while (true) {
    f(std::span<const int>(idx));
    int i = r - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - r + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

Generator gen(double x, double y, double z, IntShift s) { return {Vec3(x, y, z), s}; }

}  // namespace

std::string to_string(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::Line: return "line";
    case LatticeKind::Square: return "square";
    case LatticeKind::Hexagonal: return "hexagonal";
    case LatticeKind::PrimitiveCubic: return "primitive-cubic";
    case LatticeKind::BodyCenteredCubic: return "bcc";
    case LatticeKind::Rhombohedral: return "rhombohedral";
  }
  return "unknown";
}

WaveVector::WaveVector(int dimension, const Vec3& components) : dim_(dimension), c_(components) {
  if (dimension < 1 || dimension > 3) throw Error(ErrorCode::InvalidArgument, "wave-vector dimension must be 1, 2 or 3");
  for (int i = dimension; i < 3; ++i) c_[i] = 0.0;
}

WaveVector WaveVector::operator+(const WaveVector& o) const {
  if (o.dim_ != dim_) throw Error(ErrorCode::InvalidArgument, "wave-vector dimension mismatch");
  return {dim_, c_ + o.c_};
}

WaveVector WaveVector::operator-(const WaveVector& o) const {
  if (o.dim_ != dim_) throw Error(ErrorCode::InvalidArgument, "wave-vector dimension mismatch");
  return {dim_, c_ - o.c_};
}

LatticePresentation::LatticePresentation(LatticeKind kind, int dimension, std::vector<Generator> generators,
                                         std::vector<Relator> relators)
    : kind_(kind), dim_(dimension), generators_(std::move(generators)), relators_(std::move(relators)) {
  if (dim_ < 1 || dim_ > 3 || static_cast<int>(generators_.size()) < dim_) {
    throw Error(ErrorCode::InvalidArgument, "malformed lattice presentation");
  }
  basis_ = Mat3::Identity();
  for (int i = 0; i < dim_; ++i) {
    basis_.row(i).head(dim_) = generators_[static_cast<std::size_t>(i)].cartesian.head(dim_).transpose();
  }
  basis_inverse_ = Mat3::Identity();
  basis_inverse_.topLeftCorner(dim_, dim_) = basis_.topLeftCorner(dim_, dim_).inverse();

  // Duals of every independent d-subset of S+, closed under negation.
  const int n = static_cast<int>(generators_.size());
  for_each_combination(n, dim_, [&](std::span<const int> subset) {
    Eigen::MatrixXd g(dim_, dim_);
    for (int r = 0; r < dim_; ++r) {
      g.row(r) = generators_[static_cast<std::size_t>(subset[static_cast<std::size_t>(r)])].cartesian.head(dim_).transpose();
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
    if (!lu.isInvertible()) return;
    const Eigen::MatrixXd dual = lu.inverse();  // columns are duals: g * dual = I
    for (int c = 0; c < dim_; ++c) {
      Vec3 v = Vec3::Zero();
      v.head(dim_) = dual.col(c);
      push_unique(duals_, v);
      push_unique(duals_, -v);
    }
  });
  for (const Vec3& v : zone_vertices()) extent_ = std::max(extent_, v.cwiseAbs().maxCoeff());
}

Vec3 LatticePresentation::embed(const IntShift& shift) const {
  Vec3 x = Vec3::Zero();
  for (int i = 0; i < dim_; ++i) x += shift[static_cast<std::size_t>(i)] * generators_[static_cast<std::size_t>(i)].cartesian;
  return x;
}

WaveVector LatticePresentation::wave_vector_from_coords(std::span<const double> coords) const {
  if (static_cast<int>(coords.size()) != dim_) throw Error(ErrorCode::InvalidArgument, "generator coordinate count mismatch");
  Vec3 q = Vec3::Zero();
  for (int i = 0; i < dim_; ++i) q[i] = coords[static_cast<std::size_t>(i)];
  return {dim_, basis_inverse_ * q};
}

std::vector<Vec3> LatticePresentation::zone_vertices() const {
  std::vector<Vec3> vertices;
  const int n = static_cast<int>(duals_.size());
  for_each_combination(n, dim_, [&](std::span<const int> planes) {
    Eigen::MatrixXd a(dim_, dim_);
    Eigen::VectorXd b(dim_);
    for (int r = 0; r < dim_; ++r) {
      const Vec3& nrm = duals_[static_cast<std::size_t>(planes[static_cast<std::size_t>(r)])];
      a.row(r) = nrm.head(dim_).transpose();
      b[r] = std::numbers::pi * nrm.squaredNorm();
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible()) return;
    Vec3 v = Vec3::Zero();
    v.head(dim_) = lu.solve(b);
    if (in_brillouin(*this, WaveVector(dim_, v), 1e-9)) push_unique(vertices, v);
  });
  return vertices;
}

LatticePresentation presentation(int dimension, LatticeKind kind) {
  const double r2 = 1.0 / std::sqrt(2.0);
  const double r3 = 1.0 / std::sqrt(3.0);
  switch (dimension) {
    case 1:
      if (kind == LatticeKind::Line) return {kind, 1, {gen(1, 0, 0, {1, 0, 0})}, {}};
      break;
    case 2:
      if (kind == LatticeKind::Square) {
        return {kind, 2, {gen(r2, r2, 0, {1, 0, 0}), gen(r2, -r2, 0, {0, 1, 0})}, {}};
      }
      if (kind == LatticeKind::Hexagonal) {
        const double h = std::sqrt(3.0) / 2.0;
        return {kind,
                2,
                {gen(1, 0, 0, {1, 0, 0}), gen(-0.5, h, 0, {0, 1, 0}), gen(-0.5, -h, 0, {-1, -1, 0})},
                {Relator{{1, 1, 1}}}};
      }
      break;
    case 3:
      if (kind == LatticeKind::PrimitiveCubic) {
        return {kind, 3, {gen(1, 0, 0, {1, 0, 0}), gen(0, 1, 0, {0, 1, 0}), gen(0, 0, 1, {0, 0, 1})}, {}};
      }
      if (kind == LatticeKind::BodyCenteredCubic) {
        return {kind,
                3,
                {gen(r3, r3, r3, {1, 0, 0}), gen(r3, -r3, -r3, {0, 1, 0}), gen(-r3, r3, -r3, {0, 0, 1}),
                 gen(-r3, -r3, r3, {-1, -1, -1})},
                {Relator{{1, 1, 1, 1}}}};
      }
      if (kind == LatticeKind::Rhombohedral) {
        return {kind,
                3,
                {gen(0, r2, r2, {1, 0, 0}), gen(r2, 0, r2, {0, 1, 0}), gen(r2, r2, 0, {0, 0, 1}),
                 gen(-r2, r2, 0, {1, -1, 0}), gen(0, -r2, r2, {0, 1, -1}), gen(r2, 0, -r2, {-1, 0, 1})},
                {Relator{{1, -1, 0, -1, 0, 0}}, Relator{{0, 1, -1, 0, -1, 0}}, Relator{{-1, 0, 1, 0, 0, -1}}}};
      }
      break;
    default:
      break;
  }
  throw Error(ErrorCode::InvalidArgument,
              "no presentation of kind '" + to_string(kind) + "' in dimension " + std::to_string(dimension));
}

const LatticePresentation& cached_presentation(int dimension, LatticeKind kind) {
  static std::mutex mutex;
  static std::map<std::pair<int, LatticeKind>, LatticePresentation> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(dimension, kind);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, presentation(dimension, kind)).first;
  return it->second;
}

bool in_brillouin(const LatticePresentation& p, const WaveVector& k, double slack) {
  if (k.dimension() != p.dimension()) throw Error(ErrorCode::InvalidArgument, "wave-vector dimension mismatch");
  for (const Vec3& dual : p.duals()) {
    const double bound = std::numbers::pi * dual.squaredNorm();
    if (std::abs(k.components().dot(dual)) > bound * (1.0 + slack)) return false;
  }
  return true;
}

std::vector<double> gen_coords(const LatticePresentation& p, const WaveVector& k) {
  if (k.dimension() != p.dimension()) throw Error(ErrorCode::InvalidArgument, "wave-vector dimension mismatch");
  std::vector<double> out;
  out.reserve(p.generators().size());
  for (const Generator& g : p.generators()) out.push_back(k.components().dot(g.cartesian));
  return out;
}

}  // namespace qca
