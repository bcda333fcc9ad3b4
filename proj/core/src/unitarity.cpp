#include "qca/unitarity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "qca/bloch.hpp"

namespace qca {

namespace {

IntShift negate(const IntShift& s) { return {-s[0], -s[1], -s[2]}; }

IntShift difference(const IntShift& a, const IntShift& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

bool is_zero(const IntShift& s) { return s[0] == 0 && s[1] == 0 && s[2] == 0; }

std::string shift_label(const IntShift& s, int dim) {
  std::string out = "(";
  for (int i = 0; i < dim; ++i) {
    if (i) out += ",";
    out += std::to_string(s[static_cast<std::size_t>(i)]);
  }
  return out + ")";
}

// Entries h1, -h1, h2, -h2, ... in generator order.
std::vector<TransitionEntry> signed_entries(const LatticePresentation& p, std::span<const SpinMatrix> plus,
                                            std::span<const SpinMatrix> minus) {
  std::vector<TransitionEntry> out;
  const auto gens = p.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string idx = std::to_string(i + 1);
    out.push_back({"h" + idx, gens[i].shift, plus[i]});
    out.push_back({"-h" + idx, negate(gens[i].shift), minus[i]});
  }
  return out;
}

Condition make_condition(std::string id, double residual, double tolerance) {
  return {std::move(id), residual, residual < tolerance};
}

Mat4 permute4(const Mat4& m, const std::array<int, 4>& order) {
  Mat4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = m(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  return out;
}

std::vector<int> geometric_permutation(const TransitionSet& ts, const Mat3& rotation) {
  const auto entries = ts.entries();
  std::vector<int> perm(entries.size(), -1);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Vec3 target = rotation * ts.lattice().embed(entries[i].shift);
    for (std::size_t j = 0; j < entries.size(); ++j) {
      const bool same_kind = (entries[i].label == "e") == (entries[j].label == "e");
      if (same_kind && (ts.lattice().embed(entries[j].shift) - target).norm() < 1e-9) {
        perm[i] = static_cast<int>(j);
        break;
      }
    }
    if (perm[i] < 0) throw Error(ErrorCode::InvalidArgument, "generator set is not invariant under the rotation");
  }
  return perm;
}

SpinMatrix spin_rotation(double angle, const Vec3& axis) {
  const Vec3 n = axis.normalized();
  const Mat2 sn = n[0] * pauli::x() + n[1] * pauli::y() + n[2] * pauli::z();
  return std::cos(angle / 2.0) * Mat2::Identity() - (kI * std::sin(angle / 2.0)) * sn;
}

}  // namespace

TransitionSet::TransitionSet(const LatticePresentation& lattice, int spin, std::vector<TransitionEntry> entries)
    : lattice_(&lattice), spin_(spin), entries_(std::move(entries)) {
  for (const TransitionEntry& e : entries_) {
    if (e.matrix.rows() != spin_ || e.matrix.cols() != spin_) {
      throw Error(ErrorCode::InvalidArgument, "transition matrix " + e.label + " has the wrong size");
    }
  }
}

const TransitionEntry& TransitionSet::at(std::string_view label) const {
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const TransitionEntry& e) { return e.label == label; });
  if (it == entries_.end()) throw Error(ErrorCode::InvalidArgument, "no transition entry " + std::string(label));
  return *it;
}

TransitionEntry& TransitionSet::at(std::string_view label) {
  return const_cast<TransitionEntry&>(std::as_const(*this).at(label));
}

SpinMatrix TransitionSet::fourier(const WaveVector& k) const {
  SpinMatrix sum = SpinMatrix::Zero(spin_, spin_);
  for (const TransitionEntry& e : entries_) {
    const double phase = k.components().dot(lattice_->embed(e.shift));
    sum += std::polar(1.0, phase) * e.matrix;
  }
  return sum;
}

TransitionSet TransitionSet::conjugated() const {
  TransitionSet out = *this;
  for (TransitionEntry& e : out.entries_) e.matrix = e.matrix.conjugate().eval();
  return out;
}

TransitionSet TransitionSet::reflected() const {
  TransitionSet out = *this;
  for (TransitionEntry& e : out.entries_) e.shift = negate(e.shift);
  return out;
}

TransitionSet TransitionSet::transposed_reflected() const {
  TransitionSet out = reflected();
  for (TransitionEntry& e : out.entries_) e.matrix = e.matrix.transpose().eval();
  return out;
}

TransitionSet TransitionSet::adjoint_reflected() const {
  TransitionSet out = reflected();
  for (TransitionEntry& e : out.entries_) e.matrix = e.matrix.adjoint().eval();
  return out;
}

bool CheckReport::pass() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const Condition& c) { return c.pass; });
}

double CheckReport::max_residual() const {
  double worst = 0.0;
  for (const Condition& c : conditions) worst = std::max(worst, c.residual);
  return worst;
}

TransitionSet weyl_fixture(Variant variant, int dimension) {
  const AutomatonModel model = AutomatonModel::weyl(dimension, variant);
  const LatticePresentation& p = model.lattice();
  std::vector<SpinMatrix> plus, minus;
  auto mat = [](Complex a, Complex b, Complex c, Complex d) {
    Mat2 m;
    m << a, b, c, d;
    return SpinMatrix(m);
  };

  switch (dimension) {
    case 3: {
      const Complex z = Complex(1.0, -static_cast<double>(model.chirality())) / 4.0;
      const Complex zc = std::conj(z);
      const Complex o = 0.0;
      // Table indexed by h; the automaton uses A_h = table(-h).
      const std::array<SpinMatrix, 4> tp{mat(zc, o, zc, o), mat(o, zc, o, zc), mat(o, -zc, o, zc), mat(zc, o, -zc, o)};
      const std::array<SpinMatrix, 4> tm{mat(o, -z, o, z), mat(z, o, -z, o), mat(z, o, z, o), mat(o, z, o, z)};
      plus.assign(tm.begin(), tm.end());
      minus.assign(tp.begin(), tp.end());
      break;
    }
    case 2: {
      const Mat2 id = Mat2::Identity(), sx = pauli::x(), sy = pauli::y(), sz = pauli::z();
      plus = {SpinMatrix(0.25 * (id - sx - sy - kI * sz)), SpinMatrix(0.25 * (id - sx + sy + kI * sz))};
      minus = {SpinMatrix(0.25 * (id + sx + sy - kI * sz)), SpinMatrix(0.25 * (id + sx - sy + kI * sz))};
      break;
    }
    default:
      plus = {mat(0.0, 0.0, 0.0, 1.0)};
      minus = {mat(1.0, 0.0, 0.0, 0.0)};
      break;
  }
  if (model.transposed()) {
    for (auto& m : plus) m.transposeInPlace();
    for (auto& m : minus) m.transposeInPlace();
  }
  return {p, 2, signed_entries(p, plus, minus)};
}

TransitionSet transition_set(const AutomatonModel& model) {
  TransitionSet weyl = weyl_fixture(model.variant(), model.dimension());
  if (model.family() == Family::Weyl) return weyl;

  const double n = model.n();
  const auto order = dirac_basis_order(model.dimension());
  const Mat2 zero = Mat2::Zero();
  std::vector<TransitionEntry> entries;
  const auto gens = model.lattice().generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string idx = std::to_string(i + 1);
    const Mat2 ap = weyl.at("h" + idx).matrix;
    const Mat2 am = weyl.at("-h" + idx).matrix;
    Mat4 ep, em;
    ep << n * ap, zero, zero, n * am.adjoint();
    em << n * am, zero, zero, n * ap.adjoint();
    entries.push_back({"h" + idx, gens[i].shift, SpinMatrix(permute4(ep, order))});
    entries.push_back({"-h" + idx, negate(gens[i].shift), SpinMatrix(permute4(em, order))});
  }
  const Mat2 im = (kI * model.mass()) * Mat2::Identity();
  Mat4 e;
  e << zero, im, im, zero;
  entries.push_back({"e", IntShift{0, 0, 0}, SpinMatrix(permute4(e, order))});
  return {model.lattice(), 4, std::move(entries)};
}

CheckReport check_unitarity(const TransitionSet& ts, double tolerance) {
  const int s = ts.spin();
  const int dim = ts.lattice().dimension();
  std::map<IntShift, std::pair<SpinMatrix, SpinMatrix>> groups;
  const auto entries = ts.entries();
  for (const TransitionEntry& a : entries) {
    for (const TransitionEntry& b : entries) {
      auto [it, fresh] = groups.try_emplace(difference(a.shift, b.shift), SpinMatrix::Zero(s, s), SpinMatrix::Zero(s, s));
      it->second.first += a.matrix * b.matrix.adjoint();
      it->second.second += b.matrix.adjoint() * a.matrix;
    }
  }
  CheckReport report{"unitarity", {}};
  const SpinMatrix id = SpinMatrix::Identity(s, s);
  if (groups.find(IntShift{0, 0, 0}) == groups.end()) {
    report.conditions.push_back(make_condition("sum A A^+ = I", 1.0, tolerance));
    report.conditions.push_back(make_condition("sum A^+ A = I", 1.0, tolerance));
  }
  for (const auto& [shift, sums] : groups) {
    if (is_zero(shift)) {
      report.conditions.push_back(make_condition("sum A A^+ = I", max_abs_diff(sums.first, id), tolerance));
      report.conditions.push_back(make_condition("sum A^+ A = I", max_abs_diff(sums.second, id), tolerance));
    } else {
      const std::string tag = shift_label(shift, dim);
      report.conditions.push_back(make_condition("A A^+ " + tag, sums.first.cwiseAbs().maxCoeff(), tolerance));
      report.conditions.push_back(make_condition("A^+ A " + tag, sums.second.cwiseAbs().maxCoeff(), tolerance));
    }
  }
  return report;
}

CheckReport check_structure(const TransitionSet& ts, double tolerance) {
  if (ts.spin() != 2) throw Error(ErrorCode::InvalidArgument, "structure check needs s = 2");
  CheckReport report{"structure", {}};
  for (const TransitionEntry& e : ts.entries()) {
    if (e.label == "e") continue;
    Eigen::JacobiSVD<SpinMatrix> svd(e.matrix);
    report.conditions.push_back(make_condition("rank " + e.label + " <= 1", svd.singularValues()[1], tolerance));
  }
  const int g = static_cast<int>(ts.lattice().generators().size());
  for (int i = 1; i <= g; ++i) {
    const std::string idx = std::to_string(i);
    const SpinMatrix& ap = ts.at("h" + idx).matrix;
    const SpinMatrix& am = ts.at("-h" + idx).matrix;
    report.conditions.push_back(
        make_condition("A_h A_-h^+ h" + idx, (ap * am.adjoint()).cwiseAbs().maxCoeff(), tolerance));
    report.conditions.push_back(
        make_condition("A_h^+ A_-h h" + idx, (ap.adjoint() * am).cwiseAbs().maxCoeff(), tolerance));
  }
  return report;
}

CheckReport check_isotropy(const TransitionSet& ts, std::span<const GroupElement> group, double tolerance) {
  CheckReport report{"isotropy", {}};
  const auto entries = ts.entries();
  for (const GroupElement& g : group) {
    if (g.permutation.size() != entries.size()) {
      throw Error(ErrorCode::InvalidArgument, "permutation of " + g.name + " does not match the generator set");
    }
    if (g.unitary.rows() != ts.spin() || g.unitary.cols() != ts.spin()) {
      throw Error(ErrorCode::InvalidArgument, "unitary of " + g.name + " has the wrong size");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const int j = g.permutation[i];
      if (j < 0 || j >= static_cast<int>(entries.size())) {
        throw Error(ErrorCode::InvalidArgument, "permutation of " + g.name + " is out of range");
      }
      const SpinMatrix image = g.unitary * entries[i].matrix * g.unitary.adjoint();
      worst = std::max(worst, max_abs_diff(entries[static_cast<std::size_t>(j)].matrix, image));
    }
    report.conditions.push_back(make_condition(g.name, worst, tolerance));
  }
  return report;
}

std::vector<GroupElement> trivial_group(const TransitionSet& ts) {
  std::vector<int> id(ts.entries().size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
  return {{"identity", id, SpinMatrix::Identity(ts.spin(), ts.spin())}};
}

std::vector<GroupElement> binary_rotation_group(const TransitionSet& ts) {
  if (ts.spin() != 2) throw Error(ErrorCode::InvalidArgument, "binary rotation group is represented on C^2");
  std::vector<GroupElement> group = trivial_group(ts);
  const std::array<Mat2, 3> sig{pauli::x(), pauli::y(), pauli::z()};
  for (int axis = 0; axis < 3; ++axis) {
    Mat3 r = -Mat3::Identity();
    r(axis, axis) = 1.0;
    group.push_back({std::string("C2") + "xyz"[axis], geometric_permutation(ts, r),
                     SpinMatrix(kI * sig[static_cast<std::size_t>(axis)])});
  }
  return group;
}

std::vector<GroupElement> ternary_rotation_group(const TransitionSet& ts) {
  if (ts.spin() != 2) throw Error(ErrorCode::InvalidArgument, "ternary rotation group is represented on C^2");
  std::vector<GroupElement> group = trivial_group(ts);
  Mat3 c;
  c << 0, 0, 1, 1, 0, 0, 0, 1, 0;  // x -> y -> z -> x
  const Vec3 axis(1.0, 1.0, 1.0);
  group.push_back({"C3", geometric_permutation(ts, c), spin_rotation(2.0 * std::numbers::pi / 3.0, axis)});
  group.push_back({"C3^2", geometric_permutation(ts, c * c), spin_rotation(4.0 * std::numbers::pi / 3.0, axis)});
  return group;
}

std::vector<WaveVector> obstruction_probes_minimal() {
  const double h = std::numbers::pi / 2.0;
  return {WaveVector(0.0, 0.0, 0.0), WaveVector(h, h, -h)};
}

std::vector<WaveVector> obstruction_probes_default() {
  std::vector<WaveVector> probes = obstruction_probes_minimal();
  probes.emplace_back(0.37, -1.21, 0.83);
  probes.emplace_back(-0.91, 0.44, 1.57);
  return probes;
}

ObstructionReport self_interaction_obstruction(const AutomatonModel& model, std::span<const WaveVector> probes) {
  if (model.family() != Family::Weyl || model.dimension() != 3) {
    throw Error(ErrorCode::InvalidArgument, "obstruction test applies to the 3D Weyl automata");
  }
  ObstructionReport report;
  report.probes.assign(probes.begin(), probes.end());
  Eigen::MatrixXd system(8 * static_cast<Eigen::Index>(probes.size()), 8);
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const SpinMatrix w = bloch(model, probes[p]).matrix;
    for (int col = 0; col < 8; ++col) {
      Mat2 basis = Mat2::Zero();
      basis(col / 4, (col / 2) % 2) = (col % 2 == 0) ? Complex(1.0) : kI;
      const Mat2 lhs = basis * w + (basis * w).adjoint();
      for (int r = 0; r < 4; ++r) {
        const auto row = static_cast<Eigen::Index>(8 * p) + 2 * r;
        system(row, col) = lhs(r / 2, r % 2).real();
        system(row + 1, col) = lhs(r / 2, r % 2).imag();
      }
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(system);
  const auto& sv = svd.singularValues();
  report.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double cutoff = 1e-10 * std::max(1.0, sv.size() > 0 ? sv[0] : 0.0);
  report.rank = static_cast<int>((sv.array() > cutoff).count());
  report.nullity = report.unknowns - report.rank;
  return report;
}

ObstructionReport self_interaction_obstruction(const AutomatonModel& model) {
  const auto probes = obstruction_probes_default();
  return self_interaction_obstruction(model, probes);
}

int fuzz_candidates(const LatticePresentation& lattice, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const std::size_t count = 2 * lattice.generators().size();
  int passing = 0;
  for (int t = 0; t < trials; ++t) {
    std::vector<SpinMatrix> plus, minus;
    Mat2 norm = Mat2::Zero();
    std::vector<Mat2> raw(count);
    for (Mat2& m : raw) {
      for (int i = 0; i < 4; ++i) m(i / 2, i % 2) = Complex(gauss(rng), gauss(rng));
      norm += m.adjoint() * m;
    }
    // Rescale so that sum A^+ A = I holds exactly; the cross conditions decide.
    Eigen::SelfAdjointEigenSolver<Mat2> es(norm);
    const Mat2 inv_sqrt = es.operatorInverseSqrt();
    for (std::size_t i = 0; i < count; ++i) (i % 2 == 0 ? plus : minus).push_back(raw[i] * inv_sqrt);
    const TransitionSet ts(lattice, 2, signed_entries(lattice, plus, minus));
    if (check_unitarity(ts).pass()) ++passing;
  }
  return passing;
}

}  // namespace qca
