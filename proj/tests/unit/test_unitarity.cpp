#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"

using namespace qca;

namespace {

std::vector<AutomatonModel> all_models() {
  std::vector<AutomatonModel> models = weyl_models();
  const double masses[] = {0.0, 0.1, 0.6};
  for (const AutomatonModel& m : dirac_models(masses)) models.push_back(m);
  return models;
}

TransitionSet scalar_set(const LatticePresentation& p, const std::vector<Complex>& z) {
  std::vector<TransitionEntry> entries;
  for (std::size_t i = 0; i < p.generators().size(); ++i) {
    const IntShift s = p.generators()[i].shift;
    const std::string name = "h" + std::to_string(i + 1);
    entries.push_back({name, s, SpinMatrix::Constant(1, 1, z[2 * i])});
    entries.push_back({"-" + name, IntShift{-s[0], -s[1], -s[2]}, SpinMatrix::Constant(1, 1, z[2 * i + 1])});
  }
  return {p, 1, entries};
}

}  // namespace

TEST_CASE("weyl fixture entries") {
  const TransitionSet a = weyl_fixture(Variant::APlus, 3);
  CHECK(a.entries().size() == 8);
  CHECK(std::abs(a.at("-h1").matrix(0, 0) - Complex(0.25, 0.25)) < 1e-15);
  SpinMatrix sum = SpinMatrix::Zero(2, 2);
  for (const TransitionEntry& e : a.entries()) sum += e.matrix;
  CHECK(max_abs_diff(sum, Mat2::Identity()) < 1e-15);

  const TransitionSet line = weyl_fixture(Variant::Line, 1);
  CHECK(max_abs_diff(line.at("h1").matrix + line.at("-h1").matrix, Mat2::Identity()) < 1e-15);
  const TransitionSet b = weyl_fixture(Variant::BPlus, 3);
  CHECK(b.at("h2").matrix == SpinMatrix(a.at("h2").matrix.transpose()));
}

TEST_CASE("check_unitarity on the fixtures") {
  const CheckReport a = check_unitarity(weyl_fixture(Variant::APlus, 3));
  CHECK(a.pass());
  CHECK(a.max_residual() < 1e-14);
  for (const AutomatonModel& model : all_models()) {
    CAPTURE(model.name());
    CAPTURE(model.mass());
    CHECK(check_unitarity(transition_set(model)).pass());
  }
  const CheckReport line = check_unitarity(weyl_fixture(Variant::Line, 1));
  CHECK(line.pass());
  bool has_cross = false;
  for (const Condition& c : line.conditions) has_cross = has_cross || c.id == "A^+ A (2)" || c.id == "A^+ A (-2)";
  CHECK(has_cross);
}

TEST_CASE("a perturbed fixture fails") {
  TransitionSet ts = weyl_fixture(Variant::APlus, 3);
  ts.at("h1").matrix(0, 0) += 0.01;
  const CheckReport r = check_unitarity(ts);
  CHECK_FALSE(r.pass());
  CHECK(r.max_residual() > 1e-3);
}

TEST_CASE("check_structure") {
  const CheckReport a = check_structure(weyl_fixture(Variant::APlus, 3));
  CHECK(a.pass());
  CHECK(a.conditions.size() == 16);
  CHECK(check_structure(weyl_fixture(Variant::A, 2)).pass());
  CHECK(check_unitarity(weyl_fixture(Variant::A, 2)).pass());

  TransitionSet zero = weyl_fixture(Variant::APlus, 3);
  for (TransitionEntry& e : zero.entries()) e.matrix.setZero();
  CHECK(check_structure(zero).pass());
  CHECK_FALSE(check_unitarity(zero).pass());
}

TEST_CASE("isotropy") {
  for (const AutomatonModel& model : weyl_models()) {
    if (model.dimension() != 3) continue;
    CAPTURE(model.name());
    const TransitionSet ts = transition_set(model);
    const auto l2 = binary_rotation_group(ts);
    CHECK(check_isotropy(ts, l2).pass());
    const auto id = trivial_group(ts);
    CHECK(check_isotropy(ts, id).pass());
    const auto l3 = ternary_rotation_group(ts);
    CHECK_FALSE(check_isotropy(ts, l3).pass());
  }
}

TEST_CASE("self-interaction obstruction") {
  const AutomatonModel ap = AutomatonModel::weyl(3, Variant::APlus);
  const AutomatonModel am = AutomatonModel::weyl(3, Variant::AMinus);
  CHECK(self_interaction_obstruction(ap).nullity == 0);
  CHECK(self_interaction_obstruction(am).nullity == 0);
  const std::vector<WaveVector> origin{WaveVector(0., 0., 0.)};
  CHECK(self_interaction_obstruction(ap, origin).nullity == 4);
  CHECK(self_interaction_obstruction(ap, obstruction_probes_minimal()).nullity == 2);
  CHECK_THROWS_AS(self_interaction_obstruction(AutomatonModel::weyl(2, Variant::A)), Error);
}

TEST_CASE("fourier transform of the fixture equals the bloch matrix") {
  for (const AutomatonModel& model : all_models()) {
    CAPTURE(model.name());
    CAPTURE(model.mass());
    const TransitionSet ts = transition_set(model);
    std::mt19937_64 rng(43);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const WaveVector k = random_in_zone(model.lattice(), rng);
      worst = std::max(worst, max_abs_diff(ts.fourier(k), bloch(model, k).matrix));
    }
    CHECK(worst < 1e-13);
  }
}

TEST_CASE("dual solutions also pass") {
  for (const AutomatonModel& model : all_models()) {
    CAPTURE(model.name());
    const TransitionSet ts = transition_set(model);
    CHECK(check_unitarity(ts.conjugated()).pass());
    CHECK(check_unitarity(ts.transposed_reflected()).pass());
    CHECK(check_unitarity(ts.adjoint_reflected()).pass());
    CHECK(check_unitarity(ts.reflected()).pass());
  }
}

TEST_CASE("scalar automata are single shifts") {
  const Complex values[] = {0.0, 1.0, kI};
  for (const auto* p : {&cached_presentation(1, LatticeKind::Line), &cached_presentation(2, LatticeKind::Square),
                        &cached_presentation(3, LatticeKind::BodyCenteredCubic)}) {
    const std::size_t slots = 2 * p->generators().size();
    std::size_t patterns = 1;
    for (std::size_t i = 0; i < slots; ++i) patterns *= 3;
    for (std::size_t code = 0; code < patterns; ++code) {
      std::vector<Complex> z(slots);
      int nonzero = 0;
      std::size_t rest = code;
      for (std::size_t i = 0; i < slots; ++i) {
        z[i] = values[rest % 3];
        nonzero += rest % 3 != 0;
        rest /= 3;
      }
      CHECK(check_unitarity(scalar_set(*p, z)).pass() == (nonzero == 1));
    }
  }
}

TEST_CASE("no random candidate passes on the other lattices") {
  CHECK(fuzz_candidates(cached_presentation(3, LatticeKind::PrimitiveCubic), 200, 1) == 0);
  CHECK(fuzz_candidates(cached_presentation(3, LatticeKind::Rhombohedral), 200, 2) == 0);
  CHECK(fuzz_candidates(cached_presentation(2, LatticeKind::Hexagonal), 200, 3) == 0);
}
