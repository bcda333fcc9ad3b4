#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"

using namespace qca;

namespace {

const double kSqrt3 = std::sqrt(3.0);

const LatticePresentation& bcc() { return cached_presentation(3, LatticeKind::BodyCenteredCubic); }

}  // namespace

TEST_CASE("bcc presentation has four generators and one relator") {
  const auto& p = bcc();
  REQUIRE(p.generators().size() == 4);
  CHECK(max_abs_diff(p.generators()[0].cartesian, Vec3(1, 1, 1) / kSqrt3) < 1e-15);
  REQUIRE(p.relators().size() == 1);
  Vec3 sum = Vec3::Zero();
  for (std::size_t i = 0; i < 4; ++i) sum += p.relators()[0].coefficients[i] * p.generators()[i].cartesian;
  CHECK(sum.norm() < 1e-15);
}

TEST_CASE("generator counts") {
  CHECK(cached_presentation(2, LatticeKind::Square).generators().size() == 2);
  const auto& line = cached_presentation(1, LatticeKind::Line);
  CHECK(line.generators().size() == 1);
  CHECK(line.relators().empty());
}

TEST_CASE("every presentation is constructible and its relators vanish") {
  const std::pair<int, LatticeKind> all[] = {{1, LatticeKind::Line},
                                             {2, LatticeKind::Square},
                                             {2, LatticeKind::Hexagonal},
                                             {3, LatticeKind::PrimitiveCubic},
                                             {3, LatticeKind::BodyCenteredCubic},
                                             {3, LatticeKind::Rhombohedral}};
  for (const auto& [d, kind] : all) {
    const LatticePresentation p = presentation(d, kind);
    CAPTURE(to_string(kind));
    CHECK(p.dimension() == d);
    for (const Relator& r : p.relators()) {
      Vec3 sum = Vec3::Zero();
      for (std::size_t i = 0; i < r.coefficients.size(); ++i) sum += r.coefficients[i] * p.generators()[i].cartesian;
      CHECK(sum.norm() < 1e-14);
    }
  }
  CHECK_THROWS_AS(presentation(2, LatticeKind::BodyCenteredCubic), Error);
}

TEST_CASE("duals are biorthogonal to some independent generator subset") {
  const auto& p = bcc();
  CHECK(p.duals().size() == 12);
  const auto gens = p.generators();
  for (const Vec3& dual : p.duals()) {
    int ones = 0;
    int zeros = 0;
    for (const Generator& g : gens) {
      const double dot = g.cartesian.dot(dual);
      if (std::abs(std::abs(dot) - 1.0) < 1e-14) ++ones;
      if (std::abs(dot) < 1e-14) ++zeros;
    }
    CHECK(ones >= 1);
    CHECK(ones + zeros >= 3);
  }
}

TEST_CASE("bcc zone polytope") {
  const auto& p = bcc();
  CHECK(p.zone_vertices().size() == 14);
  CHECK(p.zone_extent() == doctest::Approx(kSqrt3 * oracle::kPi));
}

TEST_CASE("in_brillouin") {
  const auto& p = bcc();
  CHECK(in_brillouin(p, WaveVector(0., 0., 0.)));
  CHECK(in_brillouin(p, WaveVector(kSqrt3 * oracle::kPi, 0., 0.)));
  CHECK_FALSE(in_brillouin(p, WaveVector(kSqrt3 * oracle::kPi, kSqrt3 * oracle::kPi, 0.)));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int i = 0; i < 2000; ++i) {
    const WaveVector k(u(rng), u(rng), u(rng));
    CHECK(in_brillouin(p, k) == in_brillouin(p, -k));
  }
}

TEST_CASE("gen_coords") {
  const auto& p = bcc();
  const auto zero = gen_coords(p, WaveVector(0., 0., 0.));
  CHECK(zero == std::vector<double>{0, 0, 0, 0});
  const auto c = gen_coords(p, WaveVector(kSqrt3, kSqrt3, kSqrt3));
  CHECK(c[0] == doctest::Approx(3.0));
  CHECK(c[1] == doctest::Approx(-1.0));
  CHECK(c[2] == doctest::Approx(-1.0));
  CHECK(c[3] == doctest::Approx(-1.0));

  const auto& sq = cached_presentation(2, LatticeKind::Square);
  const auto s = gen_coords(sq, WaveVector(0.3, -0.7));
  CHECK(s[0] == doctest::Approx((0.3 - 0.7) / std::sqrt(2.0)));
  CHECK(s[1] == doctest::Approx((0.3 + 0.7) / std::sqrt(2.0)));
}

TEST_CASE("bcc generator coordinates sum to zero") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const auto c = gen_coords(bcc(), WaveVector(u(rng), u(rng), u(rng)));
    worst = std::max(worst, std::abs(c[0] + c[1] + c[2] + c[3]));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("wave vector from generator coordinates round-trips") {
  for (const auto& p : {bcc(), cached_presentation(2, LatticeKind::Square), cached_presentation(1, LatticeKind::Line)}) {
    const std::vector<double> coords{0.4, -1.3, 2.2};
    const WaveVector k = p.wave_vector_from_coords(std::span(coords).first(static_cast<std::size_t>(p.dimension())));
    const auto back = gen_coords(p, k);
    for (int i = 0; i < p.dimension(); ++i) CHECK(back[static_cast<std::size_t>(i)] == doctest::Approx(coords[static_cast<std::size_t>(i)]));
  }
}

TEST_CASE("random_in_zone stays inside the zone") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) CHECK(in_brillouin(bcc(), random_in_zone(bcc(), rng)));
}
