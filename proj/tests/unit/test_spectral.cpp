#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"

using namespace qca;

namespace {

SpinMatrix random_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Vector4d q(g(rng), g(rng), g(rng), g(rng));
  q.normalize();
  return SpinMatrix(q[0] * pauli::identity() - kI * (q[1] * pauli::x() + q[2] * pauli::y() + q[3] * pauli::z()));
}

}  // namespace

TEST_CASE("spectral form reconstructs the matrix") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    const SpinMatrix u = random_su2(rng);
    const SpectralForm f = spectral_form(u);
    const int s = static_cast<int>(u.rows());
    CHECK(max_abs_diff(f.cos_omega * SpinMatrix::Identity(s, s) + kI * f.generator, u) < 1e-14);
    CHECK(max_abs_diff(f.generator * f.generator, f.sin_omega * f.sin_omega * SpinMatrix::Identity(s, s)) < 1e-14);
    CHECK(f.omega == doctest::Approx(std::atan2(f.sin_omega, f.cos_omega)));
  }
}

TEST_CASE("integer and real powers") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 50; ++i) {
    const SpinMatrix u = random_su2(rng);
    const SpectralForm f = spectral_form(u);
    SpinMatrix p = SpinMatrix::Identity(2, 2);
    for (int n = 0; n < 25; ++n) {
      CHECK(max_abs_diff(unitary_power(f, std::int64_t{n}), p) < 1e-12);
      p = u * p;
    }
    const SpinMatrix half = unitary_power(f, 0.5);
    CHECK(max_abs_diff(half * half, u) < 1e-13);
  }
  const SpectralForm minus = spectral_form(SpinMatrix(-Mat2::Identity()));
  CHECK(max_abs_diff(unitary_power(minus, std::int64_t{3}), -Mat2::Identity()) == 0.0);
  CHECK(max_abs_diff(unitary_power(minus, std::int64_t{4}), Mat2::Identity()) == 0.0);
}

TEST_CASE("band projectors and principal hamiltonian") {
  std::mt19937_64 rng(41);
  const SpinMatrix u = random_su2(rng);
  const SpectralForm f = spectral_form(u);
  const BandProjectors p = band_projectors(f);
  CHECK(max_abs_diff(u * p.particle, std::polar(1.0, -f.omega) * p.particle) < 1e-14);
  CHECK(max_abs_diff(u * p.antiparticle, std::polar(1.0, f.omega) * p.antiparticle) < 1e-14);
  const SpinMatrix h = principal_hamiltonian(f);
  CHECK(max_abs_diff(h, h.adjoint()) < 1e-15);
  const Eigen::MatrixXcd expm = (Eigen::MatrixXcd(-kI * h)).exp();
  CHECK(max_abs_diff(expm, Eigen::MatrixXcd(u)) < 1e-13);
  CHECK_THROWS_AS(band_projectors(spectral_form(SpinMatrix(Mat2::Identity()))), Error);
  CHECK_THROWS_AS(principal_hamiltonian(spectral_form(SpinMatrix(-Mat2::Identity()))), Error);
}
