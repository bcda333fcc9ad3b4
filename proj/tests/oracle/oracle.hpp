#pragma once

// Independent reference computations used to cross-check the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "qca/qca.hpp"

namespace oracle {

using qca::Complex;
using qca::SpinMatrix;
using qca::Vec3;

inline constexpr double kPi = std::numbers::pi;

/// Eigenphases phi in [0, pi] of the eigenvalues e^{-i phi} (sign of the phase ignored), sorted.
inline std::vector<double> eigen_omegas(const SpinMatrix& u) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Eigen::MatrixXcd(u), false);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(std::abs(std::arg(es.eigenvalues()[i])));
  std::sort(out.begin(), out.end());
  return out;
}

/// Orthogonal projector onto the eigenvectors of `u` whose eigenvalue lies within `tol` of `lambda`.
inline Eigen::MatrixXcd eigen_projector(const SpinMatrix& u, Complex lambda, double tol = 1e-6) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es{Eigen::MatrixXcd(u)};
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()[i] - lambda) < tol) cols.push_back(i);
  }
  Eigen::MatrixXcd v(u.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) v.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(cols[j]);
  if (cols.empty()) return Eigen::MatrixXcd::Zero(u.rows(), u.cols());
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(v);
  const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(u.rows(), v.cols());
  return q * q.adjoint();
}

/// Central-difference gradient of a scalar function of a Cartesian 3-vector.
inline Vec3 gradient(const std::function<double(const Vec3&)>& f, const Vec3& k, int dimension, double h = 1e-5) {
  Vec3 g = Vec3::Zero();
  for (int i = 0; i < dimension; ++i) {
    Vec3 p = k;
    Vec3 m = k;
    p[i] += h;
    m[i] -= h;
    g[i] = (f(p) - f(m)) / (2.0 * h);
  }
  return g;
}

inline qca::WaveVector wave(int dimension, const Vec3& k) {
  return dimension == 1 ? qca::WaveVector(k[0]) : qca::WaveVector(dimension, k);
}

/// omega = arccos(Re tr U / s), independent of the spectral decomposition.
inline double omega_from_trace(const SpinMatrix& u) {
  return std::acos(std::clamp(u.trace().real() / static_cast<double>(u.rows()), -1.0, 1.0));
}

/// Evolution by an O(sites^2) DFT built from the Bloch matrices.
inline qca::SpinorField naive_step(const qca::SpinorField& field, const qca::AutomatonModel& model, int steps) {
  const int d = field.dimension();
  const int n = field.size();
  const int s = field.spin();
  const std::size_t sites = field.sites();
  std::vector<qca::SpinVector> fiber(sites, qca::SpinVector::Zero(s));
  for (std::size_t q = 0; q < sites; ++q) {
    const qca::IntShift qc = field.site_coords(q);
    for (std::size_t x = 0; x < sites; ++x) {
      const qca::IntShift xc = field.site_coords(x);
      double phase = 0.0;
      for (int i = 0; i < d; ++i) phase += 2.0 * kPi * qc[static_cast<std::size_t>(i)] * xc[static_cast<std::size_t>(i)] / n;
      for (int c = 0; c < s; ++c) fiber[q][c] += std::polar(1.0, -phase) * field(x, c);
    }
  }
  for (std::size_t q = 0; q < sites; ++q) {
    const qca::WaveVector k = qca::fiber_wave_vector(model.lattice(), n, field.site_coords(q));
    const SpinMatrix u = qca::bloch(model, k).matrix;
    SpinMatrix p = SpinMatrix::Identity(s, s);
    for (int t = 0; t < steps; ++t) p = u * p;
    fiber[q] = p * fiber[q];
  }
  qca::SpinorField out(d, n, s);
  for (std::size_t x = 0; x < sites; ++x) {
    const qca::IntShift xc = field.site_coords(x);
    for (std::size_t q = 0; q < sites; ++q) {
      const qca::IntShift qc = field.site_coords(q);
      double phase = 0.0;
      for (int i = 0; i < d; ++i) phase += 2.0 * kPi * qc[static_cast<std::size_t>(i)] * xc[static_cast<std::size_t>(i)] / n;
      for (int c = 0; c < s; ++c) out(x, c) += std::polar(1.0, phase) * fiber[q][c] / static_cast<double>(sites);
    }
  }
  return out;
}

inline double max_diff(const qca::SpinorField& a, const qca::SpinorField& b) {
  double w = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) w = std::max(w, std::abs(a.data()[i] - b.data()[i]));
  return w;
}

inline qca::SpinorField random_field(int d, int n, int s, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  qca::SpinorField f(d, n, s);
  for (Complex& c : f.data()) c = Complex(g(rng), g(rng));
  f.normalize();
  return f;
}

}  // namespace oracle
