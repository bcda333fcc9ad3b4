#pragma once

#include <random>

namespace qca {

template <typename Rng>
WaveVector random_in_zone(const LatticePresentation& p, Rng& rng) {
  const double extent = p.zone_extent();
  std::uniform_real_distribution<double> u(-extent, extent);
  while (true) {
    Vec3 c = Vec3::Zero();
    for (int i = 0; i < p.dimension(); ++i) c[i] = u(rng);
    WaveVector k(p.dimension(), c);
    if (in_brillouin(p, k)) return k;
  }
}

}  // namespace qca
