#pragma once

// Reproducible random draws: a 64-bit seed plus a counter derive an
// independent engine per check.

#include <cstdint>
#include <numbers>
#include <random>

#include "amqc/qmat.hpp"

namespace amqc {

using Rng = std::mt19937_64;

inline Rng derive_rng(std::uint64_t seed, std::uint64_t counter) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(counter),
                    static_cast<std::uint32_t>(counter >> 32)};
  return Rng(seq);
}

inline double uniform_angle(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
}

// Haar-distributed U(d) via QR of a complex Ginibre matrix.
inline MatN haar_unitary(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  MatN z(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) z(r, c) = cplx(normal(rng), normal(rng));
  }
  const Eigen::HouseholderQR<MatN> qr(z);
  MatN q = qr.householderQ();
  const MatN r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < dim; ++c) {
    const cplx d = r(c, c);
    q.col(c) *= d / std::abs(d);
  }
  return q;
}

inline Mat2 haar_u2(Rng& rng) { return haar_unitary(2, rng); }

inline VecN random_state(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  VecN v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = cplx(normal(rng), normal(rng));
  return v / v.norm();
}

}  // namespace amqc
