#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "bochner/tensor.hpp"

namespace bochner {

/// Seeded generator with a fully specified output sequence.
///
/// The engine is std::mt19937_64 (its sequence is fixed by the standard). Uniforms take the
/// top 53 bits; normals use the Box-Muller transform, so results do not depend on the
/// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  Eigen::VectorXd normal_vector(Eigen::Index n) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  cplx complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  std::uint64_t next_seed() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline ComplexTensor random_tensor(int dim, int rank, Rng& rng) {
  ComplexTensor t(dim, rank);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = rng.complex_normal();
  return t;
}

inline ComplexTensor random_real_tensor(int dim, int rank, Rng& rng) {
  ComplexTensor t(dim, rank);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = rng.normal();
  return t;
}

inline Bivector random_bivector(int dim, Rng& rng) {
  return Bivector(dim, rng.normal_vector(dim * (dim - 1) / 2));
}

}  // namespace bochner
