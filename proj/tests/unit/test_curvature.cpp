#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bochner/curvature.hpp"

using namespace bochner;

namespace {

double contract(const AlgebraicCurvatureTensor& rm, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                const Eigen::VectorXd& z, const Eigen::VectorXd& w) {
  const int d = rm.dim();
  double s = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) s += rm(a, b, c, e) * x[a] * y[b] * z[c] * w[e];
  return s;
}

Eigen::VectorXd sorted(Eigen::VectorXd v) {
  std::sort(v.data(), v.data() + v.size());
  return v;
}

}  // namespace

TEST_CASE("constant sectional model matches c(δδ − δδ)") {
  const int d = 6;
  const double c = 0.7;
  const auto rm = model(ModelKind::ConstantSectional, EuclideanSpace(d), c);
  double worst = 0.0;
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z)
        for (int w = 0; w < d; ++w) {
          const double expect = c * ((x == z) * (y == w) - (x == w) * (y == z));
          worst = std::max(worst, std::abs(rm(x, y, z, w) - expect));
        }
  CHECK(worst < 1e-14);
  CHECK((ricci(rm) - (d - 1) * c * Eigen::MatrixXd::Identity(d, d)).norm() < 1e-12);
  CHECK(scalar_curvature(rm) == doctest::Approx(d * (d - 1) * c));
  CHECK((to_operator(rm).matrix() - c * Eigen::MatrixXd::Identity(15, 15)).norm() < 1e-12);
}

TEST_CASE("tensor norm is four times the operator norm") {
  Rng rng(21);
  for (int d : {4, 6}) {
    const auto rm = random_curvature(EuclideanSpace(d), rng);
    CHECK(rm.norm_squared() == doctest::Approx(4.0 * to_operator(rm).norm_squared()).epsilon(1e-12));
  }
}

TEST_CASE("random curvature tensors satisfy the symmetries") {
  Rng rng(4);
  const auto rm = random_kahler_curvature(EuclideanSpace::complex(3), rng);
  CHECK(rm.symmetry_defect() < 1e-12);
  CHECK(rm.bianchi_defect() < 1e-12);
  CHECK(rm.kahler_defect() < 1e-12);
  CHECK(rm.kahler());
  const auto back = from_operator(to_operator(rm));
  CHECK(max_abs_diff(back.tensor(), rm.tensor()) < 1e-12);
}

TEST_CASE("Fubini-Study: holomorphic sectional curvature 4") {
  for (int n : {2, 3}) {
    const auto space = EuclideanSpace::complex(n);
    const auto rm = model(ModelKind::CHSC, space, 4.0);
    Rng rng(static_cast<std::uint64_t>(n));
    for (int i = 0; i < 5; ++i) {
      Eigen::VectorXd x = rng.normal_vector(2 * n);
      x.normalize();
      const Eigen::VectorXd jx = space.complex_structure() * x;
      CHECK(contract(rm, x, jx, x, jx) == doctest::Approx(4.0).epsilon(1e-12));
    }
    CHECK(scalar_curvature(rm) == doctest::Approx(4.0 * n * (n + 1)));
    // Einstein with Ric = 2(n+1) g
    CHECK((ricci(rm) - 2.0 * (n + 1) * Eigen::MatrixXd::Identity(2 * n, 2 * n)).norm() < 1e-12);
  }
}

TEST_CASE("Fubini-Study u(n) spectrum") {
  // su(n): (c/4)(1 + 1); the Kähler direction adds 2|ω|² = 2n.
  const int n = 3;
  const auto space = EuclideanSpace::complex(n);
  const auto rm = model(ModelKind::CHSC, space, 4.0);
  const auto spec = restricted_spectrum(to_operator(rm), HolonomySubalgebra::build(space, AlgebraKind::U));
  REQUIRE(spec.eigenvalues.size() == n * n);
  for (int i = 0; i < n * n - 1; ++i) CHECK(spec.eigenvalues[i] == doctest::Approx(2.0));
  CHECK(spec.eigenvalues[n * n - 1] == doctest::Approx(2.0 * (n + 1)));
  CHECK(spec.leakage < 1e-12);
}

TEST_CASE("quaternionic projective model") {
  // Conjugation by I, J, K averages Λ² onto sp(m): 4 there, 0 on sp(1) and the rest;
  // the ω_A ⊗ ω_A terms contribute 2|ω_A|² = 4m on sp(1).
  for (int m : {2, 3}) {
    const auto space = EuclideanSpace::quaternionic(m);
    const auto rm = model(ModelKind::HPm, space, 1.0);
    CHECK(scalar_curvature(rm) == doctest::Approx(16.0 * m * (m + 2)));
    const auto a = HolonomySubalgebra::build(space, AlgebraKind::SP_SP1);
    const auto spec = restricted_spectrum(to_operator(rm), a);
    const int dim_sp = m * (2 * m + 1);
    REQUIRE(spec.eigenvalues.size() == dim_sp + 3);
    for (int i = 0; i < dim_sp; ++i) CHECK(spec.eigenvalues[i] == doctest::Approx(4.0));
    for (int i = dim_sp; i < dim_sp + 3; ++i) CHECK(spec.eigenvalues[i] == doctest::Approx(4.0 * m));
    CHECK(complement_leakage(to_operator(rm), a) < 1e-9);
    CHECK(rm.quaternion());
  }
}

TEST_CASE("leakage is reported for the wrong algebra") {
  const auto space = EuclideanSpace::complex(2);
  const auto rm = model(ModelKind::ConstantSectional, space, 1.0);
  const auto spec = restricted_spectrum(to_operator(rm), HolonomySubalgebra::build(space, AlgebraKind::U));
  CHECK(spec.leakage == doctest::Approx(std::sqrt(2.0)));  // Id on the 2-dimensional complement
}

TEST_CASE("Kähler decomposition reassembles and leaves a trace-free remainder") {
  Rng rng(8);
  for (int n : {2, 3}) {
    const auto space = EuclideanSpace::complex(n);
    const auto rm = random_kahler_curvature(space, rng);
    const auto dec = kahler_decompose(rm);
    CHECK(max_abs_diff(dec.scalar_part + dec.ricci_part + dec.bochner, rm.tensor()) < 1e-12);
    const auto tr = bochner_traces(dec.bochner, space.complex_structure());
    CHECK(tr.ricci_trace < 1e-10);
    CHECK(tr.kahler_trace < 1e-10);
    CHECK(dec.scal == doctest::Approx(scalar_curvature(rm)));
  }
  const auto fs = kahler_decompose(model(ModelKind::CHSC, EuclideanSpace::complex(3), 4.0));
  CHECK(fs.bochner.max_abs() < 1e-12);
  CHECK(fs.ricci_part.max_abs() < 1e-12);
}

TEST_CASE("Kähler sharp norm identity") {
  Rng rng(13);
  for (int n : {2, 3}) {
    for (int i = 0; i < 3; ++i) {
      const auto id = kahler_sharp_identity(random_kahler_curvature(EuclideanSpace::complex(n), rng));
      CHECK(id.sharp_norm_sq > 0.0);
      CHECK(id.deviation < 1e-8);
      CHECK(id.sharp_norm_sq == doctest::Approx(id.rhs).epsilon(1e-8));
      CHECK(id.sharp_norm_sq_tensor == doctest::Approx(4.0 * id.sharp_norm_sq).epsilon(1e-12));
    }
  }
  const auto eq = kahler_sharp_identity(model(ModelKind::CHSC, EuclideanSpace::complex(2), 4.0));
  CHECK(eq.sharp_norm_sq < 1e-10);
  CHECK(std::abs(eq.rhs) < 1e-10);
}

TEST_CASE("quaternion-Kähler sharp norm ratio is 4(m+2)") {
  const int m = 2;
  const auto space = EuclideanSpace::quaternionic(m);
  Rng rng(30);
  for (int i = 0; i < 3; ++i) {
    const auto rm = (model(ModelKind::HPm, space, 0.5) + random_hyperkahler_curvature(space, rng)).as_quaternion();
    const auto id = quaternion_sharp_identity(rm);
    CHECK(id.observed_coefficient == doctest::Approx(4.0 * (m + 2)).epsilon(1e-9));
    CHECK(id.coefficient == doctest::Approx(40.0 / 3.0));
  }
  const auto dec = quaternion_decompose(model(ModelKind::HPm, space, 2.0));
  CHECK(dec.hp_coefficient == doctest::Approx(2.0));
  CHECK(dec.r0.max_abs() < 1e-12);
}

TEST_CASE("hyper-Kähler samples are Ricci flat and supported on sp(m)") {
  Rng rng(2);
  const auto space = EuclideanSpace::quaternionic(2);
  const auto rm = random_hyperkahler_curvature(space, rng);
  CHECK(ricci(rm).norm() < 1e-12);
  CHECK(complement_leakage(to_operator(rm), HolonomySubalgebra::build(space, AlgebraKind::SP_SP1)) < 1e-12);
  const auto spec = restricted_spectrum(to_operator(rm), HolonomySubalgebra::build(space, AlgebraKind::SP_SP1));
  CHECK(sorted(spec.eigenvalues).isApprox(spec.eigenvalues));
}

TEST_CASE("validation errors") {
  ComplexTensor bad(4, 4);
  bad.at({0, 1, 0, 1}) = 1.0;  // missing the antisymmetric partners
  CHECK_THROWS_AS(AlgebraicCurvatureTensor(EuclideanSpace(4), bad), SymmetryError);
  CHECK_THROWS_AS(model(ModelKind::CHSC, EuclideanSpace(4), 1.0), StructureError);
  CHECK_THROWS_AS(model(ModelKind::ConstantSectional, EuclideanSpace::complex(2), 1.0).as_kahler(), StructureError);
  CHECK_THROWS(parse_model_kind("torus"));
  CHECK_THROWS_AS(kahler_decompose(model(ModelKind::ConstantSectional, EuclideanSpace::complex(2), 1.0)), StructureError);
}
