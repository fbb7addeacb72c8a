#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bochner/random.hpp"
#include "bochner/tensor.hpp"

using namespace bochner;

namespace {

ComplexTensor covector(int d, int i) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
  v[i] = 1.0;
  return ComplexTensor::covector(v);
}

}  // namespace

TEST_CASE("pair index enumerates i<j lexicographically") {
  CHECK(pair_index(4, 0, 1) == 0);
  CHECK(pair_index(4, 0, 3) == 2);
  CHECK(pair_index(4, 1, 2) == 3);
  CHECK(pair_index(4, 2, 3) == 5);
  CHECK(pair_index(6, 4, 5) == 14);
}

TEST_CASE("bivector matrix avatar rotates e_i towards e_j") {
  const Bivector b = Bivector::basis(4, 0, 1);
  const Eigen::MatrixXd m = b.matrix();
  CHECK(m(1, 0) == 1.0);
  CHECK(m(0, 1) == -1.0);
  CHECK(m.cwiseAbs().sum() == 2.0);
  CHECK(Bivector::from_matrix(m).coeffs().isApprox(b.coeffs()));
}

TEST_CASE("action on a covector follows (LT)(X) = -T(LX)") {
  // (e1∧e2)·e^1 evaluated on e2: -e^1(L e2) = -e^1(-e1) = +1, so the result is +e^2.
  const ComplexTensor out = act_on_tensor(Bivector::basis(4, 0, 1), covector(4, 0));
  CHECK(out.at({1}) == cplx(1.0, 0.0));
  CHECK(out.at({0}) == cplx(0.0, 0.0));
  CHECK(out.norm_squared() == doctest::Approx(1.0));
  // and e^2 ↦ -e^1
  const ComplexTensor out2 = act_on_tensor(Bivector::basis(4, 0, 1), covector(4, 1));
  CHECK(out2.at({0}) == cplx(-1.0, 0.0));
}

TEST_CASE("skew endomorphisms annihilate the metric") {
  Rng rng(3);
  const ComplexTensor g = ComplexTensor::from_real_matrix(Eigen::MatrixXd::Identity(5, 5));
  for (int i = 0; i < 5; ++i) CHECK(act_on_tensor(random_bivector(5, rng), g).max_abs() < 1e-13);
}

TEST_CASE("action is a derivation of the tensor product") {
  Rng rng(7);
  const Bivector l = random_bivector(4, rng);
  const ComplexTensor a = random_tensor(4, 1, rng);
  const ComplexTensor b = random_tensor(4, 2, rng);
  const ComplexTensor lhs = act_on_tensor(l, tensor_product(a, b));
  const ComplexTensor rhs = tensor_product(act_on_tensor(l, a), b) + tensor_product(a, act_on_tensor(l, b));
  CHECK(max_abs_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("bivector and matrix actions agree") {
  Rng rng(11);
  const Bivector l = random_bivector(6, rng);
  const ComplexTensor t = random_tensor(6, 3, rng);
  CHECK(max_abs_diff(act_on_tensor(l, t), act_on_tensor(l.matrix(), t)) < 1e-12);
}

TEST_CASE("hermitian inner product is the raw component sum") {
  Rng rng(5);
  const ComplexTensor t = random_tensor(3, 2, rng);
  const ComplexTensor s = random_tensor(3, 2, rng);
  cplx manual = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) manual += t[i] * std::conj(s[i]);
  CHECK(std::abs(hermitian_inner(t, s) - manual) < 1e-12);
  CHECK(std::abs(hermitian_inner(t, s) - std::conj(hermitian_inner(s, t))) < 1e-12);
  CHECK(hermitian_inner(t, t).real() == doctest::Approx(t.norm_squared()));
}

TEST_CASE("form norm gives unit length to e^1 ∧ e^2") {
  ComplexTensor w(4, 2);
  w.at({0, 1}) = 1.0;
  w.at({1, 0}) = -1.0;
  CHECK(form_norm_squared(w) == doctest::Approx(1.0));
  CHECK(antisymmetry_defect(w) == 0.0);
  w.at({1, 0}) = 0.0;
  CHECK(antisymmetry_defect(w) > 0.1);
}

TEST_CASE("permuted swaps slots") {
  Rng rng(2);
  const ComplexTensor t = random_tensor(3, 2, rng);
  const int perm[] = {1, 0};
  const ComplexTensor p = t.permuted(perm);
  CHECK(p.at({0, 2}) == t.at({2, 0}));
}

TEST_CASE("block complex structure") {
  const auto space = EuclideanSpace::complex(2);
  const Eigen::MatrixXd& j = space.complex_structure();
  CHECK(j(1, 0) == 1.0);   // J e1 = e2
  CHECK(j(0, 1) == -1.0);  // J e2 = -e1
  CHECK((j * j + Eigen::MatrixXd::Identity(4, 4)).norm() == 0.0);
  CHECK(space.block_complex_structure());
}

TEST_CASE("quaternionic structure satisfies IJ = K = -JI") {
  const auto q = EuclideanSpace::quaternionic(2).quaternionic_structure();
  CHECK((q.I * q.J - q.K).norm() < 1e-14);
  CHECK((q.J * q.I + q.K).norm() < 1e-14);
  CHECK((q.K * q.K + Eigen::MatrixXd::Identity(8, 8)).norm() < 1e-14);
}

TEST_CASE("invalid inputs raise") {
  CHECK_THROWS_AS(EuclideanSpace(5, block_complex_structure(4)), DimensionError);
  CHECK_THROWS_AS(ComplexTensor(3, 2, std::vector<cplx>(8)), DimensionError);
  CHECK_THROWS_AS(act_on_tensor(Bivector::basis(4, 0, 1), ComplexTensor(3, 1)), DimensionError);
  CHECK_THROWS_AS(EuclideanSpace(4).complex_structure(), StructureError);
}

TEST_CASE("generator is reproducible") {
  Rng a(123), b(123);
  for (int i = 0; i < 10; ++i) CHECK(a.normal() == b.normal());
  Rng c(1);
  const double u = c.uniform();
  CHECK(u >= 0.0);
  CHECK(u < 1.0);
}
