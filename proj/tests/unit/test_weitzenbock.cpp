#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bochner/forms.hpp"
#include "bochner/weitzenbock.hpp"

using namespace bochner;

TEST_CASE("flat curvature gives zero") {
  Rng rng(1);
  const auto rm = model(ModelKind::Flat, EuclideanSpace(4));
  CHECK(weitzenbock_ric(rm, random_tensor(4, 2, rng)).max_abs() == 0.0);
}

TEST_CASE("constant curvature acts on p-forms by p(d-p)c") {
  // classical Weitzenböck constant for the round sphere
  Rng rng(2);
  for (int d : {4, 6}) {
    const double c = 1.5;
    const auto rm = model(ModelKind::ConstantSectional, EuclideanSpace(d), c);
    for (int p = 1; p <= 3; ++p) {
      const ComplexTensor t = alternation(random_tensor(d, p, rng));
      const ComplexTensor ric = weitzenbock_ric(rm, t);
      CHECK(max_abs_diff(ric, t * cplx(p * (d - p) * c)) < 1e-11);
    }
  }
}

TEST_CASE("Weitzenböck operator is self-adjoint") {
  Rng rng(3);
  const auto rm = random_kahler_curvature(EuclideanSpace::complex(2), rng);
  const ComplexTensor t = random_tensor(4, 2, rng);
  const ComplexTensor s = random_tensor(4, 2, rng);
  const cplx a = hermitian_inner(weitzenbock_ric(rm, t), s);
  const cplx b = hermitian_inner(t, weitzenbock_ric(rm, s));
  CHECK(std::abs(a - b) < 1e-9 * std::max(1.0, std::abs(a)));
}

TEST_CASE("Lichnerowicz zero-order term is linear in c") {
  Rng rng(4);
  const auto rm = random_curvature(EuclideanSpace(4), rng);
  const ComplexTensor t = random_tensor(4, 2, rng);
  const ComplexTensor base = weitzenbock_ric(rm, t);
  CHECK(max_abs_diff(lichnerowicz_zero_order(rm, t, kLichnerowiczHodge), base) == 0.0);
  CHECK(max_abs_diff(lichnerowicz_zero_order(rm, t, kLichnerowiczCurvature), base * cplx(0.5)) < 1e-14);
  CHECK(max_abs_diff(lichnerowicz_zero_order(rm, t, 3.0), lichnerowicz_zero_order(rm, t, 1.0) * cplx(3.0)) < 1e-12);
  CHECK_THROWS_AS(lichnerowicz_zero_order(rm, t, 0.0), DomainError);
}

TEST_CASE("curvature term: eigen and Gram routes agree") {
  Rng rng(5);
  const auto space = EuclideanSpace::complex(3);
  const auto rm = random_kahler_curvature(space, rng);
  const auto u = HolonomySubalgebra::build(space, AlgebraKind::U);
  for (int r = 1; r <= 3; ++r) {
    const auto term = curvature_term(to_operator(rm), u, random_tensor(6, r, rng));
    CHECK(term.value == doctest::Approx(term.gram_value).epsilon(1e-9));
    double weights = 0.0;
    double recon = 0.0;
    for (const auto& [mu, w] : term.per_eigenvalue) {
      weights += w;
      recon += mu * w;
    }
    CHECK(weights == doctest::Approx(term.sharp_norm_sq).epsilon(1e-10));
    CHECK(recon == doctest::Approx(term.value).epsilon(1e-10));
  }
}

TEST_CASE("curvature term vanishes on invariant tensors and for flat curvature") {
  const auto space = EuclideanSpace::complex(2);
  const auto u = HolonomySubalgebra::build(space, AlgebraKind::U);
  const auto fs = model(ModelKind::CHSC, space, 4.0);
  CHECK(std::abs(curvature_term(to_operator(fs), u, kahler_form(space)).value) < 1e-12);
  Rng rng(6);
  CHECK(curvature_term(to_operator(model(ModelKind::Flat, space)), u, random_tensor(4, 2, rng)).value == 0.0);
}

TEST_CASE("curvature term is positive on (1,0)-forms for Fubini-Study") {
  const auto space = EuclideanSpace::complex(2);
  const auto u = HolonomySubalgebra::build(space, AlgebraKind::U);
  const auto term = curvature_term(to_operator(model(ModelKind::CHSC, space, 4.0)), u, dz(space, 0));
  CHECK(term.value > 0.1);
}

TEST_CASE("Ricci contraction equals the curvature term under holonomy support") {
  Rng rng(7);
  for (int n : {2, 3}) {
    const auto space = EuclideanSpace::complex(n);
    const auto u = HolonomySubalgebra::build(space, AlgebraKind::U);
    const auto rm = model(ModelKind::CHSC, space, 4.0);
    for (int r = 1; r <= 3; ++r) {
      const auto rep = verify_prop24(rm, u, random_tensor(2 * n, r, rng));
      CHECK(rep.pass);
      CHECK(rep.lhs == doctest::Approx(rep.rhs).epsilon(1e-9));
    }
    const auto k = random_kahler_curvature(space, rng);
    CHECK(verify_prop24(k, u, random_tensor(2 * n, 2, rng)).pass);
  }
  const auto hspace = EuclideanSpace::quaternionic(2);
  const auto sp = HolonomySubalgebra::build(hspace, AlgebraKind::SP_SP1);
  CHECK(verify_prop24(model(ModelKind::HPm, hspace), sp, random_tensor(8, 2, rng)).pass);
  const auto flat = verify_prop24(model(ModelKind::Flat, hspace), sp, random_tensor(8, 1, rng));
  CHECK(flat.lhs == 0.0);
  CHECK(flat.rhs == 0.0);
}

TEST_CASE("holonomy hypothesis is enforced") {
  Rng rng(8);
  const auto space = EuclideanSpace::complex(2);
  const auto u = HolonomySubalgebra::build(space, AlgebraKind::U);
  const auto sphere = model(ModelKind::ConstantSectional, space, 1.0);
  CHECK_THROWS_AS(verify_prop24(sphere, u, random_tensor(4, 1, rng)), LeakageError);
}

TEST_CASE("curvature lower bound for (1,0)-forms with C = n") {
  const int n = 2;
  const auto space = EuclideanSpace::complex(n);
  const auto u = HolonomySubalgebra::build(space, AlgebraKind::U);
  Rng rng(9);
  std::vector<ComplexTensor> samples;
  const auto basis = build_pq_basis(space, 1, 0);
  for (int i = 0; i < 20; ++i) {
    ComplexTensor t(4, 1);
    for (const auto& b : basis) t += b.tensor() * rng.complex_normal();
    samples.push_back(t);
  }
  const auto fs = restricted_spectrum(to_operator(model(ModelKind::CHSC, space, 4.0)), u);
  const auto rep = verify_lemma26(fs.eigenvalues, u, samples, n, 1, 0.0, 11);
  CHECK(rep.premise2);
  CHECK(rep.admitted == 20);
  CHECK(rep.pass());

  // all-zero spectrum: both sides vanish
  const auto zero = verify_lemma26(Eigen::VectorXd(Eigen::VectorXd::Zero(n * n)), u, samples, n, 1, 0.0, 11);
  CHECK(zero.premise1);
  CHECK_FALSE(zero.premise2);
  for (const auto& s : zero.samples) {
    CHECK(s.term == 0.0);
    CHECK(s.bound == 0.0);
  }
  CHECK(zero.pass());

  // negative κ: the premise is met and the scaled bound holds
  Eigen::VectorXd mu(4);
  mu << -1.0, 0.5, 0.5, 3.0;
  const double kappa = std::min(0.0, (mu[0] + (n - 1) * mu[1]) / 2.0);
  const auto neg = verify_lemma26(mu, u, samples, n, 1, kappa, 11);
  CHECK(neg.premise1);
  CHECK(neg.pass());

  CHECK_THROWS_AS(verify_lemma26(mu, u, samples, n, 1, 0.5, 11), DomainError);
  CHECK_THROWS_AS(verify_lemma26(mu, u, samples, n, 3, 0.0, 11), DomainError);
}

TEST_CASE("non-(1,0) tensors can be rejected by the hypothesis filter") {
  const auto space = EuclideanSpace::complex(2);
  const auto u = HolonomySubalgebra::build(space, AlgebraKind::U);
  Rng rng(12);
  std::vector<ComplexTensor> samples;
  for (int i = 0; i < 10; ++i) samples.push_back(random_tensor(4, 2, rng));
  const auto rep = verify_lemma26(Eigen::VectorXd(Eigen::VectorXd::Ones(4)), u, samples, 4.0, 1, 0.0, 3);
  CHECK(rep.admitted + rep.rejected == 10);
  CHECK(rep.rejected > 0);
}
