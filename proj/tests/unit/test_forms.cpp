#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bochner/forms.hpp"

using namespace bochner;

namespace {

ComplexTensor unit_covector(int d, int i) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
  v[i] = 1.0;
  return ComplexTensor::covector(v);
}

long long binom(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

PQForm random_combination(const std::vector<PQForm>& basis, Rng& rng) {
  ComplexTensor t = basis.front().tensor() * cplx(0.0);
  for (const auto& b : basis) t += b.tensor() * rng.complex_normal();
  return trusted_form(basis.front().space(), basis.front().p(), basis.front().q(), t);
}

}  // namespace

TEST_CASE("holomorphic coframe satisfies dz∘J = i dz") {
  const auto space = EuclideanSpace::complex(3);
  for (int j = 0; j < 3; ++j) {
    const ComplexTensor z = dz(space, j);
    const ComplexTensor zj = pull_back_slot(z, space.complex_structure().cast<cplx>(), 0);
    CHECK(max_abs_diff(zj, z * cplx(0.0, 1.0)) < 1e-15);
    const ComplexTensor zb = dz(space, j, true);
    CHECK(max_abs_diff(pull_back_slot(zb, space.complex_structure().cast<cplx>(), 0), zb * cplx(0.0, -1.0)) < 1e-15);
    CHECK(z.at({2 * j}) == cplx(1.0, 0.0));
    CHECK(z.at({2 * j + 1}) == cplx(0.0, 1.0));
  }
}

TEST_CASE("wedge uses the determinant convention") {
  const ComplexTensor w = wedge(unit_covector(4, 0), unit_covector(4, 1));
  CHECK(w.at({0, 1}) == cplx(1.0));
  CHECK(w.at({1, 0}) == cplx(-1.0));
  CHECK(form_norm_squared(w) == doctest::Approx(1.0));
  // graded commutativity and associativity
  const ComplexTensor a = unit_covector(4, 2);
  CHECK(max_abs_diff(wedge(a, w), wedge(w, a)) < 1e-15);
  CHECK(max_abs_diff(wedge(unit_covector(4, 0), unit_covector(4, 0)), ComplexTensor(4, 2)) == 0.0);
  Rng rng(1);
  const ComplexTensor x = alternation(random_tensor(4, 2, rng));
  const ComplexTensor y = random_tensor(4, 1, rng);
  CHECK(max_abs_diff(wedge(wedge(x, y), a), wedge(x, wedge(y, a))) < 1e-12);
}

TEST_CASE("powers of the Kähler form") {
  for (int n = 1; n <= 3; ++n) {
    const auto space = EuclideanSpace::complex(n);
    const ComplexTensor top = kahler_power(space, n);
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    // Ωⁿ = n! e¹∧…∧e²ⁿ
    CHECK(form_norm_squared(top) == doctest::Approx(fact * fact));
    std::vector<int> id(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < 2 * n; ++i) id[static_cast<std::size_t>(i)] = i;
    CHECK(top.at(id).real() == doctest::Approx(fact));
  }
  const ComplexTensor om = kahler_form(EuclideanSpace::complex(2));
  CHECK(om.at({0, 1}) == cplx(1.0));  // ω(e1, e2) = g(Je1, e2) = 1
}

TEST_CASE("Kähler form is u(n)-invariant and wedge with it preserves type") {
  const auto space = EuclideanSpace::complex(3);
  const auto u = HolonomySubalgebra::build(space, AlgebraKind::U);
  const auto sh = sharp(kahler_form(space), u);
  for (const auto& slice : sh.slices()) CHECK(slice.max_abs() < 1e-12);
  Rng rng(6);
  const PQForm phi = random_combination(build_pq_basis(space, 1, 0), rng);
  const ComplexTensor w = wedge(kahler_form(space), phi.tensor());
  CHECK(purity_defect(w, 2, 1, space.complex_structure()) < 1e-9);
}

TEST_CASE("pq basis size and purity") {
  for (int n = 1; n <= 3; ++n) {
    const auto space = EuclideanSpace::complex(n);
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= n; ++q) {
        const auto basis = build_pq_basis(space, p, q);
        CHECK(static_cast<long long>(basis.size()) == binom(n, p) * binom(n, q));
        for (const auto& b : basis) CHECK(purity_defect(b.tensor(), p, q, space.complex_structure()) < 1e-9);
      }
  }
  CHECK(build_pq_basis(EuclideanSpace::complex(3), 2, 1).size() == 9);
}

TEST_CASE("sharp norm coefficient values") {
  CHECK(prop27_coefficient(2, 1, 0, 0) == 2);
  CHECK(prop27_coefficient(2, 1, 1, 0) == 4);
  CHECK(prop27_coefficient(3, 2, 1, 0) == 7);
  CHECK(prop27_coefficient(3, 1, 1, 1) == 0);
  for (int n = 1; n <= 5; ++n) CHECK(prop27_coefficient(n, 1, 0, 0) == n);
}

TEST_CASE("sharp norm of (1,0)-forms is n|φ|²") {
  Rng rng(12);
  for (int n = 1; n <= 3; ++n) {
    const PQForm phi = random_combination(build_pq_basis(EuclideanSpace::complex(n), 1, 0), rng).with_k(0);
    const auto r = sharp_norm_coefficient_check(phi);
    CHECK(r.ratio == doctest::Approx(n).epsilon(1e-10));
    CHECK(r.deviation < 1e-9);
  }
}

TEST_CASE("(1,1)-form orthogonal to Ω has coefficient 4 at n = 2") {
  const auto space = EuclideanSpace::complex(2);
  // dz1 ∧ dz̄2 is orthogonal to Ω
  const ComplexTensor t = wedge(dz(space, 0), dz(space, 1, true));
  const PQForm phi(space, 1, 1, t, 0);
  CHECK(circ(phi).norm_squared() == doctest::Approx(phi.norm_squared()));
  const auto r = sharp_norm_coefficient_check(phi);
  CHECK(r.coefficient == 4);
  CHECK(r.ratio == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("Ω itself is an equality case with both sides zero") {
  const auto space = EuclideanSpace::complex(2);
  const PQForm om(space, 1, 1, kahler_form(space), 1);
  const auto r = sharp_norm_coefficient_check(om);
  CHECK(r.sharp_norm_sq < 1e-20);
  CHECK(r.circ_norm_sq < 1e-20);
  CHECK(std::isnan(r.ratio));
  CHECK(action_bound_check(om, 10, 1).vacuous);
}

TEST_CASE("circ normalizations") {
  const auto space = EuclideanSpace::complex(2);
  const PQForm om(space, 1, 1, kahler_form(space));
  CHECK(circ(om).tensor().max_abs() < 1e-14);
  const PQForm two = om * cplx(2.0);
  CHECK(circ(two).tensor().max_abs() < 1e-14);
  // |Ω| = √2 at n = 2, so the as-printed reading removes only 1/√2 of Ω
  CHECK(form_norm_squared(circ(two, CircNormalization::AsPrinted).tensor()) > 1e-3);
  Rng rng(3);
  const PQForm mixed = random_combination(build_pq_basis(space, 2, 0), rng);
  CHECK(max_abs_diff(circ(mixed).tensor(), mixed.tensor()) == 0.0);
}

TEST_CASE("stratum forms satisfy the coefficient identity; literal products need not") {
  const auto space = EuclideanSpace::complex(3);
  Rng rng(5);
  const PQForm psi = random_combination(build_pq_basis(space, 1, 0), rng);
  const PQForm stratum = construct_stratum(psi, 1);
  CHECK(stratum.p() == 2);
  CHECK(stratum.q() == 1);
  CHECK(purity_defect(stratum.tensor(), 2, 1, space.complex_structure()) < 1e-9);
  const auto good = sharp_norm_coefficient_check(stratum);
  CHECK(good.deviation < 1e-9);

  const PQForm a(space, 2, 0, wedge(dz(space, 0), dz(space, 1)));
  const PQForm b(space, 0, 1, dz(space, 0, true));
  const PQForm literal = construct_Vpqk(a, b, 0);
  CHECK(literal.norm_squared() > 0.0);
  const auto bad = sharp_norm_coefficient_check(literal);
  CHECK(bad.coefficient == 7);
  CHECK(bad.deviation > 1e-3);
}

TEST_CASE("Vpqk trivial cases") {
  const auto space = EuclideanSpace::complex(2);
  const PQForm one0(space, 0, 0, ComplexTensor::scalar(1.0, 4));
  const PQForm om2 = construct_Vpqk(one0, one0, 2);
  CHECK(max_abs_diff(om2.tensor(), kahler_power(space, 2)) < 1e-14);
  const PQForm a(space, 1, 0, dz(space, 0));
  const PQForm b(space, 0, 1, dz(space, 1, true));
  CHECK(max_abs_diff(construct_Vpqk(a, b, 0).tensor(), wedge(a.tensor(), b.tensor())) < 1e-15);
  const auto s3 = EuclideanSpace::complex(3);
  const PQForm v = construct_Vpqk(PQForm(s3, 1, 0, dz(s3, 0)), PQForm(s3, 0, 1, dz(s3, 1, true)), 1);
  CHECK(v.norm_squared() > 0.1);
  CHECK(purity_defect(v.tensor(), 2, 2, s3.complex_structure()) < 1e-9);
}

TEST_CASE("action bound on (1,0)-forms") {
  Rng rng(10);
  const PQForm phi = random_combination(build_pq_basis(EuclideanSpace::complex(3), 1, 0), rng).with_k(0);
  const auto r = action_bound_check(phi, 200, 99);
  CHECK(r.pass);
  CHECK_FALSE(r.vacuous);
  CHECK(r.max_ratio > 0.0);
  CHECK(r.max_ratio <= 1.0 + 1e-9);
  CHECK(action_bound_check(phi, 50, 7).max_ratio == action_bound_check(phi, 50, 7).max_ratio);
}

TEST_CASE("Serre remap") {
  const auto b = serre_remap(3, 2, 2);
  CHECK(b.remapped);
  CHECK(b.p == 1);
  CHECK(b.q == 1);
  CHECK_FALSE(b.note.empty());
  CHECK_FALSE(serre_remap(3, 1, 2).remapped);
  CHECK_THROWS_AS(serre_remap(2, 3, 0), DomainError);
}

TEST_CASE("invalid forms raise") {
  const auto space = EuclideanSpace::complex(2);
  CHECK_THROWS_AS(PQForm(space, 0, 1, dz(space, 0)), DomainError);  // wrong type
  ComplexTensor sym(4, 2);
  sym.at({0, 1}) = 1.0;
  sym.at({1, 0}) = 1.0;
  CHECK_THROWS_AS(PQForm(space, 1, 1, sym), DomainError);
  CHECK_THROWS_AS(PQForm(EuclideanSpace(4), 1, 0, dz(space, 0)), StructureError);
  CHECK_THROWS_AS(sharp_norm_coefficient_check(PQForm(space, 1, 0, dz(space, 0))), DomainError);
  CHECK_THROWS_AS(kahler_power(space, 3), DomainError);
}
