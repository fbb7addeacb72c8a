#include "bochner/holonomy.hpp"

#include <cmath>

#include "bochner/random.hpp"

namespace bochner {

std::string_view to_string(AlgebraKind kind) {
  switch (kind) {
    case AlgebraKind::SO:
      return "so";
    case AlgebraKind::U:
      return "u";
    case AlgebraKind::SP_SP1:
      return "sp";
  }
  return "?";
}

AlgebraKind parse_algebra_kind(std::string_view name) {
  if (name == "so" || name == "so(d)") return AlgebraKind::SO;
  if (name == "u" || name == "u(n)") return AlgebraKind::U;
  if (name == "sp" || name == "sp(m)+sp(1)") return AlgebraKind::SP_SP1;
  throw DomainError("unknown algebra '" + std::string(name) + "' (expected so, u or sp)");
}

namespace {

std::vector<Bivector> gram_schmidt(const std::vector<Bivector>& spanning, double drop_tol) {
  std::vector<Bivector> out;
  for (const auto& v : spanning) {
    Eigen::VectorXd w = v.coeffs();
    // two passes keep the basis orthonormal to machine precision
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : out) w -= b.coeffs().dot(w) * b.coeffs();
    }
    const double n = w.norm();
    if (n > drop_tol) out.emplace_back(v.dim(), w / n);
  }
  return out;
}

std::vector<Bivector> unitary_spanning_set(const EuclideanSpace& space) {
  const int d = space.dim();
  const Eigen::MatrixXd& j = space.complex_structure();
  const Eigen::MatrixXd e = Eigen::MatrixXd::Identity(d, d);
  std::vector<Bivector> span;
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      span.push_back(Bivector::wedge(e.col(a), e.col(b)) + Bivector::wedge(j * e.col(a), j * e.col(b)));
  for (int a = 0; a < d; ++a) span.push_back(Bivector::wedge(e.col(a), j * e.col(a)));
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      span.push_back(Bivector::wedge(e.col(a), j * e.col(b)) + Bivector::wedge(e.col(b), j * e.col(a)));
  return span;
}

std::vector<Bivector> symplectic_spanning_set(const EuclideanSpace& space) {
  const int d = space.dim();
  const auto& q = space.quaternionic_structure();
  std::vector<Bivector> span;
  for (const auto& w : quaternionic_bivectors(space)) span.push_back(w * (1.0 / w.norm()));
  // average over conjugation by {±1, ±I, ±J, ±K}: orthogonal projection onto the commutant
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      const Eigen::MatrixXd m = Bivector::basis(d, a, b).matrix();
      const Eigen::MatrixXd avg = 0.25 * (m - q.I * m * q.I - q.J * m * q.J - q.K * m * q.K);
      span.push_back(Bivector::from_matrix(avg));
    }
  }
  return span;
}

}  // namespace

int HolonomySubalgebra::expected_dimension(const EuclideanSpace& space, AlgebraKind kind) {
  const int d = space.dim();
  switch (kind) {
    case AlgebraKind::SO:
      return d * (d - 1) / 2;
    case AlgebraKind::U:
      return (d / 2) * (d / 2);
    case AlgebraKind::SP_SP1: {
      const int m = d / 4;
      return m * (2 * m + 1) + 3;
    }
  }
  return 0;
}

HolonomySubalgebra::HolonomySubalgebra(EuclideanSpace space, AlgebraKind kind, std::vector<Bivector> basis)
    : space_(std::move(space)), kind_(kind), basis_(std::move(basis)) {
  const int p = space_.bivector_dim();
  coeffs_.resize(static_cast<Eigen::Index>(basis_.size()), p);
  for (std::size_t a = 0; a < basis_.size(); ++a) {
    coeffs_.row(static_cast<Eigen::Index>(a)) = basis_[a].coeffs().transpose();
    matrices_.push_back(basis_[a].matrix());
  }
}

HolonomySubalgebra HolonomySubalgebra::build(const EuclideanSpace& space, AlgebraKind kind) {
  const int d = space.dim();
  switch (kind) {
    case AlgebraKind::SO: {
      std::vector<Bivector> basis;
      for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) basis.push_back(Bivector::basis(d, a, b));
      return HolonomySubalgebra(space, kind, std::move(basis));
    }
    case AlgebraKind::U:
      if (!space.has_complex_structure()) throw StructureError("u(n) requires a complex structure");
      return from_spanning_set(space, kind, unitary_spanning_set(space));
    case AlgebraKind::SP_SP1:
      if (d % 4 != 0) throw StructureError("sp(m)+sp(1) requires dimension divisible by 4");
      if (!space.has_quaternionic_structure()) throw StructureError("sp(m)+sp(1) requires a quaternionic structure");
      if (d / 4 < 2) throw DomainError("sp(m)+sp(1) requires m >= 2");
      return from_spanning_set(space, kind, symplectic_spanning_set(space));
  }
  throw DomainError("unknown algebra kind");
}

HolonomySubalgebra HolonomySubalgebra::from_spanning_set(const EuclideanSpace& space, AlgebraKind kind,
                                                         const std::vector<Bivector>& spanning, double drop_tol) {
  for (const auto& b : spanning) require_same_dim(space.dim(), b.dim(), "holonomy spanning set");
  auto basis = gram_schmidt(spanning, drop_tol);
  const int expected = expected_dimension(space, kind);
  if (static_cast<int>(basis.size()) != expected) {
    throw Error("spanning set for " + std::string(to_string(kind)) + " has rank " + std::to_string(basis.size()) +
                ", expected " + std::to_string(expected));
  }
  return HolonomySubalgebra(space, kind, std::move(basis));
}

Eigen::MatrixXd HolonomySubalgebra::projector() const { return coeffs_.transpose() * coeffs_; }

Eigen::MatrixXd HolonomySubalgebra::complement_projector() const {
  const int p = space_.bivector_dim();
  return Eigen::MatrixXd::Identity(p, p) - projector();
}

Eigen::MatrixXd HolonomySubalgebra::complement_basis() const {
  const int p = space_.bivector_dim();
  std::vector<Bivector> span;
  span.reserve(basis_.size() + static_cast<std::size_t>(p));
  for (const auto& b : basis_) span.push_back(b);
  for (int i = 0; i < p; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(p);
    e[i] = 1.0;
    span.emplace_back(space_.dim(), e);
  }
  const auto full = gram_schmidt(span, 1e-8);
  const int rest = static_cast<int>(full.size()) - size();
  Eigen::MatrixXd out(rest, p);
  for (int r = 0; r < rest; ++r) out.row(r) = full[static_cast<std::size_t>(size() + r)].coeffs().transpose();
  return out;
}

double HolonomySubalgebra::orthonormality_defect() const {
  const Eigen::MatrixXd gram = coeffs_ * coeffs_.transpose();
  return (gram - Eigen::MatrixXd::Identity(size(), size())).cwiseAbs().maxCoeff();
}

double HolonomySubalgebra::closure_defect() const {
  const Eigen::MatrixXd comp = complement_projector();
  double worst = 0.0;
  for (int a = 0; a < size(); ++a) {
    for (int b = a + 1; b < size(); ++b) {
      const Bivector br = lie_bracket(basis_[static_cast<std::size_t>(a)], basis_[static_cast<std::size_t>(b)]);
      worst = std::max(worst, (comp * br.coeffs()).norm());
    }
  }
  return worst;
}

Bivector kahler_bivector(const EuclideanSpace& space) {
  return Bivector::from_matrix(space.complex_structure());
}

std::vector<Bivector> quaternionic_bivectors(const EuclideanSpace& space) {
  const auto& q = space.quaternionic_structure();
  // Σ e_i∧Ie_i + Je_i∧Ke_i has matrix avatar I, and likewise for J, K
  return {Bivector::from_matrix(q.I), Bivector::from_matrix(q.J), Bivector::from_matrix(q.K)};
}

SharpDecomposition::SharpDecomposition(HolonomySubalgebra algebra, std::vector<ComplexTensor> slices)
    : algebra_(std::move(algebra)), slices_(std::move(slices)) {}

double SharpDecomposition::norm_squared() const {
  double s = 0.0;
  for (const auto& t : slices_) s += t.norm_squared();
  return s;
}

Eigen::VectorXcd SharpDecomposition::evaluate(std::span<const int> index) const {
  const int p = algebra_.space().bivector_dim();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(p);
  for (int a = 0; a < algebra_.size(); ++a) {
    const cplx v = slices_[static_cast<std::size_t>(a)].at(index);
    out += v * algebra_[a].coeffs().cast<cplx>();
  }
  return out;
}

SharpDecomposition sharp(const ComplexTensor& t, const HolonomySubalgebra& algebra) {
  require_same_dim(t.dim(), algebra.space().dim(), "sharp");
  std::vector<ComplexTensor> slices;
  slices.reserve(static_cast<std::size_t>(algebra.size()));
  for (const auto& m : algebra.matrices()) slices.push_back(act_on_tensor(m, t));
  return SharpDecomposition(algebra, std::move(slices));
}

double sharp_norm_squared(const ComplexTensor& t, const HolonomySubalgebra& algebra) {
  require_same_dim(t.dim(), algebra.space().dim(), "sharp");
  double s = 0.0;
  for (const auto& m : algebra.matrices()) s += act_on_tensor(m, t).norm_squared();
  return s;
}

Bivector project_bivector(const Bivector& l, const HolonomySubalgebra& algebra) {
  require_same_dim(l.dim(), algebra.space().dim(), "project_bivector");
  const Eigen::MatrixXd& c = algebra.coefficient_matrix();
  return Bivector(l.dim(), c.transpose() * (c * l.coeffs()));
}

Bivector random_algebra_element(const HolonomySubalgebra& algebra, Rng& rng) {
  Eigen::VectorXd x = rng.normal_vector(algebra.size());
  while (x.norm() == 0.0) x = rng.normal_vector(algebra.size());
  x /= x.norm();
  return Bivector(algebra.space().dim(), algebra.coefficient_matrix().transpose() * x);
}

double max_sampled_action(const ComplexTensor& t, const HolonomySubalgebra& algebra, int samples, Rng& rng) {
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Bivector l = random_algebra_element(algebra, rng);
    worst = std::max(worst, act_on_tensor(l, t).norm_squared());
  }
  return worst;
}

}  // namespace bochner
