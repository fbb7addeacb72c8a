#include "bochner/curvature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>

namespace bochner {

namespace {

inline std::size_t idx4(int d, int x, int y, int z, int w) {
  return ((static_cast<std::size_t>(x) * d + y) * d + z) * d + w;
}

double scale_of(const ComplexTensor& t) { return std::max(1.0, t.max_abs()); }

// Entry R(e_i∧e_j, e_k∧e_l) of an operator matrix for arbitrary index order.
double op_entry(const Eigen::MatrixXd& r, int d, int i, int j, int k, int l) {
  if (i == j || k == l) return 0.0;
  double sign = 1.0;
  if (i > j) {
    std::swap(i, j);
    sign = -sign;
  }
  if (k > l) {
    std::swap(k, l);
    sign = -sign;
  }
  return sign * r(pair_index(d, i, j), pair_index(d, k, l));
}

ComplexTensor chsc_base(const EuclideanSpace& space) {
  const int d = space.dim();
  const Eigen::MatrixXd g = Eigen::MatrixXd::Identity(d, d);
  const Eigen::MatrixXd om = kahler_form_matrix(space);
  ComplexTensor t = kulkarni_nomizu(g, g) * cplx(0.5);
  t += kulkarni_nomizu(om, om) * cplx(0.5);
  t += outer_product(om, om) * cplx(2.0);
  return t;
}

void require_rank4(const ComplexTensor& rm) {
  if (rm.rank() != 4) throw DimensionError("curvature tensor must have rank 4, got " + std::to_string(rm.rank()));
}

}  // namespace

double symmetry_defect(const ComplexTensor& rm) {
  require_rank4(rm);
  const int d = rm.dim();
  double worst = 0.0;
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z)
        for (int w = 0; w < d; ++w) {
          const cplx v = rm[idx4(d, x, y, z, w)];
          worst = std::max({worst, std::abs(v + rm[idx4(d, y, x, z, w)]), std::abs(v + rm[idx4(d, x, y, w, z)]),
                            std::abs(v - rm[idx4(d, z, w, x, y)])});
        }
  return worst;
}

double bianchi_defect(const ComplexTensor& rm) {
  require_rank4(rm);
  const int d = rm.dim();
  double worst = 0.0;
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z)
        for (int w = 0; w < d; ++w) {
          const cplx s = rm[idx4(d, x, y, z, w)] + rm[idx4(d, y, z, x, w)] + rm[idx4(d, z, x, y, w)];
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

double kahler_defect(const ComplexTensor& rm, const Eigen::MatrixXd& j) {
  require_rank4(rm);
  require_same_dim(rm.dim(), static_cast<int>(j.rows()), "kahler_defect");
  // Rm(JX,JY,Z,W) − Rm(X,Y,Z,W); the (Z,W) slots follow by pair symmetry
  const ComplexTensor rotated = pull_back_slot(pull_back_slot(rm, j.cast<cplx>(), 0), j.cast<cplx>(), 1);
  return max_abs_diff(rotated, rm);
}

AlgebraicCurvatureTensor::AlgebraicCurvatureTensor(EuclideanSpace space, ComplexTensor rm, const Tolerance& tol)
    : space_(std::move(space)), rm_(std::move(rm)) {
  require_rank4(rm_);
  require_same_dim(space_.dim(), rm_.dim(), "curvature tensor");
  const double limit = tol.abs * scale_of(rm_);
  if (rm_.max_imag() > limit) throw SymmetryError("curvature tensor must be real");
  const double sym = bochner::symmetry_defect(rm_);
  if (sym > limit) throw SymmetryError("curvature symmetries violated (defect " + std::to_string(sym) + ")");
  const double bi = bochner::bianchi_defect(rm_);
  if (bi > limit) throw SymmetryError("first Bianchi identity violated (defect " + std::to_string(bi) + ")");
}

AlgebraicCurvatureTensor::AlgebraicCurvatureTensor(Unchecked, EuclideanSpace space, ComplexTensor rm)
    : space_(std::move(space)), rm_(std::move(rm)) {}

AlgebraicCurvatureTensor AlgebraicCurvatureTensor::zero(const EuclideanSpace& space) {
  return AlgebraicCurvatureTensor(Unchecked{}, space, ComplexTensor(space.dim(), 4));
}

AlgebraicCurvatureTensor AlgebraicCurvatureTensor::trusted(EuclideanSpace space, ComplexTensor rm, bool kahler,
                                                           bool quaternion) {
  require_rank4(rm);
  require_same_dim(space.dim(), rm.dim(), "curvature tensor");
  AlgebraicCurvatureTensor out(Unchecked{}, std::move(space), std::move(rm));
  out.kahler_ = kahler;
  out.quaternion_ = quaternion;
  return out;
}

double AlgebraicCurvatureTensor::operator()(int x, int y, int z, int w) const {
  return rm_[idx4(dim(), x, y, z, w)].real();
}

AlgebraicCurvatureTensor AlgebraicCurvatureTensor::as_kahler(const Tolerance& tol) const {
  const double defect = kahler_defect();
  if (defect > tol.abs * scale_of(rm_)) {
    throw StructureError("tensor is not Kähler: |Rm(J.,J.,.,.) − Rm| = " + std::to_string(defect));
  }
  AlgebraicCurvatureTensor out = *this;
  out.kahler_ = true;
  return out;
}

AlgebraicCurvatureTensor AlgebraicCurvatureTensor::as_quaternion(const Tolerance& tol) const {
  const auto algebra = HolonomySubalgebra::build(space_, AlgebraKind::SP_SP1);
  const CurvatureOperator op = to_operator(*this);
  const double leak = complement_leakage(op, algebra);
  if (leak > std::max(tol.abs, tol.rel * op.matrix().norm())) {
    throw LeakageError("tensor is not quaternion-Kähler: operator leaks onto (sp(m)+sp(1))^perp, residual " +
                           std::to_string(leak),
                       leak);
  }
  AlgebraicCurvatureTensor out = *this;
  out.quaternion_ = true;
  return out;
}

double AlgebraicCurvatureTensor::symmetry_defect() const { return bochner::symmetry_defect(rm_); }
double AlgebraicCurvatureTensor::bianchi_defect() const { return bochner::bianchi_defect(rm_); }
double AlgebraicCurvatureTensor::kahler_defect() const {
  return bochner::kahler_defect(rm_, space_.complex_structure());
}

AlgebraicCurvatureTensor AlgebraicCurvatureTensor::operator+(const AlgebraicCurvatureTensor& other) const {
  require_same_dim(dim(), other.dim(), "curvature sum");
  return trusted(space_, rm_ + other.rm_, kahler_ && other.kahler_, quaternion_ && other.quaternion_);
}

AlgebraicCurvatureTensor AlgebraicCurvatureTensor::operator-(const AlgebraicCurvatureTensor& other) const {
  require_same_dim(dim(), other.dim(), "curvature difference");
  return trusted(space_, rm_ - other.rm_, kahler_ && other.kahler_, quaternion_ && other.quaternion_);
}

AlgebraicCurvatureTensor AlgebraicCurvatureTensor::operator*(double s) const {
  return trusted(space_, rm_ * cplx(s), kahler_, quaternion_);
}

CurvatureOperator::CurvatureOperator(EuclideanSpace space, Eigen::MatrixXd matrix, const Tolerance& tol)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  const int p = space_.bivector_dim();
  if (matrix_.rows() != p || matrix_.cols() != p) {
    throw DimensionError("curvature operator must be " + std::to_string(p) + "x" + std::to_string(p));
  }
  const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
  if ((matrix_ - matrix_.transpose()).cwiseAbs().maxCoeff() > tol.abs * scale) {
    throw SymmetryError("curvature operator must be symmetric");
  }
}

Bivector CurvatureOperator::apply(const Bivector& b) const {
  require_same_dim(space_.dim(), b.dim(), "curvature operator");
  return Bivector(b.dim(), matrix_ * b.coeffs());
}

CurvatureOperator to_operator(const AlgebraicCurvatureTensor& rm) {
  const int d = rm.dim();
  const int p = rm.space().bivector_dim();
  Eigen::MatrixXd m(p, p);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = k + 1; l < d; ++l) m(pair_index(d, i, j), pair_index(d, k, l)) = rm(i, j, k, l);
  return CurvatureOperator(rm.space(), std::move(m));
}

ComplexTensor operator_to_tensor(int dim, const Eigen::MatrixXd& op) {
  const int d = dim;
  ComplexTensor t(d, 4);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = k + 1; l < d; ++l) {
          const double v = op(pair_index(d, i, j), pair_index(d, k, l));
          t[idx4(d, i, j, k, l)] = v;
          t[idx4(d, j, i, k, l)] = -v;
          t[idx4(d, i, j, l, k)] = -v;
          t[idx4(d, j, i, l, k)] = v;
        }
  return t;
}

AlgebraicCurvatureTensor from_operator(const CurvatureOperator& op, const Tolerance& tol) {
  return AlgebraicCurvatureTensor(op.space(), operator_to_tensor(op.space().dim(), op.matrix()), tol);
}

Eigen::MatrixXd ricci(const AlgebraicCurvatureTensor& rm) {
  const int d = rm.dim();
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(d, d);
  for (int y = 0; y < d; ++y)
    for (int w = 0; w < d; ++w)
      for (int i = 0; i < d; ++i) r(y, w) += rm(i, y, i, w);
  return r;
}

double scalar_curvature(const AlgebraicCurvatureTensor& rm) { return ricci(rm).trace(); }

Eigen::MatrixXd tf_ricci(const AlgebraicCurvatureTensor& rm) {
  const int d = rm.dim();
  const Eigen::MatrixXd r = ricci(rm);
  return r - (r.trace() / d) * Eigen::MatrixXd::Identity(d, d);
}

Eigen::MatrixXd kahler_form_matrix(const EuclideanSpace& space) {
  // ω(e_x, e_y) = g(J e_x, e_y) = J(y, x)
  return space.complex_structure().transpose();
}

Eigen::MatrixXd ricci_form(const AlgebraicCurvatureTensor& rm) {
  const Eigen::MatrixXd& j = rm.space().complex_structure();
  return j.transpose() * ricci(rm);
}

Eigen::MatrixXd primitive_ricci_form(const AlgebraicCurvatureTensor& rm) {
  const int n = rm.space().complex_dim();
  return ricci_form(rm) - (scalar_curvature(rm) / (2.0 * n)) * kahler_form_matrix(rm.space());
}

ComplexTensor kulkarni_nomizu(const Eigen::MatrixXd& h, const Eigen::MatrixXd& k) {
  if (h.rows() != h.cols() || k.rows() != k.cols()) throw DimensionError("kulkarni_nomizu expects square matrices");
  require_same_dim(static_cast<int>(h.rows()), static_cast<int>(k.rows()), "kulkarni_nomizu");
  const int d = static_cast<int>(h.rows());
  ComplexTensor t(d, 4);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z)
        for (int w = 0; w < d; ++w)
          t[idx4(d, x, y, z, w)] = h(x, z) * k(y, w) + h(y, w) * k(x, z) - h(x, w) * k(y, z) - h(y, z) * k(x, w);
  return t;
}

ComplexTensor outer_product(const Eigen::MatrixXd& h, const Eigen::MatrixXd& k) {
  require_same_dim(static_cast<int>(h.rows()), static_cast<int>(k.rows()), "outer_product");
  const int d = static_cast<int>(h.rows());
  ComplexTensor t(d, 4);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z)
        for (int w = 0; w < d; ++w) t[idx4(d, x, y, z, w)] = h(x, y) * k(z, w);
  return t;
}

namespace {

Eigen::MatrixXd hpm_operator(const EuclideanSpace& space) {
  const int d = space.dim();
  const int p = space.bivector_dim();
  const auto& q = space.quaternionic_structure();
  const auto omegas = quaternionic_bivectors(space);
  const Eigen::MatrixXd e = Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd m(p, p);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const Bivector xy = Bivector::basis(d, i, j);
      Bivector v = xy;
      for (const auto* a : {&q.I, &q.J, &q.K}) v = v + Bivector::wedge(*a * e.col(i), *a * e.col(j));
      for (const auto& w : omegas) v = v + w * (2.0 * xy.dot(w));
      m.col(pair_index(d, i, j)) = v.coeffs();
    }
  }
  return m;
}

}  // namespace

AlgebraicCurvatureTensor model(ModelKind kind, const EuclideanSpace& space, double c) {
  const int d = space.dim();
  switch (kind) {
    case ModelKind::Flat:
      return AlgebraicCurvatureTensor::zero(space);
    case ModelKind::ConstantSectional: {
      const Eigen::MatrixXd g = Eigen::MatrixXd::Identity(d, d);
      return AlgebraicCurvatureTensor::trusted(space, kulkarni_nomizu(g, g) * cplx(0.5 * c));
    }
    case ModelKind::CHSC:
      if (!space.has_complex_structure()) throw StructureError("chsc model requires a complex structure");
      return AlgebraicCurvatureTensor::trusted(space, chsc_base(space) * cplx(0.25 * c), true, false);
    case ModelKind::HPm: {
      if (!space.has_quaternionic_structure()) throw StructureError("hpm model requires a quaternionic structure");
      const Eigen::MatrixXd op = hpm_operator(space) * c;
      return AlgebraicCurvatureTensor::trusted(space, operator_to_tensor(d, op), false, true);
    }
  }
  throw DomainError("unknown model kind");
}

ModelKind parse_model_kind(const std::string& name) {
  if (name == "flat") return ModelKind::Flat;
  if (name == "constant_sectional" || name == "constant-sectional" || name == "sphere") {
    return ModelKind::ConstantSectional;
  }
  if (name == "chsc") return ModelKind::CHSC;
  if (name == "hpm") return ModelKind::HPm;
  throw DomainError("unknown model '" + name + "' (expected flat, constant_sectional, chsc or hpm)");
}

ComplexTensor chsc_part(const AlgebraicCurvatureTensor& rm) {
  const int n = rm.space().complex_dim();
  const double scal = scalar_curvature(rm);
  return chsc_base(rm.space()) * cplx(scal / (4.0 * n * (n + 1)));
}

KahlerDecomposition kahler_decompose(const AlgebraicCurvatureTensor& rm, const Tolerance& tol) {
  const EuclideanSpace& space = rm.space();
  if (!space.has_complex_structure()) throw StructureError("Kähler decomposition requires a complex structure");
  const double defect = rm.kahler_defect();
  if (defect > tol.abs * scale_of(rm.tensor())) {
    throw StructureError("Kähler decomposition of a non-Kähler tensor (defect " + std::to_string(defect) + ")");
  }
  const int d = space.dim();
  const int n = space.complex_dim();
  const Eigen::MatrixXd g = Eigen::MatrixXd::Identity(d, d);
  const Eigen::MatrixXd om = kahler_form_matrix(space);

  KahlerDecomposition out;
  const Eigen::MatrixXd ric = ricci(rm);
  out.scal = ric.trace();
  out.tf_ricci = ric - (out.scal / (2.0 * n)) * g;
  out.ricci_form = space.complex_structure().transpose() * ric;
  out.primitive_ricci_form = out.ricci_form - (out.scal / (2.0 * n)) * om;
  out.scalar_part = chsc_base(space) * cplx(out.scal / (4.0 * n * (n + 1)));

  const Eigen::MatrixXd& rho0 = out.primitive_ricci_form;
  ComplexTensor rp = kulkarni_nomizu(out.tf_ricci, g);
  rp += kulkarni_nomizu(rho0, om);
  rp += outer_product(rho0, om) * cplx(2.0);
  rp += outer_product(om, rho0) * cplx(2.0);
  rp *= cplx(1.0 / (2.0 * (n + 2)));
  out.ricci_part = std::move(rp);

  out.bochner = rm.tensor() - out.scalar_part - out.ricci_part;
  return out;
}

BochnerTraces bochner_traces(const ComplexTensor& b, const Eigen::MatrixXd& j) {
  require_rank4(b);
  const int d = b.dim();
  require_same_dim(d, static_cast<int>(j.rows()), "bochner_traces");
  BochnerTraces out;
  for (int y = 0; y < d; ++y)
    for (int w = 0; w < d; ++w) {
      cplx s = 0.0;
      for (int i = 0; i < d; ++i) s += b[idx4(d, i, y, i, w)];
      out.ricci_trace = std::max(out.ricci_trace, std::abs(s));
    }
  for (int z = 0; z < d; ++z)
    for (int w = 0; w < d; ++w) {
      cplx s = 0.0;
      for (int i = 0; i < d; ++i)
        for (int a = 0; a < d; ++a)
          if (j(a, i) != 0.0) s += j(a, i) * b[idx4(d, i, a, z, w)];
      out.kahler_trace = std::max(out.kahler_trace, std::abs(s));
    }
  return out;
}

QuaternionDecomposition quaternion_decompose(const AlgebraicCurvatureTensor& rm, const Tolerance& tol) {
  const EuclideanSpace& space = rm.space();
  const auto algebra = HolonomySubalgebra::build(space, AlgebraKind::SP_SP1);
  const CurvatureOperator op = to_operator(rm);
  QuaternionDecomposition out;
  out.leakage = complement_leakage(op, algebra);
  if (out.leakage > std::max(tol.abs, tol.rel * op.matrix().norm())) {
    throw LeakageError("operator does not vanish on (sp(m)+sp(1))^perp: residual " + std::to_string(out.leakage),
                       out.leakage);
  }
  const int m = space.quaternionic_dim();
  out.hp_coefficient = scalar_curvature(rm) / (16.0 * m * (m + 2));
  out.r0 = rm.tensor() - model(ModelKind::HPm, space, out.hp_coefficient).tensor();
  return out;
}

double complement_leakage(const CurvatureOperator& op, const HolonomySubalgebra& algebra) {
  require_same_dim(op.space().dim(), algebra.space().dim(), "complement_leakage");
  return (op.matrix() * algebra.complement_projector()).norm();
}

RestrictedSpectrum restricted_spectrum(const CurvatureOperator& op, const HolonomySubalgebra& algebra) {
  require_same_dim(op.space().dim(), algebra.space().dim(), "restricted_spectrum");
  const Eigen::MatrixXd& g = algebra.coefficient_matrix();
  RestrictedSpectrum out;
  out.gram = g * op.matrix() * g.transpose();
  out.gram = 0.5 * (out.gram + out.gram.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.gram);
  out.eigenvalues = es.eigenvalues();
  out.eigenvectors = es.eigenvectors();
  out.leakage = complement_leakage(op, algebra);
  return out;
}

CurvatureSampler::CurvatureSampler(EuclideanSpace space, const Eigen::MatrixXd& algebra_rows)
    : space_(std::move(space)) {
  const int d = space_.dim();
  const int p = space_.bivector_dim();
  if (algebra_rows.cols() != p) throw DimensionError("sampler: algebra rows must live in Λ²V");
  const int n = static_cast<int>(algebra_rows.rows());

  // orthonormal parameters of Sym²(g): E_aa and (E_ab + E_ba)/√2
  std::vector<Eigen::MatrixXd> params;
  params.reserve(static_cast<std::size_t>(n * (n + 1) / 2));
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
      if (a == b) {
        s(a, a) = 1.0;
      } else {
        s(a, b) = s(b, a) = 1.0 / std::sqrt(2.0);
      }
      params.push_back(algebra_rows.transpose() * s * algebra_rows);
    }
  }

  // The Bianchi sum of an element of Sym²(Λ²V) is totally antisymmetric: one row per i<j<k<l.
  std::vector<std::array<int, 4>> quads;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k)
        for (int l = k + 1; l < d; ++l) quads.push_back({i, j, k, l});

  const auto cols = static_cast<Eigen::Index>(params.size());
  Eigen::MatrixXd constraint(static_cast<Eigen::Index>(std::max<std::size_t>(quads.size(), 1)), cols);
  constraint.setZero();
  for (Eigen::Index c = 0; c < cols; ++c) {
    const Eigen::MatrixXd& r = params[static_cast<std::size_t>(c)];
    for (std::size_t row = 0; row < quads.size(); ++row) {
      const auto [i, j, k, l] = quads[row];
      constraint(static_cast<Eigen::Index>(row), c) =
          op_entry(r, d, i, j, k, l) + op_entry(r, d, j, k, i, l) + op_entry(r, d, k, i, j, l);
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(constraint, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = 1e-9 * std::max(1.0, sv.size() > 0 ? sv[0] : 0.0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv[rank] > cutoff) ++rank;
  const Eigen::MatrixXd& v = svd.matrixV();
  for (Eigen::Index col = rank; col < cols; ++col) {
    Eigen::MatrixXd op = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index c = 0; c < cols; ++c) op += v(c, col) * params[static_cast<std::size_t>(c)];
    basis_.push_back(std::move(op));
  }
}

CurvatureSampler::CurvatureSampler(const HolonomySubalgebra& algebra)
    : CurvatureSampler(algebra.space(), algebra.coefficient_matrix()) {}

AlgebraicCurvatureTensor CurvatureSampler::sample(Rng& rng) const {
  const int p = space_.bivector_dim();
  Eigen::MatrixXd op = Eigen::MatrixXd::Zero(p, p);
  for (const auto& b : basis_) op += rng.normal() * b;
  return AlgebraicCurvatureTensor::trusted(space_, operator_to_tensor(space_.dim(), op));
}

Eigen::MatrixXd symplectic_commutant_rows(const EuclideanSpace& space) {
  const int d = space.dim();
  const int p = space.bivector_dim();
  const auto& q = space.quaternionic_structure();
  std::vector<Eigen::VectorXd> rows;
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      const Eigen::MatrixXd m = Bivector::basis(d, a, b).matrix();
      Eigen::VectorXd w = Bivector::from_matrix(0.25 * (m - q.I * m * q.I - q.J * m * q.J - q.K * m * q.K)).coeffs();
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& r : rows) w -= r.dot(w) * r;
      const double nrm = w.norm();
      if (nrm > 1e-10) rows.push_back(w / nrm);
    }
  }
  const int m = d / 4;
  if (static_cast<int>(rows.size()) != m * (2 * m + 1)) throw Error("sp(m) commutant has unexpected dimension");
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), p);
  for (std::size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
  return out;
}

namespace {

enum class SamplerKind { SO, U, SP };

bool canonical(const EuclideanSpace& space, SamplerKind kind) {
  switch (kind) {
    case SamplerKind::SO: return true;
    case SamplerKind::U: return space.block_complex_structure();
    case SamplerKind::SP: {
      if (!space.has_quaternionic_structure()) return false;
      const auto ref = block_quaternionic_structure(space.dim());
      const auto& q = space.quaternionic_structure();
      return q.I == ref.I && q.J == ref.J && q.K == ref.K;
    }
  }
  return false;
}

CurvatureSampler make_sampler(const EuclideanSpace& space, SamplerKind kind) {
  switch (kind) {
    case SamplerKind::SO: return CurvatureSampler(HolonomySubalgebra::build(space, AlgebraKind::SO));
    case SamplerKind::U: return CurvatureSampler(HolonomySubalgebra::build(space, AlgebraKind::U));
    case SamplerKind::SP: break;
  }
  return CurvatureSampler(space, symplectic_commutant_rows(space));
}

// Null-space bases are expensive (an SVD per construction); canonical spaces share one.
std::shared_ptr<const CurvatureSampler> sampler_for(const EuclideanSpace& space, SamplerKind kind) {
  if (!canonical(space, kind)) return std::make_shared<const CurvatureSampler>(make_sampler(space, kind));
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const CurvatureSampler>> cache;
  const std::pair<int, int> key{space.dim(), static_cast<int>(kind)};
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const CurvatureSampler>(make_sampler(space, kind));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(built)).first->second;
}

}  // namespace

AlgebraicCurvatureTensor random_curvature(const EuclideanSpace& space, Rng& rng) {
  const auto s = sampler_for(space, SamplerKind::SO)->sample(rng);
  return AlgebraicCurvatureTensor::trusted(space, s.tensor());
}

AlgebraicCurvatureTensor random_kahler_curvature(const EuclideanSpace& space, Rng& rng) {
  const auto s = sampler_for(space, SamplerKind::U)->sample(rng);
  return AlgebraicCurvatureTensor::trusted(space, s.tensor(), true, false);
}

AlgebraicCurvatureTensor random_kahler_einstein_curvature(const EuclideanSpace& space, Rng& rng) {
  const auto k = random_kahler_curvature(space, rng);
  const auto dec = kahler_decompose(k);
  return AlgebraicCurvatureTensor::trusted(space, dec.scalar_part + dec.bochner, true, false);
}

AlgebraicCurvatureTensor random_hyperkahler_curvature(const EuclideanSpace& space, Rng& rng) {
  const auto s = sampler_for(space, SamplerKind::SP)->sample(rng);
  return AlgebraicCurvatureTensor::trusted(space, s.tensor(), false, true);
}

double relative_deviation(double a, double b, double floor) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale < floor) return 0.0;
  return std::abs(a - b) / scale;
}

KahlerSharpIdentity kahler_sharp_identity(const AlgebraicCurvatureTensor& rm, const Tolerance& tol) {
  const EuclideanSpace& space = rm.space();
  if (!space.has_complex_structure()) throw StructureError("Kähler identity requires a complex structure");
  if (rm.kahler_defect() > tol.abs * scale_of(rm.tensor())) throw StructureError("Kähler identity: input is not Kähler");
  const int n = space.complex_dim();
  const auto u = HolonomySubalgebra::build(space, AlgebraKind::U);

  KahlerSharpIdentity out;
  out.sharp_norm_sq_tensor = sharp_norm_squared(rm.tensor(), u);
  out.sharp_norm_sq = out.sharp_norm_sq_tensor / 4.0;
  out.tf_norm_sq = (rm.tensor() - chsc_part(rm)).norm_squared() / 4.0;
  out.tf_ricci_norm_sq = tf_ricci(rm).squaredNorm();

  const Eigen::MatrixXd& g = u.coefficient_matrix();
  const Eigen::MatrixXd ru = g * to_operator(rm).matrix() * g.transpose();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(ru.rows(), ru.cols());
  out.alt_tf_operator_norm_sq = (ru - (ru.trace() / static_cast<double>(ru.rows())) * id).squaredNorm();

  out.rhs = 4.0 * (n + 1) * out.tf_norm_sq - 4.0 * out.tf_ricci_norm_sq;
  out.deviation = relative_deviation(out.sharp_norm_sq, out.rhs, 1e-10);
  return out;
}

QuaternionSharpIdentity quaternion_sharp_identity(const AlgebraicCurvatureTensor& rm, const Tolerance& tol) {
  const EuclideanSpace& space = rm.space();
  const auto algebra = HolonomySubalgebra::build(space, AlgebraKind::SP_SP1);
  const auto dec = quaternion_decompose(rm, tol);
  const int m = space.quaternionic_dim();

  QuaternionSharpIdentity out;
  out.sharp_norm_sq = sharp_norm_squared(rm.tensor(), algebra) / 4.0;
  out.r0_norm_sq = dec.r0.norm_squared() / 4.0;
  out.coefficient = 4.0 / 3.0 * (3.0 * m + 4.0);
  out.rhs = out.coefficient * out.r0_norm_sq;
  out.observed_coefficient =
      out.r0_norm_sq > 0.0 ? out.sharp_norm_sq / out.r0_norm_sq : std::numeric_limits<double>::quiet_NaN();
  out.deviation = relative_deviation(out.sharp_norm_sq, out.rhs, 1e-10);
  return out;
}

SharpNormReport sharp_norm_identities(const AlgebraicCurvatureTensor& rm, const Tolerance& tol) {
  if (!rm.kahler() && !rm.quaternion()) {
    throw StructureError("sharp-norm identities need a tensor flagged kahler or quaternion");
  }
  SharpNormReport out;
  if (rm.kahler()) out.kahler = kahler_sharp_identity(rm, tol);
  if (rm.quaternion()) out.quaternion = quaternion_sharp_identity(rm, tol);
  return out;
}

}  // namespace bochner
