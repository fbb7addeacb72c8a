#include "bochner/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bochner {

bool Tolerance::close(double a, double b) const {
  const double diff = std::abs(a - b);
  return diff <= abs || diff <= rel * std::max(std::abs(a), std::abs(b));
}

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                         std::to_string(b) + ")");
  }
}

Eigen::MatrixXd block_complex_structure(int real_dim) {
  if (real_dim <= 0 || real_dim % 2 != 0) {
    throw StructureError("complex structure requires a positive even dimension, got " + std::to_string(real_dim));
  }
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(real_dim, real_dim);
  for (int i = 0; i < real_dim; i += 2) {
    j(i + 1, i) = 1.0;
    j(i, i + 1) = -1.0;
  }
  return j;
}

QuaternionicStructure block_quaternionic_structure(int real_dim) {
  if (real_dim <= 0 || real_dim % 4 != 0) {
    throw StructureError("quaternionic structure requires dimension divisible by 4, got " +
                         std::to_string(real_dim));
  }
  QuaternionicStructure q{Eigen::MatrixXd::Zero(real_dim, real_dim), Eigen::MatrixXd::Zero(real_dim, real_dim),
                          Eigen::MatrixXd::Zero(real_dim, real_dim)};
  for (int b = 0; b < real_dim / 4; ++b) {
    const int e = 4 * b, ie = e + 1, je = e + 2, ke = e + 3;
    // I: e -> Ie -> -e, Je -> Ke -> -Je
    q.I(ie, e) = 1;
    q.I(e, ie) = -1;
    q.I(ke, je) = 1;
    q.I(je, ke) = -1;
    // J: e -> Je -> -e, Ie -> -Ke, Ke -> Ie
    q.J(je, e) = 1;
    q.J(e, je) = -1;
    q.J(ke, ie) = -1;
    q.J(ie, ke) = 1;
  }
  q.K = q.I * q.J;
  return q;
}

namespace {

bool is_complex_structure(const Eigen::MatrixXd& j, double tol) {
  const auto n = j.rows();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  return (j * j + id).cwiseAbs().maxCoeff() <= tol && (j.transpose() * j - id).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

EuclideanSpace::EuclideanSpace(int real_dim) : EuclideanSpace(real_dim, std::nullopt, std::nullopt) {}

EuclideanSpace::EuclideanSpace(int real_dim, std::optional<Eigen::MatrixXd> complex_structure,
                               std::optional<QuaternionicStructure> quaternionic_structure, const Tolerance& tol)
    : dim_(real_dim), complex_(std::move(complex_structure)), quaternionic_(std::move(quaternionic_structure)) {
  if (dim_ <= 0 || dim_ % 2 != 0) {
    throw DimensionError("real dimension must be a positive even integer, got " + std::to_string(dim_));
  }
  if (complex_) {
    if (complex_->rows() != dim_ || complex_->cols() != dim_) {
      throw DimensionError("complex structure has the wrong shape");
    }
    if (!is_complex_structure(*complex_, tol.abs)) {
      throw StructureError("complex structure must satisfy J^2 = -Id and J^T J = Id");
    }
  }
  if (quaternionic_) {
    if (dim_ % 4 != 0) {
      throw StructureError("quaternionic structure requires dimension divisible by 4");
    }
    const auto& q = *quaternionic_;
    for (const auto* m : {&q.I, &q.J, &q.K}) {
      if (m->rows() != dim_ || m->cols() != dim_ || !is_complex_structure(*m, tol.abs)) {
        throw StructureError("quaternionic structure: I, J, K must be orthogonal with square -Id");
      }
    }
    if ((q.I * q.J - q.K).cwiseAbs().maxCoeff() > tol.abs || (q.J * q.I + q.K).cwiseAbs().maxCoeff() > tol.abs) {
      throw StructureError("quaternionic structure must satisfy IJ = -JI = K");
    }
  }
}

EuclideanSpace EuclideanSpace::complex(int n) {
  return EuclideanSpace(2 * n, bochner::block_complex_structure(2 * n));
}

EuclideanSpace EuclideanSpace::quaternionic(int m) {
  auto q = block_quaternionic_structure(4 * m);
  Eigen::MatrixXd j = q.I;
  return EuclideanSpace(4 * m, std::move(j), std::move(q));
}

bool EuclideanSpace::block_complex_structure() const {
  return complex_ && (*complex_ - bochner::block_complex_structure(dim_)).cwiseAbs().maxCoeff() == 0.0;
}

const Eigen::MatrixXd& EuclideanSpace::complex_structure() const {
  if (!complex_) throw StructureError("space has no complex structure");
  return *complex_;
}

const QuaternionicStructure& EuclideanSpace::quaternionic_structure() const {
  if (!quaternionic_) throw StructureError("space has no quaternionic structure");
  return *quaternionic_;
}

// ---------------------------------------------------------------------------
// Bivector

Bivector::Bivector(int dim) : dim_(dim), coeffs_(Eigen::VectorXd::Zero(dim * (dim - 1) / 2)) {}

Bivector::Bivector(int dim, Eigen::VectorXd coeffs) : dim_(dim), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != dim * (dim - 1) / 2) {
    throw DimensionError("bivector coefficient count does not match dimension " + std::to_string(dim));
  }
}

Bivector Bivector::basis(int dim, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= dim || j >= dim) throw DomainError("invalid bivector basis indices");
  Bivector b(dim);
  if (i < j) {
    b.coeffs_[pair_index(dim, i, j)] = 1.0;
  } else {
    b.coeffs_[pair_index(dim, j, i)] = -1.0;
  }
  return b;
}

Bivector Bivector::wedge(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  require_same_dim(static_cast<int>(x.size()), static_cast<int>(y.size()), "wedge");
  const int d = static_cast<int>(x.size());
  Bivector b(d);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      b.coeffs_[pair_index(d, i, j)] = x[i] * y[j] - x[j] * y[i];
    }
  }
  return b;
}

Bivector Bivector::from_matrix(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw DimensionError("bivector matrix must be square");
  const int d = static_cast<int>(m.rows());
  Bivector b(d);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      b.coeffs_[pair_index(d, i, j)] = 0.5 * (m(j, i) - m(i, j));
    }
  }
  return b;
}

double Bivector::coeff(int i, int j) const {
  if (i == j) return 0.0;
  return i < j ? coeffs_[pair_index(dim_, i, j)] : -coeffs_[pair_index(dim_, j, i)];
}

Eigen::MatrixXd Bivector::matrix() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int j = i + 1; j < dim_; ++j) {
      const double c = coeffs_[pair_index(dim_, i, j)];
      m(j, i) += c;
      m(i, j) -= c;
    }
  }
  return m;
}

double Bivector::dot(const Bivector& other) const {
  require_same_dim(dim_, other.dim_, "bivector inner product");
  return coeffs_.dot(other.coeffs_);
}

Bivector Bivector::operator+(const Bivector& other) const {
  require_same_dim(dim_, other.dim_, "bivector sum");
  return Bivector(dim_, coeffs_ + other.coeffs_);
}

Bivector Bivector::operator-(const Bivector& other) const {
  require_same_dim(dim_, other.dim_, "bivector difference");
  return Bivector(dim_, coeffs_ - other.coeffs_);
}

Bivector Bivector::operator*(double s) const { return Bivector(dim_, coeffs_ * s); }

Eigen::VectorXd bivector_action(const Bivector& l, const Eigen::VectorXd& v) {
  require_same_dim(l.dim(), static_cast<int>(v.size()), "bivector_action");
  return l.matrix() * v;
}

Bivector lie_bracket(const Bivector& a, const Bivector& b) {
  require_same_dim(a.dim(), b.dim(), "lie_bracket");
  const Eigen::MatrixXd ma = a.matrix();
  const Eigen::MatrixXd mb = b.matrix();
  return Bivector::from_matrix(ma * mb - mb * ma);
}

// ---------------------------------------------------------------------------
// ComplexTensor

namespace {

std::size_t ipow(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

}  // namespace

ComplexTensor::ComplexTensor(int dim, int rank) : dim_(dim), rank_(rank) {
  if (dim <= 0 || rank < 0) throw DimensionError("tensor needs positive dimension and nonnegative rank");
  data_.assign(ipow(dim, rank), cplx{0.0, 0.0});
}

ComplexTensor::ComplexTensor(int dim, int rank, std::vector<cplx> components)
    : dim_(dim), rank_(rank), data_(std::move(components)) {
  if (dim <= 0 || rank < 0) throw DimensionError("tensor needs positive dimension and nonnegative rank");
  if (data_.size() != ipow(dim, rank)) {
    throw DimensionError("component count " + std::to_string(data_.size()) + " does not equal d^k = " +
                         std::to_string(ipow(dim, rank)));
  }
}

ComplexTensor ComplexTensor::scalar(cplx value, int dim) {
  ComplexTensor t(dim, 0);
  t.data_[0] = value;
  return t;
}

ComplexTensor ComplexTensor::covector(const Eigen::VectorXcd& v) {
  ComplexTensor t(static_cast<int>(v.size()), 1);
  for (Eigen::Index i = 0; i < v.size(); ++i) t.data_[static_cast<std::size_t>(i)] = v[i];
  return t;
}

ComplexTensor ComplexTensor::from_matrix(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw DimensionError("rank-2 tensor needs a square matrix");
  const int d = static_cast<int>(m.rows());
  ComplexTensor t(d, 2);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) t.data_[static_cast<std::size_t>(i * d + j)] = m(i, j);
  return t;
}

ComplexTensor ComplexTensor::from_real_matrix(const Eigen::MatrixXd& m) {
  return from_matrix(m.cast<cplx>());
}

std::size_t ComplexTensor::flat_index(std::span<const int> index) const {
  if (static_cast<int>(index.size()) != rank_) throw DimensionError("multi-index length does not match rank");
  std::size_t flat = 0;
  for (int i : index) {
    if (i < 0 || i >= dim_) throw DomainError("tensor index out of range");
    flat = flat * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  }
  return flat;
}

void ComplexTensor::unflatten(std::size_t flat, std::span<int> index) const {
  for (int s = rank_ - 1; s >= 0; --s) {
    index[static_cast<std::size_t>(s)] = static_cast<int>(flat % static_cast<std::size_t>(dim_));
    flat /= static_cast<std::size_t>(dim_);
  }
}

std::vector<std::size_t> ComplexTensor::strides() const {
  std::vector<std::size_t> s(static_cast<std::size_t>(rank_), 1);
  for (int i = rank_ - 2; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i) + 1] * static_cast<std::size_t>(dim_);
  }
  return s;
}

cplx& ComplexTensor::at(std::span<const int> index) { return data_[flat_index(index)]; }
const cplx& ComplexTensor::at(std::span<const int> index) const { return data_[flat_index(index)]; }

Eigen::MatrixXcd ComplexTensor::to_matrix() const {
  if (rank_ != 2) throw DimensionError("to_matrix requires a rank-2 tensor");
  Eigen::MatrixXcd m(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m(i, j) = data_[static_cast<std::size_t>(i * dim_ + j)];
  return m;
}

double ComplexTensor::norm_squared() const {
  double s = 0.0;
  for (const auto& c : data_) s += std::norm(c);
  return s;
}

double ComplexTensor::max_abs() const {
  double m = 0.0;
  for (const auto& c : data_) m = std::max(m, std::abs(c));
  return m;
}

double ComplexTensor::max_imag() const {
  double m = 0.0;
  for (const auto& c : data_) m = std::max(m, std::abs(c.imag()));
  return m;
}

bool ComplexTensor::is_real(double tol) const { return max_imag() <= tol; }

ComplexTensor ComplexTensor::conj() const {
  ComplexTensor t = *this;
  for (auto& c : t.data_) c = std::conj(c);
  return t;
}

ComplexTensor ComplexTensor::real_part() const {
  ComplexTensor t = *this;
  for (auto& c : t.data_) c = cplx{c.real(), 0.0};
  return t;
}

ComplexTensor ComplexTensor::permuted(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != rank_) throw DimensionError("permutation length does not match rank");
  ComplexTensor out(dim_, rank_);
  std::vector<int> idx(static_cast<std::size_t>(rank_)), src(static_cast<std::size_t>(rank_));
  for (std::size_t f = 0; f < data_.size(); ++f) {
    unflatten(f, idx);
    for (int s = 0; s < rank_; ++s) {
      src[static_cast<std::size_t>(s)] = idx[static_cast<std::size_t>(perm[static_cast<std::size_t>(s)])];
    }
    // out(x_1..x_k) = T(x_{perm[0]}, ...): src holds the argument list for T
    out.data_[f] = data_[flat_index(src)];
  }
  return out;
}

ComplexTensor& ComplexTensor::operator+=(const ComplexTensor& other) {
  require_same_dim(dim_, other.dim_, "tensor sum");
  if (rank_ != other.rank_) throw DimensionError("tensor sum: rank mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexTensor& ComplexTensor::operator-=(const ComplexTensor& other) {
  require_same_dim(dim_, other.dim_, "tensor difference");
  if (rank_ != other.rank_) throw DimensionError("tensor difference: rank mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexTensor& ComplexTensor::operator*=(cplx s) {
  for (auto& c : data_) c *= s;
  return *this;
}

ComplexTensor operator+(ComplexTensor a, const ComplexTensor& b) { return a += b; }
ComplexTensor operator-(ComplexTensor a, const ComplexTensor& b) { return a -= b; }
ComplexTensor operator*(cplx s, ComplexTensor a) { return a *= s; }
ComplexTensor operator*(ComplexTensor a, cplx s) { return a *= s; }

double max_abs_diff(const ComplexTensor& a, const ComplexTensor& b) { return (a - b).max_abs(); }

cplx hermitian_inner(const ComplexTensor& t, const ComplexTensor& s) {
  require_same_dim(t.dim(), s.dim(), "hermitian_inner");
  if (t.rank() != s.rank()) throw DimensionError("hermitian_inner: rank mismatch");
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < t.size(); ++i) acc += t[i] * std::conj(s[i]);
  return acc;
}

ComplexTensor tensor_product(const ComplexTensor& a, const ComplexTensor& b) {
  if (a.rank() == 0) return a[0] * b;
  if (b.rank() == 0) return b[0] * a;
  require_same_dim(a.dim(), b.dim(), "tensor_product");
  ComplexTensor out(a.dim(), a.rank() + b.rank());
  const std::size_t nb = b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == cplx{}) continue;
    for (std::size_t j = 0; j < nb; ++j) out[i * nb + j] = a[i] * b[j];
  }
  return out;
}

ComplexTensor act_on_tensor(const Eigen::MatrixXd& l, const ComplexTensor& t) {
  require_same_dim(static_cast<int>(l.rows()), t.dim(), "act_on_tensor");
  const int d = t.dim();
  const int k = t.rank();
  ComplexTensor out(d, k);
  if (k == 0) return out;
  const auto strides = t.strides();
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (std::size_t f = 0; f < t.size(); ++f) {
    t.unflatten(f, idx);
    cplx acc{0.0, 0.0};
    for (int s = 0; s < k; ++s) {
      const int a = idx[static_cast<std::size_t>(s)];
      const std::size_t base = f - static_cast<std::size_t>(a) * strides[static_cast<std::size_t>(s)];
      // -T(..., L e_a, ...) with L e_a = Σ_b L(b, a) e_b
      for (int b = 0; b < d; ++b) {
        const double m = l(b, a);
        if (m != 0.0) acc -= m * t[base + static_cast<std::size_t>(b) * strides[static_cast<std::size_t>(s)]];
      }
    }
    out[f] = acc;
  }
  return out;
}

ComplexTensor act_on_tensor(const Bivector& l, const ComplexTensor& t) {
  require_same_dim(l.dim(), t.dim(), "act_on_tensor");
  return act_on_tensor(l.matrix(), t);
}

double form_norm_squared(const ComplexTensor& t) {
  double fact = 1.0;
  for (int i = 2; i <= t.rank(); ++i) fact *= i;
  return t.norm_squared() / fact;
}

double antisymmetry_defect(const ComplexTensor& t) {
  double defect = 0.0;
  std::vector<int> perm(static_cast<std::size_t>(t.rank()));
  for (int s = 0; s + 1 < t.rank(); ++s) {
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[static_cast<std::size_t>(s)], perm[static_cast<std::size_t>(s) + 1]);
    defect = std::max(defect, (t + t.permuted(perm)).max_abs());
  }
  return defect;
}

ComplexTensor pull_back_slot(const ComplexTensor& t, const Eigen::MatrixXcd& a, int slot) {
  if (slot < 0 || slot >= t.rank()) throw DimensionError("pull_back_slot: slot out of range");
  require_same_dim(t.dim(), static_cast<int>(a.rows()), "pull_back_slot");
  const int d = t.dim();
  const std::size_t st = t.strides()[static_cast<std::size_t>(slot)];
  ComplexTensor out(d, t.rank());
  for (std::size_t f = 0; f < t.size(); ++f) {
    const int i = static_cast<int>((f / st) % static_cast<std::size_t>(d));
    const std::size_t base = f - static_cast<std::size_t>(i) * st;
    cplx s = 0.0;
    for (int b = 0; b < d; ++b) {
      const cplx c = a(b, i);
      if (c != 0.0) s += c * t[base + static_cast<std::size_t>(b) * st];
    }
    out[f] = s;
  }
  return out;
}

}  // namespace bochner
