#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace bochner {

using cplx = std::complex<double>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Missing or inconsistent complex / quaternionic structure.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

struct Tolerance {
  double abs = 1e-10;
  double rel = 1e-9;

  bool close(double a, double b) const;
};

/// Hypercomplex structure (I, J, K) with IJ = -JI = K.
struct QuaternionicStructure {
  Eigen::MatrixXd I;
  Eigen::MatrixXd J;
  Eigen::MatrixXd K;
};

/// Even-dimensional Euclidean space in an orthonormal basis (the metric is the identity).
///
/// The canonical complex structure uses the block convention
/// J e_{2i-1} = e_{2i}, J e_{2i} = -e_{2i-1}. The canonical quaternionic structure
/// orders each quaternionic line as (e, Ie, Je, Ke), so I coincides with the block J.
class EuclideanSpace {
 public:
  explicit EuclideanSpace(int real_dim);
  EuclideanSpace(int real_dim, std::optional<Eigen::MatrixXd> complex_structure,
                 std::optional<QuaternionicStructure> quaternionic_structure = std::nullopt,
                 const Tolerance& tol = {});

  static EuclideanSpace complex(int n);
  static EuclideanSpace quaternionic(int m);

  int dim() const { return dim_; }
  int complex_dim() const { return dim_ / 2; }
  int quaternionic_dim() const { return dim_ / 4; }
  int bivector_dim() const { return dim_ * (dim_ - 1) / 2; }

  bool has_complex_structure() const { return complex_.has_value(); }
  bool has_quaternionic_structure() const { return quaternionic_.has_value(); }
  bool block_complex_structure() const;

  const Eigen::MatrixXd& complex_structure() const;
  const QuaternionicStructure& quaternionic_structure() const;

 private:
  int dim_;
  std::optional<Eigen::MatrixXd> complex_;
  std::optional<QuaternionicStructure> quaternionic_;
};

Eigen::MatrixXd block_complex_structure(int real_dim);
QuaternionicStructure block_quaternionic_structure(int real_dim);

void require_same_dim(int a, int b, const char* what);

/// Index of e_i ∧ e_j (0-based, i < j) in the ordered basis of Λ²V.
inline int pair_index(int dim, int i, int j) {
  return i * dim - i * (i + 1) / 2 + (j - i - 1);
}

/// Element of Λ²V in the orthonormal basis {e_i ∧ e_j : i < j}.
class Bivector {
 public:
  explicit Bivector(int dim);
  Bivector(int dim, Eigen::VectorXd coeffs);

  static Bivector basis(int dim, int i, int j);
  static Bivector wedge(const Eigen::VectorXd& x, const Eigen::VectorXd& y);
  /// Reads the coefficients of a skew matrix; the symmetric part is discarded.
  static Bivector from_matrix(const Eigen::MatrixXd& m);

  int dim() const { return dim_; }
  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  double coeff(int i, int j) const;

  /// Skew matrix M with M e_i = e_j, M e_j = -e_i for the basis element e_i ∧ e_j.
  Eigen::MatrixXd matrix() const;

  double dot(const Bivector& other) const;
  double norm() const { return coeffs_.norm(); }

  Bivector operator+(const Bivector& other) const;
  Bivector operator-(const Bivector& other) const;
  Bivector operator*(double s) const;

 private:
  int dim_;
  Eigen::VectorXd coeffs_;
};

inline Bivector operator*(double s, const Bivector& b) { return b * s; }

Eigen::VectorXd bivector_action(const Bivector& l, const Eigen::VectorXd& v);
Bivector lie_bracket(const Bivector& a, const Bivector& b);

/// Dense complex (0,k)-tensor, components stored row-major over (i_1, ..., i_k).
class ComplexTensor {
 public:
  ComplexTensor() = default;
  ComplexTensor(int dim, int rank);
  ComplexTensor(int dim, int rank, std::vector<cplx> components);

  static ComplexTensor zeros(int dim, int rank) { return ComplexTensor(dim, rank); }
  static ComplexTensor scalar(cplx value, int dim = 1);
  static ComplexTensor covector(const Eigen::VectorXcd& v);
  static ComplexTensor from_matrix(const Eigen::MatrixXcd& m);
  static ComplexTensor from_real_matrix(const Eigen::MatrixXd& m);

  int dim() const { return dim_; }
  int rank() const { return rank_; }
  std::size_t size() const { return data_.size(); }

  std::span<const cplx> components() const { return data_; }
  std::span<cplx> components() { return data_; }

  cplx& operator[](std::size_t flat) { return data_[flat]; }
  const cplx& operator[](std::size_t flat) const { return data_[flat]; }

  cplx& at(std::span<const int> index);
  const cplx& at(std::span<const int> index) const;
  cplx& at(std::initializer_list<int> index) { return at(std::span<const int>(index.begin(), index.size())); }
  const cplx& at(std::initializer_list<int> index) const {
    return at(std::span<const int>(index.begin(), index.size()));
  }

  std::size_t flat_index(std::span<const int> index) const;
  void unflatten(std::size_t flat, std::span<int> index) const;
  /// Strides for each slot; the last slot is contiguous.
  std::vector<std::size_t> strides() const;

  Eigen::MatrixXcd to_matrix() const;

  double norm_squared() const;
  double max_abs() const;
  double max_imag() const;
  bool is_real(double tol = 1e-12) const;

  ComplexTensor conj() const;
  ComplexTensor real_part() const;
  /// T'(x_1, ..., x_k) = T(x_{perm[0]}, ..., x_{perm[k-1]}).
  ComplexTensor permuted(std::span<const int> perm) const;

  ComplexTensor& operator+=(const ComplexTensor& other);
  ComplexTensor& operator-=(const ComplexTensor& other);
  ComplexTensor& operator*=(cplx s);

 private:
  int dim_ = 0;
  int rank_ = 0;
  std::vector<cplx> data_;
};

ComplexTensor operator+(ComplexTensor a, const ComplexTensor& b);
ComplexTensor operator-(ComplexTensor a, const ComplexTensor& b);
ComplexTensor operator*(cplx s, ComplexTensor a);
ComplexTensor operator*(ComplexTensor a, cplx s);

double max_abs_diff(const ComplexTensor& a, const ComplexTensor& b);

/// Σ T·conj(S) over all multi-indices.
cplx hermitian_inner(const ComplexTensor& t, const ComplexTensor& s);

ComplexTensor tensor_product(const ComplexTensor& a, const ComplexTensor& b);

/// (LT)(X_1, ..., X_r) = -Σ_i T(X_1, ..., L X_i, ..., X_r).
ComplexTensor act_on_tensor(const Bivector& l, const ComplexTensor& t);
/// Same action for an arbitrary real endomorphism given as a matrix.
ComplexTensor act_on_tensor(const Eigen::MatrixXd& l, const ComplexTensor& t);

/// T'(…, x_s, …) = Σ_a A(a, x_s) T(…, a, …), i.e. slot s of T precomposed with A.
ComplexTensor pull_back_slot(const ComplexTensor& t, const Eigen::MatrixXcd& a, int slot);

/// Norm convention for antisymmetric tensors: |e_{i_1} ∧ ... ∧ e_{i_k}| = 1.
double form_norm_squared(const ComplexTensor& t);

double antisymmetry_defect(const ComplexTensor& t);

}  // namespace bochner
