#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bochner/holonomy.hpp"
#include "bochner/random.hpp"
#include "bochner/tensor.hpp"

namespace bochner {

class SymmetryError : public Error {
 public:
  using Error::Error;
};

/// The curvature operator does not vanish on the complement of the holonomy algebra.
class LeakageError : public Error {
 public:
  LeakageError(const std::string& what, double residual) : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Real (0,4)-tensor with the curvature symmetries and the first Bianchi identity.
///
/// Convention: g(𝔯(X∧Y), Z∧W) = Rm(X,Y,Z,W), so the unit sphere has Rm(X,Y,X,Y) = 1 for
/// orthonormal X, Y. Ricci contraction is Ric(Y,W) = Σ_i Rm(e_i,Y,e_i,W).
class AlgebraicCurvatureTensor {
 public:
  /// Validates the symmetries; throws SymmetryError beyond tol.abs scaled by max(1, max|Rm|).
  AlgebraicCurvatureTensor(EuclideanSpace space, ComplexTensor rm, const Tolerance& tol = {});

  static AlgebraicCurvatureTensor zero(const EuclideanSpace& space);
  /// Skips validation; for tensors produced by constructions that preserve the symmetries.
  static AlgebraicCurvatureTensor trusted(EuclideanSpace space, ComplexTensor rm, bool kahler = false,
                                          bool quaternion = false);

  const EuclideanSpace& space() const { return space_; }
  int dim() const { return space_.dim(); }
  const ComplexTensor& tensor() const { return rm_; }
  double operator()(int x, int y, int z, int w) const;

  bool kahler() const { return kahler_; }
  bool quaternion() const { return quaternion_; }
  /// Returns a copy flagged Kähler after checking Rm(JX,JY,Z,W) = Rm(X,Y,Z,W).
  AlgebraicCurvatureTensor as_kahler(const Tolerance& tol = {}) const;
  /// Returns a copy flagged quaternion-Kähler after checking the operator is supported on sp(m)+sp(1).
  AlgebraicCurvatureTensor as_quaternion(const Tolerance& tol = {}) const;

  double norm_squared() const { return rm_.norm_squared(); }

  double symmetry_defect() const;
  double bianchi_defect() const;
  double kahler_defect() const;

  AlgebraicCurvatureTensor operator+(const AlgebraicCurvatureTensor& other) const;
  AlgebraicCurvatureTensor operator-(const AlgebraicCurvatureTensor& other) const;
  AlgebraicCurvatureTensor operator*(double s) const;

 private:
  struct Unchecked {};
  AlgebraicCurvatureTensor(Unchecked, EuclideanSpace space, ComplexTensor rm);

  EuclideanSpace space_;
  ComplexTensor rm_;
  bool kahler_ = false;
  bool quaternion_ = false;
};

inline AlgebraicCurvatureTensor operator*(double s, const AlgebraicCurvatureTensor& r) { return r * s; }

double symmetry_defect(const ComplexTensor& rm);
double bianchi_defect(const ComplexTensor& rm);
double kahler_defect(const ComplexTensor& rm, const Eigen::MatrixXd& j);

/// Symmetric matrix of the bilinear form R on the basis {e_i ∧ e_j : i < j}.
class CurvatureOperator {
 public:
  CurvatureOperator(EuclideanSpace space, Eigen::MatrixXd matrix, const Tolerance& tol = {});

  const EuclideanSpace& space() const { return space_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  /// |R|² = Σ R_{ab}², so that |Rm|² = 4|R|².
  double norm_squared() const { return matrix_.squaredNorm(); }
  Bivector apply(const Bivector& b) const;

 private:
  EuclideanSpace space_;
  Eigen::MatrixXd matrix_;
};

CurvatureOperator to_operator(const AlgebraicCurvatureTensor& rm);
AlgebraicCurvatureTensor from_operator(const CurvatureOperator& op, const Tolerance& tol = {});
ComplexTensor operator_to_tensor(int dim, const Eigen::MatrixXd& op);

Eigen::MatrixXd ricci(const AlgebraicCurvatureTensor& rm);
double scalar_curvature(const AlgebraicCurvatureTensor& rm);
Eigen::MatrixXd tf_ricci(const AlgebraicCurvatureTensor& rm);
/// ρ(X,Y) = Ric(JX,Y).
Eigen::MatrixXd ricci_form(const AlgebraicCurvatureTensor& rm);
/// ρ₀ = ρ − (scal/2n) ω, with n the complex dimension.
Eigen::MatrixXd primitive_ricci_form(const AlgebraicCurvatureTensor& rm);
/// ω(X,Y) = g(JX,Y) as a real matrix.
Eigen::MatrixXd kahler_form_matrix(const EuclideanSpace& space);

/// (h ◯∧ k)(X,Y,Z,W) = h(X,Z)k(Y,W) + h(Y,W)k(X,Z) − h(X,W)k(Y,Z) − h(Y,Z)k(X,W).
ComplexTensor kulkarni_nomizu(const Eigen::MatrixXd& h, const Eigen::MatrixXd& k);
/// (h ⊗ k)(X,Y,Z,W) = h(X,Y)k(Z,W).
ComplexTensor outer_product(const Eigen::MatrixXd& h, const Eigen::MatrixXd& k);

enum class ModelKind { Flat, ConstantSectional, CHSC, HPm };

/// Standard models.
///
/// ConstantSectional(c): c · ½ g◯∧g, operator c·Id.
/// CHSC(c): holomorphic sectional curvature c, (c/4)(½g◯∧g + ½ω◯∧ω + 2ω⊗ω).
/// HPm(c): c times the quaternionic projective operator
///   X∧Y + IX∧IY + JX∧JY + KX∧KY + 2Σ_{A=I,J,K} g(X∧Y, ω_A) ω_A.
AlgebraicCurvatureTensor model(ModelKind kind, const EuclideanSpace& space, double c = 1.0);
ModelKind parse_model_kind(const std::string& name);

/// The constant-holomorphic-sectional-curvature part (scal/(4n(n+1)))(½g◯∧g + ½ω◯∧ω + 2ω⊗ω).
ComplexTensor chsc_part(const AlgebraicCurvatureTensor& rm);

struct KahlerDecomposition {
  ComplexTensor scalar_part;
  ComplexTensor ricci_part;
  ComplexTensor bochner;
  double scal = 0.0;
  Eigen::MatrixXd tf_ricci;
  Eigen::MatrixXd ricci_form;
  Eigen::MatrixXd primitive_ricci_form;
};

/// Requires a Kähler input (checked). The Bochner tensor is the remainder.
KahlerDecomposition kahler_decompose(const AlgebraicCurvatureTensor& rm, const Tolerance& tol = {});

struct BochnerTraces {
  double ricci_trace = 0.0;   ///< max_{Y,W} |Σ_i B(e_i,Y,e_i,W)|
  double kahler_trace = 0.0;  ///< max_{Z,W} |Σ_i B(e_i,Je_i,Z,W)|
};

BochnerTraces bochner_traces(const ComplexTensor& b, const Eigen::MatrixXd& j);

struct QuaternionDecomposition {
  double hp_coefficient = 0.0;  ///< scal / (16 m (m+2))
  ComplexTensor r0;
  double leakage = 0.0;
};

QuaternionDecomposition quaternion_decompose(const AlgebraicCurvatureTensor& rm, const Tolerance& tol = {});

struct RestrictedSpectrum {
  Eigen::VectorXd eigenvalues;   ///< ascending
  Eigen::MatrixXd eigenvectors;  ///< columns, in the coordinates of the algebra basis
  Eigen::MatrixXd gram;          ///< [g(𝔯(Ξ_α), Ξ_β)]
  double leakage = 0.0;          ///< ‖𝔯 restricted to g^⊥‖ (Frobenius)
};

/// Leakage is reported, never projected away.
RestrictedSpectrum restricted_spectrum(const CurvatureOperator& op, const HolonomySubalgebra& algebra);

/// Frobenius norm of the operator on the orthogonal complement of g.
double complement_leakage(const CurvatureOperator& op, const HolonomySubalgebra& algebra);

/// Orthonormal basis of Sym²_B(g) = Sym²(g) ∩ ker(Bianchi), as symmetric operators on Λ²V.
class CurvatureSampler {
 public:
  /// Rows of `algebra_rows` must be orthonormal coefficient vectors in Λ²V.
  CurvatureSampler(EuclideanSpace space, const Eigen::MatrixXd& algebra_rows);
  explicit CurvatureSampler(const HolonomySubalgebra& algebra);

  const EuclideanSpace& space() const { return space_; }
  int dimension() const { return static_cast<int>(basis_.size()); }
  const std::vector<Eigen::MatrixXd>& basis() const { return basis_; }

  /// Isotropic Gaussian element of Sym²_B(g).
  AlgebraicCurvatureTensor sample(Rng& rng) const;

 private:
  EuclideanSpace space_;
  std::vector<Eigen::MatrixXd> basis_;
};

/// Orthonormal basis (rows) of sp(m) = {A skew : A commutes with I, J, K}.
Eigen::MatrixXd symplectic_commutant_rows(const EuclideanSpace& space);

AlgebraicCurvatureTensor random_curvature(const EuclideanSpace& space, Rng& rng);
AlgebraicCurvatureTensor random_kahler_curvature(const EuclideanSpace& space, Rng& rng);
/// Kähler–Einstein: random Kähler tensor with its trace-free Ricci part removed.
AlgebraicCurvatureTensor random_kahler_einstein_curvature(const EuclideanSpace& space, Rng& rng);
/// Hyper-Kähler (Ricci-flat) element of Sym²_B(sp(m)).
AlgebraicCurvatureTensor random_hyperkahler_curvature(const EuclideanSpace& space, Rng& rng);

/// Relative deviation |a−b| / max(|a|,|b|), zero when both are below `floor`.
double relative_deviation(double a, double b, double floor = 1e-12);

struct KahlerSharpIdentity {
  double sharp_norm_sq = 0.0;          ///< |𝔯^u|² in operator normalization (|Rm^u|²/4)
  double sharp_norm_sq_tensor = 0.0;   ///< |Rm^u|² as a (0,4)-tensor
  double tf_norm_sq = 0.0;             ///< |R̊|², R̊ = Rm − CHSC part, operator normalization
  double tf_ricci_norm_sq = 0.0;       ///< |R̊ic|²
  double alt_tf_operator_norm_sq = 0.0;///< |𝔯|_u − (tr/n²) Id_u|², alternative reading of R̊
  double rhs = 0.0;                    ///< 4(n+1)|R̊|² − 4|R̊ic|²
  double deviation = 0.0;
};

struct QuaternionSharpIdentity {
  double sharp_norm_sq = 0.0;        ///< |𝔯^{sp(m)+sp(1)}|², operator normalization
  double r0_norm_sq = 0.0;           ///< |R₀|², operator normalization
  double coefficient = 0.0;          ///< (4/3)(3m+4)
  double rhs = 0.0;                  ///< coefficient · |R₀|²
  double observed_coefficient = 0.0; ///< sharp_norm_sq / r0_norm_sq (NaN when R₀ = 0)
  double deviation = 0.0;
};

struct SharpNormReport {
  std::optional<KahlerSharpIdentity> kahler;
  std::optional<QuaternionSharpIdentity> quaternion;
};

KahlerSharpIdentity kahler_sharp_identity(const AlgebraicCurvatureTensor& rm, const Tolerance& tol = {});
QuaternionSharpIdentity quaternion_sharp_identity(const AlgebraicCurvatureTensor& rm, const Tolerance& tol = {});
/// Evaluates whichever identities the input's flags allow; throws StructureError if neither.
SharpNormReport sharp_norm_identities(const AlgebraicCurvatureTensor& rm, const Tolerance& tol = {});

}  // namespace bochner
