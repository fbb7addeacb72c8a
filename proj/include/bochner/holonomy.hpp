#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "bochner/tensor.hpp"

namespace bochner {

enum class AlgebraKind { SO, U, SP_SP1 };

std::string_view to_string(AlgebraKind kind);
/// Accepts "so", "u", "sp" (and the long forms "so(d)", "u(n)", "sp(m)+sp(1)").
AlgebraKind parse_algebra_kind(std::string_view name);

/// Orthonormal basis {Ξ_α} of a Lie subalgebra g ⊂ Λ²V.
class HolonomySubalgebra {
 public:
  /// Builds the algebra from its canonical spanning set.
  ///
  /// SO: {e_i ∧ e_j : i < j}.
  /// U: {e_i∧e_j + Je_i∧Je_j}_{i<j}, {e_i∧Je_i}_i, {e_i∧Je_j + e_j∧Je_i}_{i<j}.
  /// SP_SP1: ω_I, ω_J, ω_K (unit norm) first, then the projections of e_a ∧ e_b onto the
  /// commutant of {I, J, K}, in pair order.
  /// Gram-Schmidt runs in the listed order and drops dependent vectors.
  static HolonomySubalgebra build(const EuclideanSpace& space, AlgebraKind kind);

  /// Orthonormalizes an arbitrary spanning set (used to test basis independence).
  static HolonomySubalgebra from_spanning_set(const EuclideanSpace& space, AlgebraKind kind,
                                              const std::vector<Bivector>& spanning, double drop_tol = 1e-10);

  static int expected_dimension(const EuclideanSpace& space, AlgebraKind kind);

  const EuclideanSpace& space() const { return space_; }
  AlgebraKind kind() const { return kind_; }
  int size() const { return static_cast<int>(basis_.size()); }
  const std::vector<Bivector>& basis() const { return basis_; }
  const Bivector& operator[](int alpha) const { return basis_[static_cast<std::size_t>(alpha)]; }
  /// Skew matrix avatars, cached.
  const std::vector<Eigen::MatrixXd>& matrices() const { return matrices_; }

  /// Rows are the basis coefficient vectors (size() x dim Λ²V).
  const Eigen::MatrixXd& coefficient_matrix() const { return coeffs_; }
  /// Orthogonal projector onto span{Ξ_α} in Λ²V.
  Eigen::MatrixXd projector() const;
  Eigen::MatrixXd complement_projector() const;
  /// Orthonormal basis of g^⊥ (rows).
  Eigen::MatrixXd complement_basis() const;

  /// Max deviation of the Gram matrix from the identity.
  double orthonormality_defect() const;
  /// Max norm of the component of [Ξ_α, Ξ_β] orthogonal to g.
  double closure_defect() const;

 private:
  HolonomySubalgebra(EuclideanSpace space, AlgebraKind kind, std::vector<Bivector> basis);

  EuclideanSpace space_;
  AlgebraKind kind_;
  std::vector<Bivector> basis_;
  std::vector<Eigen::MatrixXd> matrices_;
  Eigen::MatrixXd coeffs_;
};

/// The Kähler form as an element of Λ²V; its matrix avatar is J.
Bivector kahler_bivector(const EuclideanSpace& space);

/// ω_I, ω_J, ω_K as bivectors (unnormalized, |ω_I|² = 2m).
std::vector<Bivector> quaternionic_bivectors(const EuclideanSpace& space);

/// Slices Ξ_α T of the sharp map T ↦ T^g.
class SharpDecomposition {
 public:
  SharpDecomposition(HolonomySubalgebra algebra, std::vector<ComplexTensor> slices);

  const HolonomySubalgebra& algebra() const { return algebra_; }
  const std::vector<ComplexTensor>& slices() const { return slices_; }

  /// |T^g|² = Σ_α |Ξ_α T|².
  double norm_squared() const;
  /// Λ²V coefficients of T^g(e_{i_1}, ..., e_{i_r}) = Σ_α (Ξ_α T)(...) Ξ_α.
  Eigen::VectorXcd evaluate(std::span<const int> index) const;

 private:
  HolonomySubalgebra algebra_;
  std::vector<ComplexTensor> slices_;
};

SharpDecomposition sharp(const ComplexTensor& t, const HolonomySubalgebra& algebra);
double sharp_norm_squared(const ComplexTensor& t, const HolonomySubalgebra& algebra);

Bivector project_bivector(const Bivector& l, const HolonomySubalgebra& algebra);

class Rng;

/// Unit-norm element of g from Gaussian coordinates in the orthonormal basis.
Bivector random_algebra_element(const HolonomySubalgebra& algebra, Rng& rng);

/// max over `samples` random unit L ∈ g of |L·T|².
double max_sampled_action(const ComplexTensor& t, const HolonomySubalgebra& algebra, int samples, Rng& rng);

}  // namespace bochner
