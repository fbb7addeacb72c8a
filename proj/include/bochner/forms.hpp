#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bochner/holonomy.hpp"
#include "bochner/random.hpp"
#include "bochner/tensor.hpp"

namespace bochner {

/// ω(X,Y) = g(JX,Y) as a real antisymmetric rank-2 tensor (Ω in the form-theoretic sections).
ComplexTensor kahler_form(const EuclideanSpace& space);
/// Ωᵏ under the wedge below; Ω⁰ is the scalar 1.
ComplexTensor kahler_power(const EuclideanSpace& space, int k);

/// Full alternation Alt(T) = (1/r!) Σ_σ sgn(σ) T∘σ.
ComplexTensor alternation(const ComplexTensor& t);

/// α∧β = ((p+q)!/(p!q!)) Alt(α⊗β) for antisymmetric α, β (evaluated as a signed shuffle sum).
///
/// This is the determinant convention: e¹∧e² has components ±1 and form norm 1.
ComplexTensor wedge(const ComplexTensor& a, const ComplexTensor& b);

/// Holomorphic coframe dz_j = e^{2j−1} + i e^{2j} (1-based), i.e. dz_j ∘ J = i dz_j.
ComplexTensor dz(const EuclideanSpace& space, int j, bool conjugate = false);

/// Component of type (p,q): on each slot a covector splits as ½(α − iα∘J) + ½(α + iα∘J).
ComplexTensor type_projection(const ComplexTensor& t, int p, int q, const Eigen::MatrixXd& j);
double purity_defect(const ComplexTensor& t, int p, int q, const Eigen::MatrixXd& j);

/// Antisymmetric complex form of pure type (p,q), optionally declared to lie in a k-stratum.
class PQForm {
 public:
  /// Validates antisymmetry and type purity (both to `tol.abs` scaled by max(1, max|φ|), floored at 1e-9).
  PQForm(EuclideanSpace space, int p, int q, ComplexTensor tensor, std::optional<int> k = std::nullopt,
         const Tolerance& tol = {});

  const EuclideanSpace& space() const { return space_; }
  int n() const { return space_.complex_dim(); }
  int p() const { return p_; }
  int q() const { return q_; }
  int degree() const { return p_ + q_; }
  const std::optional<int>& k() const { return k_; }
  const ComplexTensor& tensor() const { return tensor_; }

  /// |φ|² with |e^{i₁}∧…∧e^{i_r}| = 1.
  double norm_squared() const { return form_norm_squared(tensor_); }

  PQForm with_k(std::optional<int> k) const;
  PQForm operator+(const PQForm& other) const;
  PQForm operator*(cplx s) const;

 private:
  struct Unchecked {};
  PQForm(Unchecked, EuclideanSpace space, int p, int q, ComplexTensor tensor, std::optional<int> k);

  EuclideanSpace space_;
  int p_;
  int q_;
  std::optional<int> k_;
  ComplexTensor tensor_;

  friend PQForm trusted_form(EuclideanSpace, int, int, ComplexTensor, std::optional<int>);
};

/// Skips validation; for outputs of type-preserving constructions.
PQForm trusted_form(EuclideanSpace space, int p, int q, ComplexTensor tensor, std::optional<int> k = std::nullopt);

/// {dz^I ∧ dz̄^J : |I| = p, |J| = q}, lexicographic in (I, J). Requires the block complex structure.
std::vector<PQForm> build_pq_basis(const EuclideanSpace& space, int p, int q);

/// ψ₁ ∧ Ωᵏ ∧ ψ₂ with ψ₁ of type (p−k,0) and ψ₂ of type (0,q−k); declared k.
PQForm construct_Vpqk(const PQForm& psi1, const PQForm& psi2, int k);

/// Component of an (a,b)-form orthogonal to Ω ∧ Λ^{a−1,b−1} (the primitive part).
PQForm primitive_part(const PQForm& phi);

/// Ωᵏ ∧ (primitive part of ψ), declared k. This is the irreducible piece on which the
/// sharp-norm coefficient below is exact.
PQForm construct_stratum(const PQForm& psi, int k);

enum class CircNormalization {
  Squared,    ///< φ − (⟨φ,Ωᵖ⟩/|Ωᵖ|²) Ωᵖ, orthogonal to Ωᵖ
  AsPrinted,  ///< φ − (⟨φ,Ωᵖ⟩/|Ωᵖ|) Ωᵖ, form norms
};

/// φ̊: identity for p ≠ q, removes the Ωᵖ component for p = q.
PQForm circ(const PQForm& phi, CircNormalization normalization = CircNormalization::Squared);

/// 2(p−k)(q−k) + (p+q−2k)((n+1) − (p+q−2k)).
long long prop27_coefficient(int n, int p, int q, int k);

struct Prop27Report {
  int n = 0, p = 0, q = 0, k = 0;
  long long coefficient = 0;
  double sharp_norm_sq = 0.0;  ///< |φ^u|²
  double circ_norm_sq = 0.0;   ///< |φ̊|²
  double rhs = 0.0;            ///< coefficient · |φ̊|²
  double ratio = 0.0;          ///< |φ^u|² / |φ̊|² (NaN if φ̊ = 0)
  double deviation = 0.0;
};

/// Requires a declared k. Uses u(n) built from the form's space unless one is supplied.
Prop27Report sharp_norm_coefficient_check(const PQForm& phi, const HolonomySubalgebra* algebra = nullptr);

struct Prop28Report {
  int n = 0, p = 0, q = 0, k = 0;
  int samples = 0;
  bool vacuous = false;
  double max_ratio = 0.0;  ///< max |Lφ|² / ((p+q−2k)|L|²|φ̊|²)
  bool pass = false;       ///< max_ratio ≤ 1 + 1e-9, or vacuous
  std::string note;
};

/// Samples unit L ∈ u(n) from a generator seeded with `seed`.
Prop28Report action_bound_check(const PQForm& phi, int samples, std::uint64_t seed,
                                const HolonomySubalgebra* algebra = nullptr);

/// Serre-duality normalization of the bidegree: (p,q) ↦ (n−p, n−q) when p+q > n.
struct Bidegree {
  int p = 0;
  int q = 0;
  bool remapped = false;
  std::string note;
};

Bidegree serre_remap(int n, int p, int q);

}  // namespace bochner
