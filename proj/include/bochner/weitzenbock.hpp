#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bochner/curvature.hpp"
#include "bochner/holonomy.hpp"
#include "bochner/tensor.hpp"

namespace bochner {

/// Ric(T)(X₁,…,X_k) = Σ_i Σ_j (R(X_i,e_j)T)(X₁,…,e_j,…,X_k), with e_j substituted in slot i
/// and R(X,Y) acting on tensors as the bivector 𝔯(X∧Y).
///
/// With this convention a 1-form on the unit sphere S^{d−1}-model satisfies Ric(T) = (d−1)T.
ComplexTensor weitzenbock_ric(const AlgebraicCurvatureTensor& rm, const ComplexTensor& t);

/// Lichnerowicz constants for the Hodge Laplacian and for curvature-type tensors.
inline constexpr double kLichnerowiczHodge = 1.0;
inline constexpr double kLichnerowiczCurvature = 0.5;

/// Zero-order part c·Ric(T) of Δ_L = ∇*∇ + c Ric.
ComplexTensor lichnerowicz_zero_order(const AlgebraicCurvatureTensor& rm, const ComplexTensor& t, double c);

struct CurvatureTerm {
  double value = 0.0;       ///< eigen route: Σ_α μ_α |η_α T|²
  double gram_value = 0.0;  ///< Σ_{αβ} R_{αβ} Re⟨Ξ_α T, Ξ_β T⟩
  std::vector<std::pair<double, double>> per_eigenvalue;  ///< (μ_α, |η_α T|²), ascending μ
  double sharp_norm_sq = 0.0;                            ///< |T^g|²
  double leakage = 0.0;
};

/// g(𝔯(T^g), T̄^g), computed by both routes. Inner products are raw component sums.
CurvatureTerm curvature_term(const CurvatureOperator& op, const HolonomySubalgebra& algebra,
                             const ComplexTensor& t);
/// Same, for a self-adjoint map given by its matrix in the algebra basis.
CurvatureTerm curvature_term(const Eigen::MatrixXd& gram, const HolonomySubalgebra& algebra, const ComplexTensor& t);

struct Prop24Report {
  double lhs = 0.0;        ///< Re g(Ric(T), T̄)
  double lhs_imag = 0.0;
  double rhs = 0.0;        ///< curvature term, Gram route
  double rhs_eigen = 0.0;  ///< curvature term, eigen route
  double deviation = 0.0;
  double leakage = 0.0;
  bool pass = false;
};

/// Throws LeakageError when the operator does not vanish on g^⊥ (the holonomy hypothesis).
Prop24Report verify_prop24(const AlgebraicCurvatureTensor& rm, const HolonomySubalgebra& algebra,
                           const ComplexTensor& t, const Tolerance& tol = {}, double threshold = 1e-8);

struct Lemma26Sample {
  double hypothesis_ratio = 0.0;  ///< max over probes of C·|LT|²/(|T^g|²|L|²); admitted iff ≤ 1
  bool admitted = false;
  double term = 0.0;              ///< g(𝔯(T^g), T̄^g)
  double bound = 0.0;             ///< κ(ℓ+1)/C · |T^g|²
  double sharp_norm_sq = 0.0;
  bool conclusion1 = true;
  bool conclusion2 = true;
};

struct Lemma26Report {
  double C = 1.0;
  int ell = 1;
  double kappa = 0.0;
  Eigen::VectorXd spectrum;
  double premise = 0.0;  ///< μ₁+…+μ_ℓ+(C−ℓ)μ_{ℓ+1}
  bool premise1 = false;  ///< premise ≥ κ(ℓ+1)
  bool premise2 = false;  ///< premise > 0
  int admitted = 0;
  int rejected = 0;
  bool conclusion1 = true;
  bool conclusion2 = true;
  std::vector<Lemma26Sample> samples;
  bool pass() const { return conclusion1 && conclusion2; }
};

/// Checks both conclusions on each sample admitted by the |LT|² hypothesis, measured over
/// `probes` random unit L ∈ g. Rejected samples are reported, never rescaled.
Lemma26Report verify_lemma26(const Eigen::MatrixXd& gram, const HolonomySubalgebra& algebra,
                             const std::vector<ComplexTensor>& samples, double C, int ell, double kappa,
                             std::uint64_t seed, int probes = 50, double slack = 1e-10);

/// Uses the diagonal map with the given eigenvalues on the algebra basis.
Lemma26Report verify_lemma26(const Eigen::VectorXd& spectrum, const HolonomySubalgebra& algebra,
                             const std::vector<ComplexTensor>& samples, double C, int ell, double kappa,
                             std::uint64_t seed, int probes = 50, double slack = 1e-10);

}  // namespace bochner
