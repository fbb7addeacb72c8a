#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/rational.hpp>
#include <Eigen/Dense>

#include "bochner/tensor.hpp"

namespace bochner {

using Rational = boost::rational<long long>;

std::string to_string(const Rational& r);
double to_double(const Rational& r);
long long floor_of(const Rational& r);
/// Recognizes decimal inputs such as 0.6 or 2.5 as exact fractions (denominator ≤ 10⁶).
std::optional<Rational> exact_rational(double x);

/// A closed-form constant with its integer part and fractional weight C − ⌊C⌋.
struct RationalConstant {
  Rational value;
  long long floor = 0;
  Rational fraction;
};

/// C^{p,q}_k = n+1 − (p+q) + 2(pq − k²)/(p+q−2k). Throws DomainError("vacuous stratum") if p+q = 2k.
RationalConstant const_Cpqk(int n, int p, int q, int k);
/// C^{p,q} = n+1 − (p²+q²)/(p+q).
RationalConstant const_Cpq(int n, int p, int q);
/// Refined Kato constant D^{p,q} for (p,q) harmonic fields.
Rational kato_D(int n, int p, int q);
/// 4(Q−1+a)/(cQ²).
Rational kappa_max(const Rational& Q, const Rational& c, const Rational& a);
double kappa_max(double Q, double c, double a);
/// 4(Q + 1/D − 3)/(cQ²), the bound printed for harmonic fields.
Rational kappa_max_harmonic(const Rational& Q, const Rational& c, const Rational& D);
/// (1 + (−1)ⁿ)/4.
Rational bochner_parity_coefficient(int n);
/// (5 + 3(−1)ᵐ)/12.
Rational quaternion_parity_coefficient(int m);

/// μ₁ + … + μ_h + w·μ_{h+1}; μ_{h+1} is only read when w ≠ 0.
struct WeightedSum {
  double value = 0.0;
  std::string arithmetic;
};
WeightedSum weighted_partial_sum(const Eigen::VectorXd& spectrum, long long h, const Rational& weight);

enum class TheoremId { T1_1, T1_2, T1_5_d2, T1_6, T3_2, T3_4, T3_6, C3_3, C3_7, C3_8, C3_9, T4_1, T4_4 };
enum class Conclusion { Parallel, Vanishing, Flat, BochnerFlat, Inconclusive };

std::string_view to_string(TheoremId id);
std::string_view to_string(Conclusion c);

struct VanishingVerdict {
  TheoremId theorem_id = TheoremId::T3_2;
  double condition_value = 0.0;
  double threshold = 0.0;
  bool strict = false;  ///< the conclusion needed condition_value > threshold
  bool kappa_admissible = false;
  Conclusion conclusion = Conclusion::Inconclusive;
  std::string condition_arithmetic;
  std::string threshold_arithmetic;
  std::string kappa_arithmetic;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::string> notes;

  bool conclusive() const { return conclusion != Conclusion::Inconclusive; }
};

struct PQCheckOptions {
  std::optional<int> k;      ///< use C^{p,q}_k for forms declared in that stratum
  double zero_tol = 1e-12;   ///< |S| ≤ zero_tol·max(1, max|μ|) counts as S = 0
};

/// Kähler (p,q)-form criterion on the u(n) spectrum; routes to T3_2 / T3_6 (p ≠ q) or T3_4 / C3_8 (p = q).
VanishingVerdict check_pq(const Eigen::VectorXd& spectrum, int n, int p, int q, double kappa, double rho, double Q,
                          const PQCheckOptions& options = {});

/// Divergence-free Bochner tensor criterion: conclusion bochner_flat.
VanishingVerdict check_bochner(const Eigen::VectorXd& spectrum, int n, double k, double rho, double Q);
/// Kähler–Einstein flatness criterion (n ≥ 4): conclusion flat.
VanishingVerdict check_einstein_flat(const Eigen::VectorXd& spectrum, int n, double k, double rho, double Q);
/// Quaternion-Kähler flatness criterion on the sp(m)+sp(1) spectrum.
VanishingVerdict check_quaternion(const Eigen::VectorXd& spectrum, int m, double k, double rho, double Q,
                                  bool scalar_flat_asserted = false);
/// ⌈n/2⌉-nonnegativity: μ₁ + … + μ_⌈n/2⌉ ≥ 0.
VanishingVerdict check_lq_nonneg(const Eigen::VectorXd& spectrum, int n);

/// Generic Lichnerowicz-Laplacian criterion from a user-supplied lower bound
/// g(𝔯(T^g), T̄^g) ≥ term_lower_bound·|T|². κ = 0 gives T1_1, κ > 0 gives T1_2 (T1_6 if quaternionic).
VanishingVerdict check_tensor(double term_lower_bound, double kappa, double rho, double c, double Q,
                              bool quaternion = false);

}  // namespace bochner
