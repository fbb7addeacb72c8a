#include "bochner/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "bochner/forms.hpp"

namespace bochner {

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Rational exact_or_throw(double x, const char* what) {
  if (auto r = exact_rational(x)) return *r;
  throw DomainError(std::string(what) + " is not representable as an exact rational");
}

void require_sorted(const Eigen::VectorXd& mu) {
  for (Eigen::Index i = 0; i < mu.size(); ++i)
    if (!std::isfinite(mu[i])) throw DomainError("malformed spectrum: non-finite eigenvalue");
  for (Eigen::Index i = 1; i < mu.size(); ++i)
    if (mu[i] < mu[i - 1]) throw DomainError("malformed spectrum: eigenvalues must be ascending");
}

long long needed_terms(long long h, const Rational& w) { return h + (w.numerator() != 0 ? 1 : 0); }

const char* kGlobalHypotheses =
    "unverified global hypotheses: completeness, L^Q finiteness of the tensor, weighted Poincare "
    "inequality with weight rho and its growth conditions; the verdict is pointwise arithmetic only";

// Exact decision of a ≥ b (or >) when both sides are rational, float otherwise.
bool at_least(double a, double b, bool strict) { return strict ? a > b : a >= b; }

bool kappa_below(double kappa, const Rational& bound_exact, double bound) {
  if (auto k = exact_rational(kappa)) return *k < bound_exact;
  return kappa < bound;
}

}  // namespace

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

long long floor_of(const Rational& r) {
  long long q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

std::optional<Rational> exact_rational(double x) {
  if (!std::isfinite(x)) return std::nullopt;
  for (long long den = 1; den <= 1000000; den = den < 1000 ? den + 1 : den * 10) {
    const double num = std::round(x * static_cast<double>(den));
    if (std::abs(num) > 9e15) return std::nullopt;
    if (num / static_cast<double>(den) == x) return Rational(static_cast<long long>(num), den);
  }
  return std::nullopt;
}

RationalConstant const_Cpqk(int n, int p, int q, int k) {
  if (n < 1 || p < 0 || q < 0) throw DomainError("const_Cpqk: indices out of range");
  if (k < 0 || k > std::min(p, q)) throw DomainError("const_Cpqk: k must lie in [0, min(p,q)]");
  if (p + q > n) throw DomainError("const_Cpqk: p+q exceeds n (apply the Serre remap first)");
  if (p + q - 2 * k == 0) throw DomainError("vacuous stratum");
  RationalConstant c;
  c.value = Rational(n + 1 - (p + q)) + Rational(2LL * (p * q - k * k), p + q - 2 * k);
  c.floor = floor_of(c.value);
  c.fraction = c.value - c.floor;
  return c;
}

RationalConstant const_Cpq(int n, int p, int q) {
  if (n < 1 || p < 0 || q < 0) throw DomainError("const_Cpq: indices out of range");
  if (p + q == 0) throw DomainError("const_Cpq: p = q = 0");
  if (p + q > n) throw DomainError("const_Cpq: p+q exceeds n (apply the Serre remap first)");
  RationalConstant c;
  c.value = Rational(n + 1) - Rational(p * p + q * q, p + q);
  c.floor = floor_of(c.value);
  c.fraction = c.value - c.floor;
  return c;
}

Rational kato_D(int n, int p, int q) {
  if (n < 1 || p < 0 || q < 0 || p > n || q > n) throw DomainError("kato_D: indices out of range");
  if (p == n || q == n) return Rational(1, 2);
  auto slot = [n](int s) { return std::max(Rational(2 * s + 1, 2 * s + 2), Rational(2 * n - 2 * s + 1, 2 * n - 2 * s + 2)); };
  const Rational m = std::min(slot(p), slot(q));
  return m * m;
}

Rational kappa_max(const Rational& Q, const Rational& c, const Rational& a) {
  if (Q < Rational(2)) throw DomainError("kappa_max: Q must be >= 2");
  if (c.numerator() <= 0) throw DomainError("kappa_max: c must be positive");
  if (a.numerator() < 0) throw DomainError("kappa_max: a must be >= 0");
  return Rational(4) * (Q - 1 + a) / (c * Q * Q);
}

double kappa_max(double Q, double c, double a) {
  const auto rq = exact_rational(Q), rc = exact_rational(c), ra = exact_rational(a);
  if (rq && rc && ra) return to_double(kappa_max(*rq, *rc, *ra));
  if (Q < 2) throw DomainError("kappa_max: Q must be >= 2");
  if (!(c > 0)) throw DomainError("kappa_max: c must be positive");
  if (a < 0) throw DomainError("kappa_max: a must be >= 0");
  return 4.0 * (Q - 1.0 + a) / (c * Q * Q);
}

Rational kappa_max_harmonic(const Rational& Q, const Rational& c, const Rational& D) {
  if (Q < Rational(2)) throw DomainError("kappa_max_harmonic: Q must be >= 2");
  if (c.numerator() <= 0) throw DomainError("kappa_max_harmonic: c must be positive");
  if (D.numerator() <= 0) throw DomainError("kappa_max_harmonic: D must be positive");
  return Rational(4) * (Q + Rational(1) / D - 3) / (c * Q * Q);
}

Rational bochner_parity_coefficient(int n) { return Rational(1 + (n % 2 == 0 ? 1 : -1), 4); }
Rational quaternion_parity_coefficient(int m) { return Rational(5 + 3 * (m % 2 == 0 ? 1 : -1), 12); }

WeightedSum weighted_partial_sum(const Eigen::VectorXd& spectrum, long long h, const Rational& weight) {
  if (h < 0) throw DomainError("weighted_partial_sum: negative term count");
  if (spectrum.size() < needed_terms(h, weight))
    throw DomainError("malformed spectrum: need " + std::to_string(needed_terms(h, weight)) + " eigenvalues, got " +
                      std::to_string(spectrum.size()));
  WeightedSum s;
  std::ostringstream lhs, rhs;
  for (long long i = 0; i < h; ++i) {
    if (i) lhs << " + ", rhs << " + ";
    lhs << "mu_" << i + 1;
    rhs << fmt(spectrum[i]);
    s.value += spectrum[i];
  }
  if (weight.numerator() != 0) {
    if (h) lhs << " + ", rhs << " + ";
    lhs << "(" << to_string(weight) << ")*mu_" << h + 1;
    rhs << "(" << to_string(weight) << ")*" << fmt(spectrum[h]);
    s.value += to_double(weight) * spectrum[h];
  }
  if (h == 0 && weight.numerator() == 0) lhs << "0", rhs << "0";
  s.arithmetic = lhs.str() + " = " + rhs.str() + " = " + fmt(s.value);
  return s;
}

std::string_view to_string(TheoremId id) {
  switch (id) {
    case TheoremId::T1_1: return "T1_1";
    case TheoremId::T1_2: return "T1_2";
    case TheoremId::T1_5_d2: return "T1_5_d2";
    case TheoremId::T1_6: return "T1_6";
    case TheoremId::T3_2: return "T3_2";
    case TheoremId::T3_4: return "T3_4";
    case TheoremId::T3_6: return "T3_6";
    case TheoremId::C3_3: return "C3_3";
    case TheoremId::C3_7: return "C3_7";
    case TheoremId::C3_8: return "C3_8";
    case TheoremId::C3_9: return "C3_9";
    case TheoremId::T4_1: return "T4_1";
    case TheoremId::T4_4: return "T4_4";
  }
  return "unknown";
}

std::string_view to_string(Conclusion c) {
  switch (c) {
    case Conclusion::Parallel: return "parallel";
    case Conclusion::Vanishing: return "vanishing";
    case Conclusion::Flat: return "flat";
    case Conclusion::BochnerFlat: return "bochner_flat";
    case Conclusion::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

VanishingVerdict check_pq(const Eigen::VectorXd& spectrum, int n, int p, int q, double kappa, double rho, double Q,
                          const PQCheckOptions& options) {
  require_sorted(spectrum);
  if (n < 1 || p < 0 || q < 0 || p > n || q > n) throw DomainError("check_pq: bidegree out of range");
  if (kappa < 0) throw DomainError("check_pq: kappa must be >= 0");
  if (rho < 0) throw DomainError("check_pq: rho must be >= 0");
  if (!(Q >= 2)) throw DomainError("check_pq: Q must be >= 2");

  VanishingVerdict v;
  const Bidegree b = serre_remap(n, p, q);
  if (b.remapped) v.notes.push_back(b.note);

  RationalConstant C;
  std::string cname = "C^{p,q}";
  if (options.k) {
    int k = *options.k;
    if (b.remapped) k = k - (p + q - n);  // Ω^k ∧ primitive maps to Ω^{k-(p+q-n)} ∧ primitive under Serre duality
    if (k < 0) throw DomainError("check_pq: stratum k does not survive the Serre remap");
    C = const_Cpqk(n, b.p, b.q, k);
    cname = "C^{p,q}_k";
    v.parameters.emplace_back("k", std::to_string(k));
    v.notes.push_back("using the stratum constant C^{p,q}_k; valid only for forms in Omega^k ∧ primitive");
  } else {
    C = const_Cpq(n, b.p, b.q);
  }
  v.parameters.emplace_back("n", std::to_string(n));
  v.parameters.emplace_back("p", std::to_string(b.p));
  v.parameters.emplace_back("q", std::to_string(b.q));
  v.parameters.emplace_back(cname, to_string(C.value));
  v.parameters.emplace_back("floor", std::to_string(C.floor));
  v.parameters.emplace_back("fraction", to_string(C.fraction));
  if (spectrum.size() != static_cast<Eigen::Index>(n) * n)
    v.notes.push_back("spectrum length " + std::to_string(spectrum.size()) + " differs from dim u(n) = " +
                      std::to_string(n * n));

  const WeightedSum S = weighted_partial_sum(spectrum, C.floor, C.fraction);
  const bool diagonal = b.p == b.q;
  const double scale = std::max(1.0, spectrum.size() ? spectrum.cwiseAbs().maxCoeff() : 0.0);
  const double zero = options.zero_tol * scale;

  if (kappa == 0.0) {
    v.theorem_id = diagonal ? TheoremId::T3_4 : TheoremId::T3_2;
    v.condition_value = S.value;
    v.threshold = 0.0;
    v.kappa_admissible = true;
    v.condition_arithmetic = "S = " + S.arithmetic;
    v.threshold_arithmetic = "0";
    v.kappa_arithmetic = "kappa = 0";
    if (S.value > zero) {
      v.conclusion = Conclusion::Vanishing;
      v.strict = true;
      v.notes.push_back("S > 0: every harmonic form with |omega| in L^Q vanishes (L^Q finiteness is user-asserted)");
    } else if (S.value >= -zero) {
      v.conclusion = Conclusion::Parallel;
      v.condition_value = std::max(S.value, 0.0);
      v.notes.push_back("S = 0 within tolerance " + fmt(zero) + ": harmonic forms are parallel");
    } else {
      v.conclusion = Conclusion::Inconclusive;
      v.notes.push_back("S < 0: the eigenvalue condition fails");
    }
    if (diagonal) v.notes.push_back("p = q: the conclusion applies to forms orthogonal to the Kahler form (omega ⊥ Omega)");
  } else {
    const Rational D = kato_D(n, b.p, b.q);
    const Rational lemma_factor = Rational((n + 2 - std::abs(b.p - b.q)) * (b.p + b.q));
    const long long printed = n + 2 - std::abs(b.p - b.q) * (b.p + b.q);
    const auto rq = exact_rational(Q);
    const Rational Qr = rq ? *rq : Rational(2);
    Rational bound_exact = kappa_max_harmonic(Qr, lemma_factor, D);
    double bound = to_double(bound_exact);
    if (!rq) bound = 4.0 * (Q + 1.0 / to_double(D) - 3.0) / (to_double(lemma_factor) * Q * Q);

    v.theorem_id = diagonal ? TheoremId::C3_8 : TheoremId::T3_6;
    v.condition_value = S.value / (to_double(C.value) + 1.0);
    v.threshold = -kappa * rho;
    v.condition_arithmetic = "(" + S.arithmetic + ") / (" + to_string(C.value + 1) + ") = " + fmt(v.condition_value);
    v.threshold_arithmetic = "-kappa*rho = -" + fmt(kappa) + "*" + fmt(rho) + " = " + fmt(v.threshold);
    v.kappa_arithmetic = "kappa < 4(Q + 1/D - 3)/((n+2-|p-q|)(p+q) Q^2) = 4(" + fmt(Q) + " + " +
                         to_string(Rational(1) / D) + " - 3)/(" + to_string(lemma_factor) + "*" + fmt(Q) + "^2) = " +
                         (rq ? to_string(bound_exact) + " = " : std::string()) + fmt(bound);
    v.parameters.emplace_back("D^{p,q}", to_string(D));
    v.parameters.emplace_back("kappa_bound", rq ? to_string(bound_exact) : fmt(bound));
    v.kappa_admissible = bound > 0 && (rq ? kappa_below(kappa, bound_exact, bound) : kappa < bound);
    const bool holds = at_least(v.condition_value, v.threshold, false);
    v.conclusion = holds && v.kappa_admissible ? Conclusion::Vanishing : Conclusion::Inconclusive;
    if (!holds) v.notes.push_back("eigenvalue condition fails: S/(C+1) < -kappa*rho");
    if (!v.kappa_admissible) v.notes.push_back("kappa is outside the admissible range");
    v.notes.push_back("the kappa bound uses the factor (n+2-|p-q|)(p+q) = " + to_string(lemma_factor) +
                      " from the pointwise Bochner inequality; the statement prints (n+2-|p-q|(p+q)) = " +
                      std::to_string(printed));
    if (diagonal) {
      v.notes.push_back("p = q: conclusion for L^2 harmonic forms orthogonal to Omega; the corollary is stated for Q = 2");
    } else if (Q == 2.0) {
      v.notes.push_back("at Q = 2 the bound coincides with the L^2 corollary (1/D - 1)/((n+2-|p-q|)(p+q))");
    }
    v.notes.push_back("the conclusion is for harmonic fields (d + d^* = 0); for L^2 forms this is harmonicity");
  }
  v.parameters.emplace_back("kappa", fmt(kappa));
  v.parameters.emplace_back("rho", fmt(rho));
  v.parameters.emplace_back("Q", fmt(Q));
  v.notes.push_back(kGlobalHypotheses);
  return v;
}

namespace {

VanishingVerdict half_sum_check(const Eigen::VectorXd& spectrum, long long h, const Rational& coeff, double k,
                                double rho, double Q, const Rational& k_bound, const std::string& k_bound_text,
                                TheoremId id, Conclusion on_pass) {
  VanishingVerdict v;
  v.theorem_id = id;
  const WeightedSum S = weighted_partial_sum(spectrum, h, coeff);
  v.condition_value = S.value;
  v.threshold = -k * rho;
  v.condition_arithmetic = "S = " + S.arithmetic;
  v.threshold_arithmetic = "-k*rho = -" + fmt(k) + "*" + fmt(rho) + " = " + fmt(v.threshold);
  v.kappa_arithmetic = "k < " + k_bound_text + " = " + to_string(k_bound);
  v.kappa_admissible = kappa_below(k, k_bound, to_double(k_bound));
  const bool holds = at_least(v.condition_value, v.threshold, false);
  v.conclusion = holds && v.kappa_admissible ? on_pass : Conclusion::Inconclusive;
  if (!holds) v.notes.push_back("eigenvalue condition fails: S < -k*rho");
  if (!v.kappa_admissible) v.notes.push_back("k = " + fmt(k) + " is not below " + to_string(k_bound));
  v.parameters.emplace_back("h", std::to_string(h));
  v.parameters.emplace_back("parity_coefficient", to_string(coeff));
  v.parameters.emplace_back("k", fmt(k));
  v.parameters.emplace_back("rho", fmt(rho));
  v.parameters.emplace_back("Q", fmt(Q));
  v.parameters.emplace_back("k_bound", to_string(k_bound));
  return v;
}

void require_common(double k, double rho, double Q, const char* who) {
  if (k < 0) throw DomainError(std::string(who) + ": k must be >= 0");
  if (rho < 0) throw DomainError(std::string(who) + ": rho must be >= 0");
  if (!(Q >= 2)) throw DomainError(std::string(who) + ": Q must be >= 2");
}

}  // namespace

VanishingVerdict check_bochner(const Eigen::VectorXd& spectrum, int n, double k, double rho, double Q) {
  require_sorted(spectrum);
  require_common(k, rho, Q, "check_bochner");
  if (n < 1) throw DomainError("check_bochner: n must be >= 1");
  if (spectrum.size() != static_cast<Eigen::Index>(n) * n)
    throw DomainError("malformed spectrum: expected n^2 = " + std::to_string(n * n) + " eigenvalues");
  const Rational Qr = exact_or_throw(Q, "Q");
  VanishingVerdict v = half_sum_check(spectrum, (n + 1) / 2, bochner_parity_coefficient(n), k, rho, Q,
                                      (Qr - 1) / (Qr * Qr), "(Q-1)/Q^2", TheoremId::T1_5_d2, Conclusion::BochnerFlat);
  v.parameters.insert(v.parameters.begin(), {"n", std::to_string(n)});
  v.notes.push_back("conclusion: the Bochner tensor vanishes, given a divergence-free Bochner tensor with finite L^Q norm");
  v.notes.push_back("note the asymmetry: this bound is (Q-1)/Q^2, the quaternionic criterion uses (Q-1)/Q");
  v.notes.push_back(kGlobalHypotheses);
  return v;
}

VanishingVerdict check_einstein_flat(const Eigen::VectorXd& spectrum, int n, double k, double rho, double Q) {
  require_sorted(spectrum);
  require_common(k, rho, Q, "check_einstein_flat");
  if (n < 1) throw DomainError("check_einstein_flat: n must be >= 1");
  if (spectrum.size() != static_cast<Eigen::Index>(n) * n)
    throw DomainError("malformed spectrum: expected n^2 = " + std::to_string(n * n) + " eigenvalues");
  const Rational Qr = exact_or_throw(Q, "Q");
  VanishingVerdict v = half_sum_check(spectrum, (n + 1) / 2, bochner_parity_coefficient(n), k, rho, Q,
                                      (Qr - 1) / (Qr * Qr), "(Q-1)/Q^2", TheoremId::T4_1, Conclusion::Flat);
  v.parameters.insert(v.parameters.begin(), {"n", std::to_string(n)});
  if (n < 4)
    v.notes.insert(v.notes.begin(), "WARNING: the theorem assumes complex dimension n >= 4; n = " + std::to_string(n) +
                                        " is outside its scope");
  v.notes.push_back("Kahler-Einstein is user-asserted; conclusion: Riemannian flat given finite L^Q norm of the curvature");
  v.notes.push_back(kGlobalHypotheses);
  return v;
}

VanishingVerdict check_quaternion(const Eigen::VectorXd& spectrum, int m, double k, double rho, double Q,
                                  bool scalar_flat_asserted) {
  require_sorted(spectrum);
  require_common(k, rho, Q, "check_quaternion");
  if (m < 2) throw DomainError("check_quaternion: m must be >= 2");
  const Eigen::Index expected = static_cast<Eigen::Index>(m) * (2 * m + 1) + 3;
  if (spectrum.size() != expected)
    throw DomainError("malformed spectrum: expected m(2m+1)+3 = " + std::to_string(expected) + " eigenvalues");
  const Rational Qr = exact_or_throw(Q, "Q");
  VanishingVerdict v = half_sum_check(spectrum, (m + 1) / 2, quaternion_parity_coefficient(m), k, rho, Q,
                                      (Qr - 1) / Qr, "(Q-1)/Q", TheoremId::T4_4, Conclusion::Flat);
  v.parameters.insert(v.parameters.begin(), {"m", std::to_string(m)});
  if (k == 0.0) {
    v.notes.push_back("k = 0: the scalar-curvature hypothesis can be removed");
  } else if (!scalar_flat_asserted) {
    v.conclusion = Conclusion::Inconclusive;
    v.notes.push_back("k > 0 requires vanishing scalar curvature; not asserted");
  } else {
    v.notes.push_back("vanishing scalar curvature is user-asserted");
  }
  v.notes.push_back("note the asymmetry: this bound is (Q-1)/Q, the Bochner criterion uses (Q-1)/Q^2");
  v.notes.push_back(kGlobalHypotheses);
  return v;
}

VanishingVerdict check_lq_nonneg(const Eigen::VectorXd& spectrum, int n) {
  require_sorted(spectrum);
  if (n < 1) throw DomainError("check_lq_nonneg: n must be >= 1");
  VanishingVerdict v;
  v.theorem_id = TheoremId::C3_3;
  const long long h = (n + 1) / 2;
  const WeightedSum S = weighted_partial_sum(spectrum, h, Rational(0));
  v.condition_value = S.value;
  v.threshold = 0.0;
  v.kappa_admissible = true;
  v.condition_arithmetic = "S = " + S.arithmetic;
  v.threshold_arithmetic = "0";
  v.kappa_arithmetic = "kappa = 0";
  v.conclusion = S.value >= 0.0 ? Conclusion::Vanishing : Conclusion::Inconclusive;
  v.parameters.emplace_back("n", std::to_string(n));
  v.parameters.emplace_back("h", std::to_string(h));
  if (n < 3) v.notes.push_back("WARNING: the corollary assumes n >= 3");
  if (v.conclusive())
    v.notes.push_back("curvature is ceil(n/2)-nonnegative: L^2 harmonic forms of odd degree vanish; reduced L^2 "
                      "cohomology H^l is trivial if l is odd");
  else
    v.notes.push_back("curvature is not ceil(n/2)-nonnegative");
  v.notes.push_back(kGlobalHypotheses);
  return v;
}

VanishingVerdict check_tensor(double term_lower_bound, double kappa, double rho, double c, double Q, bool quaternion) {
  require_common(kappa, rho, Q, "check_tensor");
  if (!(c > 0)) throw DomainError("check_tensor: c must be positive");
  VanishingVerdict v;
  v.condition_value = term_lower_bound;
  v.condition_arithmetic = "inf g(r(T^g), T^g)/|T|^2 >= " + fmt(term_lower_bound) + " (user-supplied)";
  if (kappa == 0.0) {
    v.theorem_id = TheoremId::T1_1;
    v.threshold = 0.0;
    v.kappa_admissible = true;
    v.threshold_arithmetic = "0";
    v.kappa_arithmetic = "kappa = 0";
    v.conclusion = term_lower_bound >= 0.0 ? Conclusion::Parallel : Conclusion::Inconclusive;
    if (v.conclusive()) v.notes.push_back("Lichnerowicz-harmonic T with |T| in L^Q is parallel");
  } else {
    v.theorem_id = quaternion ? TheoremId::T1_6 : TheoremId::T1_2;
    v.threshold = -kappa * rho;
    v.threshold_arithmetic = "-kappa*rho = " + fmt(v.threshold);
    const auto rq = exact_rational(Q), rc = exact_rational(c);
    if (rq && rc) {
      const Rational bound = kappa_max(*rq, *rc, Rational(0));
      v.kappa_arithmetic = "kappa < 4(Q-1)/(cQ^2) = " + to_string(bound);
      v.kappa_admissible = kappa_below(kappa, bound, to_double(bound));
    } else {
      const double bound = 4.0 * (Q - 1.0) / (c * Q * Q);
      v.kappa_arithmetic = "kappa < 4(Q-1)/(cQ^2) = " + fmt(bound);
      v.kappa_admissible = kappa < bound;
    }
    const bool holds = term_lower_bound >= v.threshold;
    v.conclusion = holds && v.kappa_admissible ? Conclusion::Vanishing : Conclusion::Inconclusive;
    if (quaternion) v.notes.push_back("quaternion-Kahler setting: the holonomy algebra is sp(m)+sp(1)");
  }
  v.parameters.emplace_back("kappa", fmt(kappa));
  v.parameters.emplace_back("rho", fmt(rho));
  v.parameters.emplace_back("c", fmt(c));
  v.parameters.emplace_back("Q", fmt(Q));
  v.notes.push_back(kGlobalHypotheses);
  return v;
}

}  // namespace bochner
