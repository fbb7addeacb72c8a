#include "bochner/weitzenbock.hpp"

#include <algorithm>
#include <cmath>

#include "bochner/random.hpp"

namespace bochner {

ComplexTensor weitzenbock_ric(const AlgebraicCurvatureTensor& rm, const ComplexTensor& t) {
  require_same_dim(rm.dim(), t.dim(), "weitzenbock_ric");
  const int d = t.dim();
  const int r = t.rank();
  ComplexTensor out(d, r);
  if (r == 0) return out;

  // acted[x*d + j] = R(e_x, e_j) T, where 𝔯(e_x∧e_j) has matrix M(b,c) = Rm(x,j,c,b)
  std::vector<ComplexTensor> acted;
  acted.reserve(static_cast<std::size_t>(d * d));
  Eigen::MatrixXd m(d, d);
  for (int x = 0; x < d; ++x) {
    for (int j = 0; j < d; ++j) {
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c) m(b, c) = rm(x, j, c, b);
      acted.push_back(act_on_tensor(m, t));
    }
  }

  std::vector<int> idx(static_cast<std::size_t>(r));
  for (std::size_t f = 0; f < out.size(); ++f) {
    out.unflatten(f, idx);
    cplx s = 0.0;
    for (int i = 0; i < r; ++i) {
      const int x = idx[static_cast<std::size_t>(i)];
      for (int j = 0; j < d; ++j) {
        idx[static_cast<std::size_t>(i)] = j;
        s += acted[static_cast<std::size_t>(x * d + j)].at(idx);
      }
      idx[static_cast<std::size_t>(i)] = x;
    }
    out[f] = s;
  }
  return out;
}

ComplexTensor lichnerowicz_zero_order(const AlgebraicCurvatureTensor& rm, const ComplexTensor& t, double c) {
  if (!(c > 0.0)) throw DomainError("Lichnerowicz constant must be positive");
  ComplexTensor out = weitzenbock_ric(rm, t);
  out *= c;
  return out;
}

CurvatureTerm curvature_term(const Eigen::MatrixXd& gram, const HolonomySubalgebra& algebra, const ComplexTensor& t) {
  require_same_dim(t.dim(), algebra.space().dim(), "curvature_term");
  const int n = algebra.size();
  if (gram.rows() != n || gram.cols() != n) throw DimensionError("curvature_term: Gram matrix does not match algebra");

  const auto dec = sharp(t, algebra);
  const auto& slices = dec.slices();
  Eigen::MatrixXcd inner(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      inner(a, b) = hermitian_inner(slices[static_cast<std::size_t>(a)], slices[static_cast<std::size_t>(b)]);
      inner(b, a) = std::conj(inner(a, b));
    }

  CurvatureTerm out;
  out.sharp_norm_sq = dec.norm_squared();
  out.gram_value = (gram.cast<cplx>().cwiseProduct(inner)).sum().real();

  const Eigen::MatrixXd sym = 0.5 * (gram + gram.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  const Eigen::VectorXd& mu = es.eigenvalues();
  const Eigen::MatrixXd& v = es.eigenvectors();
  for (int a = 0; a < n; ++a) {
    // |η_a T|² with η_a = Σ_β v(β,a) Ξ_β
    const Eigen::VectorXcd c = v.col(a).cast<cplx>();
    const double w = (c.adjoint() * inner.transpose() * c)(0, 0).real();
    out.per_eigenvalue.emplace_back(mu[a], w);
    out.value += mu[a] * w;
  }
  return out;
}

CurvatureTerm curvature_term(const CurvatureOperator& op, const HolonomySubalgebra& algebra, const ComplexTensor& t) {
  require_same_dim(op.space().dim(), algebra.space().dim(), "curvature_term");
  const Eigen::MatrixXd& g = algebra.coefficient_matrix();
  CurvatureTerm out = curvature_term(Eigen::MatrixXd(g * op.matrix() * g.transpose()), algebra, t);
  out.leakage = complement_leakage(op, algebra);
  return out;
}

Prop24Report verify_prop24(const AlgebraicCurvatureTensor& rm, const HolonomySubalgebra& algebra,
                           const ComplexTensor& t, const Tolerance& tol, double threshold) {
  const CurvatureOperator op = to_operator(rm);
  Prop24Report r;
  r.leakage = complement_leakage(op, algebra);
  if (r.leakage > std::max(tol.abs, tol.rel * op.matrix().norm())) {
    throw LeakageError("holonomy hypothesis violated: operator leaks onto the complement of " +
                           std::string(to_string(algebra.kind())) + ", residual " + std::to_string(r.leakage),
                       r.leakage);
  }
  const cplx lhs = hermitian_inner(weitzenbock_ric(rm, t), t);
  r.lhs = lhs.real();
  r.lhs_imag = lhs.imag();
  const CurvatureTerm term = curvature_term(op, algebra, t);
  r.rhs = term.gram_value;
  r.rhs_eigen = term.value;
  const double floor = 1e-12 * std::max(1.0, t.norm_squared() * std::max(1.0, op.matrix().norm()));
  r.deviation = std::max(relative_deviation(r.lhs, r.rhs, floor), relative_deviation(r.rhs, r.rhs_eigen, floor));
  r.pass = r.deviation <= threshold && std::abs(r.lhs_imag) <= floor + threshold * std::abs(r.lhs);
  return r;
}

Lemma26Report verify_lemma26(const Eigen::MatrixXd& gram, const HolonomySubalgebra& algebra,
                             const std::vector<ComplexTensor>& samples, double C, int ell, double kappa,
                             std::uint64_t seed, int probes, double slack) {
  const int n = algebra.size();
  if (gram.rows() != n || gram.cols() != n) throw DimensionError("verify_lemma26: Gram matrix does not match algebra");
  if (!(C >= 1.0)) throw DomainError("verify_lemma26: C must be >= 1");
  if (ell < 1 || ell > static_cast<int>(std::floor(C))) throw DomainError("verify_lemma26: ell must lie in [1, floor(C)]");
  if (ell + 1 > n) throw DomainError("verify_lemma26: spectrum too short for ell + 1 eigenvalues");
  if (kappa > 0.0) throw DomainError("verify_lemma26: kappa must be <= 0");

  Lemma26Report r;
  r.C = C;
  r.ell = ell;
  r.kappa = kappa;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (gram + gram.transpose()), Eigen::EigenvaluesOnly);
  r.spectrum = es.eigenvalues();
  for (int i = 0; i < ell; ++i) r.premise += r.spectrum[i];
  r.premise += (C - ell) * r.spectrum[ell];
  r.premise1 = r.premise >= kappa * (ell + 1);
  r.premise2 = r.premise > 0.0;

  Rng rng(seed);
  for (const auto& t : samples) {
    Lemma26Sample s;
    const CurvatureTerm term = curvature_term(gram, algebra, t);
    s.sharp_norm_sq = term.sharp_norm_sq;
    s.term = term.gram_value;
    s.bound = kappa * (ell + 1) / C * s.sharp_norm_sq;
    if (s.sharp_norm_sq > 0.0) {
      for (int k = 0; k < probes; ++k) {
        const Bivector l = random_algebra_element(algebra, rng);
        const double lt = act_on_tensor(l, t).norm_squared();
        s.hypothesis_ratio = std::max(s.hypothesis_ratio, C * lt / (s.sharp_norm_sq * l.coeffs().squaredNorm()));
      }
    }
    s.admitted = s.hypothesis_ratio <= 1.0 + 1e-12;
    if (s.admitted) {
      ++r.admitted;
      const double scale = std::max(1.0, s.sharp_norm_sq * std::max(1.0, r.spectrum.cwiseAbs().maxCoeff()));
      if (r.premise1) s.conclusion1 = s.term >= s.bound - slack * scale;
      if (r.premise2 && s.sharp_norm_sq > slack) s.conclusion2 = s.term > 0.0;
      r.conclusion1 = r.conclusion1 && s.conclusion1;
      r.conclusion2 = r.conclusion2 && s.conclusion2;
    } else {
      ++r.rejected;
    }
    r.samples.push_back(s);
  }
  return r;
}

Lemma26Report verify_lemma26(const Eigen::VectorXd& spectrum, const HolonomySubalgebra& algebra,
                             const std::vector<ComplexTensor>& samples, double C, int ell, double kappa,
                             std::uint64_t seed, int probes, double slack) {
  if (spectrum.size() != algebra.size()) throw DimensionError("verify_lemma26: spectrum length must equal dim g");
  return verify_lemma26(Eigen::MatrixXd(spectrum.asDiagonal()), algebra, samples, C, ell, kappa, seed, probes, slack);
}

}  // namespace bochner
