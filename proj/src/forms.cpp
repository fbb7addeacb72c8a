#include "bochner/forms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bochner/curvature.hpp"

namespace bochner {

namespace {

int permutation_sign(const std::vector<int>& perm) {
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) sign = -sign;
  return sign;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> c(static_cast<std::size_t>(k));
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    out.push_back(c);
    int i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

double scale_of(const ComplexTensor& t) { return std::max(1.0, t.max_abs()); }

HolonomySubalgebra unitary(const EuclideanSpace& space) { return HolonomySubalgebra::build(space, AlgebraKind::U); }

}  // namespace

ComplexTensor kahler_form(const EuclideanSpace& space) {
  return ComplexTensor::from_real_matrix(kahler_form_matrix(space));
}

ComplexTensor kahler_power(const EuclideanSpace& space, int k) {
  if (k < 0 || k > space.complex_dim()) {
    throw DomainError("kahler_power: k must lie in [0, n], got " + std::to_string(k));
  }
  ComplexTensor out = ComplexTensor::scalar(1.0, space.dim());
  const ComplexTensor om = kahler_form(space);
  for (int i = 0; i < k; ++i) out = wedge(out, om);
  return out;
}

ComplexTensor alternation(const ComplexTensor& t) {
  const int r = t.rank();
  if (r <= 1) return t;
  std::vector<int> perm(static_cast<std::size_t>(r));
  std::iota(perm.begin(), perm.end(), 0);
  ComplexTensor out(t.dim(), r);
  do {
    ComplexTensor term = t.permuted(perm);
    if (permutation_sign(perm) > 0) {
      out += term;
    } else {
      out -= term;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  out *= cplx(1.0 / factorial(r));
  return out;
}

ComplexTensor wedge(const ComplexTensor& a, const ComplexTensor& b) {
  require_same_dim(a.dim(), b.dim(), "wedge");
  const int p = a.rank();
  const int q = b.rank();
  const int r = p + q;
  const int d = a.dim();
  if (p == 0 || q == 0) {
    const cplx s = p == 0 ? a[0] : b[0];
    ComplexTensor out = p == 0 ? b : a;
    out *= s;
    return out;
  }

  struct Shuffle {
    int sign;
    std::vector<int> left;
    std::vector<int> right;
  };
  std::vector<Shuffle> shuffles;
  for (const auto& left : combinations(r, p)) {
    std::vector<int> right;
    for (int i = 0, l = 0; i < r; ++i) {
      if (l < p && left[static_cast<std::size_t>(l)] == i) {
        ++l;
      } else {
        right.push_back(i);
      }
    }
    std::vector<int> perm = left;
    perm.insert(perm.end(), right.begin(), right.end());
    shuffles.push_back({permutation_sign(perm), left, right});
  }

  ComplexTensor out(d, r);
  std::vector<int> idx(static_cast<std::size_t>(r));
  std::vector<int> ia(static_cast<std::size_t>(p));
  std::vector<int> ib(static_cast<std::size_t>(q));
  for (std::size_t f = 0; f < out.size(); ++f) {
    out.unflatten(f, idx);
    cplx s = 0.0;
    for (const auto& sh : shuffles) {
      for (int i = 0; i < p; ++i) ia[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(sh.left[i])];
      for (int i = 0; i < q; ++i) ib[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(sh.right[i])];
      const cplx va = a.at(ia);
      if (va == 0.0) continue;
      s += static_cast<double>(sh.sign) * va * b.at(ib);
    }
    out[f] = s;
  }
  return out;
}

ComplexTensor dz(const EuclideanSpace& space, int j, bool conjugate) {
  const int n = space.complex_dim();
  if (j < 0 || j >= n) throw DomainError("dz: index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space.dim());
  v[2 * j] = 1.0;
  v[2 * j + 1] = conjugate ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
  return ComplexTensor::covector(v);
}

ComplexTensor type_projection(const ComplexTensor& t, int p, int q, const Eigen::MatrixXd& j) {
  const int r = t.rank();
  if (p < 0 || q < 0 || p + q != r) {
    throw DomainError("type_projection: bidegree (" + std::to_string(p) + "," + std::to_string(q) +
                      ") does not match rank " + std::to_string(r));
  }
  require_same_dim(t.dim(), static_cast<int>(j.rows()), "type_projection");
  if (r == 0) return t;
  const Eigen::MatrixXcd jc = j.cast<cplx>();
  const cplx half(0.5, 0.0);
  const cplx half_i(0.0, 0.5);
  ComplexTensor out(t.dim(), r);
  for (const auto& holo : combinations(r, p)) {
    ComplexTensor term = t;
    for (int s = 0, h = 0; s < r; ++s) {
      const bool is_holo = h < p && holo[static_cast<std::size_t>(h)] == s;
      if (is_holo) ++h;
      // (1,0): ½(α − iα∘J); (0,1): ½(α + iα∘J)
      const ComplexTensor rotated = pull_back_slot(term, jc, s);
      term *= half;
      ComplexTensor corr = rotated;
      corr *= is_holo ? -half_i : half_i;
      term += corr;
    }
    out += term;
  }
  return out;
}

double purity_defect(const ComplexTensor& t, int p, int q, const Eigen::MatrixXd& j) {
  return max_abs_diff(type_projection(t, p, q, j), t);
}

PQForm::PQForm(EuclideanSpace space, int p, int q, ComplexTensor tensor, std::optional<int> k, const Tolerance& tol)
    : space_(std::move(space)), p_(p), q_(q), k_(k), tensor_(std::move(tensor)) {
  if (!space_.has_complex_structure()) throw StructureError("(p,q)-forms require a complex structure");
  require_same_dim(space_.dim(), tensor_.dim(), "PQForm");
  if (p < 0 || q < 0 || p > n() || q > n()) {
    throw DomainError("bidegree (" + std::to_string(p) + "," + std::to_string(q) + ") out of range for n = " +
                      std::to_string(n()));
  }
  if (tensor_.rank() != p + q) throw DimensionError("PQForm: tensor rank must equal p + q");
  if (k_ && (*k_ < 0 || *k_ > std::min(p, q))) throw DomainError("PQForm: declared k must lie in [0, min(p,q)]");
  const double limit = std::max(tol.abs, 1e-9) * scale_of(tensor_);
  if (antisymmetry_defect(tensor_) > limit) throw DomainError("PQForm: tensor is not antisymmetric");
  const double purity = purity_defect(tensor_, p, q, space_.complex_structure());
  if (purity > limit) {
    throw DomainError("PQForm: tensor is not of pure type (" + std::to_string(p) + "," + std::to_string(q) +
                      "), defect " + std::to_string(purity));
  }
}

PQForm::PQForm(Unchecked, EuclideanSpace space, int p, int q, ComplexTensor tensor, std::optional<int> k)
    : space_(std::move(space)), p_(p), q_(q), k_(k), tensor_(std::move(tensor)) {}

PQForm trusted_form(EuclideanSpace space, int p, int q, ComplexTensor tensor, std::optional<int> k) {
  return PQForm(PQForm::Unchecked{}, std::move(space), p, q, std::move(tensor), k);
}

PQForm PQForm::with_k(std::optional<int> k) const {
  if (k && (*k < 0 || *k > std::min(p_, q_))) throw DomainError("PQForm: declared k must lie in [0, min(p,q)]");
  return trusted_form(space_, p_, q_, tensor_, k);
}

PQForm PQForm::operator+(const PQForm& other) const {
  if (other.p_ != p_ || other.q_ != q_) throw DomainError("PQForm sum: bidegrees differ");
  require_same_dim(space_.dim(), other.space_.dim(), "PQForm sum");
  return trusted_form(space_, p_, q_, tensor_ + other.tensor_, k_ == other.k_ ? k_ : std::nullopt);
}

PQForm PQForm::operator*(cplx s) const { return trusted_form(space_, p_, q_, tensor_ * s, k_); }

std::vector<PQForm> build_pq_basis(const EuclideanSpace& space, int p, int q) {
  const int n = space.complex_dim();
  if (!space.has_complex_structure()) throw StructureError("build_pq_basis requires a complex structure");
  if (!space.block_complex_structure()) throw StructureError("build_pq_basis requires the block complex structure");
  if (p < 0 || q < 0 || p > n || q > n) {
    throw DomainError("build_pq_basis: (p,q) = (" + std::to_string(p) + "," + std::to_string(q) +
                      ") out of range for n = " + std::to_string(n));
  }
  std::vector<ComplexTensor> holo, anti;
  for (int j = 0; j < n; ++j) {
    holo.push_back(dz(space, j, false));
    anti.push_back(dz(space, j, true));
  }
  std::vector<PQForm> out;
  for (const auto& hi : combinations(n, p)) {
    for (const auto& ai : combinations(n, q)) {
      ComplexTensor f = ComplexTensor::scalar(1.0, space.dim());
      for (int i : hi) f = wedge(f, holo[static_cast<std::size_t>(i)]);
      for (int i : ai) f = wedge(f, anti[static_cast<std::size_t>(i)]);
      out.push_back(trusted_form(space, p, q, std::move(f)));
    }
  }
  return out;
}

PQForm construct_Vpqk(const PQForm& psi1, const PQForm& psi2, int k) {
  require_same_dim(psi1.space().dim(), psi2.space().dim(), "construct_Vpqk");
  if (psi1.q() != 0) throw DomainError("construct_Vpqk: first factor must have type (p-k, 0)");
  if (psi2.p() != 0) throw DomainError("construct_Vpqk: second factor must have type (0, q-k)");
  const int p = psi1.p() + k;
  const int q = psi2.q() + k;
  const int n = psi1.n();
  if (k < 0 || p > n || q > n) throw DomainError("construct_Vpqk: k out of range");
  const ComplexTensor f = wedge(wedge(psi1.tensor(), kahler_power(psi1.space(), k)), psi2.tensor());
  return trusted_form(psi1.space(), p, q, f, k);
}

PQForm primitive_part(const PQForm& phi) {
  const int a = phi.p();
  const int b = phi.q();
  if (a == 0 || b == 0) return phi;
  const ComplexTensor om = kahler_form(phi.space());
  std::vector<ComplexTensor> image;
  for (const auto& x : build_pq_basis(phi.space(), a - 1, b - 1)) {
    ComplexTensor w = wedge(om, x.tensor());
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& v : image) w -= v * hermitian_inner(w, v);
    const double nrm = std::sqrt(w.norm_squared());
    if (nrm > 1e-10) image.push_back(w * cplx(1.0 / nrm));
  }
  ComplexTensor out = phi.tensor();
  for (const auto& v : image) out -= v * hermitian_inner(out, v);
  return trusted_form(phi.space(), a, b, std::move(out), phi.k());
}

PQForm construct_stratum(const PQForm& psi, int k) {
  const int n = psi.n();
  if (k < 0 || psi.p() + k > n || psi.q() + k > n) throw DomainError("construct_stratum: k out of range");
  const PQForm prim = primitive_part(psi);
  const ComplexTensor f = wedge(kahler_power(psi.space(), k), prim.tensor());
  return trusted_form(psi.space(), psi.p() + k, psi.q() + k, f, k);
}

PQForm circ(const PQForm& phi, CircNormalization normalization) {
  if (phi.p() != phi.q()) return phi;
  const ComplexTensor om = kahler_power(phi.space(), phi.p());
  const cplx c = hermitian_inner(phi.tensor(), om);
  const double denom =
      normalization == CircNormalization::Squared ? om.norm_squared() : std::sqrt(form_norm_squared(om));
  // ⟨φ,Ωᵖ⟩ for the as-printed reading also uses form norms
  const cplx coeff = normalization == CircNormalization::Squared
                         ? c / denom
                         : (c / factorial(phi.degree())) / denom;
  return trusted_form(phi.space(), phi.p(), phi.q(), phi.tensor() - om * coeff, phi.k());
}

long long prop27_coefficient(int n, int p, int q, int k) {
  const long long s = p + q - 2 * k;
  return 2LL * (p - k) * (q - k) + s * ((n + 1) - s);
}

Prop27Report sharp_norm_coefficient_check(const PQForm& phi, const HolonomySubalgebra* algebra) {
  if (!phi.k()) throw DomainError("sharp_norm_coefficient_check requires a declared k");
  std::optional<HolonomySubalgebra> own;
  if (!algebra) {
    own.emplace(unitary(phi.space()));
    algebra = &*own;
  }
  Prop27Report r;
  r.n = phi.n();
  r.p = phi.p();
  r.q = phi.q();
  r.k = *phi.k();
  r.coefficient = prop27_coefficient(r.n, r.p, r.q, r.k);
  const double norm = factorial(phi.degree());
  r.sharp_norm_sq = sharp_norm_squared(phi.tensor(), *algebra) / norm;
  r.circ_norm_sq = circ(phi).norm_squared();
  r.rhs = static_cast<double>(r.coefficient) * r.circ_norm_sq;
  const double floor = 1e-20 + 1e-12 * phi.norm_squared();
  r.ratio = r.circ_norm_sq > floor ? r.sharp_norm_sq / r.circ_norm_sq : std::numeric_limits<double>::quiet_NaN();
  r.deviation = relative_deviation(r.sharp_norm_sq, r.rhs, std::max(1e-10 * phi.norm_squared(), 1e-14));
  return r;
}

Prop28Report action_bound_check(const PQForm& phi, int samples, std::uint64_t seed,
                                const HolonomySubalgebra* algebra) {
  if (!phi.k()) throw DomainError("action_bound_check requires a declared k");
  if (samples < 1) throw DomainError("action_bound_check: samples must be positive");
  std::optional<HolonomySubalgebra> own;
  if (!algebra) {
    own.emplace(unitary(phi.space()));
    algebra = &*own;
  }
  Prop28Report r;
  r.n = phi.n();
  r.p = phi.p();
  r.q = phi.q();
  r.k = *phi.k();
  r.samples = samples;
  const int weight = r.p + r.q - 2 * r.k;
  const double circ_norm = circ(phi).norm_squared();
  if (weight == 0 || circ_norm <= 1e-20 + 1e-12 * phi.norm_squared()) {
    r.vacuous = true;
    r.pass = true;
    r.note = weight == 0 ? "vacuous: p+q-2k = 0" : "vacuous: circ(phi) = 0";
    return r;
  }
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const Bivector l = random_algebra_element(*algebra, rng);
    const double lphi = form_norm_squared(act_on_tensor(l, phi.tensor()));
    r.max_ratio = std::max(r.max_ratio, lphi / (weight * l.coeffs().squaredNorm() * circ_norm));
  }
  r.pass = r.max_ratio <= 1.0 + 1e-9;
  return r;
}

Bidegree serre_remap(int n, int p, int q) {
  if (p < 0 || q < 0 || p > n || q > n) throw DomainError("bidegree out of range");
  Bidegree b{p, q, false, {}};
  if (p + q > n) {
    b.p = n - p;
    b.q = n - q;
    b.remapped = true;
    b.note = "(p,q) = (" + std::to_string(p) + "," + std::to_string(q) + ") remapped to (" + std::to_string(b.p) +
             "," + std::to_string(b.q) + ") by Serre duality";
  }
  return b;
}

}  // namespace bochner
