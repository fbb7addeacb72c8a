#include "bochner/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

#include "bochner/random.hpp"
#include "bochner/weitzenbock.hpp"

namespace bochner {

namespace {

std::string tag(const std::string& base, std::initializer_list<std::pair<const char*, int>> kv) {
  std::string s = base;
  for (const auto& [k, v] : kv) s += " " + std::string(k) + "=" + std::to_string(v);
  return s;
}

std::vector<int> kahler_dims(const VerifySettings& s, std::vector<int> defaults) {
  if (s.n) return {*s.n};
  return defaults;
}

PQForm random_combination(const std::vector<PQForm>& basis, Rng& rng) {
  PQForm out = basis.front() * rng.complex_normal();
  for (std::size_t i = 1; i < basis.size(); ++i) out = out + basis[i] * rng.complex_normal();
  return out;
}

struct Config {
  int n, p, q, k;
};

// All (n, p, q, k) with 1 ≤ p+q ≤ n ≤ 3, k ≤ min(p,q), p+q−2k > 0.
std::vector<Config> form_configs(const VerifySettings& s) {
  std::vector<Config> out;
  for (int n : kahler_dims(s, {1, 2, 3}))
    for (int deg = 1; deg <= n; ++deg)
      for (int p = 0; p <= deg; ++p) {
        const int q = deg - p;
        for (int k = 0; k <= std::min(p, q); ++k)
          if (p + q - 2 * k > 0) out.push_back({n, p, q, k});
      }
  return out;
}

// ---------------------------------------------------------------------------

void suite_identities(VerificationReport& r, const VerifySettings& s, Rng& rng) {
  const int samples = s.samples.value_or(100);
  r.tolerances["duality"] = s.tol.value_or(1e-10);
  r.tolerances["support"] = 1e-9;
  r.tolerances["algebra"] = 1e-10;
  for (int d : {4, 6, 8}) {
    const EuclideanSpace space(d);
    for (int i = 0; i < samples; ++i) {
      const auto rm = random_curvature(space, rng);
      const double lhs = rm.norm_squared();
      const double rhs = 4.0 * to_operator(rm).norm_squared();
      add_case(r, tag("|Rm|^2 = 4|R|^2", {{"d", d}, {"sample", i}}), lhs, rhs, relative_deviation(lhs, rhs),
               "duality");
    }
  }
  for (int m : {2, 3}) {
    const auto space = EuclideanSpace::quaternionic(m);
    const auto algebra = HolonomySubalgebra::build(space, AlgebraKind::SP_SP1);
    const double leak = complement_leakage(to_operator(model(ModelKind::HPm, space)), algebra);
    add_case(r, tag("hpm supported on sp(m)+sp(1)", {{"m", m}}), leak, 0.0, leak, "support");
  }
  for (int n : {2, 3}) {
    const auto space = EuclideanSpace::complex(n);
    const auto algebra = HolonomySubalgebra::build(space, AlgebraKind::U);
    const double leak = complement_leakage(to_operator(model(ModelKind::CHSC, space, 4.0)), algebra);
    add_case(r, tag("chsc supported on u(n)", {{"n", n}}), leak, 0.0, leak, "support");
  }
  for (const auto& [space, kind] : {std::pair{EuclideanSpace::complex(3), AlgebraKind::U},
                                   std::pair{EuclideanSpace::quaternionic(2), AlgebraKind::SP_SP1},
                                   std::pair{EuclideanSpace(6), AlgebraKind::SO}}) {
    const auto algebra = HolonomySubalgebra::build(space, kind);
    const std::string name = std::string(to_string(kind));
    const double dim_dev = std::abs(algebra.size() - HolonomySubalgebra::expected_dimension(space, kind));
    add_case(r, "dim " + name + " d=" + std::to_string(space.dim()), algebra.size(),
             HolonomySubalgebra::expected_dimension(space, kind), dim_dev, "algebra");
    add_case(r, "orthonormal basis " + name, algebra.orthonormality_defect(), 0.0, algebra.orthonormality_defect(),
             "algebra");
    add_case(r, "bracket closure " + name, algebra.closure_defect(), 0.0, algebra.closure_defect(), "algebra");
  }
}

void suite_prop24(VerificationReport& r, const VerifySettings& s, Rng& rng) {
  const int samples = s.samples.value_or(50);
  const double threshold = s.tol.value_or(1e-8);
  r.tolerances["prop24"] = threshold;
  struct Pair {
    std::string name;
    AlgebraicCurvatureTensor rm;
    HolonomySubalgebra algebra;
  };
  std::vector<Pair> pairs;
  for (int n : kahler_dims(s, {2, 3})) {
    const auto space = EuclideanSpace::complex(n);
    const auto u = HolonomySubalgebra::build(space, AlgebraKind::U);
    pairs.push_back({"chsc n=" + std::to_string(n) + " u", model(ModelKind::CHSC, space, 4.0), u});
    pairs.push_back({"random-kahler n=" + std::to_string(n) + " u", random_kahler_curvature(space, rng), u});
  }
  {
    const auto space = EuclideanSpace::quaternionic(s.m.value_or(2));
    const auto sp = HolonomySubalgebra::build(space, AlgebraKind::SP_SP1);
    const std::string m = std::to_string(s.m.value_or(2));
    pairs.push_back({"hpm m=" + m + " sp", model(ModelKind::HPm, space), sp});
    pairs.push_back({"hpm+hyperkahler m=" + m + " sp",
                     model(ModelKind::HPm, space) + random_hyperkahler_curvature(space, rng), sp});
  }
  for (const auto& pr : pairs) {
    for (int rank = 1; rank <= 3; ++rank) {
      for (int i = 0; i < samples; ++i) {
        const auto t = random_tensor(pr.rm.dim(), rank, rng);
        const Prop24Report rep = verify_prop24(pr.rm, pr.algebra, t, Tolerance{}, threshold);
        VerificationCase c{pr.name + " rank=" + std::to_string(rank) + " sample=" + std::to_string(i),
                           rep.lhs, rep.rhs, rep.deviation, rep.pass, "prop24"};
        r.cases.push_back(std::move(c));
      }
    }
  }
}

void suite_prop27(VerificationReport& r, const VerifySettings& s, Rng& rng) {
  const int samples = s.samples.value_or(20);
  r.tolerances["prop27"] = s.tol.value_or(1e-8);
  for (const auto& c : form_configs(s)) {
    const auto space = EuclideanSpace::complex(c.n);
    const auto u = HolonomySubalgebra::build(space, AlgebraKind::U);
    const auto basis = build_pq_basis(space, c.p - c.k, c.q - c.k);
    const std::string base = tag("prop27", {{"n", c.n}, {"p", c.p}, {"q", c.q}, {"k", c.k}});
    auto run = [&](const PQForm& psi, const std::string& id) {
      const PQForm phi = construct_stratum(psi, c.k);
      const Prop27Report rep = sharp_norm_coefficient_check(phi, &u);
      if (std::isnan(rep.ratio)) return;  // primitive part vanishes: nothing to compare
      add_case(r, id, rep.sharp_norm_sq, rep.rhs, rep.deviation, "prop27");
    };
    for (std::size_t i = 0; i < basis.size(); ++i) run(basis[i], base + " basis=" + std::to_string(i));
    for (int i = 0; i < samples; ++i) run(random_combination(basis, rng), base + " random=" + std::to_string(i));
  }
}

void suite_prop28(VerificationReport& r, const VerifySettings& s, Rng& rng) {
  const int samples = s.samples.value_or(200);
  r.tolerances["prop28"] = s.tol.value_or(1e-9);
  for (const auto& c : form_configs(s)) {
    const auto space = EuclideanSpace::complex(c.n);
    const auto u = HolonomySubalgebra::build(space, AlgebraKind::U);
    const std::string base = tag("prop28", {{"n", c.n}, {"p", c.p}, {"q", c.q}, {"k", c.k}});
    auto run = [&](const PQForm& phi, const std::string& id) {
      const Prop28Report rep = action_bound_check(phi, samples, rng.next_seed(), &u);
      if (rep.vacuous) return;
      add_case(r, id, rep.max_ratio, 1.0, std::max(0.0, rep.max_ratio - 1.0), "prop28");
    };
    // Irreducible stratum and the literal product ψ₁ ∧ Ωᵏ ∧ ψ₂.
    run(construct_stratum(random_combination(build_pq_basis(space, c.p - c.k, c.q - c.k), rng), c.k),
        base + " stratum");
    const PQForm psi1 = random_combination(build_pq_basis(space, c.p - c.k, 0), rng);
    const PQForm psi2 = random_combination(build_pq_basis(space, 0, c.q - c.k), rng);
    run(construct_Vpqk(psi1, psi2, c.k), base + " product");
  }
}

void suite_lemma26(VerificationReport& r, const VerifySettings& s, Rng& rng) {
  const int samples = s.samples.value_or(200);
  const double slack = s.tol.value_or(1e-10);
  r.tolerances["lemma26"] = slack;
  r.tolerances["exact"] = 0.0;
  for (int n : kahler_dims(s, {2, 3})) {
    const auto space = EuclideanSpace::complex(n);
    const auto u = HolonomySubalgebra::build(space, AlgebraKind::U);
    const double C = n;  // (1,0)-forms: |Lφ|² ≤ |L|²|φ|² = |L|²|φ^u|²/n

    std::vector<ComplexTensor> forms;
    for (int i = 0; i < samples; ++i) {
      ComplexTensor phi(2 * n, 1);
      for (int j = 0; j < n; ++j) phi += dz(space, j) * rng.complex_normal();
      forms.push_back(std::move(phi));
    }

    struct Source {
      std::string name;
      Eigen::MatrixXd gram;
    };
    std::vector<Source> sources;
    const auto gram_of = [&](const AlgebraicCurvatureTensor& rm) {
      return restricted_spectrum(to_operator(rm), u).gram;
    };
    sources.push_back({"chsc", gram_of(model(ModelKind::CHSC, space, 4.0))});
    sources.push_back({"flat", Eigen::MatrixXd::Zero(u.size(), u.size())});
    for (int i = 0; i < 3; ++i) sources.push_back({"random-kahler-" + std::to_string(i), gram_of(random_kahler_curvature(space, rng))});

    for (const auto& src : sources) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(src.gram, Eigen::EigenvaluesOnly);
      const Eigen::VectorXd mu = es.eigenvalues();
      for (int ell = 1; ell <= static_cast<int>(std::floor(C)) && ell + 1 <= u.size(); ++ell) {
        double premise = 0.0;
        for (int i = 0; i < ell; ++i) premise += mu[i];
        premise += (C - ell) * mu[ell];
        // Largest κ ≤ 0 for which the premise holds (equality when the premise is negative).
        const double kappa = std::min(0.0, premise / (ell + 1));
        const Lemma26Report rep = verify_lemma26(src.gram, u, forms, C, ell, kappa, rng.next_seed(), 50, slack);
        const double scale = std::max(1.0, mu.cwiseAbs().maxCoeff());
        double violation = 0.0;
        for (const auto& smp : rep.samples)
          if (smp.admitted)
            violation = std::max(violation, (smp.bound - smp.term) / (scale * std::max(1.0, smp.sharp_norm_sq)));
        if (!rep.conclusion2) violation = std::max(violation, 1.0);
        const std::string id = tag("lemma26 " + src.name, {{"n", n}, {"ell", ell}});
        add_case(r, id + " bound", rep.premise, kappa * (ell + 1), violation, "lemma26");
        add_case(r, id + " admitted", rep.admitted, samples, std::abs(rep.admitted - samples), "exact");
      }
    }
  }
}

void suite_lemma212(VerificationReport& r, const VerifySettings& s, Rng& rng) {
  const int samples = s.samples.value_or(50);
  r.tolerances["lemma212"] = s.tol.value_or(1e-8);
  r.tolerances["equality"] = 1e-10;
  for (int n : kahler_dims(s, {2, 3})) {
    const auto space = EuclideanSpace::complex(n);
    for (int i = 0; i < samples; ++i) {
      const auto id = kahler_sharp_identity(random_kahler_curvature(space, rng));
      add_case(r, tag("lemma212 random-kahler", {{"n", n}, {"sample", i}}), id.sharp_norm_sq, id.rhs, id.deviation,
               "lemma212");
    }
    const auto eq = kahler_sharp_identity(model(ModelKind::CHSC, space, 4.0));
    add_case(r, tag("lemma212 chsc equality", {{"n", n}}), eq.sharp_norm_sq, eq.rhs,
             std::max(std::abs(eq.sharp_norm_sq), std::abs(eq.rhs)), "equality");
  }
}

void suite_lemma213(VerificationReport& r, const VerifySettings& s, Rng& rng) {
  const int samples = s.samples.value_or(20);
  const int m = s.m.value_or(2);
  r.tolerances["lemma213"] = s.tol.value_or(1e-8);
  const auto space = EuclideanSpace::quaternionic(m);
  for (int i = 0; i < samples; ++i) {
    const double c = 0.5 + rng.uniform();
    const auto rm = model(ModelKind::HPm, space, c) + random_hyperkahler_curvature(space, rng);
    const auto id = quaternion_sharp_identity(rm);
    add_case(r, tag("lemma213 hpm+hyperkahler", {{"m", m}, {"sample", i}}), id.sharp_norm_sq, id.rhs, id.deviation,
             "lemma213");
  }
}

void suite_bochner_tracefree(VerificationReport& r, const VerifySettings& s, Rng& rng) {
  const int samples = s.samples.value_or(50);
  r.tolerances["trace"] = s.tol.value_or(1e-8);
  r.tolerances["reassembly"] = 1e-9;
  for (int n : kahler_dims(s, {2, 3})) {
    const auto space = EuclideanSpace::complex(n);
    const Eigen::MatrixXd j = space.complex_structure();
    for (int i = 0; i < samples; ++i) {
      const auto rm = random_kahler_curvature(space, rng);
      const auto dec = kahler_decompose(rm);
      const auto tr = bochner_traces(dec.bochner, j);
      const std::string base = tag("bochner", {{"n", n}, {"sample", i}});
      add_case(r, base + " ricci-trace", tr.ricci_trace, 0.0, tr.ricci_trace, "trace");
      add_case(r, base + " kahler-trace", tr.kahler_trace, 0.0, tr.kahler_trace, "trace");
      const double err = max_abs_diff(dec.scalar_part + dec.ricci_part + dec.bochner, rm.tensor());
      add_case(r, base + " reassembly", err, 0.0, err, "reassembly");
    }
  }
}

using SuiteFn = std::function<void(VerificationReport&, const VerifySettings&, Rng&)>;

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> m{
      {"identities", suite_identities},   {"prop24", suite_prop24},
      {"prop27", suite_prop27},           {"prop28", suite_prop28},
      {"lemma26", suite_lemma26},         {"lemma212", suite_lemma212},
      {"lemma213", suite_lemma213},       {"bochner-tracefree", suite_bochner_tracefree},
  };
  return m;
}

}  // namespace

bool VerificationReport::pass() const { return failures() == 0; }

int VerificationReport::failures() const {
  return static_cast<int>(std::count_if(cases.begin(), cases.end(), [](const auto& c) { return !c.pass; }));
}

const std::vector<std::string>& verification_suites() {
  static const std::vector<std::string> names{"identities", "prop24",   "prop27",   "prop28",
                                              "lemma26",    "lemma212", "lemma213", "bochner-tracefree"};
  return names;
}

void add_case(VerificationReport& report, std::string id, double lhs, double rhs, double deviation,
              const std::string& tolerance) {
  const auto it = report.tolerances.find(tolerance);
  if (it == report.tolerances.end()) throw DomainError("unknown tolerance \"" + tolerance + "\"");
  const bool pass = std::isfinite(deviation) && deviation <= it->second;
  report.cases.push_back({std::move(id), lhs, rhs, deviation, pass, tolerance});
}

VerificationReport run_suite(const std::string& suite, const VerifySettings& settings) {
  const auto& reg = registry();
  const auto it = reg.find(suite);
  if (it == reg.end()) throw DomainError("unknown verification suite \"" + suite + "\"");
  if (settings.samples && *settings.samples < 1) throw DomainError("samples must be positive");
  VerificationReport r;
  r.suite = suite;
  r.seed = settings.seed;
  Rng rng(settings.seed);
  const auto t0 = std::chrono::steady_clock::now();
  it->second(r, settings, rng);
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

Json report_to_json(const VerificationReport& r, bool timing) {
  Json cases = Json::array();
  for (const auto& c : r.cases) {
    cases.push_back(Json{{"id", c.id},
                         {"lhs", std::isfinite(c.lhs) ? Json(c.lhs) : Json(nullptr)},
                         {"rhs", std::isfinite(c.rhs) ? Json(c.rhs) : Json(nullptr)},
                         {"deviation", std::isfinite(c.deviation) ? Json(c.deviation) : Json(nullptr)},
                         {"tolerance", c.tolerance},
                         {"pass", c.pass}});
  }
  Json tol = Json::object();
  for (const auto& [k, v] : r.tolerances) tol[k] = v;
  Json j{{"suite", r.suite},
         {"seed", r.seed},
         {"pass", r.pass()},
         {"failures", r.failures()},
         {"case_count", r.cases.size()},
         {"tolerances", std::move(tol)},
         {"cases", std::move(cases)}};
  if (timing) j["wall_time"] = r.wall_time;
  return j;
}

}  // namespace bochner
