// bochnerkit: command-line front end. Machine JSON on stdout (or -o), human summary on stderr.
// Exit codes: 0 pass, 1 error / failed verification, 2 inconclusive verdict.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bochner/criteria.hpp"
#include "bochner/curvature.hpp"
#include "bochner/forms.hpp"
#include "bochner/holonomy.hpp"
#include "bochner/json_io.hpp"
#include "bochner/random.hpp"
#include "bochner/verify.hpp"
#include "bochner/weitzenbock.hpp"

using namespace bochner;

namespace {

struct Globals {
  std::uint64_t seed = 42;
  std::optional<double> tol;
  std::optional<int> samples;
  std::string input;
  std::string output = "-";
};

// Dimension options shared by model-building commands.
struct SpaceArgs {
  std::optional<int> n, m, d;

  EuclideanSpace build(const std::string& what) const {
    const int given = (n ? 1 : 0) + (m ? 1 : 0) + (d ? 1 : 0);
    if (given != 1) throw DomainError(what + ": give exactly one of --n (complex), --m (quaternionic), --d (real)");
    if (n) return EuclideanSpace::complex(*n);
    if (m) return EuclideanSpace::quaternionic(*m);
    return EuclideanSpace(*d);
  }
};

void add_space_options(CLI::App* cmd, SpaceArgs& s) {
  cmd->add_option("--n", s.n, "complex dimension (block complex structure)")->check(CLI::PositiveNumber);
  cmd->add_option("--m", s.m, "quaternionic dimension")->check(CLI::PositiveNumber);
  cmd->add_option("--d", s.d, "real dimension, no extra structure")->check(CLI::PositiveNumber);
}

AlgebraicCurvatureTensor build_model(const std::string& kind, const EuclideanSpace& space, double c) {
  AlgebraicCurvatureTensor rm = model(parse_model_kind(kind), space, c);
  if (rm.tensor().max_abs() == 0.0) {
    // The flat tensor is supported on every holonomy algebra.
    if (space.has_complex_structure()) rm = rm.as_kahler();
    if (space.has_quaternionic_structure()) rm = rm.as_quaternion();
  }
  return rm;
}

AlgebraKind default_algebra(const AlgebraicCurvatureTensor& rm) {
  if (rm.quaternion()) return AlgebraKind::SP_SP1;
  if (rm.kahler()) return AlgebraKind::U;
  return AlgebraKind::SO;
}

AlgebraicCurvatureTensor load_curvature(const std::string& path) {
  if (path.empty()) throw IOError("missing input curvature file (-i)");
  return curvature_from_json(read_json_file(path));
}

int verdict_exit(const VanishingVerdict& v) {
  std::cerr << to_string(v.theorem_id) << ": " << to_string(v.conclusion) << " (condition " << v.condition_value
            << (v.strict ? " > " : " >= ") << v.threshold << ", kappa admissible: " << std::boolalpha
            << v.kappa_admissible << ")\n";
  return v.conclusive() ? 0 : 2;
}

int report_exit(const VerificationReport& r) {
  std::cerr << r.suite << ": " << r.cases.size() - static_cast<std::size_t>(r.failures()) << "/" << r.cases.size()
            << " cases pass (seed " << r.seed << ", " << r.wall_time << " s)\n";
  for (const auto& c : r.cases)
    if (!c.pass)
      std::cerr << "  FAIL " << c.id << ": lhs " << c.lhs << " rhs " << c.rhs << " deviation " << c.deviation
                << " > " << r.tolerances.at(c.tolerance) << '\n';
  return r.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Algebraic curvature, holonomy and vanishing-criterion toolkit"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  Globals g;
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--tol", g.tol, "pass threshold override for verification commands");
  app.add_option("--samples", g.samples, "sample count override")->check(CLI::PositiveNumber);
  app.add_option("-i,--input", g.input, "input JSON file ('-' for stdin)");
  app.add_option("-o,--output", g.output, "output JSON file ('-' for stdout)");
  app.fallthrough();

  int status = 0;

  // model ------------------------------------------------------------------
  auto* cmd_model = app.add_subcommand("model", "write a model curvature tensor");
  std::string model_kind;
  SpaceArgs model_space;
  double model_c = 1.0;
  cmd_model->add_option("kind", model_kind, "flat | constant_sectional | chsc | hpm")->required();
  add_space_options(cmd_model, model_space);
  cmd_model->add_option("--c", model_c, "curvature scale");
  cmd_model->callback([&] {
    const auto rm = build_model(model_kind, model_space.build("model"), model_c);
    write_json_file(g.output, curvature_to_json(rm));
    std::cerr << model_kind << ": d=" << rm.dim() << " kahler=" << std::boolalpha << rm.kahler()
              << " quaternion=" << rm.quaternion() << " scal=" << scalar_curvature(rm) << '\n';
  });

  // tensor / form generators -------------------------------------------------
  auto* cmd_tensor = app.add_subcommand("tensor", "write a random complex tensor");
  SpaceArgs tensor_space;
  int tensor_rank = 1;
  add_space_options(cmd_tensor, tensor_space);
  cmd_tensor->add_option("--rank", tensor_rank)->check(CLI::NonNegativeNumber);
  cmd_tensor->callback([&] {
    const auto space = tensor_space.build("tensor");
    Rng rng(g.seed);
    write_json_file(g.output, tensor_to_json(random_tensor(space.dim(), tensor_rank, rng), space));
  });

  auto* cmd_form = app.add_subcommand("form", "write a random element of the stratum Omega^k ^ primitive (p-k,q-k)");
  int form_n = 2, form_p = 1, form_q = 0, form_k = 0;
  cmd_form->add_option("--n", form_n)->check(CLI::PositiveNumber);
  cmd_form->add_option("--p", form_p);
  cmd_form->add_option("--q", form_q);
  cmd_form->add_option("--k", form_k);
  cmd_form->callback([&] {
    const auto space = EuclideanSpace::complex(form_n);
    if (form_k < 0 || form_k > std::min(form_p, form_q)) throw DomainError("form: k must lie in [0, min(p,q)]");
    const auto basis = build_pq_basis(space, form_p - form_k, form_q - form_k);
    Rng rng(g.seed);
    PQForm psi = basis.front() * rng.complex_normal();
    for (std::size_t i = 1; i < basis.size(); ++i) psi = psi + basis[i] * rng.complex_normal();
    write_json_file(g.output, form_to_json(construct_stratum(psi, form_k)));
  });

  // spectrum ----------------------------------------------------------------
  auto* cmd_spectrum = app.add_subcommand("spectrum", "eigenvalues of the curvature operator on a holonomy algebra");
  std::string spectrum_algebra;
  cmd_spectrum->add_option("--algebra", spectrum_algebra, "so | u | sp (default from the file's flags)");
  cmd_spectrum->callback([&] {
    const auto rm = load_curvature(g.input);
    const auto kind = spectrum_algebra.empty() ? default_algebra(rm) : parse_algebra_kind(spectrum_algebra);
    const auto algebra = HolonomySubalgebra::build(rm.space(), kind);
    const auto s = restricted_spectrum(to_operator(rm), algebra);
    write_json_file(g.output, spectrum_to_json(s, algebra));
    std::cerr << s.eigenvalues.size() << " eigenvalues on " << to_string(kind) << ", leakage " << s.leakage << '\n';
    if (s.leakage > 1e-6) {
      std::cerr << "error: operator leaks onto the complement of " << to_string(kind)
                << "; the spectrum does not describe the curvature\n";
      status = 1;
    }
  });

  // decompose ---------------------------------------------------------------
  auto* cmd_decompose = app.add_subcommand("decompose", "Kahler or quaternion-Kahler decomposition");
  std::string decompose_kind;
  cmd_decompose->add_option("kind", decompose_kind, "kahler | quaternion")
      ->required()
      ->check(CLI::IsMember({"kahler", "quaternion"}));
  cmd_decompose->callback([&] {
    const auto rm = load_curvature(g.input);
    if (decompose_kind == "kahler") {
      const auto dec = kahler_decompose(rm);
      const auto tr = bochner_traces(dec.bochner, rm.space().complex_structure());
      Json j = kahler_decomposition_to_json(dec, rm.space());
      j["bochner_traces"] = {{"ricci", tr.ricci_trace}, {"kahler", tr.kahler_trace}};
      write_json_file(g.output, j);
      std::cerr << "scal " << dec.scal << ", |B|^2 " << dec.bochner.norm_squared() << '\n';
    } else {
      const auto dec = quaternion_decompose(rm);
      write_json_file(g.output, quaternion_decomposition_to_json(dec, rm.space()));
      std::cerr << "hp coefficient " << dec.hp_coefficient << ", |R0|^2 " << dec.r0.norm_squared() << '\n';
    }
  });

  // sharp-norm --------------------------------------------------------------
  auto* cmd_sharp = app.add_subcommand("sharp-norm", "sharp-norm identities for Kahler / quaternion-Kahler tensors");
  cmd_sharp->callback([&] {
    const auto rep = sharp_norm_identities(load_curvature(g.input));
    write_json_file(g.output, sharp_norm_to_json(rep));
    if (rep.kahler) std::cerr << "kahler: deviation " << rep.kahler->deviation << '\n';
    if (rep.quaternion)
      std::cerr << "quaternion: deviation " << rep.quaternion->deviation << ", observed coefficient "
                << rep.quaternion->observed_coefficient << " vs " << rep.quaternion->coefficient << '\n';
  });

  // weitz -------------------------------------------------------------------
  auto* cmd_weitz = app.add_subcommand("weitz", "Weitzenbock curvature term");
  cmd_weitz->require_subcommand(1);
  std::string weitz_tensor, weitz_algebra;
  double weitz_c = 1.0;

  auto* weitz_ric = cmd_weitz->add_subcommand("ric", "Ric(T), or c Ric(T) with --c");
  weitz_ric->add_option("-t,--tensor", weitz_tensor, "tensor JSON")->required();
  weitz_ric->add_option("--c", weitz_c, "Lichnerowicz constant (1 Hodge, 0.5 curvature tensors)");
  weitz_ric->callback([&] {
    const auto rm = load_curvature(g.input);
    const auto t = tensor_from_json(read_json_file(weitz_tensor));
    write_json_file(g.output, tensor_to_json(lichnerowicz_zero_order(rm, t, weitz_c), rm.space()));
  });

  auto* weitz_term = cmd_weitz->add_subcommand("term", "g(r(T^g), T^g) by the Gram and eigen routes");
  weitz_term->add_option("-t,--tensor", weitz_tensor, "tensor JSON")->required();
  weitz_term->add_option("--algebra", weitz_algebra, "so | u | sp");
  weitz_term->callback([&] {
    const auto rm = load_curvature(g.input);
    const auto t = tensor_from_json(read_json_file(weitz_tensor));
    const auto kind = weitz_algebra.empty() ? default_algebra(rm) : parse_algebra_kind(weitz_algebra);
    const auto algebra = HolonomySubalgebra::build(rm.space(), kind);
    const auto term = curvature_term(to_operator(rm), algebra, t);
    Json per = Json::array();
    for (const auto& [mu, w] : term.per_eigenvalue) per.push_back({{"mu", mu}, {"weight", w}});
    write_json_file(g.output, Json{{"algebra", std::string(to_string(kind))},
                                   {"value", term.value},
                                   {"gram_value", term.gram_value},
                                   {"sharp_norm_sq", term.sharp_norm_sq},
                                   {"leakage", term.leakage},
                                   {"per_eigenvalue", std::move(per)}});
    std::cerr << "curvature term " << term.gram_value << " (leakage " << term.leakage << ")\n";
  });

  auto* weitz_verify = cmd_weitz->add_subcommand("verify", "check the Weitzenbock identities on given inputs");
  weitz_verify->require_subcommand(1);
  auto* wv_prop24 = weitz_verify->add_subcommand("prop24", "g(Ric(T),T) against the restricted curvature term");
  wv_prop24->add_option("-t,--tensor", weitz_tensor, "tensor JSON")->required();
  wv_prop24->add_option("--algebra", weitz_algebra, "so | u | sp");
  wv_prop24->callback([&] {
    const auto rm = load_curvature(g.input);
    const auto t = tensor_from_json(read_json_file(weitz_tensor));
    const auto kind = weitz_algebra.empty() ? default_algebra(rm) : parse_algebra_kind(weitz_algebra);
    const auto rep = verify_prop24(rm, HolonomySubalgebra::build(rm.space(), kind), t, Tolerance{}, g.tol.value_or(1e-8));
    write_json_file(g.output, prop24_to_json(rep));
    std::cerr << "lhs " << rep.lhs << " rhs " << rep.rhs << " deviation " << rep.deviation << '\n';
    status = rep.pass ? 0 : 1;
  });

  auto* wv_lemma26 = weitz_verify->add_subcommand("lemma26", "eigenvalue lower bound on random (1,0)-forms");
  std::optional<double> l26_C;
  int l26_ell = 1;
  double l26_kappa = 0.0;
  wv_lemma26->add_option("--C", l26_C, "constant C (default n, the (1,0)-form value)");
  wv_lemma26->add_option("--ell", l26_ell);
  wv_lemma26->add_option("--kappa", l26_kappa, "kappa <= 0");
  wv_lemma26->callback([&] {
    const auto rm = load_curvature(g.input);
    if (!rm.kahler()) throw StructureError("lemma26 on (1,0)-forms needs a Kahler curvature file");
    const auto& space = rm.space();
    const int n = space.complex_dim();
    const auto u = HolonomySubalgebra::build(space, AlgebraKind::U);
    Rng rng(g.seed);
    std::vector<ComplexTensor> forms;
    for (int i = 0; i < g.samples.value_or(200); ++i) {
      ComplexTensor phi(space.dim(), 1);
      for (int j = 0; j < n; ++j) phi += dz(space, j) * rng.complex_normal();
      forms.push_back(std::move(phi));
    }
    const auto gram = restricted_spectrum(to_operator(rm), u).gram;
    const auto rep = verify_lemma26(gram, u, forms, l26_C.value_or(n), l26_ell, l26_kappa, rng.next_seed(), 50,
                                    g.tol.value_or(1e-10));
    write_json_file(g.output, lemma26_to_json(rep));
    std::cerr << "premise " << rep.premise << ", admitted " << rep.admitted << "/" << forms.size() << ", pass "
              << std::boolalpha << rep.pass() << '\n';
    status = rep.pass() ? 0 : 1;
  });

  // forms -------------------------------------------------------------------
  auto* cmd_forms = app.add_subcommand("forms", "checks on (p,q)-forms");
  cmd_forms->require_subcommand(1);
  auto* f27 = cmd_forms->add_subcommand("check-prop27", "|phi^u|^2 against the stratum coefficient times |phi_circ|^2");
  f27->callback([&] {
    const auto phi = form_from_json(read_json_file(g.input.empty() ? "-" : g.input));
    const auto rep = sharp_norm_coefficient_check(phi);
    write_json_file(g.output, prop27_to_json(rep));
    std::cerr << "coefficient " << rep.coefficient << ", ratio " << rep.ratio << ", deviation " << rep.deviation << '\n';
    status = rep.deviation <= g.tol.value_or(1e-8) ? 0 : 1;
  });
  auto* f28 = cmd_forms->add_subcommand("check-prop28", "sampled |L phi|^2 / ((p+q-2k)|L|^2|phi_circ|^2) <= 1");
  f28->callback([&] {
    const auto phi = form_from_json(read_json_file(g.input.empty() ? "-" : g.input));
    const auto rep = action_bound_check(phi, g.samples.value_or(200), g.seed);
    write_json_file(g.output, prop28_to_json(rep));
    std::cerr << "max ratio " << rep.max_ratio << (rep.vacuous ? " (vacuous)" : "") << '\n';
    status = rep.pass ? 0 : 1;
  });

  // check -------------------------------------------------------------------
  auto* cmd_check = app.add_subcommand("check", "eigenvalue vanishing criteria");
  cmd_check->require_subcommand(1);
  std::string chk_spectrum, chk_model;
  double chk_c = 1.0, chk_kappa = 0.0, chk_rho = 1.0, chk_Q = 2.0;
  int chk_n = 0, chk_p = 0, chk_q = 0, chk_m = 0;
  std::optional<int> chk_stratum;
  bool chk_scalar_flat = false;
  double chk_term = 0.0;
  bool chk_quaternion = false;

  auto spectrum_source = [&](CLI::App* sub) {
    sub->add_option("--spectrum", chk_spectrum, "spectrum JSON (array or {\"eigenvalues\": [...]})");
    sub->add_option("--model", chk_model, "use a model's spectrum instead: flat | chsc | hpm | constant_sectional");
    sub->add_option("--c", chk_c, "model curvature scale");
  };
  auto load_spectrum = [&](AlgebraKind kind, const EuclideanSpace& space) -> Eigen::VectorXd {
    if (!chk_spectrum.empty() == !chk_model.empty()) throw DomainError("give exactly one of --spectrum or --model");
    if (!chk_spectrum.empty()) return spectrum_from_json(read_json_file(chk_spectrum));
    const auto rm = build_model(chk_model, space, chk_c);
    const auto algebra = HolonomySubalgebra::build(space, kind);
    const auto s = restricted_spectrum(to_operator(rm), algebra);
    if (s.leakage > 1e-6)
      throw LeakageError("model " + chk_model + " is not supported on " + std::string(to_string(kind)), s.leakage);
    return s.eigenvalues;
  };
  auto emit = [&](const VanishingVerdict& v) {
    write_json_file(g.output, verdict_to_json(v));
    status = verdict_exit(v);
  };

  auto* chk_pq = cmd_check->add_subcommand("pq", "harmonic (p,q)-forms");
  chk_pq->add_option("--n", chk_n)->required();
  chk_pq->add_option("--p", chk_p)->required();
  chk_pq->add_option("--q", chk_q)->required();
  chk_pq->add_option("--kappa", chk_kappa);
  chk_pq->add_option("--rho", chk_rho, "weight value at the point");
  chk_pq->add_option("--Q", chk_Q);
  chk_pq->add_option("--stratum", chk_stratum, "restrict to Omega^k ^ primitive forms");
  spectrum_source(chk_pq);
  chk_pq->callback([&] {
    const auto spec = load_spectrum(AlgebraKind::U, EuclideanSpace::complex(chk_n));
    emit(check_pq(spec, chk_n, chk_p, chk_q, chk_kappa, chk_rho, chk_Q, PQCheckOptions{chk_stratum}));
  });

  for (const char* name : {"bochner", "einstein"}) {
    auto* sub = cmd_check->add_subcommand(name, std::string(name) == "bochner" ? "divergence-free Bochner tensor"
                                                                               : "Kahler-Einstein flatness");
    sub->add_option("--n", chk_n)->required();
    sub->add_option("--k", chk_kappa);
    sub->add_option("--rho", chk_rho);
    sub->add_option("--Q", chk_Q);
    spectrum_source(sub);
    const bool bochner = std::string(name) == "bochner";
    sub->callback([&, bochner] {
      const auto spec = load_spectrum(AlgebraKind::U, EuclideanSpace::complex(chk_n));
      emit(bochner ? check_bochner(spec, chk_n, chk_kappa, chk_rho, chk_Q)
                   : check_einstein_flat(spec, chk_n, chk_kappa, chk_rho, chk_Q));
    });
  }

  auto* chk_quat = cmd_check->add_subcommand("quaternion", "quaternion-Kahler flatness");
  chk_quat->add_option("--m", chk_m)->required();
  chk_quat->add_option("--k", chk_kappa);
  chk_quat->add_option("--rho", chk_rho);
  chk_quat->add_option("--Q", chk_Q);
  chk_quat->add_flag("--scalar-flat", chk_scalar_flat, "assert vanishing scalar curvature");
  spectrum_source(chk_quat);
  chk_quat->callback([&] {
    const auto spec = load_spectrum(AlgebraKind::SP_SP1, EuclideanSpace::quaternionic(chk_m));
    emit(check_quaternion(spec, chk_m, chk_kappa, chk_rho, chk_Q, chk_scalar_flat));
  });

  auto* chk_lq = cmd_check->add_subcommand("lq", "ceil(n/2)-nonnegativity");
  chk_lq->add_option("--n", chk_n)->required();
  spectrum_source(chk_lq);
  chk_lq->callback([&] {
    const auto spec = load_spectrum(AlgebraKind::U, EuclideanSpace::complex(chk_n));
    emit(check_lq_nonneg(spec, chk_n));
  });

  auto* chk_tensor = cmd_check->add_subcommand("tensor", "Lichnerowicz-harmonic tensors from a curvature-term bound");
  chk_tensor->add_option("--term-bound", chk_term, "infimum of g(r(T^g),T^g)/|T|^2")->required();
  chk_tensor->add_option("--kappa", chk_kappa);
  chk_tensor->add_option("--rho", chk_rho);
  chk_tensor->add_option("--c", chk_c, "Lichnerowicz constant");
  chk_tensor->add_option("--Q", chk_Q);
  chk_tensor->add_flag("--quaternion", chk_quaternion, "quaternion-Kahler setting");
  chk_tensor->callback([&] { emit(check_tensor(chk_term, chk_kappa, chk_rho, chk_c, chk_Q, chk_quaternion)); });

  // verify ------------------------------------------------------------------
  auto* cmd_verify = app.add_subcommand("verify", "run a deterministic verification suite");
  std::string verify_suite;
  VerifySettings vs;
  bool verify_timing = false;
  std::vector<std::string> suite_names = verification_suites();
  suite_names.push_back("all");
  cmd_verify->add_option("suite", verify_suite)->required()->check(CLI::IsMember(suite_names));
  cmd_verify->add_option("--n", vs.n, "restrict Kahler suites to one complex dimension");
  cmd_verify->add_option("--m", vs.m, "quaternionic dimension");
  cmd_verify->add_flag("--timing", verify_timing, "include wall_time in the JSON (breaks byte-identical output)");
  cmd_verify->callback([&] {
    vs.seed = g.seed;
    vs.samples = g.samples;
    vs.tol = g.tol;
    if (verify_suite == "all") {
      Json reports = Json::array();
      for (const auto& name : verification_suites()) {
        const auto r = run_suite(name, vs);
        reports.push_back(report_to_json(r, verify_timing));
        status = std::max(status, report_exit(r));
      }
      write_json_file(g.output, Json{{"seed", g.seed}, {"pass", status == 0}, {"reports", std::move(reports)}});
    } else {
      const auto r = run_suite(verify_suite, vs);
      write_json_file(g.output, report_to_json(r, verify_timing));
      status = report_exit(r);
    }
  });

  // algebra -----------------------------------------------------------------
  auto* cmd_algebra = app.add_subcommand("algebra", "holonomy algebra bases");
  cmd_algebra->require_subcommand(1);
  auto* alg_export = cmd_algebra->add_subcommand("export", "orthonormal basis in the e_i^e_j coordinates");
  std::string alg_kind = "u";
  SpaceArgs alg_space;
  alg_export->add_option("--algebra", alg_kind, "so | u | sp");
  add_space_options(alg_export, alg_space);
  alg_export->callback([&] {
    const auto algebra = HolonomySubalgebra::build(alg_space.build("algebra export"), parse_algebra_kind(alg_kind));
    write_json_file(g.output, algebra_to_json(algebra));
    std::cerr << to_string(algebra.kind()) << ": " << algebra.size() << " basis elements\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const LeakageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return status;
}
