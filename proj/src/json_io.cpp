#include "bochner/json_io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>

namespace bochner {

namespace {

Json number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;  // NaN marks an undefined ratio
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw IOError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

Json read_json_file(const std::string& path) {
  try {
    if (path == "-") return Json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw IOError("cannot open " + path);
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw IOError("invalid JSON in " + path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  if (path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw IOError("cannot write " + path);
  out << j.dump(2) << '\n';
}

std::string j_convention(const EuclideanSpace& space) {
  if (space.has_quaternionic_structure()) return "quaternionic";
  if (space.has_complex_structure()) {
    if (!space.block_complex_structure()) throw StructureError("only the block complex structure can be serialized");
    return "block";
  }
  return "none";
}

EuclideanSpace space_from_convention(int dim, const std::string& convention) {
  if (dim < 1) throw IOError("dim must be positive");
  if (convention == "none") return EuclideanSpace(dim);
  if (convention == "block") {
    if (dim % 2) throw IOError("block convention needs an even dimension");
    return EuclideanSpace::complex(dim / 2);
  }
  if (convention == "quaternionic") {
    if (dim % 4) throw IOError("quaternionic convention needs a dimension divisible by 4");
    return EuclideanSpace::quaternionic(dim / 4);
  }
  throw IOError("unknown j_convention \"" + convention + "\"");
}

Json tensor_to_json(const ComplexTensor& t, const EuclideanSpace& space) {
  Json j = tensor_to_json(t);
  j["j_convention"] = j_convention(space);
  return j;
}

Json tensor_to_json(const ComplexTensor& t) {
  Json j;
  j["dim"] = t.dim();
  j["rank"] = t.rank();
  j["j_convention"] = "none";
  Json comps = Json::array();
  for (const cplx& z : t.components()) comps.push_back(Json::array({z.real(), z.imag()}));
  j["components"] = std::move(comps);
  return j;
}

ComplexTensor tensor_from_json(const Json& j) {
  const int dim = field(j, "dim").get<int>();
  const int rank = field(j, "rank").get<int>();
  if (dim < 1 || rank < 0) throw IOError("invalid dim/rank");
  const Json& comps = field(j, "components");
  if (!comps.is_array()) throw IOError("components must be an array");
  std::size_t expected = 1;
  for (int i = 0; i < rank; ++i) expected *= static_cast<std::size_t>(dim);
  if (comps.size() != expected)
    throw IOError("components: expected " + std::to_string(expected) + " entries, got " + std::to_string(comps.size()));
  std::vector<cplx> data;
  data.reserve(expected);
  for (const auto& c : comps) {
    if (c.is_number()) {
      data.emplace_back(c.get<double>(), 0.0);
    } else if (c.is_array() && c.size() == 2) {
      data.emplace_back(c[0].get<double>(), c[1].get<double>());
    } else {
      throw IOError("each component must be a number or a [re, im] pair");
    }
  }
  return ComplexTensor(dim, rank, std::move(data));
}

EuclideanSpace space_from_json(const Json& j) {
  const int dim = field(j, "dim").get<int>();
  return space_from_convention(dim, j.value("j_convention", std::string("none")));
}

Json curvature_to_json(const AlgebraicCurvatureTensor& rm) {
  Json j;
  j["kind"] = "curvature";
  Json t = tensor_to_json(rm.tensor(), rm.space());
  j["dim"] = t["dim"];
  j["rank"] = 4;
  j["j_convention"] = t["j_convention"];
  j["flags"] = {{"kahler", rm.kahler()}, {"quaternion", rm.quaternion()}};
  j["components"] = std::move(t["components"]);
  return j;
}

AlgebraicCurvatureTensor curvature_from_json(const Json& j, const Tolerance& tol) {
  if (j.value("kind", std::string("curvature")) != "curvature") throw IOError("not a curvature file");
  const ComplexTensor t = tensor_from_json(j);
  if (t.rank() != 4) throw IOError("curvature tensor must have rank 4");
  if (!t.is_real(1e-12)) throw IOError("curvature tensor must be real");
  AlgebraicCurvatureTensor rm(space_from_json(j), t, tol);
  const Json flags = j.value("flags", Json::object());
  if (flags.value("kahler", false)) rm = rm.as_kahler(tol);
  if (flags.value("quaternion", false)) rm = rm.as_quaternion(tol);
  return rm;
}

Json form_to_json(const PQForm& phi) {
  Json j;
  j["kind"] = "form";
  Json t = tensor_to_json(phi.tensor(), phi.space());
  j["dim"] = t["dim"];
  j["rank"] = t["rank"];
  j["j_convention"] = t["j_convention"];
  j["p"] = phi.p();
  j["q"] = phi.q();
  if (phi.k()) j["k"] = *phi.k();
  j["components"] = std::move(t["components"]);
  return j;
}

PQForm form_from_json(const Json& j, const Tolerance& tol) {
  const EuclideanSpace space = space_from_json(j);
  if (!space.has_complex_structure()) throw IOError("form files need j_convention \"block\"");
  std::optional<int> k;
  if (j.contains("k") && !j.at("k").is_null()) k = j.at("k").get<int>();
  return PQForm(space, field(j, "p").get<int>(), field(j, "q").get<int>(), tensor_from_json(j), k, tol);
}

Eigen::VectorXd spectrum_from_json(const Json& j) {
  const Json& arr = j.is_array() ? j : field(j, "eigenvalues");
  if (!arr.is_array()) throw IOError("eigenvalues must be an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) throw IOError("eigenvalues must be numbers");
    v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  }
  return v;
}

Json vector_to_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v[i]));
  return a;
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(vector_to_json(m.row(r).transpose()));
  return rows;
}

Json spectrum_to_json(const RestrictedSpectrum& s, const HolonomySubalgebra& algebra) {
  return Json{{"algebra", std::string(to_string(algebra.kind()))},
              {"dim", algebra.space().dim()},
              {"count", s.eigenvalues.size()},
              {"eigenvalues", vector_to_json(s.eigenvalues)},
              {"leakage", s.leakage}};
}

Json verdict_to_json(const VanishingVerdict& v) {
  Json params = Json::object();
  for (const auto& [k, val] : v.parameters) params[k] = val;
  return Json{{"theorem_id", std::string(to_string(v.theorem_id))},
              {"conclusion", std::string(to_string(v.conclusion))},
              {"condition_value", number(v.condition_value)},
              {"threshold", number(v.threshold)},
              {"strict", v.strict},
              {"kappa_admissible", v.kappa_admissible},
              {"condition_arithmetic", v.condition_arithmetic},
              {"threshold_arithmetic", v.threshold_arithmetic},
              {"kappa_arithmetic", v.kappa_arithmetic},
              {"parameters", std::move(params)},
              {"notes", v.notes}};
}

Json algebra_to_json(const HolonomySubalgebra& algebra) {
  Json basis = Json::array();
  for (const auto& b : algebra.basis()) basis.push_back(vector_to_json(b.coeffs()));
  return Json{{"algebra", std::string(to_string(algebra.kind()))},
              {"dim", algebra.space().dim()},
              {"j_convention", j_convention(algebra.space())},
              {"size", algebra.size()},
              {"bivector_order", "e_i^e_j, i<j, lexicographic"},
              {"basis", std::move(basis)},
              {"orthonormality_defect", algebra.orthonormality_defect()},
              {"closure_defect", algebra.closure_defect()}};
}

Json kahler_decomposition_to_json(const KahlerDecomposition& d, const EuclideanSpace& space) {
  return Json{{"scal", d.scal},
              {"scalar_part", tensor_to_json(d.scalar_part, space)},
              {"ricci_part", tensor_to_json(d.ricci_part, space)},
              {"bochner", tensor_to_json(d.bochner, space)},
              {"norms", {{"scalar_part", d.scalar_part.norm_squared()},
                         {"ricci_part", d.ricci_part.norm_squared()},
                         {"bochner", d.bochner.norm_squared()}}}};
}

Json quaternion_decomposition_to_json(const QuaternionDecomposition& d, const EuclideanSpace& space) {
  return Json{{"hp_coefficient", d.hp_coefficient},
              {"r0", tensor_to_json(d.r0, space)},
              {"r0_norm_sq", d.r0.norm_squared()},
              {"leakage", d.leakage}};
}

Json sharp_norm_to_json(const SharpNormReport& r) {
  Json j = Json::object();
  if (r.kahler) {
    const auto& k = *r.kahler;
    j["kahler"] = {{"lhs", k.sharp_norm_sq},
                   {"rhs", k.rhs},
                   {"deviation", k.deviation},
                   {"sharp_norm_sq_tensor", k.sharp_norm_sq_tensor},
                   {"tf_norm_sq", k.tf_norm_sq},
                   {"tf_ricci_norm_sq", k.tf_ricci_norm_sq}};
  }
  if (r.quaternion) {
    const auto& q = *r.quaternion;
    j["quaternion"] = {{"lhs", q.sharp_norm_sq},
                       {"rhs", q.rhs},
                       {"deviation", q.deviation},
                       {"r0_norm_sq", q.r0_norm_sq},
                       {"coefficient", q.coefficient},
                       {"observed_coefficient", number(q.observed_coefficient)}};
  }
  return j;
}

Json prop24_to_json(const Prop24Report& r) {
  return Json{{"lhs", r.lhs},         {"lhs_imag", r.lhs_imag},   {"rhs", r.rhs}, {"rhs_eigen", r.rhs_eigen},
              {"deviation", r.deviation}, {"leakage", r.leakage}, {"pass", r.pass}};
}

Json lemma26_to_json(const Lemma26Report& r) {
  return Json{{"C", r.C},
              {"ell", r.ell},
              {"kappa", r.kappa},
              {"spectrum", vector_to_json(r.spectrum)},
              {"premise", r.premise},
              {"premise1", r.premise1},
              {"premise2", r.premise2},
              {"admitted", r.admitted},
              {"rejected", r.rejected},
              {"conclusion1", r.conclusion1},
              {"conclusion2", r.conclusion2},
              {"pass", r.pass()}};
}

Json prop27_to_json(const Prop27Report& r) {
  return Json{{"n", r.n},
              {"p", r.p},
              {"q", r.q},
              {"k", r.k},
              {"coefficient", r.coefficient},
              {"lhs", r.sharp_norm_sq},
              {"rhs", r.rhs},
              {"circ_norm_sq", r.circ_norm_sq},
              {"ratio", number(r.ratio)},
              {"deviation", r.deviation}};
}

Json prop28_to_json(const Prop28Report& r) {
  return Json{{"n", r.n},           {"p", r.p},
              {"q", r.q},           {"k", r.k},
              {"samples", r.samples}, {"vacuous", r.vacuous},
              {"max_ratio", r.max_ratio}, {"pass", r.pass},
              {"note", r.note}};
}

}  // namespace bochner
