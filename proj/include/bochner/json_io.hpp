#pragma once

#include <string>

#include <json.hpp>

#include "bochner/criteria.hpp"
#include "bochner/curvature.hpp"
#include "bochner/forms.hpp"
#include "bochner/holonomy.hpp"
#include "bochner/tensor.hpp"
#include "bochner/weitzenbock.hpp"

namespace bochner {

using Json = nlohmann::ordered_json;

class IOError : public Error {
 public:
  using Error::Error;
};

// Tensor files:
//   {"dim": d, "rank": r, "j_convention": "none"|"block"|"quaternionic", "components": [[re, im], ...]}
// Components are row-major over the multi-index. Curvature files add "kind": "curvature" and
// "flags": {"kahler": bool, "quaternion": bool}; form files add "kind": "form", "p", "q" and optionally "k".

Json read_json_file(const std::string& path);  ///< "-" reads stdin
void write_json_file(const std::string& path, const Json& j);  ///< "-" writes stdout

std::string j_convention(const EuclideanSpace& space);
EuclideanSpace space_from_convention(int dim, const std::string& convention);

Json tensor_to_json(const ComplexTensor& t, const EuclideanSpace& space);
Json tensor_to_json(const ComplexTensor& t);
ComplexTensor tensor_from_json(const Json& j);
EuclideanSpace space_from_json(const Json& j);

Json curvature_to_json(const AlgebraicCurvatureTensor& rm);
/// Validates the symmetries and re-checks any declared flags.
AlgebraicCurvatureTensor curvature_from_json(const Json& j, const Tolerance& tol = {});

Json form_to_json(const PQForm& phi);
PQForm form_from_json(const Json& j, const Tolerance& tol = {});

/// Accepts a bare array or an object with an "eigenvalues" array.
Eigen::VectorXd spectrum_from_json(const Json& j);
Json spectrum_to_json(const RestrictedSpectrum& s, const HolonomySubalgebra& algebra);

Json matrix_to_json(const Eigen::MatrixXd& m);
Json vector_to_json(const Eigen::VectorXd& v);

Json verdict_to_json(const VanishingVerdict& v);
Json algebra_to_json(const HolonomySubalgebra& algebra);
Json kahler_decomposition_to_json(const KahlerDecomposition& d, const EuclideanSpace& space);
Json quaternion_decomposition_to_json(const QuaternionDecomposition& d, const EuclideanSpace& space);
Json sharp_norm_to_json(const SharpNormReport& r);
Json prop24_to_json(const Prop24Report& r);
Json lemma26_to_json(const Lemma26Report& r);
Json prop27_to_json(const Prop27Report& r);
Json prop28_to_json(const Prop28Report& r);

}  // namespace bochner
