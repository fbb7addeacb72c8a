#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "bochner/json_io.hpp"

using namespace bochner;

TEST_CASE("tensor round trip is exact") {
  Rng rng(1);
  const ComplexTensor t = random_tensor(3, 2, rng);
  const Json j = tensor_to_json(t);
  CHECK(j["j_convention"] == "none");
  CHECK(j["components"].size() == 9);
  const ComplexTensor back = tensor_from_json(Json::parse(j.dump()));
  CHECK(max_abs_diff(back, t) == 0.0);
}

TEST_CASE("real components may be bare numbers") {
  const Json j = Json::parse(R"({"dim": 2, "rank": 1, "components": [1.5, [0, 2]]})");
  const ComplexTensor t = tensor_from_json(j);
  CHECK(t[0] == cplx(1.5, 0.0));
  CHECK(t[1] == cplx(0.0, 2.0));
}

TEST_CASE("curvature round trip keeps flags") {
  const auto fs = model(ModelKind::CHSC, EuclideanSpace::complex(2), 4.0);
  const Json j = curvature_to_json(fs);
  CHECK(j["kind"] == "curvature");
  CHECK(j["j_convention"] == "block");
  CHECK(j["flags"]["kahler"] == true);
  const auto back = curvature_from_json(Json::parse(j.dump()));
  CHECK(back.kahler());
  CHECK(max_abs_diff(back.tensor(), fs.tensor()) == 0.0);

  const auto hp = curvature_from_json(curvature_to_json(model(ModelKind::HPm, EuclideanSpace::quaternionic(2))));
  CHECK(hp.quaternion());
  CHECK(hp.space().has_quaternionic_structure());
}

TEST_CASE("declared flags are re-checked") {
  Json j = curvature_to_json(model(ModelKind::ConstantSectional, EuclideanSpace::complex(2), 1.0));
  j["flags"]["kahler"] = true;
  CHECK_THROWS_AS(curvature_from_json(j), StructureError);
  Json bad = curvature_to_json(model(ModelKind::Flat, EuclideanSpace(4)));
  bad["components"][1] = Json::array({1.0, 0.0});
  CHECK_THROWS_AS(curvature_from_json(bad), SymmetryError);
}

TEST_CASE("form round trip") {
  const auto space = EuclideanSpace::complex(2);
  const PQForm phi(space, 1, 1, kahler_form(space), 1);
  const Json j = form_to_json(phi);
  CHECK(j["p"] == 1);
  CHECK(j["k"] == 1);
  const PQForm back = form_from_json(Json::parse(j.dump()));
  CHECK(back.k() == std::optional<int>(1));
  CHECK(max_abs_diff(back.tensor(), phi.tensor()) == 0.0);
  Json wrong = j;
  wrong["q"] = 0;
  CHECK_THROWS(form_from_json(wrong));
}

TEST_CASE("malformed files") {
  CHECK_THROWS_AS(tensor_from_json(Json::parse(R"({"dim": 2, "components": []})")), IOError);
  CHECK_THROWS_AS(tensor_from_json(Json::parse(R"({"dim": 2, "rank": 1, "components": [1]})")), IOError);
  CHECK_THROWS_AS(tensor_from_json(Json::parse(R"({"dim": 2, "rank": 1, "components": ["a", 1]})")), IOError);
  CHECK_THROWS_AS(space_from_convention(6, "quaternionic"), IOError);
  CHECK_THROWS_AS(space_from_convention(4, "octonionic"), IOError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), IOError);
  CHECK_THROWS_AS(spectrum_from_json(Json::parse(R"({"eigenvalues": [1, "x"]})")), IOError);
}

TEST_CASE("spectra accept arrays and objects") {
  CHECK(spectrum_from_json(Json::parse("[1, 2, 3]")).size() == 3);
  CHECK(spectrum_from_json(Json::parse(R"({"eigenvalues": [0.5]})"))[0] == 0.5);
}

TEST_CASE("files round trip") {
  const auto path = (std::filesystem::temp_directory_path() / "bochnerkit_json_io_test.json").string();
  const Json j = tensor_to_json(ComplexTensor::scalar(2.0, 3));
  write_json_file(path, j);
  CHECK(read_json_file(path) == j);
  std::filesystem::remove(path);
}

TEST_CASE("verdicts serialize non-finite values as null") {
  VanishingVerdict v;
  v.condition_value = std::numeric_limits<double>::quiet_NaN();
  const Json j = verdict_to_json(v);
  CHECK(j["condition_value"].is_null());
  CHECK(j["conclusion"] == "inconclusive");
  CHECK(j["theorem_id"] == "T3_2");
}
