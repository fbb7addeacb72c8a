#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bochner/json_io.hpp"

namespace bochner {

struct VerificationCase {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  double deviation = 0.0;
  bool pass = false;
  std::string tolerance;  ///< key into VerificationReport::tolerances
};

struct VerificationReport {
  std::string suite;
  std::vector<VerificationCase> cases;
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;
  double wall_time = 0.0;  ///< seconds; excluded from JSON unless requested

  bool pass() const;
  int failures() const;
};

struct VerifySettings {
  std::uint64_t seed = 42;
  std::optional<int> samples;   ///< per-suite default if unset
  std::optional<double> tol;    ///< overrides the suite's primary tolerance
  std::optional<int> n;         ///< restrict Kähler suites to one complex dimension
  std::optional<int> m;         ///< quaternionic dimension for lemma213
};

/// identities, prop24, prop27, prop28, lemma26, lemma212, lemma213, bochner-tracefree.
const std::vector<std::string>& verification_suites();

/// Throws DomainError for an unknown suite name.
VerificationReport run_suite(const std::string& suite, const VerifySettings& settings = {});

/// The case passes iff deviation ≤ the named tolerance.
void add_case(VerificationReport& report, std::string id, double lhs, double rhs, double deviation,
              const std::string& tolerance);

Json report_to_json(const VerificationReport& r, bool timing = false);

}  // namespace bochner
