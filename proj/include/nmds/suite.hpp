#pragma once

// Registry of checkable claims and the runner that turns them into a report.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nmds/projgeom.hpp"

namespace nmds {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kReportSchema = "nmds-lab/1";

enum class Status { Pass, Fail, Skipped };
std::string to_string(Status s);

struct SuiteOptions {
  /// Restrict to claims about these field orders; empty means all.
  std::vector<std::uint32_t> qs;
  /// Base seed for the sampled property checks.
  std::uint64_t seed = 0;
  int jobs = 1;
  std::optional<double> budget_ms;
};

struct Outcome {
  bool pass = false;
  nlohmann::ordered_json observed = nlohmann::ordered_json::object();
  nlohmann::ordered_json expected = nlohmann::ordered_json::object();
  nlohmann::ordered_json constructions = nlohmann::ordered_json::array();
  std::string note;
};

class SuiteContext;

struct Claim {
  std::string id;
  std::string anchor;
  int criterion;
  /// Field order the claim is about; 0 for claims spanning several fields.
  std::uint32_t q;
  std::function<Outcome(SuiteContext&)> run;
};

/// Shared state across claims: options and the NMDS cross-check log.
class SuiteContext {
 public:
  explicit SuiteContext(SuiteOptions o) : opts(std::move(o)) {}
  SuiteOptions opts;

  /// is_nmds plus the spectrum characterization and the 2q + 2 size bound,
  /// recording whether they agree.
  bool nmds(const PointSet& s, const std::string& label);
  struct CrossCheck {
    std::string label;
    bool predicate, spectrum, size_bound;
  };
  std::vector<CrossCheck> crosschecks;
};

const std::vector<Claim>& claim_registry();

struct Check {
  std::string claim_id, anchor;
  int criterion = 0;
  std::uint32_t q = 0;
  Status status = Status::Skipped;
  Outcome outcome;
  double elapsed_ms = 0;
};

struct SuiteResult {
  std::vector<Check> checks;
  bool all_pass = true;
  bool budget_exhausted = false;
};

SuiteResult run_suite(const SuiteOptions& opts, const std::function<void(const Check&)>& on_check = {});

/// Report JSON. elapsed_ms is the only field that depends on timing.
nlohmann::ordered_json report_json(const SuiteOptions& opts, const SuiteResult& r);

nlohmann::ordered_json field_json(std::uint32_t q);

}  // namespace nmds
