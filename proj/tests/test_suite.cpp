#include <doctest.h>

#include <set>

#include "nmds/objects.hpp"
#include "nmds/suite.hpp"

using namespace nmds;
using json = nlohmann::ordered_json;

namespace {

json strip_timing(json j) {
  for (auto& c : j["checks"]) c.erase("elapsed_ms");
  return j;
}

}  // namespace

TEST_CASE("registry ids are unique and cover every criterion") {
  std::set<std::string> ids;
  std::set<int> criteria;
  for (const auto& c : claim_registry()) {
    CHECK(ids.insert(c.id).second);
    CHECK_FALSE(c.anchor.empty());
    criteria.insert(c.criterion);
  }
  CHECK(criteria == std::set<int>{1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK(claim_registry().back().id == "props.nmds-spectrum");
}

TEST_CASE("reports are deterministic apart from timings") {
  SuiteOptions opts;
  opts.qs = {25};
  opts.seed = 17;
  std::vector<std::string> seen;
  SuiteResult a = run_suite(opts, [&](const Check& c) { seen.push_back(c.claim_id); });
  opts.jobs = 3;
  SuiteResult b = run_suite(opts);
  json ja = report_json(opts, a), jb = report_json(opts, b);
  ja["options"].erase("jobs");
  jb["options"].erase("jobs");
  CHECK(strip_timing(ja).dump() == strip_timing(jb).dump());
  CHECK(ja["schema"] == "nmds-lab/1");
  CHECK(seen.size() == a.checks.size());
  for (const auto& c : a.checks) CHECK((c.q == 25 || c.q == 0));
  CHECK(a.all_pass);
  for (const auto& c : ja["checks"]) {
    CHECK(c.contains("claim_id"));
    CHECK(c.contains("anchor"));
    CHECK(c["status"] == "pass");
  }
}

TEST_CASE("an exhausted budget skips the remaining checks") {
  SuiteOptions opts;
  opts.qs = {8};
  opts.budget_ms = 0;
  SuiteResult r = run_suite(opts);
  CHECK(r.budget_exhausted);
  std::size_t skipped = 0;
  for (const auto& c : r.checks) skipped += c.status == Status::Skipped;
  CHECK(skipped + 1 >= r.checks.size());
  CHECK_FALSE(r.all_pass);
  CHECK(report_json(opts, r)["summary"]["skipped"] == skipped);
}

TEST_CASE("construction descriptors record resolved parameters") {
  BuiltObject a = build_object({"ovoid-intersection", 8, 17, ""});
  CHECK(a.descriptor["seed"] == 17);
  CHECK(a.descriptor["delta"] == 1);
  BuiltObject b = build_object({"ovoid-intersection", 8, 17, ""});
  CHECK(a.points.indices() == b.points.indices());
  BuiltObject c = build_object({"twisted-cubic-extension", 29, 0, "Q,R"});
  CHECK(c.points.size() == 32);
  CHECK(c.descriptor["added"].size() == 2);
  CHECK_THROWS_AS(build_object({"nonsense", 8, 0, ""}), Error);
  CHECK_THROWS_AS(build_object({"twisted-cubic-extension", 29, 0, "U9"}), Error);
  CHECK(field_json(8)["modulus"] == json::array({1, 1, 0, 1}));
}
