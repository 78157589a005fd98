// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
// Optional argument: path for the full JSON report.

#include <fstream>
#include <iostream>
#include <map>
#include <thread>

#include "nmds/suite.hpp"

using namespace nmds;

int main(int argc, char** argv) {
  const std::map<int, std::string> titles{
      {1, "elliptic n Suzuki-Tits intersection sizes, q = 8 and 32"},
      {2, "plane sections of the intersection have at most four points"},
      {3, "large intersection is NMDS; two-point extension at q = 8, complete at q = 32"},
      {4, "secant profile of the Suzuki-Tits ovoid of Q(4, 8)"},
      {5, "complete caps of PG(4, q) from two ovoids, q = 8 and 32"},
      {6, "points off every trisecant for the plane cubics D1..D7"},
      {7, "real and imaginary chords partition PG(3, q) minus C"},
      {8, "completeness of NMDS-sets from the twisted cubic"},
      {9, "property suites"},
  };
  SuiteOptions opts;
  opts.seed = 17;
  opts.jobs = static_cast<int>(std::max(1u, std::min(8u, std::thread::hardware_concurrency())));
  SuiteResult r = run_suite(opts);

  std::map<int, std::vector<const Check*>> by;
  for (const auto& c : r.checks) by[c.criterion].push_back(&c);
  bool all = true;
  for (const auto& [crit, title] : titles) {
    const auto& checks = by[crit];
    std::size_t pass = 0;
    for (auto* c : checks) pass += c->status == Status::Pass;
    const bool ok = !checks.empty() && pass == checks.size();
    all = all && ok;
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << crit << ": " << title << " (" << pass << "/" << checks.size()
              << " checks)";
    bool first = true;
    for (auto* c : checks)
      if (c->status != Status::Pass) {
        std::cout << (first ? "  failing: " : ", ") << c->claim_id;
        first = false;
      }
    std::cout << '\n';
  }
  if (argc > 1) std::ofstream(argv[1]) << report_json(opts, r).dump(2) << '\n';
  return all ? 0 : 1;
}
