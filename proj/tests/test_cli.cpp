#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

int run(const std::string& args, std::string* out = nullptr) {
  const std::string path = std::string(NMDS_LAB_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(path.c_str(), "r");
  REQUIRE(p);
  std::string text;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) text.append(buf, n);
  const int status = pclose(p);
  if (out) *out = text;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("lemma-plane D1 at q = 27") {
  std::string out;
  CHECK(run("lemma-plane --curve D1 --q 27", &out) == 0);
  auto j = nlohmann::json::parse(out);
  CHECK(j["match"] == true);
  CHECK(j["expected"].size() == 15);
}

TEST_CASE("spectrum CSV") {
  std::string out;
  CHECK(run("spectrum --object cap --q 8 --seed 3 --format csv", &out) == 0);
  CHECK(out.rfind("size,count\n", 0) == 0);
  std::istringstream is(out);
  std::string line;
  std::getline(is, line);
  std::uint64_t total = 0;
  while (std::getline(is, line)) total += std::stoull(line.substr(line.find(',') + 1));
  CHECK(total == 4681);
}

TEST_CASE("field-info from p and m") {
  std::string out;
  CHECK(run("field-info --p 2 --m 3", &out) == 0);
  auto j = nlohmann::json::parse(out);
  CHECK(j["q"] == 8);
  CHECK(j["delta"] == 1);
  CHECK(j["sigma_exponent"] == 4);
}

TEST_CASE("verify writes an extension report to --out") {
  const std::string file = "cli_verify_out.json";
  CHECK(run("verify --object twisted-cubic-extension --kind U2 --q 25 --out " + file) == 0);
  std::ifstream in(file);
  auto j = nlohmann::json::parse(in);
  CHECK(j["holds"] == true);
  CHECK(j["complete"] == true);
  CHECK(j["addable"].empty());
  std::remove(file.c_str());
}

TEST_CASE("exit codes") {
  CHECK(run("") == 2);
  CHECK(run("construct --q 8") == 2);
  CHECK(run("construct --object twisted-cubic --q 12") == 2);
  CHECK(run("verify --object twisted-cubic --q 8 --depth 7") == 2);
  CHECK(run("verify --object twisted-cubic --q 8 --property nmds") == 1);
  CHECK(run("paper-suite --q 25 --budget-ms 0") == 3);
  CHECK(run("paper-suite --q 25") == 0);
}

TEST_CASE("NMDS_LAB_JOBS must be numeric") {
  CHECK(run("field-info --q 8") == 0);
  std::string out;
  const std::string cmd = std::string("NMDS_LAB_JOBS=x ") + NMDS_LAB_PATH + " field-info --q 8 >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 2);
}
