#include "forge/cli.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "incidence_forge");
  std::ostringstream out, err;
  int code = forge::cli::main(args, out, err);
  return {code, out.str(), err.str()};
}

std::string strip_millis(const std::string& csv) {
  return std::regex_replace(csv, std::regex(",[0-9]+\n"), ",\n");
}

}  // namespace

TEST_CASE("run emits the header and one row") {
  auto r = run({"run", "--scenario", "subplane", "--p", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind(forge::cli::csv_header(), 0) == 0);
  CHECK(r.out.find("subplane,3,2,9,5,2,27,243,1,1,false") != std::string::npos);
}

TEST_CASE("runs are deterministic given a seed") {
  std::vector<std::string> a{"run", "--scenario", "random", "--p", "7", "--k", "2", "--n", "30", "--seed", "9"};
  CHECK(strip_millis(run(a).out) == strip_millis(run(a).out));
}

TEST_CASE("exit codes") {
  CHECK(run({"run", "--scenario", "random", "--p", "7", "--n", "30"}).code == 1);
  CHECK(run({"run", "--scenario", "subplane", "--p", "4"}).code == 1);
  CHECK(run({"run", "--lambda", "x/0"}).code == 1);
  CHECK(run({"run", "--scenario", "random", "--p", "7", "--n", "1", "--seed", "1"}).code == 1);
  CHECK(run({"run", "--scenario", "corollary-p2", "--p", "5", "--J", "0", "--caps", "1", "--seed", "1"}).code == 2);
  CHECK(run({"frobnicate"}).code != 0);
}

TEST_CASE("flags override the config file") {
  auto path = std::filesystem::temp_directory_path() / "forge_cli_test.cfg";
  {
    std::ofstream f(path);
    f << "# comment\nscenario = subplane\np = 5\n";
  }
  auto from_file = run({"run", "--config", path.string()});
  CHECK(from_file.code == 0);
  CHECK(from_file.out.find("\nsubplane,5,2,25,") != std::string::npos);
  auto overridden = run({"run", "--config", path.string(), "--p", "3"});
  CHECK(overridden.out.find("\nsubplane,3,2,9,") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("verify runs a single suite") {
  auto r = run({"verify", "--only", "field-axioms", "--q-max", "9"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS field-axioms") != std::string::npos);
}

TEST_CASE("the cross ratio mutant is caught") {
  auto r = run({"verify", "--only", "cross-ratio", "--q-max", "13", "--inject-mutant", "cross_ratio_sign"});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL cross-ratio") != std::string::npos);
}
