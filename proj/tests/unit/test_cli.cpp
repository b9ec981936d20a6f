#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "homofiber/cli.hpp"
#include "json.hpp"

using namespace homofiber;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "homofiber");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "homofiber_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

TEST_CASE("catalog list and export") {
  const Outcome list = run({"catalog", "list"});
  CHECK(list.code == 0);
  std::size_t lines = 0;
  for (char c : list.out) lines += c == '\n';
  CHECK(lines >= 4);
  CHECK(list.out.find("twistor-su3") != std::string::npos);

  const Outcome exported = run({"catalog", "export", "twistor-su3"});
  REQUIRE(exported.code == 0);
  const auto doc = nlohmann::json::parse(exported.out);
  CHECK(doc["g_basis"].size() == 8);

  CHECK(run({"catalog", "export", "nope"}).code == 1);
  CHECK(run({"catalog"}).code == 2);
}

TEST_CASE("validate") {
  const Outcome ok = run({"validate", "--space", "hopf1"});
  CHECK(ok.code == 0);
  CHECK(nlohmann::json::parse(ok.out)["passed"] == true);
  CHECK(run({"validate", "--space", "hopf1", "--pair", "2,1"}).code == 1);
  CHECK(run({"validate", "--space", "hopf1", "--format", "csv"}).out.rfind("condition,", 0) == 0);

  // Round trip through a file, then a tampered copy.
  const auto path = scratch("hopf1.json");
  REQUIRE(run({"catalog", "export", "hopf1", "--out", path.string()}).code == 0);
  CHECK(run({"validate", "--space", path.string()}).code == 0);
  auto doc = nlohmann::json::parse(std::ifstream(path));
  doc["h_basis"] = nlohmann::json::array({doc["g_basis"][2], doc["g_basis"][3]});
  doc["k_basis"] = doc["h_basis"];
  const auto tampered = scratch("tampered.json");
  std::ofstream(tampered) << doc.dump();
  const Outcome bad = run({"validate", "--space", tampered.string()});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("error") != std::string::npos);

  CHECK(run({"validate", "--space", scratch("missing.json").string()}).code == 2);
  CHECK(run({"validate", "--bogus"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("simulate writes a header and one row per sample") {
  const Outcome two = run({"simulate", "--space", "hopf1", "--samples", "2"});
  REQUIRE(two.code == 0);
  std::stringstream ss(two.out);
  std::string header, row;
  std::getline(ss, header);
  const auto cols = split_line(header);
  CHECK(cols.front() == "t");
  CHECK(cols.back() == "speed");
  CHECK(cols.size() == 1 + 8 + 4 + 1);
  std::size_t rows = 0;
  while (std::getline(ss, row)) {
    ++rows;
    CHECK(split_line(row).size() == cols.size());
  }
  CHECK(rows == 2);

  const Outcome many = run({"simulate", "--space", "hopf2", "--samples", "30", "--lambda", "1",
                            "--lambda", "0.5", "--k", "1"});
  REQUIRE(many.code == 0);
  std::stringstream body(many.out);
  std::getline(body, header);
  double first = -1.0;
  while (std::getline(body, row)) {
    const double speed = std::stod(split_line(row).back());
    if (first < 0.0) first = speed;
    CHECK(std::abs(speed - first) <= 1e-10);
  }

  CHECK(run({"simulate", "--space", "hopf1", "--xa", "1,0,0"}).code == 1);
  CHECK(run({"simulate", "--space", "hopf1", "--samples", "1"}).code == 1);
  CHECK(run({"simulate", "--space", "hopf1", "--format", "xml"}).code == 2);
  const Outcome tree = run({"simulate", "--space", "kahler-s2", "--samples", "3", "--format", "json-tree"});
  CHECK(tree.code == 0);
  CHECK(nlohmann::json::parse(tree.out)["samples"].size() == 3);
}

TEST_CASE("verify passes on solutions and fails on perturbed curves") {
  for (const char* lambda : {"0.5", "1", "2"}) {
    for (const char* k : {"0", "1"}) {
      const Outcome r = run({"verify", "--space", "hopf1", "--lambda", "1", "--lambda", lambda, "--k", k});
      CHECK_MESSAGE(r.code == 0, "lambda=" << lambda << " k=" << k << " " << r.err);
      const auto doc = nlohmann::json::parse(r.out);
      CHECK(doc["koszul"]["max_abs_residual"].get<double>() <= 1e-6);
    }
  }
  const Outcome easy = run({"verify", "--space", "hopf1", "--k", "0"});
  CHECK(easy.code == 0);
  CHECK(nlohmann::json::parse(easy.out)["koszul"]["max_abs_residual"].get<double>() <= 1e-8);

  CHECK(run({"verify", "--space", "hopf1", "--k", "1", "--perturb", "1e-2"}).code == 1);

  const Outcome sphere = run({"verify", "--space", "kahler-s2", "--k", "1"});
  CHECK(sphere.code == 0);
  CHECK(nlohmann::json::parse(sphere.out)["special"].contains("magnetic_circle"));
  const Outcome round = run({"verify", "--space", "hopf2", "--lambda", "1", "--lambda", "2", "--k", "0"});
  CHECK(round.code == 0);
  CHECK(nlohmann::json::parse(round.out)["special"].contains("great_circle"));
  CHECK(run({"verify", "--space", "twistor-su3", "--k", "-0.5", "--format", "csv"}).code == 0);
}

TEST_CASE("verify reports are byte-identical for a fixed seed") {
  const std::vector<std::string> args{"verify", "--space", "hopf2", "--lambda", "1", "--lambda", "0.5",
                                      "--k", "1", "--seed", "42"};
  const Outcome a = run(args);
  const Outcome b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto other = args;
  other.back() = "43";
  CHECK(run(other).out != a.out);
}

TEST_CASE("tolerance from the environment") {
  ::setenv("HOMOFIBER_TOL", "1e-30", 1);
  CHECK(run({"verify", "--space", "hopf1", "--k", "1"}).code == 1);
  // An explicit flag wins over the environment.
  CHECK(run({"verify", "--space", "hopf1", "--k", "1", "--tol", "1e-6"}).code == 0);
  ::setenv("HOMOFIBER_TOL", "abc", 1);
  CHECK(run({"verify", "--space", "hopf1"}).code == 2);
  ::unsetenv("HOMOFIBER_TOL");
}

TEST_CASE("the installed binary reports exit codes") {
  const std::string bin = HOMOFIBER_CLI_PATH;
  const auto out = scratch("report.json");
  const std::string ok = bin + " verify --space hopf1 --k 1 --out " + out.string() + " > /dev/null";
  CHECK(WEXITSTATUS(std::system(ok.c_str())) == 0);
  CHECK(std::filesystem::file_size(out) > 0);
  const std::string bad = bin + " verify --space hopf1 --k 1 --perturb 0.01 > /dev/null";
  CHECK(WEXITSTATUS(std::system(bad.c_str())) == 1);
  const std::string usage = bin + " verify --lambda > /dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(usage.c_str())) == 2);
}
