#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "plap/cli.hpp"

namespace {
struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = plap::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> result;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) result.push_back(line);
  return result;
}

std::string digits(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}
}  // namespace

TEST_CASE("constants as csv") {
  const auto r = call({"constants", "--p", "3"});
  CHECK(r.code == plap::cli::kSuccess);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "p,lambda1,lambda1_star,Lambda1,pi_p");
  CHECK(rows[1].rfind("3,0.94068210487", 0) == 0);
  CHECK(r.out.find('\r') == std::string::npos);
}

TEST_CASE("constants as json carry a meta header") {
  const auto r = call({"constants", "--sweep", "2.5:3.5:3", "--format", "json"});
  CHECK(r.code == plap::cli::kSuccess);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["meta"]["tool"] == "plap");
  CHECK(j["meta"]["command"] == "constants");
  CHECK(j["records"].size() == 3);
  CHECK(j["records"][1]["p"].get<double>() == doctest::Approx(3.0));
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(call({}).code == plap::cli::kUsage);
  CHECK(call({"nope"}).code == plap::cli::kUsage);
  CHECK(call({"constants", "--p", "3", "--sweep", "2:3:2"}).code == plap::cli::kUsage);
  CHECK(call({"orbit", "--p", "3", "--q", "5", "--a", "1"}).code == plap::cli::kUsage);
  CHECK(call({"branch", "--p", "2", "--q", "3"}).code == plap::cli::kUsage);
  CHECK(call({"verify", "--suite", "bogus"}).code == plap::cli::kUsage);
}

TEST_CASE("orbit output and seed normalization") {
  const auto a = call({"orbit", "--p", "3", "--q", "5", "--a", "0.5", "--format", "json"});
  CHECK(a.code == plap::cli::kSuccess);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["records"][0]["a"].get<double>() == doctest::Approx(0.5));
  const double b = j["records"][0]["b"].get<double>();
  const auto back = call({"orbit", "--p", "3", "--q", "5", "--a", digits(b), "--format", "json"});
  CHECK(nlohmann::json::parse(back.out)["records"][0]["a"].get<double>() == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("verify is deterministic for a fixed seed and passes") {
  const std::vector<std::string> args{"verify", "--suite", "thm1", "--draws", "20", "--seed", "5"};
  const auto first = call(args);
  const auto second = call(args);
  CHECK(first.code == plap::cli::kSuccess);
  CHECK(first.out == second.out);
  const auto other = call({"verify", "--suite", "thm1", "--draws", "20", "--seed", "6"});
  CHECK(other.out != first.out);
}

TEST_CASE("branch writes its thresholds next to the main file") {
  const auto dir = std::filesystem::temp_directory_path() / "plap_cli_test";
  std::filesystem::create_directories(dir);
  const auto main_file = dir / "branch.csv";
  const auto r = call({"branch", "--p", "3", "--q", "5", "--a-grid", "0.1:0.9:9", "--output", main_file.string()});
  CHECK(r.code == plap::cli::kSuccess);
  CHECK(std::filesystem::exists(main_file));
  CHECK(std::filesystem::exists(dir / "branch.thresholds.csv"));
  std::ifstream in(main_file);
  std::string header;
  std::getline(in, header);
  CHECK(header == "a,T,lambda,mu,lambda_minus_mu");
  std::filesystem::remove_all(dir);
}

TEST_CASE("version flag") {
  const auto r = call({"--version"});
  CHECK(r.code == 0);
  CHECK(!r.out.empty());
}
