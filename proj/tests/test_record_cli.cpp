#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "infolab/cli.hpp"
#include "infolab/entropy.hpp"
#include "infolab/record.hpp"

using namespace infolab;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "infolab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json first_record(const std::string& out) {
  return nlohmann::json::parse(out.substr(0, out.find('\n')));
}

std::string strip_time(const std::string& s) {
  return std::regex_replace(s, std::regex("\"wall_time_ms\":[0-9]+"), "\"wall_time_ms\":0");
}

const std::string kData = INFOLAB_TEST_DATA;

}  // namespace

TEST_CASE("floats carry 17 significant digits and round-trip") {
  for (double x : {0.1, 1.0 / 3.0, 5.900663253377973, 1e-300, -2.5e17}) {
    CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
  }
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(INFINITY) == "inf");
}

TEST_CASE("JSON records are sorted, valid and reproducible") {
  RunRecord r;
  r.command = "demo";
  r.seed = 3;
  r.version = "1.0";
  CHECK(emit_json(r).find("\"results\":{}") != std::string::npos);
  CHECK(nlohmann::json::parse(emit_json(r))["pass"].is_null());

  r.params = {{"b", "2"}, {"a", "x\"y"}};
  r.set("zeta", 0.5);
  r.set("alpha", std::int64_t{7});
  r.set("ok", true);
  r.set("note", "text");
  r.pass = false;
  const auto text = emit_json(r);
  CHECK(text == emit_json(r));
  const auto j = nlohmann::json::parse(text);
  CHECK(j["params"]["a"] == "x\"y");
  CHECK(j["results"]["zeta"] == 0.5);
  CHECK(j["pass"] == false);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(std::is_sorted(keys.begin(), keys.end()));
  CHECK(text.find("\"alpha\"") < text.find("\"zeta\""));
}

TEST_CASE("CSV records") {
  RunRecord r;
  r.command = "demo";
  r.set("max_mi", 0.25);
  const auto csv = emit_csv(r);
  CHECK(csv.rfind("name,value\n", 0) == 0);
  CHECK(csv.find("\nmax_mi,0.25\n") != std::string::npos);
  CHECK(csv.find("\ncommand,demo\n") != std::string::npos);
}

TEST_CASE("cli: boolean verify") {
  const auto r = run({"boolean", "verify", "--n", "2", "--alpha", "0.3"});
  CHECK(r.code == 0);
  const auto j = first_record(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["results"]["max_mi"].get<double>() == doctest::Approx(1 - binary_entropy(0.3)).epsilon(1e-12));
  CHECK(j["results"]["argmax_is_dictators"] == true);
  CHECK(j["command"] == "boolean verify");
}

TEST_CASE("cli: usage errors exit with 2") {
  CHECK(run({"boolean", "verify", "--n", "2", "--alpha", "0.7"}).code == 2);
  CHECK(run({"boolean", "verify", "--n", "9", "--alpha", "0.1"}).code == 2);
  CHECK(run({"sphere", "polarize-check", "--grid", "64", "--rho", "1.0"}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"boolean", "mi", "--tt", "/nonexistent/file", "--alpha", "0.1"}).code == 2);
  CHECK(run({"--format", "xml", "boolean", "perfect-code", "--alpha", "0.1"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cli: truth-table files") {
  auto r = run({"boolean", "mi", "--tt", kData + "/maj3.tt", "--alpha", "0.1"});
  CHECK(r.code == 0);
  const auto a = first_record(r.out);
  r = run({"boolean", "mi", "--tt", kData + "/hex3.tt", "--alpha", "0.1"});
  const auto b = first_record(r.out);
  CHECK(a["results"]["mi"] == b["results"]["mi"]);
  CHECK(a["results"]["mi_path_diff"].get<double>() <= 1e-10);

  r = run({"boolean", "mi", "--tt", kData + "/identity2.mo", "--alpha", "0.1", "--multi", "2"});
  CHECK(r.code == 0);
  CHECK(first_record(r.out)["results"]["mi"].get<double>() ==
        doctest::Approx(2 * (1 - binary_entropy(0.1))).epsilon(1e-12));
  CHECK(run({"boolean", "mi", "--tt", kData + "/identity2.mo", "--alpha", "0.1", "--multi", "3"}).code == 2);
}

TEST_CASE("cli: perfect code reports a positive margin") {
  const auto r = run({"boolean", "perfect-code", "--alpha", "0.1"});
  CHECK(r.code == 0);
  const auto j = first_record(r.out);
  CHECK(j["results"]["per_bit"].get<double>() > 0.5310044);
  CHECK(j["results"]["margin"].get<double>() > 0);
}

TEST_CASE("cli: randomized commands are determined by the seed") {
  const std::vector<std::string> args{"--seed", "7", "sphere", "polarize-check", "--grid", "64", "--rho", "0.7",
                                      "--psi", "neg-entropy", "--trials", "6"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.code == 0);
  CHECK(strip_time(a.out) == strip_time(b.out));
  CHECK(first_record(a.out)["results"]["failures"] == 0);
  auto serial = args;
  serial.insert(serial.begin(), "--serial");
  CHECK(strip_time(run(serial).out) == strip_time(a.out));

  const std::vector<std::string> t{"boolean", "taylor", "--n", "5", "--trials", "20", "--seed", "3"};
  CHECK(strip_time(run(t).out) == strip_time(run(t).out));
  CHECK(run(t).code == 0);
}

TEST_CASE("cli: output file and CSV") {
  const auto path = (std::filesystem::temp_directory_path() / "infolab_cli_test.csv").string();
  const auto r = run({"--format", "csv", "--out", path, "boolean", "family", "--kind", "and", "--n", "6",
                      "--param", "3", "--alpha", "0.2"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  CHECK(s.str().rfind("name,value\n", 0) == 0);
  CHECK(s.str().find("\nmi_and_exact,") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("cli: lex failure and Gaussian commands") {
  auto r = run({"boolean", "lex-failure", "--k", "6", "--n", "200", "--alpha", "0.45"});
  CHECK(r.code == 0);
  CHECK(first_record(r.out)["results"]["ball_wins"] == true);
  r = run({"boolean", "lex-failure", "--k", "6", "--n", "20,200", "--alpha", "0.45"});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);

  r = run({"gauss", "halfspace-vs", "--rho", "0.6", "--spec", R"({"kind":"intervals","intervals":[[-0.5,0.5]]})"});
  CHECK(r.code == 0);
  CHECK(first_record(r.out)["results"]["margin"].get<double>() > 0);
  r = run({"--seed", "4", "gauss", "halfspace-vs", "--rho", "0.3", "--measure", "0.2"});
  CHECK(r.code == 0);

  r = run({"gauss", "kernel-limit", "--n", "2", "--rho", "0.5", "--bigN", "50,200,1000"});
  CHECK(r.code == 0);
  CHECK(first_record(r.out)["results"]["errors_monotone"] == true);

  r = run({"gauss", "factor-check", "--bigN", "9", "--n", "2", "--bound-samples", "2000"});
  CHECK(r.code == 0);

  r = run({"gauss", "decomposition", "--exponent", "stated", "--samples", "100000"});
  CHECK(r.code == 1);
}
