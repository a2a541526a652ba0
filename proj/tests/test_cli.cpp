// Runs the ccons executable and checks exit codes and outputs.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("ccons_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string fixture(const std::string& name) { return std::string(CCONS_FIXTURE_DIR) + "/" + name; }

Result cli(const std::string& args) {
  const auto out = scratch() / "stdout";
  const auto err = scratch() / "stderr";
  const std::string cmd = std::string("\"") + CCONS_CLI_PATH + "\" " + args + " >\"" + out.string() +
                          "\" 2>\"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, slurp(out), slurp(err)};
}

}  // namespace

TEST_CASE("cli validate") {
  auto r = cli("validate --input " + fixture("identity.json"));
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["regime"] == "A123");

  r = cli("validate --input " + fixture("block_diagonal_stripped.json"));
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["regime"] == "none");

  r = cli("validate --input " + fixture("malformed.json"));
  CHECK(r.code == 1);
  CHECK(r.err.find("ParseError") != std::string::npos);

  r = cli("validate --input " + fixture("row_sum_violation.json"));
  CHECK(r.code == 1);
  CHECK(r.err.find("'bad'") != std::string::npos);
  CHECK(r.err.find("row 1") != std::string::npos);

  CHECK(cli("validate --input /nonexistent.json").code == 1);
  CHECK(cli("validate").code == 1);
  CHECK(cli("").code == 1);
}

TEST_CASE("cli decide and verify round trip") {
  const auto wpath = (scratch() / "identity_witness.json").string();
  auto r = cli("decide --input " + fixture("identity.json") + " --witness " + wpath);
  CHECK(r.code == 3);
  CHECK(json::parse(r.out)["verdict"] == "NotConsensusSet");
  REQUIRE(fs::exists(wpath));

  r = cli("verify --input " + fixture("identity.json") + " --witness " + wpath);
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["valid"] == true);

  json w = json::parse(slurp(wpath));
  w["cycle"][0]["s"] = {0, 1};
  const auto tampered = (scratch() / "tampered.json").string();
  std::ofstream(tampered) << w.dump();
  r = cli("verify --input " + fixture("identity.json") + " --witness " + tampered);
  CHECK(r.code == 3);
  CHECK(json::parse(r.out)["condition"] == "(i)");

  w["cycle"][0]["matrix"] = "nope";
  std::ofstream(tampered) << w.dump();
  r = cli("verify --input " + fixture("identity.json") + " --witness " + tampered);
  CHECK(r.code == 1);
  CHECK(r.err.find("UnknownMatrixName") != std::string::npos);
}

TEST_CASE("cli decide exit codes") {
  CHECK(cli("decide --input " + fixture("block_diagonal.json")).code == 0);
  CHECK(cli("decide --input " + fixture("block_diagonal_stripped.json")).code == 2);
  CHECK(cli("decide --input " + fixture("block_diagonal.json") + " --necessary-only").code == 2);
  CHECK(cli("decide --input " + fixture("disjoint_averaging.json")).code == 3);
  CHECK(cli("decide --input " + fixture("coupled_spanning.json")).code == 0);
  const auto r = cli("decide --input " + fixture("disjoint_averaging.json") + " --state-budget 1");
  CHECK(r.code == 1);
  CHECK(r.err.find("StateBudgetExceeded") != std::string::npos);
}

TEST_CASE("cli simulate") {
  const auto csv = (scratch() / "u.csv").string();
  auto r = cli("simulate --input " + fixture("uniform.json") + " --x0 0,1 --out " + csv);
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["converged"] == true);
  CHECK(slurp(csv).rfind("t,matrix,spread,x_0,x_1\n", 0) == 0);

  const auto wpath = (scratch() / "w.json").string();
  REQUIRE(cli("decide --input " + fixture("identity.json") + " --witness " + wpath).code == 3);
  r = cli("simulate --input " + fixture("identity.json") + " --policy witness --witness " + wpath +
          " --out " + csv);
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["converged"] == false);
  CHECK(json::parse(r.out)["final_spread"] == 1.0);

  const auto a = (scratch() / "a.csv").string();
  const auto b = (scratch() / "b.csv").string();
  const std::string base = "simulate --input " + fixture("block_diagonal.json") + " --policy random --seed 5 --out ";
  REQUIRE(cli(base + a).code == 0);
  REQUIRE(cli(base + b).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());

  CHECK(cli("simulate --input " + fixture("uniform.json") + " --policy sideways").code == 1);
  CHECK(cli("simulate --input " + fixture("uniform.json") + " --policy fixed").code == 1);
  CHECK(cli("simulate --input " + fixture("uniform.json") + " --policy periodic --sequence X").code == 1);
  CHECK(cli("simulate --input " + fixture("uniform.json") + " --policy witness").code == 1);
}

TEST_CASE("cli oracle") {
  auto r = cli("oracle --cases 100 --n 4 --clusters 2 --seed 1");
  CHECK(r.code == 0);
  const json s = json::parse(r.out);
  CHECK(s["disagreements"] == 0);
  CHECK(s["cases"].size() == 100);

  CHECK(cli("oracle --cases 30 --inject-bug").code == 4);
  r = cli("oracle --n 6");
  CHECK(r.code == 1);
  CHECK(r.err.find("InvalidArgument") != std::string::npos);
}
