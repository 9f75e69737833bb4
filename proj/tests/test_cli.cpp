#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "unitay/cli.hpp"
#include "unitay/json_io.hpp"
#include "unitay/presets.hpp"

using namespace unitay;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "unitay_cli_test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_preset(const std::string& file, const ScenarioPreset& p) {
  const fs::path path = scratch() / file;
  std::ofstream(path) << dump(geometry_to_json(p.geometry)) << '\n';
  return path.string();
}

const std::string& ex31_path() {
  static const std::string p = write_preset("ex31.json", preset_ex31(18.0));
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

int shell(const std::string& command) {
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("classify the two-disk set with lambda = 2") {
  const Run r = run({"classify", ex31_path(), "--lambda", "2", "--method", "green"});
  REQUIRE(r.code == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc["verdict"]["outcome"] == "NONEMPTY");
  CHECK(doc["verdict"]["rule"] == "Thm2.2(i)");
  CHECK(doc["bounds"]["R0"]["provenance"] == "trivial");
  CHECK(doc["reproducibility"]["version"] == kVersion);
  CHECK(r.err.rfind("# unitay 1.0.0 | args: classify", 0) == 0);
  CHECK(r.err.find("tolerances") != std::string::npos);

  const Run rational = run({"classify", ex31_path(), "--lambda", "1/20", "--method", "green"});
  REQUIRE(rational.code == 0);
  CHECK(Json::parse(rational.out)["verdict"]["rule"] == "Prop4.1");

  const Run points = run({"classify", ex31_path(), "--limit-points", "20,30", "--method", "green"});
  REQUIRE(points.code == 0);
  CHECK(Json::parse(points.out)["verdict"]["rule"] == "Prop4.2");
}

TEST_CASE("exit codes") {
  CHECK(run({"rho", "missing.json"}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"--version"}).code == 0);
  CHECK(run({"classify", ex31_path(), "--lambda", "2", "--z0", "5,0", "--method", "green"}).code == 2);
  CHECK(run({"construct", ex31_path(), "--lambda", "10", "--method", "green"}).code == 2);
  CHECK(run({"example", "ex31", "--theta0", "4"}).code == 2);
  CHECK(run({"example", "ex32", "--m0", "6"}).code == 2);
  // A residual limit no solver can meet is a numerical failure.
  CHECK(run({"green", ex31_path(), "--residual-limit", "1e-30", "--refinements", "0"}).code == 3);
  const Run usage = run({"trace", "--lambda", "2"});
  CHECK(usage.code == 2);
  CHECK_FALSE(usage.err.empty());
}

TEST_CASE("green writes JSON and a CSV grid") {
  const fs::path csv = scratch() / "green.csv";
  const Run r = run({"green", ex31_path(), "--csv", csv.string(), "--csv-resolution", "20"});
  REQUIRE(r.code == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc["capacity"]["value"].get<double>() > 1.0);
  CHECK(doc["residual_norm"]["value"].get<double>() < 1e-4);
  const std::string text = slurp(csv);
  CHECK(text.rfind("x,y,g\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 20 * 20);
}

TEST_CASE("rho writes the deviation CSV") {
  const fs::path csv = scratch() / "rho.csv";
  const Run r = run({"rho", ex31_path(), "--method", "deviation", "--nmin", "4", "--nmax", "24", "--csv", csv.string()});
  REQUIRE(r.code == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc["method"] == "deviation-fit");
  CHECK(doc["value"]["value"].get<double>() < 0.5);
  const std::string text = slurp(csv);
  CHECK(text.rfind("n,d_hat,lower_bound\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 21);
}

TEST_CASE("construct and trace") {
  const fs::path csv = scratch() / "construct.csv";
  const Run c = run({"construct", ex31_path(), "--lambda", "2", "--p0", "0", "--u", "1", "--method", "green", "--csv",
                     csv.string()});
  REQUIRE(c.code == 0);
  const Json doc = Json::parse(c.out);
  CHECK(doc["N0"].get<int>() >= 1);
  CHECK(slurp(csv).find("n,") == 0);

  const Run t = run({"trace", "--coeffs", "1", "--periodic", "--lambda", "1/20", "--w", "18,0", "--n-first", "1",
                     "--n-last", "3"});
  REQUIRE(t.code == 0);
  const Json trace = Json::parse(t.out)["trace"];
  REQUIRE(trace.size() == 3);
  CHECK(trace[0][1].get<double>() == 0.95);
}

TEST_CASE("example reports facts with provenance") {
  const Run r = run({"example", "ex31", "--method", "green"});
  REQUIRE(r.code == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc["status"] == "PASS");
  CHECK(doc["chain"]["status"] == "PASS");
  for (const Json& f : doc["facts"]) {
    CHECK(f["status"] == "PASS");
    CHECK(f["expected"].contains("provenance"));
  }
}

TEST_CASE("repeated runs are byte-identical") {
  const std::vector<std::vector<std::string>> commands{
      {"green", ex31_path()},
      {"rho", ex31_path(), "--method", "green"},
      {"classify", ex31_path(), "--lambda", "2.5", "--method", "green"},
      {"trace", "--coeffs", "1,2:1", "--lambda", "3/2", "--w", "1,1", "--n-last", "10"},
  };
  for (const auto& args : commands) {
    const Run a = run(args);
    const Run b = run(args);
    CAPTURE(args.front());
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("the installed binary behaves like the library entry point") {
  const std::string binary = UNITAY_CLI_PATH;
  REQUIRE(fs::exists(binary));
  const fs::path out = scratch() / "binary.json";
  const fs::path err = scratch() / "binary.err";
  const std::string base = "'" + binary + "' classify '" + ex31_path() + "' --lambda 2 --method green";
  CHECK(shell(base + " > '" + out.string() + "' 2> '" + err.string() + "'") == 0);
  const Run in_process = run({"classify", ex31_path(), "--lambda", "2", "--method", "green"});
  CHECK(slurp(out) == in_process.out);
  CHECK(slurp(err).rfind("# unitay", 0) == 0);
  CHECK(shell("'" + binary + "' rho /nonexistent.json > /dev/null 2>&1") == 2);
  CHECK(shell("'" + binary + "' --help > /dev/null 2>&1") == 0);
}
