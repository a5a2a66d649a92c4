#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lamination/cli.hpp"

using namespace lamination;

namespace {

// Fixture: input files in a fresh temp directory, streams captured per run.
struct CliRun {
  std::ostringstream out;
  std::ostringstream err;
  int exit_code = -1;

  int run(const std::vector<std::string>& args) {
    exit_code = run_cli(args, out, err);
    return exit_code;
  }
};

class TempInputs {
 public:
  TempInputs() {
    dir_ = std::filesystem::temp_directory_path() /
           ("lamination_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  ~TempInputs() { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& content) const {
    const std::filesystem::path p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }

 private:
  std::filesystem::path dir_;
};

const char kGoldenJson[] = R"({"rank": 2, "prefix": [], "period": [[[1, 1], [1, 0]]]})";
const char kDelta0Json[] = R"({"ks": [0]})";

}  // namespace

TEST_CASE("validate accepts the golden pair") {
  TempInputs files;
  CliRun cli;
  CHECK(cli.run({"validate", files.write("d.json", kGoldenJson),
                 files.write("k.json", kDelta0Json)}) == 0);
  const std::string out = cli.out.str();
  CHECK(out.find("unimodularity: pass (1 levels)") != std::string::npos);
  CHECK(out.find("ergodicity: StrictlyErgodic (pass)") != std::string::npos);
  CHECK(out.find("delta: valid (g=1, m=1, r=2)") != std::string::npos);
  CHECK(out.find("rank: compatible (diagram rank 2 = 2g+m-1)") != std::string::npos);
  CHECK(cli.err.str().empty());
}

TEST_CASE("validate reports the offending level of a non-unimodular diagram") {
  TempInputs files;
  CliRun cli;
  const std::string det2 = files.write("det2.json", R"({"rank": 2, "prefix": [[[2, 1], [0, 1]]]})");
  CHECK(cli.run({"validate", det2, files.write("k.json", kDelta0Json)}) == 1);
  CHECK(cli.out.str().find("unimodularity: fail (level 1 has determinant 2)") !=
        std::string::npos);
  const std::string err = cli.err.str();
  CHECK(err.find("error: stage=unimodularity code=NotUnimodular") != std::string::npos);
  CHECK(err.find("level 1 has determinant 2") != std::string::npos);
}

TEST_CASE("malformed or missing input files exit with code 2") {
  TempInputs files;
  const std::string delta = files.write("k.json", kDelta0Json);
  {
    CliRun cli;
    CHECK(cli.run({"validate", files.write("bad.json", "{"), delta}) == 2);
    CHECK(cli.err.str().find("code=SchemaError") != std::string::npos);
  }
  {
    CliRun cli;
    CHECK(cli.run({"validate", "does_not_exist.json", delta}) == 2);
    CHECK(cli.err.str().find("cannot open file") != std::string::npos);
  }
  {
    CliRun cli;
    CHECK(cli.run({"report", files.write("badk.json", R"({"ks": []})"),
                   files.write("d.json", kGoldenJson)}) == 2);
  }
}

TEST_CASE("report emits parseable deterministic JSON") {
  TempInputs files;
  const std::string d = files.write("d.json", kGoldenJson);
  const std::string k = files.write("k.json", kDelta0Json);
  CliRun first;
  CHECK(first.run({"report", d, k}) == 0);
  CliRun second;
  CHECK(second.run({"report", d, k}) == 0);
  CHECK(first.out.str() == second.out.str());

  const nlohmann::json j = nlohmann::json::parse(first.out.str());
  CHECK(j["code"]["text"].get<std::string>().substr(0, 10) == "baabaababa");
  CHECK(j["input"]["rank"] == 2);
}

TEST_CASE("report respects format, length, and label options") {
  TempInputs files;
  const std::string d = files.write("d.json", kGoldenJson);
  const std::string k = files.write("k.json", kDelta0Json);
  {
    CliRun cli;
    CHECK(cli.run({"report", d, k, "--format", "text", "--length", "16"}) == 0);
    CHECK(cli.out.str().find("baabaababa") != std::string::npos);
  }
  {
    CliRun cli;
    CHECK(cli.run({"report", d, k, "--length", "0"}) == 0);
    const nlohmann::json j = nlohmann::json::parse(cli.out.str());
    CHECK_FALSE(j.contains("code"));
    CHECK_FALSE(j.contains("analysis"));
  }
  {
    CliRun cli;
    CHECK(cli.run({"report", d, k, "--labels", "x,y", "--length", "12"}) == 0);
    const nlohmann::json j = nlohmann::json::parse(cli.out.str());
    CHECK(j["code"]["labels"] == nlohmann::json::array({"x", "y"}));
  }
}

TEST_CASE("report maps stage failures to exit 1 with a tagged error line") {
  TempInputs files;
  const std::string d = files.write("d.json", kGoldenJson);
  const std::string k = files.write("k.json", kDelta0Json);
  CliRun cli;
  CHECK(cli.run({"report", d, k, "--depth", "1"}) == 1);
  CHECK(cli.out.str().empty());
  CHECK(cli.err.str().find("error: stage=theta code=NotContracted") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  TempInputs files;
  const std::string d = files.write("d.json", kGoldenJson);
  const std::string k = files.write("k.json", kDelta0Json);
  {
    CliRun cli;
    CHECK(cli.run({"report", d, k, "--labels", "a,b,c"}) == 2);
    CHECK(cli.err.str().find("stage=cli code=ParseError") != std::string::npos);
    CHECK(cli.err.str().find("exactly 2 names") != std::string::npos);
  }
  {
    CliRun cli;
    CHECK(cli.run({"report", d, k, "--nope"}) == 2);
    CHECK(cli.err.str().find("stage=cli code=ParseError") != std::string::npos);
  }
  {
    CliRun cli;
    CHECK(cli.run({}) == 2);
    CHECK(cli.err.str().find("A subcommand is required") != std::string::npos);
  }
  {
    CliRun cli;
    CHECK(cli.run({"report", d}) == 2);
  }
  {
    CliRun cli;
    CHECK(cli.run({"report", d, k, "--depth", "0"}) == 2);
  }
}

TEST_CASE("help exits cleanly") {
  CliRun cli;
  CHECK(cli.run({"--help"}) == 0);
  CHECK(cli.out.str().find("validate") != std::string::npos);
  CHECK(cli.out.str().find("report") != std::string::npos);
  CHECK(cli.out.str().find("demo-golden-mean") != std::string::npos);
}

TEST_CASE("demo walkthrough is deterministic and carries the worked example") {
  CliRun first;
  CHECK(first.run({"demo-golden-mean"}) == 0);
  const std::string out = first.out.str();
  CHECK(out.find("0.6180339887498949") != std::string::npos);
  CHECK(out.find("b a b aa b aaa b") != std::string::npos);
  CHECK(out.find("b a a b a a b a b a") != std::string::npos);
  CliRun second;
  CHECK(second.run({"demo-golden-mean"}) == 0);
  CHECK(second.out.str() == out);
}
