#include <doctest.h>

#include <json.hpp>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "edurisk/cli.hpp"
#include "edurisk/model_io.hpp"
#include "fixtures.hpp"

namespace fs = std::filesystem;
using edurisk::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args, const std::string& stdin_text = {}) {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = run(args, in, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("edurisk_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

const std::string kData = fixtures::data_path("table2.csv");
const std::string kSchema = fixtures::data_path("course.cfg");
const std::string kModel = fixtures::golden_path("table2_model.json");

}  // namespace

TEST_CASE("train writes a model rooted at Quiz 2") {
  TempDir tmp;
  const auto out = tmp.file("model.json");
  for (const std::string criterion : {"gain-ratio", "info-gain"}) {
    const auto r = invoke({"train", "--data", kData, "--schema", kSchema, "--criterion", criterion, "--out", out});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    const auto model = edurisk::deserialize_model(fixtures::read_file(out));
    CHECK(model.tree.attribute() == "Quiz 2");
  }
  const auto to_stdout = invoke({"train", "--data", kData, "--schema", kSchema, "--out", "-"});
  CHECK(to_stdout.code == 0);
  CHECK(to_stdout.out == fixtures::read_file(kModel));
}

TEST_CASE("train options") {
  TempDir tmp;
  const auto out = tmp.file("stump.json");
  CHECK(invoke({"train", "--data", kData, "--schema", kSchema, "--max-depth", "1", "--out", out}).code == 0);
  CHECK(edurisk::deserialize_model(fixtures::read_file(out)).tree.depth() == 1);
  CHECK(invoke({"train", "--data", kData, "--schema", kSchema, "--min-support", "0", "--out", out}).code == 2);
  CHECK(invoke({"train", "--data", kData, "--schema", kSchema, "--criterion", "gini", "--out", out}).code == 2);
}

TEST_CASE("metrics table") {
  const auto r = invoke({"metrics", "--data", kData, "--schema", kSchema});
  CHECK(r.code == 0);
  CHECK(r.out.find("Quiz 2          0.674205    0.881291    0.765020") != std::string::npos);
  CHECK(r.out.find("Assignment 1    0.000000    0.000000         n/a") != std::string::npos);

  const auto m = invoke({"metrics", "--data", kData, "--schema", kSchema, "--format", "machine"});
  CHECK(m.code == 0);
  const auto doc = nlohmann::json::parse(m.out);
  REQUIRE(doc.size() == 5);
  CHECK(doc[1].at("attribute") == "Quiz 2");
  CHECK(doc[3].at("gain_ratio").is_null());
}

TEST_CASE("metrics_table formatting") {
  CHECK(edurisk::cli::metrics_table({}) == "attribute        gain  split_info  gain_ratio\n");
  const std::vector<edurisk::AttributeScore> one = {{"Q", 0.5, 1.0, 0.5}, {"Longer name", 0.0, 0.0, std::nullopt}};
  CHECK(edurisk::cli::metrics_table(one) ==
        "attribute          gain  split_info  gain_ratio\n"
        "Q              0.500000    1.000000    0.500000\n"
        "Longer name    0.000000    0.000000         n/a\n");
}

TEST_CASE("data can be piped through stdin") {
  const auto csv = fixtures::read_file(kData);
  const auto r = invoke({"metrics", "--data", "-", "--schema", kSchema}, csv);
  CHECK(r.code == 0);
  CHECK(r.out == invoke({"metrics", "--data", kData, "--schema", kSchema}).out);
}

TEST_CASE("ingest normalizes raw marks") {
  const auto r = invoke({"ingest", "--data", fixtures::data_path("marks_example.csv"), "--schema", kSchema,
                         "--mode", "raw"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("student_id,Quiz 1,Quiz 2,Mid-Term,Assignment 1,Assignment 2\nS01,Pass,Fail,Pass,Pass,Pass\n", 0) == 0);
  const auto again = invoke({"ingest", "--data", "-", "--schema", kSchema}, r.out);
  CHECK(again.code == 0);
  CHECK(again.out == r.out);
  CHECK(invoke({"ingest", "--data", kData, "--schema", kSchema}).out == fixtures::read_file(kData));
}

TEST_CASE("predict and rules") {
  const auto p = invoke({"predict", "--model", kModel, "--data", kData});
  CHECK(p.code == 0);
  CHECK(p.out.find("7           Fail       yes      Quiz 2 = Fail") != std::string::npos);
  const auto pm = invoke({"predict", "--model", kModel, "--data", kData, "--format", "machine"});
  const auto doc = nlohmann::json::parse(pm.out);
  REQUIRE(doc.size() == 20);
  CHECK(doc[6].at("student_id") == "7");
  CHECK(doc[6].at("at_risk") == true);
  CHECK(doc[6].at("path") == nlohmann::json::parse(R"([["Quiz 2","Fail"]])"));

  const auto rm = invoke({"rules", "--model", kModel, "--format", "machine"});
  CHECK(rm.code == 0);
  CHECK(nlohmann::json::parse(rm.out).size() == 3);
}

TEST_CASE("predict on a cohort missing a column names it") {
  TempDir tmp;
  const auto cohort = tmp.file("cohort.csv");
  {
    std::ofstream f(cohort);
    f << "student_id,Quiz 1,Mid-Term,Assignment 1,Assignment 2\nS1,Pass,Pass,Pass,Pass\n";
  }
  const auto r = invoke({"predict", "--model", kModel, "--data", cohort});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(r.err.find("Quiz 2") != std::string::npos);
}

TEST_CASE("report") {
  const auto r = invoke({"report", "--model", kModel, "--data", kData, "--course-id", "CSC-101", "--deterministic"});
  CHECK(r.code == 0);
  CHECK(r.out.find("Generated: 1970-01-01T00:00:00Z") != std::string::npos);
  const auto lowered = invoke({"report", "--model", kModel, "--data", kData, "--course-id", "CSC-101",
                               "--deterministic", "--fail-rate-threshold", "0.3"});
  CHECK(lowered.out.find("high_failure") != std::string::npos);
  const auto live = invoke({"report", "--model", kModel, "--data", kData, "--course-id", "X", "--format", "machine"});
  CHECK(live.code == 0);
  CHECK(nlohmann::json::parse(live.out).at("generated_at") != "1970-01-01T00:00:00Z");
  CHECK(invoke({"report", "--model", kModel, "--data", kData, "--course-id", "X",
                "--fail-rate-threshold", "0"}).code == 1);
  CHECK(invoke({"report", "--model", kModel, "--data", kData, "--course-id", "X",
                "--fail-rate-threshold", "1.5"}).code == 2);
}

TEST_CASE("usage and data errors") {
  const auto none = invoke({});
  CHECK(none.code == 2);
  CHECK(none.err.find("Usage") != std::string::npos);
  const auto unknown_flag = invoke({"metrics", "--data", kData, "--schema", kSchema, "--colour"});
  CHECK(unknown_flag.code == 2);
  CHECK(unknown_flag.err.find("Usage") != std::string::npos);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"metrics", "--data", kData}).code == 2);

  const auto missing = invoke({"metrics", "--data", "/no/such/file.csv", "--schema", kSchema});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("/no/such/file.csv") != std::string::npos);

  CHECK(invoke({"rules", "--model", kData}).code == 1);
  CHECK(invoke({"metrics", "--data", "-", "--schema", "-"}, "x").code == 1);

  const auto help = invoke({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("report") != std::string::npos);
}
