#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string command = env + " '" + QJK_CLI + "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// Every line has the header's column count.
bool well_formed_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t columns = 0, rows = 0;
  while (std::getline(in, line)) {
    const auto c = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
    if (rows++ == 0) columns = c;
    if (c != columns) return false;
  }
  return rows > 1;
}

}  // namespace

TEST(Cli, VerifyExamples) {
  auto r = run("verify --checks ybe,equivalence --n 2..8");
  ASSERT_EQ(r.code, 0);
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["all_pass"], true);
  for (const auto& c : doc["checks"]) EXPECT_EQ(c["pass"], true) << c;

  r = run("verify --checks appendix --n 2..12");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["all_pass"], true);

  EXPECT_EQ(run("verify --checks ybe --n 1..3").code, 2);
  EXPECT_EQ(run("verify --checks ybe --n 5..3").code, 2);
  EXPECT_EQ(run("verify --checks ybe --n two").code, 2);
  EXPECT_EQ(run("verify --checks nonsense --n 2").code, 2);
}

TEST(Cli, VerifyFailureExitsOne) {
  const auto r = run("--tolerance 1e-20 verify --checks ybe --n 4");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.out)["all_pass"], false);
}

TEST(Cli, InvariantBothOperatorsAgree) {
  const auto r = run("invariant --braid '3: 1 -2 1 -2' --n 5 --operator both");
  ASSERT_EQ(r.code, 0);
  const auto doc = json::parse(r.out);
  const auto j = doc["jones"]["value"], k = doc["kashaev"]["value"];
  EXPECT_NEAR(j[0].get<double>(), k[0].get<double>(), 1e-8 * std::abs(j[0].get<double>()));
  EXPECT_NEAR(j[1].get<double>(), k[1].get<double>(), 1e-8 * std::abs(j[0].get<double>()));
  EXPECT_EQ(doc["jones"]["writhe"], 0);
  EXPECT_EQ(doc["jones"]["components"], 1);

  const auto single = json::parse(run("invariant --knot 3_1 --n 4 --operator kashaev").out);
  for (const char* field : {"value", "scalarness", "writhe", "components"}) EXPECT_TRUE(single.contains(field));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("invariant --knot 4_1 --n 16 --operator jones").code, 1);
  EXPECT_EQ(run("invariant --knot 4_1 --n 16 --operator jones --no-scalar-check").code, 0);
  EXPECT_EQ(run("invariant --braid '2: 3' --n 3").code, 2);
  EXPECT_EQ(run("invariant --braid '2: 1' --knot 3_1 --n 3").code, 2);
  EXPECT_EQ(run("invariant --n 3").code, 2);
  EXPECT_EQ(run("volume --knot 9_99 --n-min 3 --n-max 4").code, 2);
  EXPECT_EQ(run("volume --knot 4_1 --n-min 1 --n-max 4").code, 2);
  EXPECT_EQ(run("dump-rmatrix --n 2 --kind burau").code, 2);
  EXPECT_EQ(run("--threads 0 rep-check --n 3").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, DumpHasSixteenEntriesAtTwo) {
  const auto r = run("dump-rmatrix --n 2 --kind kashaev");
  ASSERT_EQ(r.code, 0);
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["N"], 2);
  EXPECT_EQ(doc["kind"], "kashaev");
  EXPECT_EQ(doc["dim"], 4);
  EXPECT_EQ(doc["entries"].size(), 16u);
}

TEST(Cli, UnknotVolumeIsZero) {
  const auto r = run("volume --knot unknot --n-min 2 --n-max 20");
  ASSERT_EQ(r.code, 0);
  const auto doc = json::parse(r.out);
  ASSERT_EQ(doc["points"].size(), 19u);
  for (const auto& p : doc["points"]) EXPECT_EQ(p["v_N"].get<double>(), 0.0);
}

TEST(Cli, EveryCommandEmitsWellFormedOutput) {
  const std::vector<std::string> commands = {
      "verify --checks qarith,mu --n 2..4",
      "invariant --knot 5_2 --n 4",
      "invariant --knot 5_2 --n 4 --operator jones --probe",
      "volume --knot 4_1 --n-min 4 --n-max 10 --fit corrected",
      "volume --knot 4_1 --n-min 4 --n-max 10 --fit plain --operator jones",
      "volume --knot granny --n-min 4 --n-max 6 --fit none",
      "dump-rmatrix --n 3 --kind jones --inverse",
      "rep-check --n 6",
      "rep-check --n 6 --p 2.5",
  };
  for (const auto& c : commands) {
    for (const char* precision : {"double", "extended"}) {
      const std::string prefix = std::string("--precision ") + precision + " ";
      const auto j = run(prefix + "--format json " + c);
      EXPECT_EQ(j.code, 0) << c;
      EXPECT_TRUE(json::accept(j.out)) << c;
      const auto csv = run(prefix + "--format csv " + c);
      EXPECT_EQ(csv.code, 0) << c;
      EXPECT_TRUE(well_formed_csv(csv.out)) << c << "\n" << csv.out;
    }
  }
}

TEST(Cli, ByteIdenticalAcrossThreadCounts) {
  const std::vector<std::string> commands = {
      "verify --checks agreement,enhancement --n 3..6",
      "invariant --knot 6_1 --n 7",
      "volume --knot 5_2 --n-min 5 --n-max 14",
      "--precision extended volume --knot 4_1 --n-min 5 --n-max 9",
  };
  for (const auto& c : commands) {
    const auto base = run("--threads 1 " + c);
    ASSERT_EQ(base.code, 0) << c;
    for (const int threads : {2, 4}) {
      EXPECT_EQ(run("--threads " + std::to_string(threads) + " " + c).out, base.out) << c;
    }
    EXPECT_EQ(run("--threads 1 " + c).out, base.out) << c;
  }
}

TEST(Cli, TableFromEnvironmentOrFlag) {
  const auto dir = std::filesystem::temp_directory_path() / "qjk_cli_table";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "knots.json").string();
  std::ofstream(path) << R"([{"name": "custom", "strands": 2, "word": [1, 1, 1], "reference_volume": null,
                             "reference_determinant": 3, "source": "test"}])";

  const std::string env = "QJK_KNOT_TABLE='" + path + "'";
  EXPECT_EQ(run("volume --knot custom --n-min 3 --n-max 5", env).code, 0);
  EXPECT_EQ(run("volume --knot 4_1 --n-min 3 --n-max 5", env).code, 2);
  EXPECT_EQ(run("--table '" + path + "' invariant --knot custom --n 3").code, 0);
  EXPECT_EQ(run("--table '" + std::string(QJK_TEST_KNOT_TABLE) + "' invariant --knot 4_1 --n 3", env).code, 0);
  EXPECT_EQ(run("volume --knot 4_1 --n-min 3 --n-max 5", "QJK_KNOT_TABLE=/nonexistent").code, 2);
  std::filesystem::remove_all(dir);
}
