#include "slantlab/error.hpp"
#include "slantlab/report.hpp"
#include "slantlab/runner.hpp"
#include "slantlab/scenario.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

using namespace slantlab;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunSummary golden_run(const std::string& name) {
  return run_scenario(load_scenario(read_file(std::string(SLANTLAB_GOLDEN_DIR) + "/" + name + ".scn")));
}

}  // namespace

TEST(RenderRecords, FieldOrderAndNumberFormat) {
  RunSummary sum;
  sum.scenario = "t";
  CheckRecord r{"a/b", 0.1, 1e-5, 3, false, Vector::Zero(2), false};
  r.worst_point[1] = -0.5;
  CheckRecord d{"c", std::nan(""), 1.0, 1, false, Vector::Zero(1), true};
  sum.records = {r, d};
  EXPECT_EQ(render_records(sum),
            "{\"name\":\"a/b\",\"residual\":0.10000000000000001,\"tolerance\":1.0000000000000001e-05,\"passed\":false,"
            "\"point\":[0,-0.5],\"samples\":3,\"kind\":\"check\"}\n"
            "{\"name\":\"c\",\"residual\":null,\"tolerance\":1,\"passed\":false,\"point\":[0],\"samples\":1,"
            "\"kind\":\"diagnostic\"}\n");
}

TEST(RenderRecords, RoundTripThroughParser) {
  const RunSummary sum = golden_run("invariant-all");
  const auto parsed = parse_records(render_records(sum));
  ASSERT_EQ(parsed.size(), sum.records.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    const CheckRecord& r = sum.records[i];
    EXPECT_EQ(parsed[i].name, r.name);
    EXPECT_EQ(parsed[i].residual, r.max_residual);  // 17 digits are exact
    EXPECT_EQ(parsed[i].tolerance, r.tolerance);
    EXPECT_EQ(parsed[i].passed, r.passed);
    EXPECT_EQ(parsed[i].samples, r.samples);
    EXPECT_EQ(parsed[i].kind, r.diagnostic ? "diagnostic" : "check");
    ASSERT_EQ(parsed[i].point.size(), std::size_t(r.worst_point.size()));
    for (std::size_t k = 0; k < parsed[i].point.size(); ++k) {
      EXPECT_EQ(parsed[i].point[k], r.worst_point[Eigen::Index(k)]);
    }
  }
}

TEST(RenderRecords, ByteStableAcrossRuns) {
  EXPECT_EQ(render_records(golden_run("invariant-all")), render_records(golden_run("invariant-all")));
  EXPECT_EQ(render_records(golden_run("slant-pi6-origin")),
            read_file(std::string(SLANTLAB_GOLDEN_DIR) + "/slant-pi6-origin.records"));
}

TEST(RenderTable, ContainsRowsAndStatus) {
  const RunSummary sum = golden_run("slant-pi6-origin");
  const std::string t = render_table(sum);
  EXPECT_NE(t.find("scenario: slant-pi6-origin"), std::string::npos);
  EXPECT_NE(t.find("corollary31/tangential-metric"), std::string::npos);
  EXPECT_NE(t.find("diag"), std::string::npos);
  EXPECT_NE(t.find("proper-slant"), std::string::npos);
  EXPECT_NE(t.find("status: pass"), std::string::npos);
}

TEST(ParseRecords, MalformedLinesAreParseErrors) {
  try {
    parse_records("{\"name\":\"x\"\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::parse);
  }
  try {
    parse_records("{\"name\":\"x\",\"kind\":\"check\"}\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::parse);
  }
  // Slant-report lines and blank lines are skipped.
  EXPECT_TRUE(parse_records("\n{\"kind\":\"slant-report\"}\n").empty());
}

TEST(ListCatalog, NamesEverything) {
  const std::string all = render_list_table(false);
  for (const char* name : {"lorentz-sasakian-R5", "flat-product", "invariant-R5", "anti-invariant-R5",
                           "slant-candidate-R5(theta)", "theorem42"})
    EXPECT_NE(all.find(name), std::string::npos) << name;
  const std::string checks = render_list_records(true);
  EXPECT_EQ(checks.find("invariant-R5"), std::string::npos);
  EXPECT_NE(checks.find("\"kind\":\"check\""), std::string::npos);
}
