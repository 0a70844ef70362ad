#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "wsm/document.hpp"
#include "wsm/reduction.hpp"
#include "wsm/strata.hpp"

using namespace wsm;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("wsm_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }

  // Genus-0 vertex with tails 1,2,3 joined to a genus-1 vertex.
  WGraph node() const {
    WGraph g(TargetProfile::point());
    const auto a = g.add_vertex(0), b = g.add_vertex(1);
    for (const char* l : {"1", "2", "3"}) g.add_tail(a, Rational(1), l);
    g.add_edge(a, b);
    return g;
  }

  std::filesystem::path dir_;
};

}  // namespace

TEST(Cli, Classify) {
  const Result r = run({"classify", "--from", "1,1,1", "--to", "3/5,3/5,3/5"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out, "isomorphism\n");
  EXPECT_EQ(run({"classify", "--from", "1,2/5,2/5,2/5", "--to", "1,3/10,3/10,3/10"}).out.rfind("blowup({2,3,4})\n", 0), 0u);
}

TEST(Cli, ChambersAndPath) {
  const Result r = run({"--format", "json", "chambers", "--n", "2"});
  ASSERT_EQ(r.code, cli::kOk);
  const Json doc = parse_json_text(r.out);
  EXPECT_EQ(doc["chambers"].size(), 2u);
  EXPECT_EQ(run({"chambers", "--n", "3", "--kind", "coarse"}).out.rfind("2 chambers", 0), 0u);

  const Result p = run({"--format", "json", "path", "--from", "1,1,1", "--to", "2/5,2/5,2/5"});
  ASSERT_EQ(p.code, cli::kOk);
  const Json path = parse_json_text(p.out);
  ASSERT_EQ(path["breakpoints"].size(), 1u);
  EXPECT_EQ(path["breakpoints"][0]["lambda"], "1/6");
  EXPECT_EQ(path["breakpoints"][0]["walls"].size(), 3u);
  EXPECT_NE(run({"path", "--from", "1,1,1", "--to", "2/5,2/5,2/5"}).out.find("breakpoints: 1/6"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run({"classify", "--from", "1,1"}).code, cli::kUsage);
  EXPECT_EQ(run({"validate", "--graph", "/nonexistent/graph.json"}).code, cli::kUsage);
  const Result bad = run({"classify", "--from", "1/2,1", "--to", "1,1"});
  EXPECT_EQ(bad.code, cli::kFailure);
  EXPECT_EQ(bad.err.rfind("error[incomparable]: ", 0), 0u);
  EXPECT_EQ(run({"chambers", "--n", "9"}).code, cli::kFailure);
  EXPECT_EQ(run({"walls", "--weights", "1,x"}).code, cli::kFailure);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"--format", "json", "strata", "--weights", "1,1,1,1", "--max-edges", "1"};
  EXPECT_EQ(run(args).out, run(args).out);
  EXPECT_EQ(run({"chambers", "--n", "4"}).out, run({"chambers", "--n", "4"}).out);
}

TEST_F(CliFiles, ReduceParsesBack) {
  const WGraph g = node();
  const std::string path = write("g.json", dump(serialize_graph(g)));
  const Result r = run({"--format", "json", "reduce", "--graph", path, "--to", "1/3,1/3,1/3"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(parse_graph(parse_json_text(r.out)), reduce_graph(g, WeightData::parse("1/3,1/3,1/3")));

  const Result v = run({"--format", "json", "validate", "--graph", path});
  ASSERT_EQ(v.code, cli::kOk);
  const Json report = parse_json_text(v.out);
  EXPECT_EQ(report["valid"], true);
  EXPECT_EQ(report["vdim"], stats(g).vdim);
}

TEST_F(CliFiles, InvalidDocument) {
  Json doc = serialize_graph(node());
  doc["flags"][3]["partner"] = 11;
  const std::string path = write("bad.json", dump(doc));
  const Result r = run({"validate", "--graph", path});
  EXPECT_EQ(r.code, cli::kFailure);
  EXPECT_NE(r.err.find("error[dangling-partner]"), std::string::npos);
  EXPECT_NE(r.err.find("flags[3]"), std::string::npos);
}

TEST_F(CliFiles, GraphOperations) {
  const std::string path = write("g.json", dump(serialize_graph(node())));
  const Result f = run({"--format", "json", "forget", "--graph", path, "--tail", "1"});
  ASSERT_EQ(f.code, cli::kOk) << f.err;
  EXPECT_EQ(parse_graph(parse_json_text(f.out)).n_tails(), 2u);
  const Result c = run({"--format", "json", "cut", "--graph", path, "--flag", "3"});
  ASSERT_EQ(c.code, cli::kOk) << c.err;
  EXPECT_EQ(parse_graph(parse_json_text(c.out)).n_edges(), 0u);
  const Result glued = run({"--format", "json", "glue", "--graph", path, "--tail", "1", "--tail2", "#1"});
  ASSERT_EQ(glued.code, cli::kOk) << glued.err;
  EXPECT_EQ(stats(parse_graph(parse_json_text(glued.out))).genus_total, 2);
  EXPECT_EQ(run({"combine", "--graph", path, "--tails", "1,2"}).code, cli::kFailure);
  const Result dot = run({"dot", "--graph", path});
  ASSERT_EQ(dot.code, cli::kOk);
  EXPECT_EQ(dot.out.rfind("graph", 0), 0u);
}

TEST(Cli, StrataDimGate) {
  const Result s = run({"--format", "json", "strata", "--weights", "1,1,1,1,1", "--max-edges", "2"});
  ASSERT_EQ(s.code, cli::kOk) << s.err;
  EXPECT_EQ(parse_json_text(s.out).size(), 26u);
  const Result dot = run({"strata", "--weights", "1,1,1,1", "--max-edges", "1", "--dot"});
  EXPECT_NE(dot.out.find("label=\"1/0\""), std::string::npos);
  EXPECT_EQ(run({"dim", "--weights", "", "--beta", "1", "--profile", "3:-4"}).out, "4\n");
  EXPECT_EQ(run({"gate", "--weights", "1,1", "--beta", "1", "--profile", "3:-4", "--insert", "1:3", "--insert", "2:3"}).out,
            "passes\n");
  EXPECT_EQ(run({"gate", "--weights", "1,1", "--beta", "1", "--profile", "3:-4", "--insert", "1:3:1", "--insert", "2:3"})
                .out,
            "fails(+1)\n");
}
