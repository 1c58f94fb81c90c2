#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "divcom/errors.hpp"
#include "divcom/graph.hpp"
#include "divcom/io.hpp"
#include "divcom/pipeline.hpp"

using divcom::build_graph;
using divcom::Graph;
using divcom::IoError;
using divcom::ModelFile;
using divcom::ModelKind;
using divcom::ParseError;
using divcom::read_edge_list;
using divcom::read_labels;
using divcom::read_model_json;
using divcom::read_report_json;
using divcom::read_values;
using divcom::ReportFile;
using divcom::write_edge_list;
using divcom::write_labels;
using divcom::write_metrics_json;
using divcom::write_model_json;
using divcom::write_report_json;
using divcom::write_values;

namespace {

class TempDir {
 public:
  TempDir() {
    dir_ = std::filesystem::temp_directory_path() / "divcom_io_test";
    std::filesystem::create_directories(dir_);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  std::filesystem::path dir_;
};

void put(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

divcom::BlockModel toy_model() {
  divcom::BlockModel m;
  m.K = 3;
  m.G = 2;
  m.B = {0.5, 0.4, 0.02, 0.4, 0.6, 0.01, 0.02, 0.01, 0.7};
  m.pi = {0.25, 0.25, 0.5};
  m.group_of = {1, 1, 2};
  return m;
}

}  // namespace

TEST_CASE("edge list round-trips exactly, isolated tail nodes included") {
  TempDir td;
  auto g = build_graph({{0, 1}, {1, 2}, {0, 3}}, 6);  // nodes 4, 5 isolated
  auto path = td.path("roundtrip.edges");
  write_edge_list(path, g);
  auto ef = read_edge_list(path);
  CHECK(ef.n == 6);
  CHECK(ef.edges == g.edge_list());
  auto g2 = build_graph(ef.edges, ef.n);
  CHECK(g2.n == g.n);
  CHECK(g2.total_degree == g.total_degree);
}

TEST_CASE("edge list accepts comments, blanks, and no directive") {
  TempDir td;
  auto path = td.path("loose.edges");
  put(path,
      "# a comment\n"
      "\n"
      "0 2   # trailing note\n"
      "  1 2\n");
  auto ef = read_edge_list(path);
  CHECK(ef.n == 3);
  CHECK(ef.edges == std::vector<std::pair<int, int>>{{0, 2}, {1, 2}});
}

TEST_CASE("edge list parse failures carry line numbers") {
  TempDir td;
  auto path = td.path("bad.edges");
  auto expect_line = [&](const std::string& text, std::size_t line) {
    put(path, text);
    try {
      read_edge_list(path);
      FAIL("expected ParseError for: " << text);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
    }
  };
  expect_line("0 x\n", 1);
  expect_line("0 1\n2\n", 2);
  expect_line("0 1 2\n", 1);
  expect_line("0 1\n-1 2\n", 2);
  expect_line("3 3\n", 1);
  expect_line("# n=zzz\n0 1\n", 1);
  expect_line("# n=2\n0 1\n1 2\n", 3);  // id 2 exceeds declared n
}

TEST_CASE("reading a missing file raises IoError") {
  CHECK_THROWS_AS(read_edge_list("/no/such/file.edges"), IoError);
  CHECK_THROWS_AS(write_labels("/no/such/dir/file.labels", {1}), IoError);
}

TEST_CASE("labels and values round-trip") {
  TempDir td;
  write_labels(td.path("l.txt"), {3, 1, 2, 2});
  CHECK(read_labels(td.path("l.txt")) == std::vector<int>{3, 1, 2, 2});

  std::vector<double> v = {0.1, 1.0 / 3, 1e-17, 1.2, -4.5e8};
  write_values(td.path("v.txt"), v);
  CHECK(read_values(td.path("v.txt")) == v);  // shortest repr round-trips

  put(td.path("badl.txt"), "1\ntwo\n");
  try {
    read_labels(td.path("badl.txt"));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("model JSON round-trips and validates on read") {
  TempDir td;
  ModelFile mf;
  mf.kind = ModelKind::dcsbm;
  mf.model = toy_model();
  mf.n = 500;
  mf.seed = 77;
  mf.group_sizes = {2, 1};
  auto path = td.path("model.json");
  write_model_json(path, mf);
  auto back = read_model_json(path);
  CHECK(back.kind == ModelKind::dcsbm);
  CHECK(back.n == 500);
  CHECK(back.seed == 77);
  CHECK(back.group_sizes == mf.group_sizes);
  CHECK(back.model.K == 3);
  CHECK(back.model.G == 2);
  CHECK(back.model.B == mf.model.B);
  CHECK(back.model.pi == mf.model.pi);
  CHECK(back.model.group_of == mf.model.group_of);

  SUBCASE("malformed JSON reports a line") {
    put(path, "{\n  \"kind\": \n}\n");
    try {
      read_model_json(path);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);  // the unexpected '}' is where parsing stops
    }
  }
  SUBCASE("missing field is a parse error") {
    put(path, "{\"kind\": \"sbm\"}\n");
    CHECK_THROWS_AS(read_model_json(path), ParseError);
  }
  SUBCASE("invariant-breaking model is rejected") {
    auto broken = mf;
    broken.model.pi = {0.5, 0.5, 0.5};  // does not sum to 1
    write_model_json(path, broken);
    CHECK_THROWS_AS(read_model_json(path), std::invalid_argument);
  }
}

TEST_CASE("report JSON round-trips a pipeline run") {
  TempDir td;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) {
      edges.emplace_back(i, j);
      edges.emplace_back(i + 5, j + 5);
    }
  auto g = build_graph(edges, 10);
  ReportFile rf;
  rf.n = 10;
  rf.model = ModelKind::dcsbm;
  rf.detector = divcom::DetectorKind::score;
  rf.seed = 5;
  rf.jobs = 2;
  divcom::PipelineConfig cfg;
  cfg.model = ModelKind::dcsbm;
  cfg.detector = divcom::DetectorKind::score;
  cfg.seed = 5;
  rf.report = divcom::run_pipeline(g, cfg);
  auto path = td.path("report.json");
  write_report_json(path, rf);
  auto back = read_report_json(path);
  CHECK(back.n == rf.n);
  CHECK(back.model == rf.model);
  CHECK(back.detector == rf.detector);
  CHECK(back.seed == rf.seed);
  CHECK(back.jobs == rf.jobs);
  CHECK(back.report.G_hat == rf.report.G_hat);
  CHECK(back.report.K_total == rf.report.K_total);
  CHECK(back.report.g_hat.of == rf.report.g_hat.of);
  CHECK(back.report.c_hat.of == rf.report.c_hat.of);
  CHECK(back.report.B_hat == rf.report.B_hat);
  CHECK(back.report.theta_hat == rf.report.theta_hat);
  CHECK(back.report.division_ms == rf.report.division_ms);
  CHECK(back.report.combination_ms == rf.report.combination_ms);
  REQUIRE(back.report.groups.size() == rf.report.groups.size());
  for (std::size_t t = 0; t < rf.report.groups.size(); ++t) {
    CHECK(back.report.groups[t].nodes == rf.report.groups[t].nodes);
    CHECK(back.report.groups[t].K_hat == rf.report.groups[t].K_hat);
    CHECK(back.report.groups[t].local.of == rf.report.groups[t].local.of);
    CHECK(back.report.groups[t].scores == rf.report.groups[t].scores);
  }
}

TEST_CASE("metrics JSON preserves key order") {
  TempDir td;
  auto path = td.path("metrics.json");
  write_metrics_json(path, {{"nmi", 0.5}, {"g_nmi", 1.0}});
  auto text = slurp(path);
  CHECK(text.find("nmi") < text.find("g_nmi"));
  auto j = nlohmann::json::parse(text);
  CHECK(j.at("nmi").get<double>() == 0.5);
  CHECK(j.at("g_nmi").get<double>() == 1.0);
}
