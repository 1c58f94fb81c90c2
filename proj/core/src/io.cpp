#include "divcom/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "divcom/errors.hpp"

namespace divcom {

namespace {

using njson = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

njson parse_json(const std::string& path) {
  auto text = read_file(path);
  try {
    return njson::parse(text);
  } catch (const njson::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    throw ParseError(path + ": " + e.what(), line);
  }
}

// Shortest decimal text that round-trips the double.
std::string fmt(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return {buf, p};
}

ModelKind parse_kind(const std::string& s) {
  if (s == "sbm") return ModelKind::sbm;
  if (s == "dcsbm") return ModelKind::dcsbm;
  throw std::invalid_argument("unknown model kind: " + s);
}

DetectorKind parse_detector(const std::string& s) {
  if (s == "ssp") return DetectorKind::ssp;
  if (s == "score") return DetectorKind::score;
  if (s == "vsbm") return DetectorKind::vsbm;
  throw std::invalid_argument("unknown detector: " + s);
}

const char* kind_name(ModelKind k) {
  return k == ModelKind::sbm ? "sbm" : "dcsbm";
}

const char* detector_name(DetectorKind d) {
  switch (d) {
    case DetectorKind::ssp: return "ssp";
    case DetectorKind::score: return "score";
    case DetectorKind::vsbm: return "vsbm";
  }
  return "ssp";
}

njson matrix_json(const std::vector<double>& flat, int rows, int cols) {
  njson m = njson::array();
  for (int r = 0; r < rows; ++r) {
    njson row = njson::array();
    for (int c = 0; c < cols; ++c) row.push_back(flat[static_cast<std::size_t>(r) * cols + c]);
    m.push_back(std::move(row));
  }
  return m;
}

std::vector<double> matrix_flat(const njson& m, const std::string& what) {
  std::vector<double> flat;
  auto rows = m.size();
  for (const auto& row : m) {
    if (row.size() != rows)
      throw std::invalid_argument(what + " must be square");
    for (const auto& v : row) flat.push_back(v.get<double>());
  }
  return flat;
}

}  // namespace

EdgeFile read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  EdgeFile ef;
  int declared = -1;
  int max_id = -1;
  std::size_t max_id_line = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = line;
    if (auto hash = body.find('#'); hash != std::string::npos) {
      std::istringstream comment(body.substr(hash + 1));
      std::string word;
      if (comment >> word && word.rfind("n=", 0) == 0) {
        try {
          declared = std::stoi(word.substr(2));
        } catch (const std::exception&) {
          throw ParseError("bad n= directive", lineno);
        }
        if (declared < 0) throw ParseError("bad n= directive", lineno);
      }
      body.resize(hash);
    }
    std::istringstream row(body);
    int i, j;
    if (!(row >> i)) {
      if (row.eof()) continue;  // blank or comment-only line
      throw ParseError("expected two integer endpoints", lineno);
    }
    if (!(row >> j)) throw ParseError("expected two integer endpoints", lineno);
    std::string extra;
    if (row >> extra) throw ParseError("trailing text after edge", lineno);
    if (i < 0 || j < 0) throw ParseError("negative node id", lineno);
    if (i == j) throw ParseError("self-loop", lineno);
    if (std::max(i, j) > max_id) {
      max_id = std::max(i, j);
      max_id_line = lineno;
    }
    ef.edges.emplace_back(i, j);
  }
  if (declared >= 0 && max_id >= declared)
    throw ParseError("node id " + std::to_string(max_id) +
                         " exceeds declared n=" + std::to_string(declared),
                     max_id_line);
  ef.n = declared >= 0 ? declared : max_id + 1;
  return ef;
}

void write_edge_list(const std::string& path, const Graph& g) {
  std::string text = "# n=" + std::to_string(g.n) + "\n";
  for (auto [i, j] : g.edge_list())
    text += std::to_string(i) + " " + std::to_string(j) + "\n";
  write_file(path, text);
}

std::vector<int> read_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<int> labels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream row(line);
    int v;
    if (!(row >> v)) {
      if (row.eof()) continue;
      throw ParseError("expected one integer label", lineno);
    }
    std::string extra;
    if (row >> extra) throw ParseError("trailing text after label", lineno);
    labels.push_back(v);
  }
  return labels;
}

void write_labels(const std::string& path, const std::vector<int>& labels) {
  std::string text;
  for (int v : labels) text += std::to_string(v) + "\n";
  write_file(path, text);
}

std::vector<double> read_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream row(line);
    double v;
    if (!(row >> v)) {
      if (row.eof()) continue;
      throw ParseError("expected one numeric value", lineno);
    }
    std::string extra;
    if (row >> extra) throw ParseError("trailing text after value", lineno);
    values.push_back(v);
  }
  return values;
}

void write_values(const std::string& path, const std::vector<double>& values) {
  std::string text;
  for (double v : values) text += fmt(v) + "\n";
  write_file(path, text);
}

ModelFile read_model_json(const std::string& path) {
  auto j = parse_json(path);
  ModelFile mf;
  try {
    mf.kind = parse_kind(j.at("kind").get<std::string>());
    mf.n = j.value("n", 0);
    mf.seed = j.value("seed", std::uint64_t{0});
    mf.group_sizes = j.value("group_sizes", std::vector<int>{});
    mf.model.K = j.at("K").get<int>();
    mf.model.G = j.at("G").get<int>();
    mf.model.pi = j.at("pi").get<std::vector<double>>();
    mf.model.group_of = j.at("group_of").get<std::vector<int>>();
    mf.model.B = matrix_flat(j.at("B"), "B");
  } catch (const njson::exception& e) {
    throw ParseError(path + ": " + e.what(), 1);
  }
  mf.model.validate();
  return mf;
}

void write_model_json(const std::string& path, const ModelFile& mf) {
  njson j;
  j["kind"] = kind_name(mf.kind);
  j["n"] = mf.n;
  j["seed"] = mf.seed;
  j["group_sizes"] = mf.group_sizes;
  j["K"] = mf.model.K;
  j["G"] = mf.model.G;
  j["pi"] = mf.model.pi;
  j["group_of"] = mf.model.group_of;
  j["B"] = matrix_json(mf.model.B, mf.model.K, mf.model.K);
  write_file(path, j.dump(2) + "\n");
}

ReportFile read_report_json(const std::string& path) {
  auto j = parse_json(path);
  ReportFile rf;
  try {
    rf.n = j.at("n").get<int>();
    rf.model = parse_kind(j.at("model").get<std::string>());
    rf.detector = parse_detector(j.at("detector").get<std::string>());
    rf.seed = j.value("seed", std::uint64_t{0});
    rf.jobs = j.value("jobs", 1);
    auto& rep = rf.report;
    rep.G_hat = j.at("G_hat").get<int>();
    rep.K_total = j.at("K_total").get<int>();
    rep.g_hat.of = j.at("g_hat").get<std::vector<int>>();
    rep.g_hat.M = rep.G_hat;
    rep.c_hat.of = j.at("c_hat").get<std::vector<int>>();
    rep.c_hat.M = rep.K_total;
    for (const auto& gj : j.at("groups")) {
      GroupReport gr;
      gr.nodes = gj.at("nodes").get<std::vector<int>>();
      gr.K_hat = gj.at("K_hat").get<int>();
      gr.local.of = gj.at("labels").get<std::vector<int>>();
      gr.local.M = gr.K_hat;
      gr.scores = gj.value("scores", std::vector<double>{});
      gr.zero_rows = gj.value("zero_rows", 0);
      gr.collapsed = gj.value("collapsed", false);
      gr.selection_ms = gj.value("selection_ms", 0.0);
      gr.detection_ms = gj.value("detection_ms", 0.0);
      rep.groups.push_back(std::move(gr));
    }
    rep.B_hat = matrix_flat(j.at("B_hat"), "B_hat");
    rep.theta_hat = j.value("theta_hat", std::vector<double>{});
    auto t = j.at("timings_ms");
    rep.division_ms = t.value("division", 0.0);
    rep.selection_ms = t.value("selection", 0.0);
    rep.detection_ms = t.value("detection", 0.0);
    rep.combination_ms = t.value("combination", 0.0);
  } catch (const njson::exception& e) {
    throw ParseError(path + ": " + e.what(), 1);
  }
  return rf;
}

void write_report_json(const std::string& path, const ReportFile& rf) {
  const auto& rep = rf.report;
  njson j;
  j["n"] = rf.n;
  j["model"] = kind_name(rf.model);
  j["detector"] = detector_name(rf.detector);
  j["seed"] = rf.seed;
  j["jobs"] = rf.jobs;
  j["G_hat"] = rep.G_hat;
  j["K_total"] = rep.K_total;
  j["g_hat"] = rep.g_hat.of;
  j["c_hat"] = rep.c_hat.of;
  njson groups = njson::array();
  for (const auto& gr : rep.groups) {
    njson gj;
    gj["nodes"] = gr.nodes;
    gj["K_hat"] = gr.K_hat;
    gj["labels"] = gr.local.of;
    gj["scores"] = gr.scores;
    gj["zero_rows"] = gr.zero_rows;
    gj["collapsed"] = gr.collapsed;
    gj["selection_ms"] = gr.selection_ms;
    gj["detection_ms"] = gr.detection_ms;
    groups.push_back(std::move(gj));
  }
  j["groups"] = std::move(groups);
  j["B_hat"] = matrix_json(rep.B_hat, rep.K_total, rep.K_total);
  if (!rep.theta_hat.empty()) j["theta_hat"] = rep.theta_hat;
  j["timings_ms"] = {{"division", rep.division_ms},
                     {"selection", rep.selection_ms},
                     {"detection", rep.detection_ms},
                     {"combination", rep.combination_ms}};
  write_file(path, j.dump(2) + "\n");
}

void write_metrics_json(
    const std::string& path,
    const std::vector<std::pair<std::string, double>>& metrics) {
  njson j;
  for (const auto& [key, value] : metrics) j[key] = value;
  write_file(path, j.dump(2) + "\n");
}

}  // namespace divcom
