#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "divcom/dendrogram.hpp"
#include "divcom/errors.hpp"
#include "divcom/evaluation.hpp"
#include "divcom/generators.hpp"
#include "divcom/graph.hpp"
#include "divcom/io.hpp"
#include "divcom/model_selection.hpp"
#include "divcom/modularity.hpp"
#include "divcom/pipeline.hpp"
#include "divcom/rng.hpp"

namespace {

using namespace divcom;

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

// Shortest decimal text that round-trips the double.
std::string fmt(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return {buf, p};
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(what) + ": bad entry '" + item +
                                  "' in '" + text + "'");
    }
  }
  if (out.empty())
    throw std::invalid_argument(std::string(what) + ": empty list");
  return out;
}

ModelKind parse_model(const std::string& s) {
  return s == "dcsbm" ? ModelKind::dcsbm : ModelKind::sbm;
}

DetectorKind parse_detector_flag(const std::string& s, ModelKind model) {
  if (s.empty()) return default_detector(model);
  if (s == "ssp") return DetectorKind::ssp;
  if (s == "score") return DetectorKind::score;
  return DetectorKind::vsbm;
}

const char* detector_label(DetectorKind d) {
  switch (d) {
    case DetectorKind::ssp: return "ssp";
    case DetectorKind::score: return "score";
    case DetectorKind::vsbm: return "vsbm";
  }
  return "ssp";
}

/// Flags shared by every command that runs the pipeline.
struct PipelineFlags {
  std::string model = "sbm";
  std::string detector;  ///< empty = follow the model
  int groups = 0;        ///< fixed group count; 0 = use group-mode
  std::string group_mode = "threshold";
  double delta = 0.01;
  int kmax = 10;
  double lambda = 0.25;
  std::uint64_t seed = 0;
  int jobs = 1;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--model", model, "Block model kind")
        ->check(CLI::IsMember({"sbm", "dcsbm"}))
        ->capture_default_str();
    cmd->add_option("--detector", detector,
                    "Per-group detector (default: ssp for sbm, score for dcsbm)")
        ->check(CLI::IsMember({"ssp", "score", "vsbm"}));
    auto* g = cmd->add_option("--groups", groups,
                              "Fixed number of groups for the division");
    auto* gm = cmd->add_option("--group-mode,--mode", group_mode,
                               "Dendrogram cut rule")
                   ->check(CLI::IsMember({"max", "threshold"}))
                   ->capture_default_str();
    auto* gd = cmd->add_option("--delta", delta,
                               "Threshold mode: minimum accepted modularity gain")
                   ->capture_default_str();
    g->excludes(gm)->excludes(gd);
    cmd->add_option("--kmax", kmax, "Community-count cap per group")
        ->capture_default_str();
    cmd->add_option("--lambda", lambda, "Model-selection penalty factor")
        ->capture_default_str();
    cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    cmd->add_option("--jobs", jobs, "Worker threads for the per-group phase")
        ->capture_default_str();
  }

  PipelineConfig config() const {
    PipelineConfig cfg;
    cfg.model = parse_model(model);
    cfg.detector = parse_detector_flag(detector, cfg.model);
    if (groups > 0) {
      cfg.group.mode = GroupSelect::Mode::fixed;
      cfg.group.G = groups;
    } else if (group_mode == "max") {
      cfg.group.mode = GroupSelect::Mode::max;
    } else {
      cfg.group.mode = GroupSelect::Mode::threshold;
      cfg.group.delta = delta;
    }
    cfg.K_max = kmax;
    cfg.lambda = lambda;
    cfg.seed = seed;
    cfg.jobs = jobs;
    return cfg;
  }
};

// ---------------------------------------------------------------------------

struct GenArgs {
  std::string design;
  int n = 1200;
  std::string group_sizes = "2,3,3,4";
  std::uint64_t seed = 0;
  std::string out = "sample";
};

int cmd_gen(const GenArgs& a) {
  auto kind = a.design == "grouped-dcsbm" ? ModelKind::dcsbm : ModelKind::sbm;
  auto sizes = parse_int_list(a.group_sizes, "--group-sizes");
  for (int s : sizes)
    if (s < 1)
      throw std::invalid_argument("--group-sizes: entries must be positive");
  auto s = sample_grouped_design(kind, a.n, sizes, a.seed);
  write_edge_list(a.out + ".edges", s.graph);
  write_labels(a.out + ".labels", s.communities.of);
  ModelFile mf;
  mf.kind = kind;
  mf.model = s.model;
  mf.n = a.n;
  mf.seed = a.seed;
  mf.group_sizes = sizes;
  write_model_json(a.out + ".model.json", mf);
  std::cout << a.out << ".edges\n" << a.out << ".labels\n"
            << a.out << ".model.json\n";
  if (kind == ModelKind::dcsbm) {
    write_values(a.out + ".theta", s.theta);
    std::cout << a.out << ".theta\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct DetectArgs {
  std::string edges;
  std::string out = "report.json";
  PipelineFlags pf;
};

int cmd_detect(const DetectArgs& a) {
  auto ef = read_edge_list(a.edges);
  auto g = build_graph(ef.edges, ef.n);
  auto cfg = a.pf.config();
  auto rep = run_pipeline(g, cfg);
  ReportFile rf;
  rf.n = g.n;
  rf.model = cfg.model;
  rf.detector = cfg.detector;
  rf.seed = cfg.seed;
  rf.jobs = cfg.jobs;
  rf.report = std::move(rep);
  write_report_json(a.out, rf);
  std::cout << "G_hat=" << rf.report.G_hat << " K_total=" << rf.report.K_total
            << " n=" << g.n << " edges=" << g.total_degree / 2 << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct EvalArgs {
  std::string report;
  std::string labels;
  std::string model_json;
  std::string edges;
  double mask = -1.0;
  std::string out = "metrics.json";
  PipelineFlags pf;
};

int cmd_eval(const EvalArgs& a) {
  std::vector<std::pair<std::string, double>> metrics;
  if (a.mask >= 0.0) {
    if (a.edges.empty())
      throw std::invalid_argument(
          "masked evaluation needs --edges <file> together with --mask");
    auto ef = read_edge_list(a.edges);
    auto g = build_graph(ef.edges, ef.n);
    auto ev = masked_link_eval(g, a.pf.config(), a.mask, a.pf.seed);
    metrics.emplace_back("auc", ev.auc);
    metrics.emplace_back("mask_proportion", a.mask);
    metrics.emplace_back("masked_pairs", static_cast<double>(ev.mask.pairs.size()));
  } else {
    if (a.report.empty() || a.labels.empty())
      throw std::invalid_argument(
          "evaluation needs --report <report.json> and --labels <file> "
          "(optionally --model-json <file> for G-NMI), or --edges with --mask");
    auto rf = read_report_json(a.report);
    auto truth_raw = read_labels(a.labels);
    if (static_cast<int>(truth_raw.size()) != rf.n)
      throw std::invalid_argument(
          "label file has " + std::to_string(truth_raw.size()) +
          " entries but the report covers n=" + std::to_string(rf.n));
    auto truth = compact_labels(truth_raw);
    metrics.emplace_back("nmi", nmi(truth, rf.report.c_hat));
    if (!a.model_json.empty()) {
      auto mf = read_model_json(a.model_json);
      std::vector<int> graw(truth_raw.size());
      for (std::size_t i = 0; i < truth_raw.size(); ++i) {
        int c = truth_raw[i];
        if (c < 1 || c > mf.model.K)
          throw std::invalid_argument(
              "label " + std::to_string(c) +
              " outside the model's 1.." + std::to_string(mf.model.K));
        graw[i] = mf.model.group_of[c - 1];
      }
      metrics.emplace_back("g_nmi", g_nmi(compact_labels(graw), rf.report.g_hat));
    }
  }
  write_metrics_json(a.out, metrics);
  std::ostringstream line;
  for (std::size_t i = 0; i < metrics.size(); ++i)
    line << (i ? " " : "") << metrics[i].first << "=" << fmt(metrics[i].second);
  std::cout << line.str() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
  std::string design;
  std::string n_list;
  int reps = 3;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out = "bench.csv";
};

struct BenchDesign {
  ModelKind kind;
  std::vector<int> group_sizes;
  std::vector<int> default_n;
  std::vector<std::string> methods;
};

BenchDesign bench_design(const std::string& name) {
  if (name == "sbm-large")
    return {ModelKind::sbm, std::vector<int>(10, 5), {5000}, {"D-SSP"}};
  if (name == "sbm-sweep")
    return {ModelKind::sbm, {2, 3, 3, 4}, {400, 800, 1600}, {"D-SSP", "FG"}};
  return {ModelKind::dcsbm, {2, 3, 3, 4}, {400, 800, 1600}, {"D-SCORE", "FG"}};
}

struct Replicate {
  double nmi_v = 0.0, gnmi_v = 0.0, time_ms = 0.0;
};

Replicate bench_replicate(const std::string& method, const BenchDesign& d,
                          int n, int jobs, std::uint64_t rep_seed) {
  auto s = sample_grouped_design(d.kind, n, d.group_sizes, rep_seed);
  Replicate r;
  auto t0 = std::chrono::steady_clock::now();
  Labeling c_hat, g_hat;
  if (method == "FG") {
    auto dendro = fast_greedy(s.graph, ModKind::dc);
    auto [G, labels] = select_group_count(dendro, {});
    (void)G;
    c_hat = labels;
    g_hat = labels;
  } else {
    PipelineConfig cfg;
    cfg.model = d.kind;
    cfg.detector = default_detector(d.kind);
    cfg.group.mode = GroupSelect::Mode::threshold;
    cfg.seed = split_seed(rep_seed, 1);
    cfg.jobs = jobs;
    auto rep = run_pipeline(s.graph, cfg);
    c_hat = rep.c_hat;
    g_hat = rep.g_hat;
  }
  r.time_ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  r.nmi_v = nmi(s.communities, c_hat);
  r.gnmi_v = g_nmi(s.groups, g_hat);
  return r;
}

int cmd_bench(const BenchArgs& a) {
  if (a.reps < 1) throw std::invalid_argument("--reps must be >= 1");
  auto d = bench_design(a.design);
  auto ns = a.n_list.empty() ? d.default_n : parse_int_list(a.n_list, "--n-list");
  int K = 0, G = static_cast<int>(d.group_sizes.size());
  for (int s : d.group_sizes) K += s;

  std::string table = "n,G,K,method,nmi_mean,nmi_sd,time_mean_ms,gnmi_mean\n";
  std::string series = "n,method,rep,nmi,gnmi,time_ms\n";
  for (int n : ns) {
    for (const auto& method : d.methods) {
      std::vector<Replicate> rs;
      for (int rep = 0; rep < a.reps; ++rep) {
        auto rep_seed = split_seed(split_seed(a.seed, static_cast<std::uint64_t>(n)),
                                   static_cast<std::uint64_t>(rep));
        rs.push_back(bench_replicate(method, d, n, a.jobs, rep_seed));
        series += std::to_string(n) + "," + method + "," + std::to_string(rep) +
                  "," + fmt(rs.back().nmi_v) + "," + fmt(rs.back().gnmi_v) +
                  "," + fmt(rs.back().time_ms) + "\n";
      }
      double mean = 0, gmean = 0, tmean = 0;
      for (const auto& r : rs) {
        mean += r.nmi_v;
        gmean += r.gnmi_v;
        tmean += r.time_ms;
      }
      mean /= a.reps;
      gmean /= a.reps;
      tmean /= a.reps;
      double var = 0;
      for (const auto& r : rs) var += (r.nmi_v - mean) * (r.nmi_v - mean);
      double sd = a.reps > 1 ? std::sqrt(var / (a.reps - 1)) : 0.0;
      table += std::to_string(n) + "," + std::to_string(G) + "," +
               std::to_string(K) + "," + method + "," + fmt(mean) + "," +
               fmt(sd) + "," + fmt(tmean) + "," + fmt(gmean) + "\n";
      std::cout << a.design << " n=" << n << " " << method
                << " nmi_mean=" << fmt(mean) << " gnmi_mean=" << fmt(gmean)
                << "\n";
    }
  }
  std::ofstream tf(a.out, std::ios::binary);
  if (!tf) throw IoError("cannot write " + a.out);
  tf << table;
  auto dot = a.out.rfind('.');
  auto series_path =
      (dot == std::string::npos ? a.out : a.out.substr(0, dot)) + ".reps.csv";
  std::ofstream sf(series_path, std::ios::binary);
  if (!sf) throw IoError("cannot write " + series_path);
  sf << series;
  std::cout << a.out << "\n" << series_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Divide-and-conquer community detection for grouped networks"};
  app.require_subcommand(1);

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "Sample a network from the simulation design");
  gen->add_option("--design", ga.design, "Generation design")
      ->required()
      ->check(CLI::IsMember({"grouped-sbm", "grouped-dcsbm"}));
  gen->add_option("--n", ga.n, "Number of nodes")->capture_default_str();
  gen->add_option("--group-sizes", ga.group_sizes,
                  "Communities per group, comma-separated")
      ->capture_default_str();
  gen->add_option("--seed", ga.seed, "Random seed")->capture_default_str();
  gen->add_option("--out", ga.out, "Output path prefix")->capture_default_str();

  DetectArgs da;
  auto* detect = app.add_subcommand("detect", "Run detection on an edge list");
  detect->add_option("--edges", da.edges, "Edge-list file")->required();
  detect->add_option("--out", da.out, "Report output path")->capture_default_str();
  da.pf.add_to(detect);

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Score a report against the truth, "
                                          "or run masked link prediction");
  eval->add_option("--report", ea.report, "Detection report to score");
  eval->add_option("--labels", ea.labels, "True community labels");
  eval->add_option("--model-json", ea.model_json,
                   "Model file (enables G-NMI via its community->group map)");
  eval->add_option("--edges", ea.edges, "Edge list for masked evaluation");
  eval->add_option("--mask", ea.mask, "Hidden-pair proportion in (0,1)");
  eval->add_option("--out", ea.out, "Metrics output path")->capture_default_str();
  ea.pf.add_to(eval);

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Run a simulation grid, emit CSV");
  bench->add_option("--design", ba.design, "Experiment grid")
      ->required()
      ->check(CLI::IsMember({"sbm-large", "sbm-sweep", "dcsbm-sweep"}));
  bench->add_option("--n-list", ba.n_list, "Comma-separated node counts");
  bench->add_option("--reps", ba.reps, "Replicates per cell")->capture_default_str();
  bench->add_option("--seed", ba.seed, "Random seed")->capture_default_str();
  bench->add_option("--jobs", ba.jobs, "Pipeline worker threads")
      ->capture_default_str();
  bench->add_option("--out", ba.out, "CSV output path")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "DIVCOM_USAGE: " << one_line(e.what()) << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(gen)) return cmd_gen(ga);
    if (app.got_subcommand(detect)) return cmd_detect(da);
    if (app.got_subcommand(eval)) return cmd_eval(ea);
    return cmd_bench(ba);
  } catch (const divcom::ParseError& e) {
    std::cerr << "DIVCOM_PARSE: " << one_line(e.what()) << "\n";
    return 3;
  } catch (const divcom::NumericError& e) {
    std::cerr << "DIVCOM_NUMERIC: " << one_line(e.what()) << "\n";
    return 4;
  } catch (const divcom::IoError& e) {
    std::cerr << "DIVCOM_IO: " << one_line(e.what()) << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "DIVCOM_USAGE: " << one_line(e.what()) << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "DIVCOM_INTERNAL: " << one_line(e.what()) << "\n";
    return 1;
  }
}
