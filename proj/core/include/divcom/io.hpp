#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "divcom/block_model.hpp"
#include "divcom/graph.hpp"
#include "divcom/pipeline.hpp"

namespace divcom {

/// Edge list as read from disk: pairs of 0-based endpoints plus the node
/// count, taken from an optional "# n=<count>" directive (any comment line of
/// that form) or max id + 1 when absent.
struct EdgeFile {
  std::vector<std::pair<int, int>> edges;
  int n = 0;
};

/// Text formats. Edge lists are UTF-8, one "i j" pair of 0-based integers per
/// line, '#' starting a comment; label and value files hold one entry per
/// line in node order. Readers throw ParseError with the offending line
/// number, IoError when the file cannot be opened; writers throw IoError.
EdgeFile read_edge_list(const std::string& path);
void write_edge_list(const std::string& path, const Graph& g);

std::vector<int> read_labels(const std::string& path);
void write_labels(const std::string& path, const std::vector<int>& labels);

std::vector<double> read_values(const std::string& path);
void write_values(const std::string& path, const std::vector<double>& values);

/// Generator settings bundle stored as JSON next to a sampled network.
struct ModelFile {
  ModelKind kind = ModelKind::sbm;
  BlockModel model;
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<int> group_sizes;
};

ModelFile read_model_json(const std::string& path);
void write_model_json(const std::string& path, const ModelFile& mf);

/// Detection report bundled with the run configuration that produced it.
struct ReportFile {
  int n = 0;
  ModelKind model = ModelKind::sbm;
  DetectorKind detector = DetectorKind::ssp;
  std::uint64_t seed = 0;
  int jobs = 1;
  DetectionReport report;
};

ReportFile read_report_json(const std::string& path);
void write_report_json(const std::string& path, const ReportFile& rf);

/// Flat metrics object written in the given key order.
void write_metrics_json(
    const std::string& path,
    const std::vector<std::pair<std::string, double>>& metrics);

}  // namespace divcom
