#pragma once

// File formats.
//
// Edge list: one edge per line, "src dst weight", whitespace- or
// comma-separated (one delimiter per file). Endpoints are labels, indexed in
// order of first appearance. Weights are positive reals. An optional header
// line is allowed as the first non-directive line. Directive lines:
//   #directed | #undirected     (default directed)
//   #vertices l0 l1 ...         pre-registers labels, in order (keeps isolated
//                               vertices and the index order on round trips)
// Any other line starting with '#' is a comment.
//
// Flow matrix: CSV whose first row is a blank cell followed by N labels, then
// N rows of label + N nonnegative reals; cell (i, j) is the flow i -> j.
// Double-quoted fields are supported. Empty cells read as 0.
//
// Temporal directory: flow matrices named <year>.csv, at least two.
//
// Label set: one label per line. Label pairs: "a<TAB>b" per line.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cyclerank/analysis.hpp"
#include "cyclerank/graph.hpp"
#include "cyclerank/subgraph_enum.hpp"
#include "cyclerank/walk_oracle.hpp"

namespace cyclerank::io {

inline constexpr const char* kSchemaVersion = "cyclerank/1";

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

WeightedDigraph parse_edge_list(std::string_view text);
WeightedDigraph load_edge_list(const std::filesystem::path& path);
std::string format_edge_list(const WeightedDigraph& g);

WeightedDigraph parse_flow_matrix(std::string_view text);
WeightedDigraph load_flow_matrix(const std::filesystem::path& path);
std::string format_flow_matrix(const WeightedDigraph& g);

// Flow matrix when the first cell of the first line is blank, edge list otherwise.
WeightedDigraph load_graph(const std::filesystem::path& path);

TemporalDataset load_temporal(const std::filesystem::path& dir);

VertexSet parse_label_set(const WeightedDigraph& g, std::string_view text);
VertexSet load_label_set(const WeightedDigraph& g, const std::filesystem::path& path);
std::vector<VertexPair> parse_label_pairs(const WeightedDigraph& g, std::string_view text);
std::vector<VertexPair> load_label_pairs(const WeightedDigraph& g, const std::filesystem::path& path);

// Comma-separated labels, e.g. a command-line subject list.
VertexSet resolve_labels(const WeightedDigraph& g, std::string_view comma_separated);

// 17 significant digits; round-trips every double.
std::string format_number(double x);
std::string csv_field(std::string_view s);
std::vector<std::string> split_csv_line(std::string_view line);

// CSV: rank,v1..vk,score,method
std::string format_ranking_csv(const WeightedDigraph& g, const RankedSupports& ranked, std::string_view method);
// CSV: year,lambda,subject,reference_mean,reference_std,reference_count
std::string format_track_csv(const TemporalTrack& track);
// CSV: fpr,tpr
std::string format_roc_csv(const RocCurve& roc);

nlohmann::json ranking_json(const WeightedDigraph& g, const SupportFamily& family, const RankedSupports& ranked,
                            const BoundScorer& scorer);
nlohmann::json track_json(const TemporalTrack& track);
nlohmann::json roc_json(const RocCurve& roc, std::string_view model, std::string_view method);
nlohmann::json oracle_json(const WeightedDigraph& g, const VertexSet& subject, const OracleReport& report,
                           const RatioTrace* trace);
nlohmann::json spectrum_json(const WeightedDigraph& g);

}  // namespace cyclerank::io
