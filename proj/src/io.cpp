#include "cyclerank/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "cyclerank/centrality.hpp"
#include "cyclerank/error.hpp"
#include "cyclerank/spectral.hpp"

namespace cyclerank::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  for (auto& l : lines) {
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
  }
  return lines;
}

std::vector<std::string_view> split_whitespace(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string_view> split_on(std::string_view s, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto end = s.find(delim, start);
    out.push_back(trim(s.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

struct LabelIndex {
  std::vector<std::string> labels;
  std::unordered_map<std::string, Vertex> index;

  Vertex intern(std::string_view label) {
    auto [it, inserted] = index.try_emplace(std::string(label), static_cast<Vertex>(labels.size()));
    if (inserted) labels.emplace_back(label);
    return it->second;
  }
};

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

WeightedDigraph parse_edge_list(std::string_view text) {
  enum class Delim { Unknown, Comma, Space };
  Delim delim = Delim::Unknown;
  std::optional<bool> directed;
  bool seen_data = false;
  LabelIndex labels;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_line;
  std::map<VertexPair, std::size_t> first_line;

  const auto lines = split_lines(text);
  for (std::size_t ln = 1; ln <= lines.size(); ++ln) {
    const std::string_view line = trim(lines[ln - 1]);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto words = split_whitespace(line);
      if (words[0] == "#directed" || words[0] == "#undirected") {
        const bool d = words[0] == "#directed";
        if (directed && *directed != d) parse_error(ln, "conflicting #directed/#undirected directives");
        directed = d;
      } else if (words[0] == "#vertices") {
        for (std::size_t i = 1; i < words.size(); ++i) labels.intern(words[i]);
      }
      continue;
    }

    const bool has_comma = line.find(',') != std::string_view::npos;
    if (delim == Delim::Unknown) delim = has_comma ? Delim::Comma : Delim::Space;
    if ((delim == Delim::Comma) != has_comma) parse_error(ln, "mixed delimiters");
    const auto tokens = delim == Delim::Comma ? split_on(line, ',') : split_whitespace(line);

    const bool first = !seen_data;
    seen_data = true;
    double weight = 0.0;
    const bool numeric = tokens.size() == 3 && parse_double(tokens[2], weight);
    if (first && !numeric) continue;  // header
    if (tokens.size() != 3) parse_error(ln, "expected 3 fields, found " + std::to_string(tokens.size()));
    if (tokens[0].empty() || tokens[1].empty()) parse_error(ln, "empty endpoint label");
    if (!numeric || !std::isfinite(weight)) parse_error(ln, "weight is not a number");
    if (weight < 0.0) {
      throw Error(ErrorCode::NegativeWeight, "line " + std::to_string(ln) + ": weight " + std::string(tokens[2]));
    }
    if (weight == 0.0) parse_error(ln, "weight must be positive");

    const Vertex src = labels.intern(tokens[0]);
    const Vertex dst = labels.intern(tokens[1]);
    edges.push_back({src, dst, weight});
    edge_line.push_back(ln);
  }

  const bool is_directed = directed.value_or(true);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    const VertexPair key = is_directed ? VertexPair{e.src, e.dst} : VertexPair(std::minmax(e.src, e.dst));
    const auto [it, fresh] = first_line.emplace(key, edge_line[i]);
    if (!fresh) {
      throw Error(ErrorCode::DuplicateEdge, "line " + std::to_string(edge_line[i]) + ": edge " +
                                                labels.labels[e.src] + " " + labels.labels[e.dst] +
                                                " already given on line " + std::to_string(it->second));
    }
  }
  const std::size_t n = labels.labels.size();
  return build_graph(n, edges, is_directed, std::move(labels.labels));
}

WeightedDigraph load_edge_list(const std::filesystem::path& path) { return parse_edge_list(read_file(path)); }

std::string format_edge_list(const WeightedDigraph& g) {
  std::string out = g.directed() ? "#directed\n" : "#undirected\n";
  out += "#vertices";
  for (Vertex i = 0; i < g.size(); ++i) {
    const std::string l = g.label(i);
    if (l.empty() || l.find_first_of(" \t,\r\n") != std::string::npos || l.front() == '#') {
      throw Error(ErrorCode::InvalidArgument, "label '" + l + "' cannot be written to an edge list");
    }
    out += ' ';
    out += l;
  }
  out += "\nsrc dst weight\n";
  for (Vertex i = 0; i < g.size(); ++i) {
    for (Vertex j = g.directed() ? 0 : i; j < g.size(); ++j) {
      const double w = g.weight(i, j);
      if (w == 0.0) continue;
      out += g.label(i) + ' ' + g.label(j) + ' ' + format_number(w) + '\n';
    }
  }
  return out;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::string(trim(cell)));
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(std::string(trim(cell)));
  return cells;
}

WeightedDigraph parse_flow_matrix(std::string_view text) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  const auto lines = split_lines(text);
  for (std::size_t ln = 1; ln <= lines.size(); ++ln) {
    if (trim(lines[ln - 1]).empty()) continue;
    rows.emplace_back(ln, split_csv_line(lines[ln - 1]));
  }
  if (rows.empty()) throw Error(ErrorCode::ParseError, "empty flow matrix");
  const auto& header = rows.front().second;
  if (header.size() < 2 || !header.front().empty()) {
    parse_error(rows.front().first, "first row must be a blank cell followed by the sector labels");
  }
  std::vector<std::string> labels(header.begin() + 1, header.end());
  const std::size_t n = labels.size();
  if (rows.size() - 1 != n) {
    throw Error(ErrorCode::NonSquareMatrix,
                std::to_string(n) + " column labels but " + std::to_string(rows.size() - 1) + " rows");
  }
  Matrix w(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [ln, cells] = rows[i + 1];
    if (cells.size() != n + 1) {
      throw Error(ErrorCode::NonSquareMatrix, "line " + std::to_string(ln) + ": expected " +
                                                  std::to_string(n + 1) + " cells, found " +
                                                  std::to_string(cells.size()));
    }
    if (cells[0] != labels[i]) {
      throw Error(ErrorCode::InconsistentLabels, "line " + std::to_string(ln) + ": row label '" + cells[0] +
                                                     "' does not match column label '" + labels[i] + "'");
    }
    for (std::size_t j = 0; j < n; ++j) {
      double v = 0.0;
      if (!cells[j + 1].empty() && !parse_double(cells[j + 1], v)) {
        parse_error(ln, "cell '" + cells[j + 1] + "' is not a number");
      }
      if (!std::isfinite(v)) parse_error(ln, "non-finite flow");
      if (v < 0.0) {
        throw Error(ErrorCode::NegativeWeight, "line " + std::to_string(ln) + ": flow " + cells[j + 1]);
      }
      w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
  return WeightedDigraph(std::move(w), true, std::move(labels));
}

WeightedDigraph load_flow_matrix(const std::filesystem::path& path) { return parse_flow_matrix(read_file(path)); }

std::string format_flow_matrix(const WeightedDigraph& g) {
  std::string out;
  for (Vertex j = 0; j < g.size(); ++j) out += ',' + csv_field(g.label(j));
  out += '\n';
  for (Vertex i = 0; i < g.size(); ++i) {
    out += csv_field(g.label(i));
    for (Vertex j = 0; j < g.size(); ++j) out += ',' + format_number(g.weight(i, j));
    out += '\n';
  }
  return out;
}

WeightedDigraph load_graph(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  for (std::string_view line : split_lines(text)) {
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() >= 2 && cells.front().empty()) return parse_flow_matrix(text);
    break;
  }
  return parse_edge_list(text);
}

TemporalDataset load_temporal(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::IoError, dir.string() + " is not a directory");
  std::vector<std::pair<int, fs::path>> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".csv") continue;
    const std::string stem = entry.path().stem().string();
    int year = 0;
    const auto res = std::from_chars(stem.data(), stem.data() + stem.size(), year);
    if (stem.empty() || res.ec != std::errc() || res.ptr != stem.data() + stem.size()) continue;
    files.emplace_back(year, entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.size() < 2) {
    throw Error(ErrorCode::TooFewYears, dir.string() + " holds " + std::to_string(files.size()) +
                                            " yearly matrices; at least 2 are required");
  }
  TemporalDataset ds;
  for (const auto& [year, path] : files) {
    WeightedDigraph g = load_flow_matrix(path);
    if (!ds.graphs.empty() && g.labels() != ds.graphs.front().labels()) {
      throw Error(ErrorCode::LabelMismatchAcrossYears,
                  path.filename().string() + " does not list the sectors of " + files.front().second.filename().string() +
                      " in the same order");
    }
    ds.years.push_back(year);
    ds.graphs.push_back(std::move(g));
  }
  return ds;
}

namespace {

Vertex resolve(const WeightedDigraph& g, std::string_view label, std::size_t line) {
  const auto v = g.find_label(label);
  if (!v) {
    throw Error(ErrorCode::UnresolvedLabel,
                (line ? "line " + std::to_string(line) + ": " : std::string()) + "unknown label '" +
                    std::string(label) + "'");
  }
  return *v;
}

}  // namespace

VertexSet parse_label_set(const WeightedDigraph& g, std::string_view text) {
  std::vector<Vertex> members;
  const auto lines = split_lines(text);
  for (std::size_t ln = 1; ln <= lines.size(); ++ln) {
    const auto line = trim(lines[ln - 1]);
    if (line.empty() || line.front() == '#') continue;
    members.push_back(resolve(g, line, ln));
  }
  return VertexSet(std::move(members));
}

VertexSet load_label_set(const WeightedDigraph& g, const std::filesystem::path& path) {
  return parse_label_set(g, read_file(path));
}

std::vector<VertexPair> parse_label_pairs(const WeightedDigraph& g, std::string_view text) {
  std::vector<VertexPair> pairs;
  const auto lines = split_lines(text);
  for (std::size_t ln = 1; ln <= lines.size(); ++ln) {
    const auto line = trim(lines[ln - 1]);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> parts;
    if (line.find('\t') != std::string_view::npos) {
      parts = split_on(line, '\t');
    } else {
      parts = split_whitespace(line);
    }
    if (parts.size() != 2) parse_error(ln, "expected two tab-separated labels");
    const Vertex a = resolve(g, parts[0], ln);
    const Vertex b = resolve(g, parts[1], ln);
    pairs.push_back(std::minmax(a, b));
  }
  return pairs;
}

std::vector<VertexPair> load_label_pairs(const WeightedDigraph& g, const std::filesystem::path& path) {
  return parse_label_pairs(g, read_file(path));
}

VertexSet resolve_labels(const WeightedDigraph& g, std::string_view comma_separated) {
  std::vector<Vertex> members;
  for (std::string_view label : split_on(comma_separated, ',')) {
    if (label.empty()) continue;
    members.push_back(resolve(g, label, 0));
  }
  return VertexSet(std::move(members));
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string format_ranking_csv(const WeightedDigraph& g, const RankedSupports& ranked, std::string_view method) {
  std::string out = "rank";
  for (std::size_t c = 1; c <= ranked.support_size; ++c) out += ",v" + std::to_string(c);
  out += ",score,method\n";
  const std::string m = csv_field(method);
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    out += std::to_string(i + 1);
    for (Vertex v : ranked[i]) out += ',' + csv_field(g.label(v));
    out += ',' + format_number(ranked.scores[i]) + ',' + m + '\n';
  }
  return out;
}

std::string format_track_csv(const TemporalTrack& track) {
  std::string out = "year,lambda,subject,reference_mean,reference_std,reference_count\n";
  for (const TrackRow& r : track.rows) {
    out += std::to_string(r.year) + ',' + format_number(r.lambda) + ',' + format_number(r.subject) + ',' +
           format_number(r.reference_mean) + ',' + format_number(r.reference_std) + ',' +
           std::to_string(r.reference_count) + '\n';
  }
  return out;
}

std::string format_roc_csv(const RocCurve& roc) {
  std::string out = "fpr,tpr\n";
  for (const RocPoint& p : roc.points) out += format_number(p.fpr) + ',' + format_number(p.tpr) + '\n';
  return out;
}

namespace {

nlohmann::json number_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(); }

nlohmann::json graph_json(const WeightedDigraph& g) {
  return {{"vertices", g.size()}, {"directed", g.directed()}, {"diagonal", "kept"}};
}

nlohmann::json labels_of(const WeightedDigraph& g, SupportView s) {
  nlohmann::json out = nlohmann::json::array();
  for (Vertex v : s) out.push_back(g.label(v));
  return out;
}

}  // namespace

nlohmann::json ranking_json(const WeightedDigraph& g, const SupportFamily& family, const RankedSupports& ranked,
                            const BoundScorer& scorer) {
  nlohmann::json j = {{"schema_version", kSchemaVersion},
                      {"command", "rank"},
                      {"graph", graph_json(g)},
                      {"family", family.name()},
                      {"family_size", family.size()},
                      {"rows", ranked.size()},
                      {"method", scorer.method},
                      {"clamp_window", kClampWindow}};
  if (scorer.lambda > 0.0) j["lambda"] = scorer.lambda;
  if (scorer.alpha > 0.0) j["alpha"] = scorer.alpha;
  if (scorer.r > 0.0) j["r"] = scorer.r;
  return j;
}

nlohmann::json track_json(const TemporalTrack& track) {
  nlohmann::json years = nlohmann::json::array();
  for (const TrackRow& r : track.rows) years.push_back({{"year", r.year}, {"lambda", r.lambda}});
  return {{"schema_version", kSchemaVersion},
          {"command", "track"},
          {"subject", track.subject_labels},
          {"reference", track.reference.name()},
          {"subject_time_mean", track.subject_time_mean},
          {"reference_time_mean", track.reference_time_mean},
          {"ratio", number_or_null(track.ratio)},
          {"averaging", "unweighted mean of yearly family means"},
          {"std", "population"},
          {"lambda_per_year", years},
          {"diagonal", "kept"}};
}

nlohmann::json roc_json(const RocCurve& roc, std::string_view model, std::string_view method) {
  return {{"schema_version", kSchemaVersion},
          {"command", "roc"},
          {"model", model},
          {"method", method},
          {"auc", roc.auc},
          {"discrimination", roc.discrimination},
          {"positives", roc.positives},
          {"negatives", roc.negatives},
          {"points", roc.points.size()},
          {"ties", "grouped into diagonal segments"}};
}

nlohmann::json oracle_json(const WeightedDigraph& g, const VertexSet& subject, const OracleReport& report,
                           const RatioTrace* trace) {
  nlohmann::json j = {{"schema_version", kSchemaVersion},
                      {"command", "oracle"},
                      {"subject", labels_of(g, subject.view())},
                      {"pass", report.pass},
                      {"target", report.target},
                      {"cesaro_mean", report.cesaro_mean},
                      {"abs_error", report.abs_error},
                      {"tol", report.tol},
                      {"K", report.order},
                      {"window", report.window},
                      {"defined_ratios", report.defined_count},
                      {"spectral_ratio", report.spectral_ratio},
                      {"fitted_rate", report.fitted_rate},
                      {"rate_ok", report.rate_ok}};
  if (trace) {
    nlohmann::json ratios = nlohmann::json::array();
    for (std::size_t i = 0; i < trace->ratios.size(); ++i) {
      ratios.push_back({{"k", trace->defined_k[i]}, {"ratio", trace->ratios[i]}});
    }
    j["ratios"] = std::move(ratios);
  }
  return j;
}

nlohmann::json spectrum_json(const WeightedDigraph& g) {
  const SpectralSummary s = spectral_summary(g);
  auto spectrum = s.full_spectrum;
  sort_by_dominance(spectrum);
  nlohmann::json eig = nlohmann::json::array();
  for (Vertex i = 0; i < g.size(); ++i) eig.push_back({{"label", g.label(i)}, {"value", s.dominant_vector(i)}});
  nlohmann::json values = nlohmann::json::array();
  for (const Complex& z : spectrum) values.push_back({{"re", z.real()}, {"im", z.imag()}});
  nlohmann::json j = {{"schema_version", kSchemaVersion},
                      {"command", "spectrum"},
                      {"graph", graph_json(g)},
                      {"lambda", s.lambda},
                      {"eta", s.eta ? nlohmann::json(*s.eta) : nlohmann::json()},
                      {"eigenvector_centrality", eig},
                      {"spectrum", values}};
  if (!s.eta) j["eta_note"] = "dominant eigenvalue is not simple";
  return j;
}

}  // namespace cyclerank::io
