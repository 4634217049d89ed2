#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>

#include "cyclerank/error.hpp"
#include "cyclerank/io.hpp"
#include "support.hpp"

using namespace cyclerank;
using namespace testing;
namespace fs = std::filesystem;

namespace {

Error error_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an error");
  return Error(ErrorCode::InvalidArgument, "");
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("cyclerank_io_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

const char* kFlow3 =
    ",x,y,z\n"
    "x,0,1,2\n"
    "y,1,0,0\n"
    "z,0.5,,3\n";

}  // namespace

TEST_CASE("edge lists") {
  const auto d = io::parse_edge_list("#directed\na b 1\nb c 1\nc a 1\n");
  CHECK(d.directed());
  CHECK(d.labels() == std::vector<std::string>{"a", "b", "c"});
  CHECK(d.weights() == cycle(3, true).weights());

  const auto u = io::parse_edge_list("#undirected\na b 1\nb c 1\nc a 1\n");
  CHECK_FALSE(u.directed());
  CHECK(u.weights() == k3().weights());

  SUBCASE("commas, header and comments") {
    const auto g = io::parse_edge_list("src,dst,weight\n# note\na,b,2.5\n\nb,a,0.25\n");
    CHECK(g.weight(0, 1) == 2.5);
    CHECK(g.weight(1, 0) == 0.25);
  }
  SUBCASE("vertices directive keeps isolated vertices") {
    const auto g = io::parse_edge_list("#vertices q a b\na b 1\n");
    CHECK(g.size() == 3);
    CHECK(g.label(0) == "q");
  }
  SUBCASE("errors") {
    const auto neg = error_of([] { io::parse_edge_list("a b -2\n"); });
    CHECK(neg.code() == ErrorCode::NegativeWeight);
    CHECK(std::string(neg.what()).find("line 1") != std::string::npos);

    CHECK(error_of([] { io::parse_edge_list("a b 1\nb c\n"); }).code() == ErrorCode::ParseError);
    CHECK(error_of([] { io::parse_edge_list("a b 0\n"); }).code() == ErrorCode::ParseError);
    // A lone row with a non-numeric weight reads as a header.
    CHECK(io::parse_edge_list("from to weight\n").size() == 0);
    CHECK(error_of([] { io::parse_edge_list("a b 1\nb c x\n"); }).code() == ErrorCode::ParseError);
    CHECK(error_of([] { io::parse_edge_list("a b 1\nb,c,1\n"); }).code() == ErrorCode::ParseError);

    const auto dup = error_of([] { io::parse_edge_list("#undirected\na b 1\nc d 1\nb a 1\n"); });
    CHECK(dup.code() == ErrorCode::DuplicateEdge);
    CHECK(std::string(dup.what()).find("line 4") != std::string::npos);
    CHECK(std::string(dup.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("edge list round trip") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const bool directed = trial % 2 == 0;
    const auto base = random_graph(rng, {.n = 1 + static_cast<std::size_t>(trial % 12), .directed = directed,
                                         .density = 0.3, .self_loops = trial % 3 == 0});
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < base.size(); ++i) labels.push_back("v" + std::to_string((i * 7) % 13) + "_" + std::to_string(i));
    const WeightedDigraph g(base.weights(), directed, labels);
    const auto back = io::parse_edge_list(io::format_edge_list(g));
    CHECK(back.directed() == directed);
    CHECK(back.labels() == g.labels());
    CHECK(back.weights() == g.weights());

    const auto flow = io::parse_flow_matrix(io::format_flow_matrix(g));
    CHECK(flow.labels() == g.labels());
    CHECK(flow.weights() == g.weights());
  }
}

TEST_CASE("flow matrices") {
  const auto g = io::parse_flow_matrix(kFlow3);
  CHECK(g.directed());
  CHECK(g.labels() == std::vector<std::string>{"x", "y", "z"});
  CHECK(g.weight(0, 2) == 2.0);
  CHECK(g.weight(2, 1) == 0.0);
  CHECK(g.weight(2, 2) == 3.0);  // diagonal kept

  const auto quoted = io::parse_flow_matrix(",\"a,1\",b\n\"a,1\",0,1\nb,1,0\n");
  CHECK(quoted.label(0) == "a,1");

  CHECK(error_of([] { io::parse_flow_matrix(",x,y\nx,0,1\n"); }).code() == ErrorCode::NonSquareMatrix);
  CHECK(error_of([] { io::parse_flow_matrix(",x,y\nx,0,1\ny,1\n"); }).code() == ErrorCode::NonSquareMatrix);
  CHECK(error_of([] { io::parse_flow_matrix(",x,y\ny,0,1\nx,1,0\n"); }).code() == ErrorCode::InconsistentLabels);
  CHECK(error_of([] { io::parse_flow_matrix(",x,y\nx,0,-1\ny,1,0\n"); }).code() == ErrorCode::NegativeWeight);

  TempDir dir;
  io::write_file(dir.path / "m.csv", kFlow3);
  io::write_file(dir.path / "e.txt", "a b 1\n");
  CHECK(io::load_graph(dir.path / "m.csv").size() == 3);
  CHECK(io::load_graph(dir.path / "e.txt").size() == 2);
  CHECK(error_of([&] { io::load_graph(dir.path / "missing"); }).code() == ErrorCode::IoError);
}

TEST_CASE("temporal directories") {
  SUBCASE("two identical years") {
    TempDir dir;
    io::write_file(dir.path / "2001.csv", kFlow3);
    io::write_file(dir.path / "2000.csv", kFlow3);
    io::write_file(dir.path / "notes.txt", "ignored");
    const auto ds = io::load_temporal(dir.path);
    CHECK(ds.years == std::vector<int>{2000, 2001});
    CHECK(ds.graphs[0].weights() == ds.graphs[1].weights());
  }
  SUBCASE("permuted labels") {
    TempDir dir;
    io::write_file(dir.path / "2000.csv", kFlow3);
    io::write_file(dir.path / "2001.csv", ",y,x,z\ny,0,1,0\nx,1,0,2\nz,0,0.5,3\n");
    CHECK(error_of([&] { io::load_temporal(dir.path); }).code() == ErrorCode::LabelMismatchAcrossYears);
  }
  SUBCASE("single year") {
    TempDir dir;
    io::write_file(dir.path / "2000.csv", kFlow3);
    CHECK(error_of([&] { io::load_temporal(dir.path); }).code() == ErrorCode::TooFewYears);
  }
}

TEST_CASE("label files") {
  const auto g = io::parse_flow_matrix(kFlow3);
  CHECK(io::parse_label_set(g, "z\nx\n\n").members() == std::vector<Vertex>{0, 2});
  const auto bad = error_of([&] { io::parse_label_set(g, "x\nw\n"); });
  CHECK(bad.code() == ErrorCode::UnresolvedLabel);
  CHECK(std::string(bad.what()).find("line 2") != std::string::npos);

  const auto pairs = io::parse_label_pairs(g, "z\tx\nx y\n");
  CHECK(pairs == std::vector<VertexPair>{{0, 2}, {0, 1}});
  CHECK(error_of([&] { io::parse_label_pairs(g, "x\n"); }).code() == ErrorCode::ParseError);

  CHECK(io::resolve_labels(g, "y,x").members() == std::vector<Vertex>{0, 1});
  CHECK(error_of([&] { io::resolve_labels(g, "y,q"); }).code() == ErrorCode::UnresolvedLabel);
}

TEST_CASE("number and field formatting") {
  CHECK(io::format_number(0.75) == "0.75");
  CHECK(io::format_number(0.1) == "0.10000000000000001");
  CHECK(io::format_number(std::nan("")) == "nan");
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    const double x = std::uniform_real_distribution<double>(-1e6, 1e6)(rng);
    CHECK(std::stod(io::format_number(x)) == x);
  }
  CHECK(io::csv_field("plain") == "plain");
  CHECK(io::csv_field("a,b") == "\"a,b\"");
  CHECK(io::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(io::split_csv_line("\"a,b\",c,\"d\"\"e\"") == std::vector<std::string>{"a,b", "c", "d\"e"});
}

TEST_CASE("ranking CSV and JSON") {
  const WeightedDigraph g(complete(4).weights(), false, {"a", "b", "c", "d"});
  const auto family = cycle_supports(g, 3);
  const auto scorer = make_scorer(g, {});
  const auto ranked = rank_supports(family, scorer.score);
  const auto csv = io::format_ranking_csv(g, ranked, scorer.method);
  CHECK(csv.rfind("rank,v1,v2,v3,score,method\n", 0) == 0);
  CHECK(csv.find("1,a,b,c,") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

  const auto j = io::ranking_json(g, family, ranked, scorer);
  CHECK(j["schema_version"] == "cyclerank/1");
  CHECK(j["graph"]["diagonal"] == "kept");
}

TEST_CASE("spectrum JSON") {
  const WeightedDigraph g(k3().weights(), false, {"a", "b", "c"});
  const auto j = io::spectrum_json(g);
  CHECK(j["lambda"].get<double>() == doctest::Approx(2.0));
  CHECK(j["eta"].get<double>() == doctest::Approx(2.25));
  const auto t = io::spectrum_json(WeightedDigraph(two_triangles().weights(), false));
  CHECK(t["eta"].is_null());
}
