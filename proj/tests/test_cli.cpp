#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

// Drives the installed binary end to end; CYCLERANK_BIN comes from the build.

namespace fs = std::filesystem;
using doctest::Approx;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("cyclerank_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) const {
    std::ofstream(path / name) << content;
    return (path / name).string();
  }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  int code;
  std::string err;
};

Run run(const TempDir& dir, const std::string& args, const std::string& env = "") {
  const std::string err = dir / "stderr.txt";
  const std::string cmd = env + " " CYCLERANK_BIN " " + args + " >/dev/null 2>" + err;
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(err)};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

const char* kK4 =
    "#undirected\n"
    "a b 1\na c 1\na d 1\nb c 1\nb d 1\nc d 1\n";

}  // namespace

TEST_CASE("rank on K4 triangles") {
  TempDir dir;
  const auto g = dir.file("k4.txt", kK4);
  const auto r = run(dir, "rank --graph " + g + " --family cycles3 --score cycle --out " + (dir / "out.csv"));
  REQUIRE(r.code == 0);
  const auto csv = slurp(dir / "out.csv");
  CHECK(lines(csv) == 5);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "rank,v1,v2,v3,score,method");
  while (std::getline(in, line)) {
    const auto fields = line.substr(line.find(',') + 1);
    const auto score_at = fields.rfind(',', fields.rfind(',') - 1);
    const double score = std::stod(fields.substr(score_at + 1));
    CHECK(score >= 0.0);
    CHECK(score <= 1.0);
  }
  const auto meta = json::parse(slurp(dir / "out.json"));
  CHECK(meta["schema_version"] == "cyclerank/1");
  CHECK(meta["family_size"] == 4);
}

TEST_CASE("rank variants") {
  TempDir dir;
  const auto g = dir.file("k4.txt", kK4);
  for (const std::string extra : {"--score sigma-eig", "--score sigma-resolvent --alpha 0.1", "--sigma-exp --r 2",
                                  "--score cycle --approx 2 --top 2", "--family triads", "--family pairs"}) {
    const std::string fam = extra.find("--family") == std::string::npos ? " --family cycles3 " : " ";
    CHECK(run(dir, "rank --graph " + g + fam + extra + " --out " + (dir / "v.csv")).code == 0);
  }
  CHECK(lines(slurp(dir / "v.csv")) == 7);  // pairs: header + 6
}

TEST_CASE("worker count does not change the output") {
  TempDir dir;
  std::string text = "#directed\n";
  // A dense 14-vertex digraph with varied weights; enough supports to split into blocks.
  for (int i = 0; i < 14; ++i) {
    for (int j = 0; j < 14; ++j) {
      if (i != j && (i * 7 + j * 3) % 5 != 0) text += "v" + std::to_string(i) + " v" + std::to_string(j) + " " +
                                                      std::to_string(1 + (i * 13 + j * 17) % 9) + "\n";
    }
  }
  const auto g = dir.file("g.txt", text);
  const std::string args = "rank --graph " + g + " --family cycles4 --score cycle --out ";
  REQUIRE(run(dir, args + (dir / "one.csv"), "CYCLERANK_THREADS=1").code == 0);
  REQUIRE(run(dir, args + (dir / "four.csv"), "CYCLERANK_THREADS=4").code == 0);
  REQUIRE(run(dir, args + (dir / "again.csv"), "CYCLERANK_THREADS=4").code == 0);
  const auto one = slurp(dir / "one.csv");
  CHECK(lines(one) > 600);
  CHECK(one == slurp(dir / "four.csv"));
  CHECK(one == slurp(dir / "again.csv"));
}

TEST_CASE("roc degree model on a star") {
  TempDir dir;
  const auto g = dir.file("star.txt", "#undirected\nhub l1 1\nhub l2 1\nhub l3 1\nhub l4 1\n");
  const auto t = dir.file("targets.txt", "hub\n");
  REQUIRE(run(dir, "roc --graph " + g + " --targets " + t + " --model degree --out " + (dir / "roc.csv")).code == 0);
  const auto j = json::parse(slurp(dir / "roc.json"));
  CHECK(j["auc"] == 1.0);
  CHECK(slurp(dir / "roc.csv").rfind("fpr,tpr\n", 0) == 0);

  // The triad model needs immune edges.
  CHECK(run(dir, "roc --graph " + g + " --targets " + t + " --model triad --out " + (dir / "x.csv")).code == 2);
}

TEST_CASE("roc triad model") {
  TempDir dir;
  const auto g = dir.file("g.txt",
                          "#undirected\nh1 h2 1\nh1 t1 1\nh2 t1 1\nh1 x 1\nx y 1\nh2 y 1\nt2 h1 1\nt2 x 1\n");
  const auto t = dir.file("targets.txt", "t1\nt2\n");
  const auto im = dir.file("immune.txt", "h1\tt1\nt2\th1\n");
  REQUIRE(run(dir, "roc --graph " + g + " --targets " + t + " --immune-edges " + im + " --anchors h1,h2 --model triad --out " +
                       (dir / "roc.csv"))
              .code == 0);
  const auto j = json::parse(slurp(dir / "roc.json"));
  CHECK(j["auc"].get<double>() >= 0.0);
  CHECK(j["auc"].get<double>() <= 1.0);
  CHECK(run(dir, "roc --graph " + g + " --targets " + t + " --immune-edges " + im + " --model sigma-eig --out " +
                     (dir / "s.csv"))
            .code == 0);
}

TEST_CASE("oracle and spectrum") {
  TempDir dir;
  const auto g = dir.file("k3.txt", "#undirected\na b 1\nb c 1\nc a 1\n");
  REQUIRE(run(dir, "oracle --graph " + g + " --subject a --K 60 --tol 1e-6 --out " + (dir / "o.json")).code == 0);
  const auto o = json::parse(slurp(dir / "o.json"));
  CHECK(o["pass"] == true);
  CHECK(o["target"].get<double>() == Approx(0.75).epsilon(1e-12));

  REQUIRE(run(dir, "spectrum --graph " + g + " --out " + (dir / "s.json")).code == 0);
  const auto s = json::parse(slurp(dir / "s.json"));
  CHECK(s["lambda"].get<double>() == Approx(2.0));
  CHECK(s["eigenvector_centrality"].size() == 3);

  const auto two = dir.file("two.txt", "#undirected\na b 1\nb c 1\nc a 1\nd e 1\ne f 1\nf d 1\n");
  const auto r = run(dir, "oracle --graph " + two + " --subject a --K 60 --tol 1e-6 --out " + (dir / "x.json"));
  CHECK(r.code == 4);
  CHECK(r.err.find("InconclusiveSpectralGap") != std::string::npos);
}

TEST_CASE("track") {
  TempDir dir;
  fs::create_directories(dir.path / "years");
  std::ofstream(dir.path / "years" / "2000.csv") << ",a,b,c\na,0,1,1\nb,1,0,1\nc,1,1,0\n";
  std::ofstream(dir.path / "years" / "2001.csv") << ",a,b,c\na,0,2,1\nb,2,0,1\nc,1,1,0\n";
  REQUIRE(run(dir, "track --temporal " + (dir / "years") + " --subject a,b --reference pairs --out " + (dir / "t.csv"))
              .code == 0);
  CHECK(lines(slurp(dir / "t.csv")) == 3);
  const auto j = json::parse(slurp(dir / "t.json"));
  CHECK(j.contains("ratio"));
}

TEST_CASE("exit codes") {
  TempDir dir;
  const auto g = dir.file("k3.txt", "#undirected\na b 1\nb c 1\nc a 1\n");
  const auto neg = dir.file("neg.txt", "a b -2\n");
  const auto dag = dir.file("dag.txt", "#directed\na b 1\nb c 1\n");

  CHECK(run(dir, "").code == 2);
  CHECK(run(dir, "bogus").code == 2);
  CHECK(run(dir, "rank --graph " + g + " --family hexagons --out " + (dir / "o.csv")).code == 2);
  CHECK(run(dir, "rank --graph " + g + " --family pairs").code == 2);

  auto r = run(dir, "rank --graph " + neg + " --family pairs --out " + (dir / "o.csv"));
  CHECK(r.code == 3);
  CHECK(lines(r.err) == 1);
  CHECK(r.err.find("line 1") != std::string::npos);
  CHECK(run(dir, "rank --graph " + (dir / "missing.txt") + " --family pairs --out " + (dir / "o.csv")).code == 3);
  CHECK(run(dir, "oracle --graph " + g + " --subject zz --K 10 --tol 1e-3 --out " + (dir / "o.json")).code == 3);

  r = run(dir, "spectrum --graph " + dag + " --out " + (dir / "s.json"));
  CHECK(r.code == 4);
  CHECK(lines(r.err) == 1);
}
