// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cyclerank/cyclerank.h"

namespace {

struct Failure {
  cr_status status;
};

void check(cr_status s) {
  if (s != CR_OK) throw Failure{s};
}

int exit_code(cr_status s) {
  switch (cr_status_category(s)) {
    case CR_CATEGORY_USAGE: return 2;
    case CR_CATEGORY_DATA: return 3;
    case CR_CATEGORY_NUMERICAL: return s == CR_ERR_INTERNAL ? 1 : 4;
    case CR_CATEGORY_NONE: return 0;
  }
  return 1;
}

// out.csv -> out.json
std::string sidecar(const std::string& out) {
  std::filesystem::path p(out);
  p.replace_extension(".json");
  if (p.string() == out) p += ".json";
  return p.string();
}

template <typename T, void (*Destroy)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Destroy(p); }
  T** out() { return &p; }
  T* get() const { return p; }
};

using Graph = Handle<cr_graph, cr_graph_destroy>;
using Family = Handle<cr_family, cr_family_destroy>;
using Ranking = Handle<cr_ranking, cr_ranking_destroy>;
using Temporal = Handle<cr_temporal, cr_temporal_destroy>;
using Track = Handle<cr_track, cr_track_destroy>;
using Rule = Handle<cr_triad_rule, cr_triad_rule_destroy>;
using Roc = Handle<cr_roc, cr_roc_destroy>;
using Oracle = Handle<cr_oracle, cr_oracle_destroy>;

struct FamilyArg {
  cr_family_kind kind;
  size_t k;
};

const std::map<std::string, FamilyArg> kFamilies = {
    {"pairs", {CR_FAMILY_PAIRS, 2}},   {"triads", {CR_FAMILY_TRIADS, 3}}, {"cycles3", {CR_FAMILY_CYCLES, 3}},
    {"cycles4", {CR_FAMILY_CYCLES, 4}}, {"cycles5", {CR_FAMILY_CYCLES, 5}},
};

const std::map<std::string, cr_score_kind> kScores = {
    {"cycle", CR_SCORE_CYCLE},
    {"sigma-eig", CR_SCORE_SIGMA_EIGENVECTOR},
    {"sigma-resolvent", CR_SCORE_SIGMA_RESOLVENT},
    {"sigma-exp", CR_SCORE_SIGMA_EXPONENTIAL},
};

struct ScoreArgs {
  std::optional<double> alpha;
  std::optional<double> r;
  std::optional<size_t> approx;

  void add(CLI::App* app) {
    app->add_option("--alpha", alpha, "Resolvent parameter (default 0.85/lambda)");
    app->add_option("--r", r, "Exponential divisor (default: smallest power of 10 without overflow)")
        ->check(CLI::PositiveNumber);
    app->add_option("--approx", approx, "Keep only the q most dominant eigenvalues")->check(CLI::PositiveNumber);
  }

  cr_score_options options(cr_score_kind kind) const {
    cr_score_options o;
    cr_score_options_init(&o);
    o.kind = kind;
    if (alpha) {
      o.has_alpha = 1;
      o.alpha = *alpha;
    }
    if (r) o.r = *r;
    if (approx) o.approx_q = *approx;
    return o;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cycle centrality of weighted digraphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cr_version()));

  std::string graph_path, out_path;

  // rank
  auto* rank = app.add_subcommand("rank", "Enumerate a support family and rank it by score");
  std::string family_name, score_name = "cycle";
  bool sigma_exp = false;
  size_t top = 0;
  ScoreArgs rank_scores;
  rank->add_option("--graph", graph_path, "Edge list or flow matrix")->required();
  rank->add_option("--family", family_name, "pairs|triads|cycles3|cycles4|cycles5")
      ->required()
      ->check(CLI::IsMember(kFamilies));
  rank->add_option("--score", score_name, "cycle|sigma-eig|sigma-resolvent|sigma-exp")
      ->check(CLI::IsMember(kScores));
  rank->add_flag("--sigma-exp", sigma_exp, "Same as --score sigma-exp");
  rank_scores.add(rank);
  rank->add_option("--top", top, "Keep the m best supports")->check(CLI::PositiveNumber);
  rank->add_option("--out", out_path, "Ranked CSV; metadata goes next to it as .json")->required();

  // track
  auto* track = app.add_subcommand("track", "Follow a subject subgraph across yearly flow matrices");
  std::string temporal_dir, subject, reference = "cycles4";
  track->add_option("--temporal", temporal_dir, "Directory of <year>.csv flow matrices")->required();
  track->add_option("--subject", subject, "Comma-separated labels")->required();
  track->add_option("--reference", reference, "Reference family")->check(CLI::IsMember(kFamilies));
  track->add_option("--out", out_path, "Track CSV; summary goes next to it as .json")->required();

  // roc
  auto* roc = app.add_subcommand("roc", "ROC of a triad or degree model against known targets");
  std::string targets_path, immune_path, anchors = "auto-top2-eigenvector", model = "triad";
  ScoreArgs roc_scores;
  roc->add_option("--graph", graph_path, "Edge list or flow matrix")->required();
  roc->add_option("--targets", targets_path, "Target label set")->required();
  roc->add_option("--immune-edges", immune_path, "Label pairs, tab-separated");
  roc->add_option("--anchors", anchors, "auto-top2-eigenvector or comma-separated labels");
  roc->add_option("--model", model, "triad|degree|sigma-eig|sigma-resolvent|sigma-exp")
      ->check(CLI::IsMember({"triad", "degree", "sigma-eig", "sigma-resolvent", "sigma-exp"}));
  roc_scores.add(roc);
  roc->add_option("--out", out_path, "ROC points CSV; AUC goes next to it as .json")->required();

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Check c(subject) against the walk-series ratio");
  size_t order = 0;
  double tol = 0.0;
  oracle->add_option("--graph", graph_path, "Edge list or flow matrix")->required();
  oracle->add_option("--subject", subject, "Comma-separated labels")->required();
  oracle->add_option("--K", order, "Series order")->required();
  oracle->add_option("--tol", tol, "Absolute tolerance")->required()->check(CLI::PositiveNumber);
  oracle->add_option("--out", out_path, "JSON report")->required();

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "Dominant eigenvalue, eta and eigenvector centrality");
  spectrum->add_option("--graph", graph_path, "Edge list or flow matrix")->required();
  spectrum->add_option("--out", out_path, "JSON output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::fprintf(stderr, "cyclerank: %s\n", e.what());
    return 2;
  }

  auto usage = [](const char* msg) {
    std::fprintf(stderr, "cyclerank: %s\n", msg);
    return 2;
  };

  try {
    if (*rank) {
      if (sigma_exp) score_name = "sigma-exp";
      const FamilyArg fam = kFamilies.at(family_name);
      Graph g;
      check(cr_graph_load(graph_path.c_str(), g.out()));
      Family f;
      check(cr_family_enumerate(g.get(), fam.kind, fam.k, f.out()));
      const cr_score_options opts = rank_scores.options(kScores.at(score_name));
      Ranking r;
      check(cr_rank(g.get(), f.get(), &opts, top, 0, r.out()));
      check(cr_ranking_write_csv(r.get(), out_path.c_str()));
      check(cr_ranking_write_json(r.get(), sidecar(out_path).c_str()));
    } else if (*track) {
      const FamilyArg fam = kFamilies.at(reference);
      Temporal t;
      check(cr_temporal_load(temporal_dir.c_str(), t.out()));
      Track tr;
      check(cr_track_run(t.get(), subject.c_str(), fam.kind, fam.k, 0, tr.out()));
      check(cr_track_write_csv(tr.get(), out_path.c_str()));
      check(cr_track_write_json(tr.get(), sidecar(out_path).c_str()));
    } else if (*roc) {
      if (model != "degree" && immune_path.empty()) return usage("--immune-edges is required for triad models");
      Graph g;
      check(cr_graph_load(graph_path.c_str(), g.out()));
      Rule rule;
      check(cr_triad_rule_load(g.get(), targets_path.c_str(), immune_path.empty() ? nullptr : immune_path.c_str(),
                               anchors == "auto-top2-eigenvector" ? nullptr : anchors.c_str(), rule.out()));
      Roc curve;
      if (model == "degree") {
        check(cr_roc_degree_model(g.get(), rule.get(), curve.out()));
      } else {
        const cr_score_kind kind = model == "triad" ? CR_SCORE_CYCLE : kScores.at(model);
        const cr_score_options opts = roc_scores.options(kind);
        check(cr_roc_triad_model(g.get(), rule.get(), &opts, 0, curve.out()));
      }
      check(cr_roc_write_csv(curve.get(), out_path.c_str()));
      check(cr_roc_write_json(curve.get(), model.c_str(), sidecar(out_path).c_str()));
    } else if (*oracle) {
      Graph g;
      check(cr_graph_load(graph_path.c_str(), g.out()));
      Oracle o;
      check(cr_oracle_run(g.get(), subject.c_str(), order, tol, o.out()));
      check(cr_oracle_write_json(o.get(), out_path.c_str()));
    } else if (*spectrum) {
      Graph g;
      check(cr_graph_load(graph_path.c_str(), g.out()));
      check(cr_spectrum_write_json(g.get(), out_path.c_str()));
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "cyclerank: %s\n", cr_last_error());
    return exit_code(f.status);
  }
  return 0;
}
