#include "gcjstyle/cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "gcjstyle/cluster.hpp"
#include "gcjstyle/corpus.hpp"
#include "gcjstyle/cv.hpp"
#include "gcjstyle/error.hpp"
#include "gcjstyle/extract.hpp"
#include "gcjstyle/features.hpp"
#include "gcjstyle/io.hpp"
#include "gcjstyle/synth.hpp"

namespace gcjstyle::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

/// Raised for bad flag combinations that CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Diagnostics {
 public:
  explicit Diagnostics(std::ostream& err) : err_(err) {
    color_ = &err == &std::cerr && std::getenv("NO_COLOR") == nullptr &&
             ::isatty(STDERR_FILENO) != 0;
  }

  void error(const std::string& msg) { emit("error", "\033[31m", msg); }
  void warning(const std::string& msg) { emit("warning", "\033[33m", msg); }

 private:
  void emit(const char* tag, const char* ansi, const std::string& msg) {
    if (color_) {
      err_ << ansi << tag << "\033[0m: " << msg << '\n';
    } else {
      err_ << tag << ": " << msg << '\n';
    }
  }

  std::ostream& err_;
  bool color_ = false;
};

std::vector<std::string> feature_names() {
  std::vector<std::string> out;
  for (std::string_view n : stylometry::StyleFeatures::names()) out.emplace_back(n);
  return out;
}

Json run_manifest(const std::string& command, std::uint64_t seed) {
  Json m;
  m["schema_version"] = kSchemaVersion;
  m["tool"] = "gcjstyle";
  m["tool_version"] = kToolVersion;
  m["command"] = command;
  m["seed"] = seed;
  return m;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

fs::path sibling_manifest(const fs::path& out) {
  return fs::path(out.string() + ".run_manifest.json");
}

// ---------------------------------------------------------------------------
// extract

struct ExtractArgs {
  std::string corpus;
  std::string manifest;
  std::optional<int> year;
  std::optional<std::string> round;
  std::optional<std::string> problem;
  std::string out;
};

int cmd_extract(const ExtractArgs& a, std::ostream& out, Diagnostics& diag) {
  std::optional<Round> round;
  if (a.round) {
    round = parse_round(*a.round);
    if (!round) throw UsageError("unknown round '" + *a.round + "'");
  }
  const corpus::Corpus c = corpus::load_corpus(a.corpus, a.manifest);
  std::size_t warnings = c.skipped_undecodable + c.skipped_unknown_author;
  for (const auto& w : c.warnings) diag.warning(w);

  // Every (year, round, problem) group passing the filters, in corpus order.
  std::vector<std::tuple<int, Round, std::string>> groups;
  for (const corpus::SourceFile& f : c.files()) {
    if (a.year && f.year != *a.year) continue;
    if (round && f.round != *round) continue;
    if (a.problem && f.problem_id != *a.problem) continue;
    std::tuple<int, Round, std::string> key{f.year, f.round, f.problem_id};
    if (groups.empty() || groups.back() != key) groups.push_back(key);
  }
  if (groups.empty()) {
    throw Error(ErrorCode::EmptySelection, "no source files match the selection");
  }

  FeatureTable table;
  table.x = Matrix(0, stylometry::kNumFeatures);
  for (const auto& [year, rnd, problem] : groups) {
    const stylometry::BatchResult batch = stylometry::extract_batch(c, year, rnd, problem);
    warnings += batch.warning_count;
    for (const auto& w : batch.warnings) diag.warning(w);
    const corpus::LabeledDataset ds =
        corpus::label_dataset(c, year, rnd, problem, batch.features);
    for (const corpus::LabeledRow& row : ds.rows) {
      table.author_ids.push_back(row.author_id);
      table.problem_ids.push_back(problem);
      table.labels.push_back(row.label);
      const auto values = row.features.to_array();
      table.x.append_row(values);
    }
  }

  Json m = run_manifest("extract", 0);
  m["inputs"] = {{"corpus", a.corpus}, {"manifest", a.manifest}};
  m["output"] = a.out;
  m["config"] = {{"year", a.year ? Json(*a.year) : Json(nullptr)},
                 {"round", round ? Json(std::string(round_token(*round))) : Json(nullptr)},
                 {"problem", a.problem ? Json(*a.problem) : Json(nullptr)}};
  m["results"] = {{"rows", table.author_ids.size()},
                  {"groups", groups.size()},
                  {"skipped_undecodable", c.skipped_undecodable},
                  {"skipped_unknown_author", c.skipped_unknown_author},
                  {"warnings", warnings}};

  io::write_file_atomic(a.out, format_feature_csv(table));
  io::write_file_atomic(sibling_manifest(a.out), dump(m));
  out << "extracted " << table.author_ids.size() << " rows from " << groups.size()
      << " problem(s) -> " << a.out << '\n';
  if (warnings > 0) diag.warning(std::to_string(warnings) + " file(s) skipped");
  return kOk;
}

// ---------------------------------------------------------------------------
// cluster

struct ClusterArgs {
  std::string features;
  std::optional<int> k;
  std::uint64_t seed = 42;
  std::string out;
  double perplexity = 30.0;
  int tsne_iterations = 1000;
};

int cmd_cluster(const ClusterArgs& a, std::ostream& out, Diagnostics& diag) {
  if (a.k && *a.k < 2) {
    throw UsageError("--k must be at least 2 to characterize clusters");
  }
  const FeatureTable table = parse_feature_csv(io::read_file(a.features));
  const std::size_t n = table.x.rows();
  if (n < 4) {
    throw Error(ErrorCode::TooFewPoints, "clustering needs at least 4 rows");
  }
  const Matrix z = cluster::standardize(table.x);

  cluster::TsneOptions topt;
  topt.perplexity = a.perplexity;
  topt.iterations = a.tsne_iterations;
  topt.seed = a.seed;
  const cluster::Embedding2D emb = cluster::tsne_embed(z, topt);
  for (const auto& w : emb.warnings) diag.warning(w);

  const cluster::Dendrogram dendro = cluster::ward_hac(z);
  const std::size_t k_max = std::min<std::size_t>(10, n - 1);
  const cluster::SuggestedK suggested = cluster::suggest_k(dendro, 2, k_max);
  for (const auto& w : suggested.warnings) diag.warning(w);
  const std::size_t k = a.k ? static_cast<std::size_t>(*a.k) : suggested.k;

  cluster::KMeansOptions kopt;
  kopt.k = k;
  kopt.seed = a.seed;
  const cluster::ClusterResult km = cluster::kmeans(z, kopt);
  const cluster::ImportanceReport imp =
      cluster::cluster_feature_importance(table.x, km.assignments, a.seed, feature_names());

  std::string embedding = "author_id,x,y,label,cluster\n";
  std::string clusters = "author_id,cluster\n";
  for (std::size_t i = 0; i < n; ++i) {
    embedding += table.author_ids[i] + "," + io::format_float(emb.points(i, 0)) + "," +
                 io::format_float(emb.points(i, 1)) + "," + (table.labels[i] ? "1" : "0") +
                 "," + std::to_string(km.assignments[i]) + "\n";
    clusters += table.author_ids[i] + "," + std::to_string(km.assignments[i]) + "\n";
  }

  Json merges = Json::array();
  for (const cluster::Merge& mg : dendro.merges) {
    merges.push_back({mg.left, mg.right, mg.height, mg.size});
  }
  Json dendro_json;
  dendro_json["n_leaves"] = dendro.n_leaves;
  dendro_json["merges"] = std::move(merges);

  Json importance;
  Json ranked = Json::array();
  for (const auto& [name, value] : imp.ranked) {
    ranked.push_back({{"feature", name}, {"importance", value}});
  }
  importance["importances"] = std::move(ranked);
  std::size_t global_pos = 0;
  for (bool l : table.labels) global_pos += l ? 1 : 0;
  Json per_cluster = Json::array();
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t size = 0;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (km.assignments[i] != static_cast<int>(c)) continue;
      ++size;
      pos += table.labels[i] ? 1 : 0;
    }
    per_cluster.push_back({{"cluster", c},
                           {"size", size},
                           {"positives", pos},
                           {"positive_rate", metrics::safe_ratio(pos, size)}});
  }
  importance["clusters"] = std::move(per_cluster);
  importance["global_positive_rate"] =
      metrics::safe_ratio(static_cast<double>(global_pos), static_cast<double>(n));

  Json m = run_manifest("cluster", a.seed);
  m["inputs"] = {{"features", a.features}};
  m["output"] = a.out;
  m["config"] = {{"standardize", true},
                 {"tsne",
                  {{"perplexity", emb.perplexity},
                   {"requested_perplexity", a.perplexity},
                   {"iterations", topt.iterations},
                   {"learning_rate", topt.learning_rate},
                   {"early_exaggeration", topt.early_exaggeration},
                   {"exaggeration_iterations", topt.exaggeration_iterations},
                   {"initial_momentum", topt.initial_momentum},
                   {"final_momentum", topt.final_momentum},
                   {"momentum_switch_iteration", topt.momentum_switch_iteration}}},
                 {"ward", {{"k_min", 2}, {"k_max", k_max}}},
                 {"kmeans", {{"k", k}, {"max_iter", kopt.max_iter}, {"init", "k-means++"}}},
                 {"importance", {{"model", "RandomForest"}, {"n_trees", 100}}}};
  m["results"] = {{"k", k},
                  {"k_source", a.k ? "flag" : "suggest_k"},
                  {"suggested_k", suggested.k},
                  {"suggest_k_degenerate", suggested.degenerate},
                  {"tsne_initial_kl", emb.initial_kl},
                  {"tsne_final_kl", emb.final_kl},
                  {"kmeans_inertia", km.inertia},
                  {"kmeans_iterations", km.iterations}};

  const fs::path dir(a.out);
  io::write_file_atomic(dir / "embedding.csv", embedding);
  io::write_file_atomic(dir / "dendrogram.json", dump(dendro_json));
  io::write_file_atomic(dir / "clusters.csv", clusters);
  io::write_file_atomic(dir / "importance.json", dump(importance));
  io::write_file_atomic(dir / "run_manifest.json", dump(m));

  out << "k = " << k << (a.k ? " (requested)" : " (suggested)") << "; top feature: "
      << imp.ranked.front().first << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// train

struct TrainArgs {
  std::string features;
  std::vector<std::string> models;
  std::size_t k_folds = 5;
  std::uint64_t seed = 42;
  std::string out;
};

Json report_json(const learn::EvalReport& r) {
  auto fold_metrics = [](double recall, double f1, double auc, double ba) {
    return Json{{"recall", recall},
                {"macro_f1", f1},
                {"auc_roc", auc},
                {"balanced_accuracy", ba}};
  };
  Json folds = Json::array();
  for (const learn::FoldResult& f : r.folds) {
    Json j = fold_metrics(f.metrics.recall_pos, f.metrics.macro_f1, f.metrics.auc_roc,
                          f.metrics.balanced_accuracy);
    j["confusion"] = {{f.confusion.tn, f.confusion.fp}, {f.confusion.fn, f.confusion.tp}};
    j["test_indices"] = f.test_indices;
    folds.push_back(std::move(j));
  }
  Json j;
  j["model"] = std::string(learn::model_name(r.model));
  j["resampler"] = std::string(learn::resampler_name(r.config.resampler));
  j["folds"] = std::move(folds);
  j["mean"] = fold_metrics(r.mean.recall, r.mean.macro_f1, r.mean.auc_roc,
                           r.mean.balanced_accuracy);
  j["confusion"] = {{r.pooled.tn, r.pooled.fp}, {r.pooled.fn, r.pooled.tp}};
  j["zero_division"] = r.zero_division;
  return j;
}

Json hyperparameters(const learn::TrainConfig& c) {
  return {{"lr", {{"lambda", c.lr_lambda}, {"max_epochs", c.lr_max_epochs},
                  {"tolerance", c.lr_tolerance}}},
          {"svc", {{"lambda", c.svc_lambda}, {"epochs", c.svc_epochs}, {"t0", c.svc_t0}}},
          {"knn", {{"k", c.knn_k}}},
          {"forest", {{"n_trees", c.n_trees}}},
          {"rusada", {{"rounds", c.boost_rounds}, {"depth", c.boost_depth}}},
          {"smote", {{"k_neighbors", c.smote_k}}}};
}

int cmd_train(const TrainArgs& a, std::ostream& out, Diagnostics& diag) {
  if (a.k_folds < 2) throw UsageError("--k-folds must be at least 2");
  std::vector<learn::ModelKind> kinds;
  if (a.models.empty()) {
    kinds.assign(std::begin(learn::kAllModels), std::end(learn::kAllModels));
  }
  for (const std::string& name : a.models) {
    const auto kind = learn::parse_model(name);
    if (!kind) throw UsageError("unknown model '" + name + "'");
    if (std::find(kinds.begin(), kinds.end(), *kind) == kinds.end()) kinds.push_back(*kind);
  }

  const FeatureTable table = parse_feature_csv(io::read_file(a.features));
  // Rows grouped per problem, in first-appearance order.
  std::vector<std::string> problems;
  std::map<std::string, std::vector<std::size_t>> rows_of;
  for (std::size_t i = 0; i < table.problem_ids.size(); ++i) {
    auto& rows = rows_of[table.problem_ids[i]];
    if (rows.empty()) problems.push_back(table.problem_ids[i]);
    rows.push_back(i);
  }

  struct Totals {
    double recall = 0, macro_f1 = 0, auc = 0, ba = 0;
  };
  std::vector<Totals> totals(kinds.size());
  Json per_problem = Json::array();
  for (const std::string& problem : problems) {
    const auto& rows = rows_of[problem];
    const Matrix x = table.x.select_rows(rows);
    std::vector<bool> y;
    std::size_t positives = 0;
    for (std::size_t i : rows) {
      y.push_back(table.labels[i]);
      positives += table.labels[i] ? 1 : 0;
    }
    if (positives < a.k_folds || rows.size() - positives < a.k_folds) {
      throw Error(ErrorCode::TooFewSamplesPerClass,
                  "problem " + problem + " has " + std::to_string(positives) +
                      " positive and " + std::to_string(rows.size() - positives) +
                      " negative rows; each class needs at least --k-folds = " +
                      std::to_string(a.k_folds) +
                      " (lower --k-folds or add data)");
    }
    Json reports = Json::array();
    for (std::size_t m = 0; m < kinds.size(); ++m) {
      const learn::TrainConfig cfg = learn::TrainConfig::defaults(kinds[m], a.seed);
      const learn::EvalReport r = learn::cross_validate(cfg, x, y, a.k_folds, a.seed);
      for (const auto& f : r.folds) {
        for (const auto& w : f.warnings) diag.warning(problem + ": " + w);
      }
      totals[m].recall += r.mean.recall;
      totals[m].macro_f1 += r.mean.macro_f1;
      totals[m].auc += r.mean.auc_roc;
      totals[m].ba += r.mean.balanced_accuracy;
      reports.push_back(report_json(r));
    }
    per_problem.push_back({{"problem_id", problem},
                           {"rows", rows.size()},
                           {"positives", positives},
                           {"reports", std::move(reports)}});
  }

  std::vector<std::size_t> order(kinds.size());
  for (std::size_t m = 0; m < order.size(); ++m) order[m] = m;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return totals[l].recall > totals[r].recall;
  });
  const double np = static_cast<double>(problems.size());
  Json summary = Json::array();
  char line[160];
  out << "Model     Recall  Macro-F1  AUC-ROC  Bal.Acc\n";
  for (std::size_t m : order) {
    const Totals t{totals[m].recall / np, totals[m].macro_f1 / np, totals[m].auc / np,
                   totals[m].ba / np};
    const std::string name(learn::model_name(kinds[m]));
    summary.push_back({{"model", name},
                       {"recall", t.recall},
                       {"macro_f1", t.macro_f1},
                       {"auc_roc", t.auc},
                       {"balanced_accuracy", t.ba}});
    std::snprintf(line, sizeof line, "%-8s  %6.3f  %8.3f  %7.3f  %7.3f\n", name.c_str(),
                  t.recall, t.macro_f1, t.auc, t.ba);
    out << line;
  }

  Json report;
  report["schema_version"] = kSchemaVersion;
  report["k_folds"] = a.k_folds;
  report["seed"] = a.seed;
  report["problems"] = std::move(per_problem);
  report["summary"] = std::move(summary);

  Json m = run_manifest("train", a.seed);
  m["inputs"] = {{"features", a.features}};
  m["output"] = a.out;
  Json models = Json::array();
  for (learn::ModelKind kind : kinds) {
    models.push_back({{"model", std::string(learn::model_name(kind))},
                      {"resampler",
                       std::string(learn::resampler_name(learn::default_resampler(kind)))}});
  }
  m["config"] = {{"models", std::move(models)},
                 {"k_folds", a.k_folds},
                 {"stratified", true},
                 {"standardize", "training folds only"},
                 {"hyperparameters", hyperparameters(learn::TrainConfig{})}};
  m["results"] = {{"problems", problems.size()}};

  io::write_file_atomic(a.out, dump(report));
  io::write_file_atomic(sibling_manifest(a.out), dump(m));
  return kOk;
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
  std::uint64_t seed = 42;
  std::size_t n = 400;
  double rate = corpus::kDefaultPositiveRate;
  int profiles = 4;
  double coupling = 0.0;
  std::string out;
};

int cmd_synth(const SynthArgs& a, std::ostream& out, Diagnostics&) {
  if (!(a.rate > 0.0 && a.rate < 1.0)) throw UsageError("--rate must lie in (0, 1)");
  if (!(a.coupling >= 0.0 && a.coupling <= 1.0)) {
    throw UsageError("--coupling must lie in [0, 1]");
  }
  if (a.profiles < 1 || a.profiles > corpus::kMaxStyleProfiles) {
    throw UsageError("--profiles must lie in [1, " +
                     std::to_string(corpus::kMaxStyleProfiles) + "]");
  }
  corpus::SyntheticOptions opt;
  opt.seed = a.seed;
  opt.n_authors = a.n;
  opt.positive_rate = a.rate;
  opt.style_profiles = a.profiles;
  opt.skill_style_coupling = a.coupling;
  const corpus::SyntheticCorpus synth = corpus::gen_synthetic_corpus(opt);

  std::size_t positives = 0;
  for (const auto& t : synth.truth) positives += t.label ? 1 : 0;
  Json m = run_manifest("synth", a.seed);
  m["inputs"] = Json::object();
  m["output"] = a.out;
  m["config"] = {{"n_authors", a.n},
                 {"positive_rate", a.rate},
                 {"style_profiles", a.profiles},
                 {"skill_style_coupling", a.coupling},
                 {"year", corpus::kSyntheticYear},
                 {"round", std::string(round_token(corpus::kSyntheticRound))},
                 {"problem", corpus::kSyntheticProblem}};
  m["results"] = {{"positives", positives}};

  corpus::write_synthetic(synth, a.out);
  io::write_file_atomic(fs::path(a.out) / "run_manifest.json", dump(m));
  out << "wrote " << a.n << " authors (" << positives << " good) to " << a.out << '\n';
  return kOk;
}

bool usage_code(ErrorCode c) {
  return c == ErrorCode::InvalidRate || c == ErrorCode::InvalidProfiles ||
         c == ErrorCode::InvalidConfig;
}

}  // namespace

std::string format_feature_csv(const FeatureTable& t) {
  std::string s = "author_id,problem_id,label";
  for (std::string_view name : stylometry::StyleFeatures::names()) {
    s += ',';
    s += name;
  }
  s += '\n';
  for (std::size_t i = 0; i < t.author_ids.size(); ++i) {
    s += t.author_ids[i] + "," + t.problem_ids[i] + (t.labels[i] ? ",1" : ",0");
    for (double v : t.x.row(i)) {
      s += ',';
      s += io::format_float(v);
    }
    s += '\n';
  }
  return s;
}

FeatureTable parse_feature_csv(std::string_view text) {
  const auto lines = io::split_lines(text);
  std::string expected = "author_id,problem_id,label";
  for (std::string_view name : stylometry::StyleFeatures::names()) {
    expected += ',';
    expected += name;
  }
  if (lines.empty() || lines[0] != expected) {
    throw Error(ErrorCode::SchemaMismatch, "feature CSV header does not match the schema");
  }
  constexpr std::size_t kFeatures = stylometry::kNumFeatures;
  FeatureTable t;
  t.x = Matrix(0, kFeatures);
  std::vector<double> row(kFeatures);
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    if (lines[ln].empty()) continue;
    const auto fields = io::split_csv_line(lines[ln]);
    const std::string where = "feature CSV line " + std::to_string(ln + 1);
    if (fields.size() != 3 + kFeatures) {
      throw Error(ErrorCode::SchemaMismatch, where + ": expected " +
                                                 std::to_string(3 + kFeatures) + " columns");
    }
    if (fields[2] != "0" && fields[2] != "1") {
      throw Error(ErrorCode::SchemaMismatch, where + ": label must be 0 or 1");
    }
    for (std::size_t f = 0; f < kFeatures; ++f) {
      const std::string& s = fields[3 + f];
      char* end = nullptr;
      row[f] = std::strtod(s.c_str(), &end);
      if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(row[f])) {
        throw Error(ErrorCode::SchemaMismatch, where + ": bad number '" + s + "'");
      }
    }
    t.author_ids.push_back(fields[0]);
    t.problem_ids.push_back(fields[1]);
    t.labels.push_back(fields[2] == "1");
    t.x.append_row(row);
  }
  return t;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Diagnostics diag(err);
  CLI::App app{"Programming-style analysis of contest solutions", "gcjstyle"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  ExtractArgs ea;
  auto* extract = app.add_subcommand("extract", "Extract the 30 style features per file");
  extract->add_option("--corpus", ea.corpus, "Corpus root directory")->required();
  extract->add_option("--manifest", ea.manifest, "Manifest CSV")->required();
  extract->add_option("--year", ea.year, "Only this year");
  extract->add_option("--round", ea.round, "Only this round (Q,1A,1B,1C,2,3,F)");
  extract->add_option("--problem", ea.problem, "Only this problem id");
  extract->add_option("--out", ea.out, "Output feature CSV")->required();
  std::uint64_t extract_seed = 42;
  extract->add_option("--seed", extract_seed, "Accepted for uniformity; unused");

  ClusterArgs ca;
  auto* clus = app.add_subcommand("cluster", "t-SNE, Ward HAC, k-means and importances");
  clus->add_option("--features", ca.features, "Feature CSV")->required();
  clus->add_option("--k", ca.k, "Number of clusters (default: suggested)");
  clus->add_option("--seed", ca.seed, "Random seed");
  clus->add_option("--perplexity", ca.perplexity, "t-SNE perplexity");
  clus->add_option("--tsne-iterations", ca.tsne_iterations, "t-SNE iterations")
      ->check(CLI::PositiveNumber);
  clus->add_option("--out", ca.out, "Output directory")->required();

  TrainArgs ta;
  auto* trn = app.add_subcommand("train", "Cross-validate classifiers per problem");
  trn->add_option("--features", ta.features, "Feature CSV")->required();
  trn->add_option("--models", ta.models, "Comma-separated model list")->delimiter(',');
  trn->add_option("--k-folds", ta.k_folds, "Number of folds");
  trn->add_option("--seed", ta.seed, "Random seed");
  trn->add_option("--out", ta.out, "Output report JSON")->required();

  SynthArgs sa;
  auto* syn = app.add_subcommand("synth", "Generate a synthetic corpus");
  syn->add_option("--seed", sa.seed, "Random seed");
  syn->add_option("--n", sa.n, "Number of authors");
  syn->add_option("--rate", sa.rate, "Fraction of good authors");
  syn->add_option("--profiles", sa.profiles, "Number of style profiles");
  syn->add_option("--coupling", sa.coupling, "Probability that style follows skill");
  syn->add_option("--out", sa.out, "Output directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*extract) return cmd_extract(ea, out, diag);
    if (*clus) return cmd_cluster(ca, out, diag);
    if (*trn) return cmd_train(ta, out, diag);
    if (*syn) return cmd_synth(sa, out, diag);
  } catch (const UsageError& e) {
    diag.error(e.what());
    return kUsageError;
  } catch (const Error& e) {
    diag.error(std::string(to_string(e.code())) + ": " + e.what());
    return usage_code(e.code()) ? kUsageError : kRuntimeError;
  } catch (const std::exception& e) {
    diag.error(e.what());
    return kRuntimeError;
  }
  return kUsageError;
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace gcjstyle::cli
