#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "gcjstyle/cli.hpp"
#include "gcjstyle/error.hpp"
#include "gcjstyle/io.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using gcjstyle::cli::run_cli;
using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

/// synth + extract into `dir`; returns the feature CSV path.
fs::path make_features(const fs::path& dir, const std::string& n, const std::string& rate,
                       const std::string& coupling, const std::string& seed = "42") {
  const fs::path data = dir / "synth";
  REQUIRE(cli({"synth", "--seed", seed, "--n", n, "--rate", rate, "--coupling", coupling,
               "--out", data.string()})
              .code == 0);
  const fs::path csv = dir / "features.csv";
  REQUIRE(cli({"extract", "--corpus", (data / "corpus").string(), "--manifest",
               (data / "manifest.csv").string(), "--out", csv.string()})
              .code == 0);
  return csv;
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("extract: three files give three rows, reruns are byte-identical") {
  testing::TempDir tmp("cli_extract");
  const fs::path csv = make_features(tmp.path(), "3", "0.34", "0");
  const std::string first = gcjstyle::io::read_file(csv);
  CHECK(count_lines(first) == 4);
  CHECK(first.rfind("author_id,problem_id,label,", 0) == 0);
  CHECK(fs::exists(fs::path(csv.string() + ".run_manifest.json")));

  REQUIRE(cli({"extract", "--corpus", (tmp.path() / "synth/corpus").string(), "--manifest",
               (tmp.path() / "synth/manifest.csv").string(), "--out", csv.string()})
              .code == 0);
  CHECK(gcjstyle::io::read_file(csv) == first);
}

TEST_CASE("extract: missing corpus root fails without output") {
  testing::TempDir tmp("cli_missing");
  const fs::path csv = tmp.path() / "f.csv";
  const Run r = cli({"extract", "--corpus", (tmp.path() / "nope").string(), "--manifest",
                     (tmp.path() / "nope.csv").string(), "--out", csv.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("error:") != std::string::npos);
  CHECK_FALSE(fs::exists(csv));
  CHECK_FALSE(fs::exists(fs::path(csv.string() + ".run_manifest.json")));
}

TEST_CASE("usage errors exit 2") {
  testing::TempDir tmp("cli_usage");
  CHECK(cli({}).code == 2);
  CHECK(cli({"bogus"}).code == 2);
  CHECK(cli({"synth", "--rate", "1.5", "--out", (tmp.path() / "s").string()}).code == 2);
  CHECK(cli({"synth", "--coupling", "-0.1", "--out", (tmp.path() / "s").string()}).code == 2);
  CHECK(cli({"synth", "--profiles", "0", "--out", (tmp.path() / "s").string()}).code == 2);
  CHECK_FALSE(fs::exists(tmp.path() / "s"));
  const fs::path csv = make_features(tmp.path(), "20", "0.3", "0");
  CHECK(cli({"cluster", "--features", csv.string(), "--k", "1", "--out",
             (tmp.path() / "c").string()})
            .code == 2);
  CHECK(cli({"train", "--features", csv.string(), "--models", "Dummy,Nope", "--out",
             (tmp.path() / "t.json").string()})
            .code == 2);
  CHECK(cli({"train", "--features", csv.string(), "--k-folds", "1", "--out",
             (tmp.path() / "t.json").string()})
            .code == 2);
}

TEST_CASE("synth: default rate and determinism") {
  testing::TempDir tmp("cli_synth");
  REQUIRE(cli({"synth", "--n", "1000", "--out", (tmp.path() / "a").string()}).code == 0);
  REQUIRE(cli({"synth", "--n", "1000", "--out", (tmp.path() / "b").string()}).code == 0);
  const std::string truth = gcjstyle::io::read_file(tmp.path() / "a/ground_truth.csv");
  std::istringstream lines(truth);
  std::string line;
  std::getline(lines, line);  // header
  std::size_t rows = 0, positives = 0;
  while (std::getline(lines, line)) {
    ++rows;
    if (line.find(",1,") != std::string::npos) ++positives;
  }
  CHECK(rows == 1000);
  CHECK(positives == 26);
  for (const char* f : {"manifest.csv", "ground_truth.csv"}) {
    CHECK(gcjstyle::io::read_file(tmp.path() / "a" / f) ==
          gcjstyle::io::read_file(tmp.path() / "b" / f));
  }
  const Json m = Json::parse(gcjstyle::io::read_file(tmp.path() / "a/run_manifest.json"));
  CHECK(m["schema_version"] == "1");
  CHECK(m["command"] == "synth");
}

TEST_CASE("cluster: four profiles, suggested k recorded, importances sum to 1") {
  testing::TempDir tmp("cli_cluster");
  const fs::path csv = make_features(tmp.path(), "400", "0.1", "0");
  const fs::path out = tmp.path() / "clusters";
  const Run r = cli({"cluster", "--features", csv.string(), "--out", out.string()});
  REQUIRE(r.code == 0);
  const Json m = Json::parse(gcjstyle::io::read_file(out / "run_manifest.json"));
  CHECK(m["results"]["k"] == 4);
  CHECK(m["results"]["k_source"] == "suggest_k");
  const Json imp = Json::parse(gcjstyle::io::read_file(out / "importance.json"));
  double sum = 0;
  for (const Json& e : imp["importances"]) sum += e["importance"].get<double>();
  CHECK(std::abs(sum - 1.0) <= 1e-9);
  CHECK(count_lines(gcjstyle::io::read_file(out / "embedding.csv")) == 401);
  CHECK(count_lines(gcjstyle::io::read_file(out / "clusters.csv")) == 401);
  const Json d = Json::parse(gcjstyle::io::read_file(out / "dendrogram.json"));
  CHECK(d["merges"].size() == 399);

  const fs::path again = tmp.path() / "again";
  REQUIRE(cli({"cluster", "--features", csv.string(), "--out", again.string()}).code == 0);
  for (const char* f : {"embedding.csv", "dendrogram.json", "clusters.csv", "importance.json"}) {
    CHECK(gcjstyle::io::read_file(out / f) == gcjstyle::io::read_file(again / f));
  }
}

TEST_CASE("train: summary sorted by recall, metrics in range, chance-level dummy") {
  testing::TempDir tmp("cli_train");
  const fs::path csv = make_features(tmp.path(), "200", "0.2", "0");
  const fs::path out = tmp.path() / "report.json";
  const Run r = cli({"train", "--features", csv.string(), "--models", "Dummy,LR,DT", "--out",
                     out.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("Recall") != std::string::npos);
  const Json rep = Json::parse(gcjstyle::io::read_file(out));
  const Json& summary = rep["summary"];
  REQUIRE(summary.size() == 3);
  for (std::size_t i = 1; i < summary.size(); ++i) {
    CHECK(summary[i]["recall"].get<double>() <= summary[i - 1]["recall"].get<double>());
  }
  for (const Json& row : summary) {
    for (const char* k : {"recall", "macro_f1", "auc_roc", "balanced_accuracy"}) {
      CHECK(row[k].get<double>() >= 0.0);
      CHECK(row[k].get<double>() <= 1.0);
    }
    if (row["model"] == "Dummy") {
      CHECK(row["auc_roc"].get<double>() >= 0.4);
      CHECK(row["auc_roc"].get<double>() <= 0.6);
    }
  }
  const Json& report = rep["problems"][0]["reports"][0];
  CHECK(report["folds"].size() == 5);
  CHECK(report["confusion"].size() == 2);
  CHECK(fs::exists(fs::path(out.string() + ".run_manifest.json")));
}

TEST_CASE("train: too few positives exits 1 with guidance") {
  testing::TempDir tmp("cli_few");
  const fs::path csv = make_features(tmp.path(), "40", "0.05", "0");
  const fs::path out = tmp.path() / "r.json";
  const Run r = cli({"train", "--features", csv.string(), "--out", out.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("--k-folds") != std::string::npos);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("feature CSV schema is checked") {
  testing::TempDir tmp("cli_schema");
  const fs::path bad = tmp.path() / "bad.csv";
  gcjstyle::io::write_file_atomic(bad, "author_id,label\na,1\n");
  const Run r = cli({"train", "--features", bad.string(), "--out", (tmp.path() / "r.json").string()});
  CHECK(r.code == 1);
  CHECK(testing::error_code([&] { gcjstyle::cli::parse_feature_csv("author_id,label\na,1\n"); }) ==
        gcjstyle::ErrorCode::SchemaMismatch);
}

TEST_CASE("feature CSV round-trips") {
  gcjstyle::cli::FeatureTable t;
  t.author_ids = {"a", "b"};
  t.problem_ids = {"1001", "1001"};
  t.labels = {true, false};
  t.x = gcjstyle::Matrix(2, 30);
  for (std::size_t i = 0; i < 60; ++i) t.x.data()[i] = 0.1 * static_cast<double>(i);
  const std::string text = gcjstyle::cli::format_feature_csv(t);
  const auto back = gcjstyle::cli::parse_feature_csv(text);
  CHECK(back.author_ids == t.author_ids);
  CHECK(back.labels == t.labels);
  CHECK(gcjstyle::cli::format_feature_csv(back) == text);
}

}  // TEST_SUITE
