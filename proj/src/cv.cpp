#include "gcjstyle/cv.hpp"

#include <algorithm>

#include "gcjstyle/error.hpp"
#include "gcjstyle/rng.hpp"

namespace gcjstyle::learn {

std::vector<std::size_t> FoldPlan::training_indices(std::size_t f) const {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < folds.size(); ++g) {
    if (g != f) out.insert(out.end(), folds[g].begin(), folds[g].end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

FoldPlan stratified_folds(const std::vector<bool>& y, std::size_t k,
                          std::uint64_t seed) {
  if (k < 2) throw Error(ErrorCode::InvalidConfig, "k-fold: k must be >= 2");
  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
  for (std::size_t i = 0; i < y.size(); ++i) (y[i] ? pos : neg).push_back(i);
  if (pos.size() < k || neg.size() < k) {
    throw Error(ErrorCode::TooFewSamplesPerClass,
                "k-fold: each class needs at least k = " + std::to_string(k) +
                    " samples (positives " + std::to_string(pos.size()) +
                    ", negatives " + std::to_string(neg.size()) + ")");
  }
  Rng rng(seed);
  rng.shuffle(pos);
  rng.shuffle(neg);

  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.folds.resize(k);
  std::size_t slot = 0;
  for (std::size_t i : pos) plan.folds[slot++ % k].push_back(i);
  for (std::size_t i : neg) plan.folds[slot++ % k].push_back(i);
  for (auto& f : plan.folds) std::sort(f.begin(), f.end());
  return plan;
}

FoldResult evaluate_split(const TrainConfig& config, const Matrix& x,
                          const std::vector<bool>& y,
                          const std::vector<std::size_t>& train_idx,
                          const std::vector<std::size_t>& test_idx) {
  const Matrix x_train = x.select_rows(train_idx);
  std::vector<bool> y_train;
  y_train.reserve(train_idx.size());
  for (std::size_t i : train_idx) y_train.push_back(y[i]);
  const Matrix x_test = x.select_rows(test_idx);
  std::vector<bool> y_test;
  y_test.reserve(test_idx.size());
  for (std::size_t i : test_idx) y_test.push_back(y[i]);

  const TrainedModel model = train(config, x_train, y_train);
  FoldResult r;
  r.test_indices = test_idx;
  r.warnings = model.warnings();
  r.confusion = metrics::confusion(y_test, model.predict_all(x_test));
  r.metrics = metrics::classification_metrics(r.confusion);
  const auto scores = model.score_all(x_test);
  r.metrics.auc_roc = metrics::auc_roc(y_test, scores);
  return r;
}

EvalReport cross_validate(const TrainConfig& config, const Matrix& x,
                          const std::vector<bool>& y, std::size_t k,
                          std::uint64_t seed) {
  if (x.rows() != y.size()) {
    throw Error(ErrorCode::LengthMismatch, "cross_validate: rows and labels differ");
  }
  EvalReport report;
  report.model = config.kind;
  report.config = config;
  report.plan = stratified_folds(y, k, seed);
  for (std::size_t f = 0; f < k; ++f) {
    TrainConfig fold_config = config;
    fold_config.seed = derive_seed(config.seed, f);
    FoldResult r = evaluate_split(fold_config, x, y, report.plan.training_indices(f),
                                  report.plan.folds[f]);
    report.pooled += r.confusion;
    report.zero_division = report.zero_division || r.metrics.zero_division;
    report.mean.recall += r.metrics.recall_pos;
    report.mean.macro_f1 += r.metrics.macro_f1;
    report.mean.auc_roc += r.metrics.auc_roc;
    report.mean.balanced_accuracy += r.metrics.balanced_accuracy;
    report.folds.push_back(std::move(r));
  }
  const double kk = static_cast<double>(k);
  report.mean.recall /= kk;
  report.mean.macro_f1 /= kk;
  report.mean.auc_roc /= kk;
  report.mean.balanced_accuracy /= kk;
  return report;
}

}  // namespace gcjstyle::learn
