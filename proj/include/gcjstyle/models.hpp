#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gcjstyle/forest.hpp"
#include "gcjstyle/matrix.hpp"
#include "gcjstyle/tree.hpp"

namespace gcjstyle::learn {

enum class ModelKind {
  Dummy,
  LogisticRegression,
  LinearSVC,
  KNN,
  DecisionTree,
  RandomForest,
  BalancedRandomForest,
  RUSAdaBoost,
};

inline constexpr ModelKind kAllModels[] = {
    ModelKind::Dummy,        ModelKind::LogisticRegression,
    ModelKind::LinearSVC,    ModelKind::KNN,
    ModelKind::DecisionTree, ModelKind::RandomForest,
    ModelKind::BalancedRandomForest, ModelKind::RUSAdaBoost};

enum class Resampler { None, SMOTE, RandomUnderSample };

/// Short report name: Dummy, LR, SVC, KNN, DT, RF, BRF, RUSAda.
std::string_view model_name(ModelKind kind);
/// Accepts the short names and the enumerator spellings, case-insensitive.
std::optional<ModelKind> parse_model(std::string_view name);
std::string_view resampler_name(Resampler r);

/// SMOTE for everything except BRF and RUSAda, which balance internally.
Resampler default_resampler(ModelKind kind);

struct TrainConfig {
  ModelKind kind = ModelKind::Dummy;
  Resampler resampler = Resampler::SMOTE;
  std::uint64_t seed = 42;

  double lr_lambda = 1e-4;
  int lr_max_epochs = 500;
  double lr_tolerance = 1e-6;

  double svc_lambda = 1e-4;
  int svc_epochs = 200;
  /// Step size is 1 / (lambda * (t + t0)).
  double svc_t0 = 1e4;

  std::size_t knn_k = 5;

  std::size_t n_trees = 100;

  int boost_rounds = 50;
  int boost_depth = 3;

  std::size_t smote_k = 5;

  bool parallel = true;

  static TrainConfig defaults(ModelKind kind, std::uint64_t seed = 42);
};

/// Per-feature z-scoring fitted on training rows. Features that are
/// constant on the training rows map to 0 everywhere.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;  // 0 marks a constant feature

  static Standardizer fit(const Matrix& x);
  Matrix apply(const Matrix& x) const;
  void apply(std::span<const double> in, std::span<double> out) const;
};

class TrainedModel {
 public:
  ModelKind kind() const { return config_.kind; }
  const TrainConfig& config() const { return config_; }
  const Standardizer& standardizer() const { return standardizer_; }

  /// Score in [0, 1]; higher means more likely positive. Input is raw
  /// (unstandardized) features.
  double score(std::span<const double> row) const;
  bool predict(std::span<const double> row) const;
  std::vector<double> score_all(const Matrix& x) const;
  std::vector<bool> predict_all(const Matrix& x) const;

  // Introspection.
  const std::vector<double>& loss_history() const { return loss_history_; }
  const std::vector<double>& boost_weight_sums() const { return weight_sums_; }
  const std::vector<double>& boost_errors() const { return boost_errors_; }
  const RandomForest* forest() const { return forest_.get(); }
  /// Class counts (negatives, positives) of the data the model saw after
  /// resampling.
  std::size_t fitted_negatives() const { return fitted_neg_; }
  std::size_t fitted_positives() const { return fitted_pos_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  friend TrainedModel train(const TrainConfig&, const Matrix&,
                            const std::vector<bool>&);

  double score_standardized(std::span<const double> z) const;
  bool predict_standardized(std::span<const double> z) const;

  TrainConfig config_;
  Standardizer standardizer_;

  double prior_ = 0.0;                 // Dummy
  std::vector<double> weights_;        // LR, SVC
  double bias_ = 0.0;                  // LR, SVC
  Matrix train_x_;                     // KNN
  std::vector<bool> train_y_;          // KNN
  std::shared_ptr<DecisionTree> tree_;      // DT
  std::shared_ptr<RandomForest> forest_;    // RF, BRF
  std::vector<DecisionTree> stumps_;   // RUSAda
  std::vector<double> alphas_;         // RUSAda

  std::vector<double> loss_history_;
  std::vector<double> weight_sums_;
  std::vector<double> boost_errors_;
  std::size_t fitted_neg_ = 0;
  std::size_t fitted_pos_ = 0;
  std::vector<std::string> warnings_;
};

/// Standardizes with training statistics, applies the resampler, fits.
/// Throws SingleClassTraining, NonFiniteInput, LengthMismatch,
/// InvalidConfig (resampler on BRF/RUSAda) and resampling errors.
TrainedModel train(const TrainConfig& config, const Matrix& x,
                   const std::vector<bool>& y);

}  // namespace gcjstyle::learn
