#include "gcjstyle/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "gcjstyle/error.hpp"

namespace gcjstyle::metrics {

ConfusionMatrix confusion(const std::vector<bool>& y_true,
                          const std::vector<bool>& y_pred) {
  if (y_true.size() != y_pred.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "confusion: " + std::to_string(y_true.size()) + " labels vs " +
                    std::to_string(y_pred.size()) + " predictions");
  }
  if (y_true.empty()) throw Error(ErrorCode::Empty, "confusion: no samples");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    if (y_true[i]) {
      (y_pred[i] ? cm.tp : cm.fn)++;
    } else {
      (y_pred[i] ? cm.fp : cm.tn)++;
    }
  }
  return cm;
}

namespace {

struct ClassScores {
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
  bool zero_division = false;
};

ClassScores score_positive_class(std::uint64_t tp, std::uint64_t fp,
                                 std::uint64_t fn) {
  ClassScores s;
  const double tpd = static_cast<double>(tp);
  s.zero_division = (tp + fn == 0) || (tp + fp == 0);
  s.recall = safe_ratio(tpd, static_cast<double>(tp + fn));
  s.precision = safe_ratio(tpd, static_cast<double>(tp + fp));
  const double denom = s.precision + s.recall;
  if (denom == 0.0) {
    s.zero_division = true;
    s.f1 = 0.0;
  } else {
    s.f1 = 2.0 * s.precision * s.recall / denom;
  }
  return s;
}

}  // namespace

MetricBundle classification_metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) {
    throw Error(ErrorCode::EmptyConfusion, "classification_metrics: empty");
  }
  const ClassScores pos = score_positive_class(cm.tp, cm.fp, cm.fn);
  const ClassScores neg = score_positive_class(cm.tn, cm.fn, cm.fp);
  MetricBundle m;
  m.recall_pos = pos.recall;
  m.recall_neg = neg.recall;
  m.precision_pos = pos.precision;
  m.f1_pos = pos.f1;
  m.f1_neg = neg.f1;
  m.macro_f1 = (pos.f1 + neg.f1) / 2.0;
  m.balanced_accuracy = (pos.recall + neg.recall) / 2.0;
  m.zero_division = pos.zero_division || neg.zero_division;
  return m;
}

double auc_roc(const std::vector<bool>& y_true, std::span<const double> scores) {
  if (y_true.size() != scores.size()) {
    throw Error(ErrorCode::LengthMismatch, "auc_roc: length mismatch");
  }
  const std::size_t n = y_true.size();
  const auto n_pos = static_cast<std::size_t>(
      std::count(y_true.begin(), y_true.end(), true));
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw Error(ErrorCode::OneClassOnly, "auc_roc: both classes required");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });

  // Midranks (1-based) summed over the positives.
  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double midrank = (static_cast<double>(i + 1) +
                            static_cast<double>(j + 1)) / 2.0;
    for (std::size_t t = i; t <= j; ++t) {
      if (y_true[order[t]]) rank_sum_pos += midrank;
    }
    i = j + 1;
  }
  const double np = static_cast<double>(n_pos);
  const double nn = static_cast<double>(n_neg);
  return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn);
}

}  // namespace gcjstyle::metrics
