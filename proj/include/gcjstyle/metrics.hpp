#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gcjstyle::metrics {

struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const noexcept { return tp + fp + tn + fn; }

  ConfusionMatrix& operator+=(const ConfusionMatrix& o) noexcept {
    tp += o.tp;
    fp += o.fp;
    tn += o.tn;
    fn += o.fn;
    return *this;
  }

  /// Same matrix with the positive and negative roles exchanged.
  ConfusionMatrix swapped() const noexcept { return {tn, fn, tp, fp}; }

  friend bool operator==(const ConfusionMatrix&,
                         const ConfusionMatrix&) = default;
};

struct MetricBundle {
  double recall_pos = 0.0;
  double recall_neg = 0.0;
  double precision_pos = 0.0;
  double f1_pos = 0.0;
  double f1_neg = 0.0;
  double macro_f1 = 0.0;
  double balanced_accuracy = 0.0;
  double auc_roc = 0.0;
  /// Set when some ratio had a zero denominator and was defined as 0.
  bool zero_division = false;
};

/// Throws LengthMismatch or Empty.
ConfusionMatrix confusion(const std::vector<bool>& y_true,
                          const std::vector<bool>& y_pred);

/// Everything except auc_roc. Ratios with zero denominators are 0.
/// Throws EmptyConfusion.
MetricBundle classification_metrics(const ConfusionMatrix& cm);

/// Mann-Whitney AUC with midrank tie correction. Throws OneClassOnly or
/// LengthMismatch.
double auc_roc(const std::vector<bool>& y_true, std::span<const double> scores);

/// Zero-denominator ratio: num / den, or 0 when den == 0.
inline double safe_ratio(double num, double den) noexcept {
  return den == 0.0 ? 0.0 : num / den;
}

}  // namespace gcjstyle::metrics
