#include <doctest.h>

#include <random>

#include "gcjstyle/error.hpp"
#include "gcjstyle/metrics.hpp"

using namespace gcjstyle;
using namespace gcjstyle::metrics;

namespace {

// O(n^2) pair counting: P(score_pos > score_neg) + 0.5 P(tie).
double auc_pairs(const std::vector<bool>& y, const std::vector<double>& s) {
  double wins = 0;
  double pairs = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!y[i]) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j]) continue;
      pairs += 1;
      if (s[i] > s[j]) wins += 1;
      else if (s[i] == s[j]) wins += 0.5;
    }
  }
  return wins / pairs;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("confusion counts") {
  const ConfusionMatrix cm = confusion({true, true, false, false, true}, {true, false, false, true, true});
  CHECK(cm.tp == 2);
  CHECK(cm.fn == 1);
  CHECK(cm.tn == 1);
  CHECK(cm.fp == 1);
  CHECK(cm.total() == 5);
  CHECK(cm.swapped().tp == 1);
}

TEST_CASE("perfect predictions") {
  const MetricBundle m = classification_metrics(confusion({true, false, true}, {true, false, true}));
  CHECK(m.recall_pos == 1.0);
  CHECK(m.macro_f1 == 1.0);
  CHECK(m.balanced_accuracy == 1.0);
  CHECK_FALSE(m.zero_division);
}

TEST_CASE("all-negative predictions define zero ratios as 0") {
  const MetricBundle m = classification_metrics(confusion({true, false, false, false}, {false, false, false, false}));
  CHECK(m.recall_pos == 0.0);
  CHECK(m.precision_pos == 0.0);
  CHECK(m.f1_pos == 0.0);
  CHECK(m.recall_neg == 1.0);
  CHECK(m.f1_neg == doctest::Approx(6.0 / 7.0));
  CHECK(m.balanced_accuracy == 0.5);
  CHECK(m.zero_division);
}

TEST_CASE("auc examples") {
  CHECK(auc_roc({true, true, false, false}, std::vector<double>{0.9, 0.8, 0.2, 0.1}) == 1.0);
  CHECK(auc_roc({true, true, false, false}, std::vector<double>{0.1, 0.2, 0.8, 0.9}) == 0.0);
  CHECK(auc_roc({true, false}, std::vector<double>{0.5, 0.5}) == 0.5);
  CHECK(auc_roc({true, false, true, false}, std::vector<double>{0.3, 0.3, 0.9, 0.1}) == 0.875);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(confusion({true}, {true, false}), Error);
  CHECK_THROWS_AS(confusion({}, {}), Error);
  CHECK_THROWS_AS(classification_metrics(ConfusionMatrix{}), Error);
  CHECK_THROWS_AS(auc_roc({true, true}, std::vector<double>{0.1, 0.2}), Error);
  try {
    auc_roc({false}, std::vector<double>{0.1});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OneClassOnly);
  }
}

TEST_CASE("oracle agreement on random sets") {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + gen() % 60;
    std::vector<bool> y(n);
    std::vector<bool> p(n);
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = gen() % 3 == 0;
      p[i] = gen() % 2 == 0;
      s[i] = static_cast<double>(gen() % 7) / 7.0;  // many ties
    }
    y[0] = true;
    y[1] = false;
    const ConfusionMatrix cm = confusion(y, p);
    std::uint64_t tp = 0;
    for (std::size_t i = 0; i < n; ++i) tp += y[i] && p[i];
    CHECK(cm.tp == tp);
    CHECK(std::abs(auc_roc(y, s) - auc_pairs(y, s)) <= 1e-12);
  }
}

}  // TEST_SUITE
