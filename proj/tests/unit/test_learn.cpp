#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "gcjstyle/cv.hpp"
#include "gcjstyle/models.hpp"
#include "gcjstyle/resample.hpp"
#include "gcjstyle/rng.hpp"
#include "support.hpp"
#include "synth_dataset.hpp"

using namespace gcjstyle;
using namespace gcjstyle::learn;
using testing::error_code;

namespace {

/// n rows of d Gaussian features; the first `positives` rows are positive
/// and shifted by `shift` in every coordinate.
void gaussian_classes(std::size_t n, std::size_t positives, std::size_t d,
                      double shift, std::uint64_t seed, Matrix& x,
                      std::vector<bool>& y) {
  Rng rng(seed);
  x = Matrix(n, d);
  y.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = i < positives;
    for (std::size_t f = 0; f < d; ++f) {
      x(i, f) = rng.normal() + (y[i] ? shift : 0.0);
    }
  }
}

std::size_t count_true(const std::vector<bool>& v) {
  return static_cast<std::size_t>(std::count(v.begin(), v.end(), true));
}

}  // namespace

TEST_SUITE("learn") {

TEST_CASE("smote: two-point minority synthesizes on the segment") {
  Matrix x(5, 2);
  const double rows[5][2] = {{0, 0}, {1, 1}, {5, -5}, {6, -6}, {7, -7}};
  for (std::size_t i = 0; i < 5; ++i) {
    x(i, 0) = rows[i][0];
    x(i, 1) = rows[i][1];
  }
  const std::vector<bool> y = {true, true, false, false, false};
  const Resampled r = smote(x, y, 1, 3);
  REQUIRE(r.synthetic.size() == 1);
  CHECK(count_true(r.y) == 3);
  const auto s = r.x.row(r.x.rows() - 1);
  CHECK(s[0] == s[1]);
  CHECK(s[0] >= 0.0);
  CHECK(s[0] <= 1.0);
}

TEST_CASE("smote: 90/10 balances to 90/90 with convex synthetics") {
  Matrix x;
  std::vector<bool> y;
  gaussian_classes(100, 10, 4, 2.0, 1, x, y);
  const Resampled r = smote(x, y, 5, 7);
  CHECK(r.x.rows() == 180);
  CHECK(count_true(r.y) == 90);
  CHECK(r.synthetic.size() == 80);
  for (std::size_t i = 0; i < 100; ++i) {
    CHECK(r.source_index[i] == i);
    CHECK(r.y[i] == y[i]);
  }
  for (std::size_t s = 0; s < r.synthetic.size(); ++s) {
    const SyntheticOrigin& o = r.synthetic[s];
    CHECK(y[o.base]);
    CHECK(y[o.neighbor]);
    CHECK(o.base != o.neighbor);
    CHECK(o.u >= 0.0);
    CHECK(o.u <= 1.0);
    const auto row = r.x.row(100 + s);
    CHECK(r.y[100 + s]);
    for (std::size_t f = 0; f < 4; ++f) {
      const double expect = x(o.base, f) + o.u * (x(o.neighbor, f) - x(o.base, f));
      CHECK(row[f] == doctest::Approx(expect).epsilon(1e-12));
      CHECK(row[f] >= std::min(x(o.base, f), x(o.neighbor, f)) - 1e-12);
      CHECK(row[f] <= std::max(x(o.base, f), x(o.neighbor, f)) + 1e-12);
    }
  }
  const Resampled again = smote(x, y, 5, 7);
  CHECK(again.x == r.x);
  CHECK(smote(x, y, 5, 8).x != r.x);
}

TEST_CASE("smote: neighbours are the nearest minority rows") {
  Matrix x;
  std::vector<bool> y;
  gaussian_classes(60, 8, 3, 1.0, 2, x, y);
  const Resampled r = smote(x, y, 2, 1);
  for (const SyntheticOrigin& o : r.synthetic) {
    // The neighbour must be among the two closest other positives.
    std::vector<std::pair<double, std::size_t>> d;
    for (std::size_t j = 0; j < 8; ++j) {
      if (j != o.base) d.push_back({squared_distance(x.row(o.base), x.row(j)), j});
    }
    std::sort(d.begin(), d.end());
    CHECK((o.neighbor == d[0].second || o.neighbor == d[1].second));
  }
}

TEST_CASE("smote: k clamping and errors") {
  Matrix x;
  std::vector<bool> y;
  gaussian_classes(20, 3, 2, 1.0, 3, x, y);
  const Resampled r = smote(x, y, 5, 1);
  CHECK(count_true(r.y) == 17);
  CHECK_FALSE(r.warnings.empty());
  gaussian_classes(20, 1, 2, 1.0, 3, x, y);
  CHECK(error_code([&] { smote(x, y, 5, 1); }) == ErrorCode::MinorityTooSmall);
}

TEST_CASE("random undersample: 90/10 -> 10/10") {
  Matrix x;
  std::vector<bool> y;
  gaussian_classes(100, 10, 3, 1.0, 4, x, y);
  const Resampled r = random_undersample(x, y, 11);
  CHECK(r.x.rows() == 20);
  CHECK(count_true(r.y) == 10);
  std::set<std::size_t> kept(r.source_index.begin(), r.source_index.end());
  CHECK(kept.size() == 20);
  for (std::size_t i = 0; i < 10; ++i) CHECK(kept.count(i) == 1);
  for (std::size_t k = 0; k < r.source_index.size(); ++k) {
    const std::size_t i = r.source_index[k];
    CHECK(i < 100);
    CHECK(r.y[k] == y[i]);
    CHECK(r.x.row(k)[0] == x(i, 0));
  }
  CHECK(random_undersample(x, y, 11).source_index == r.source_index);

  gaussian_classes(20, 10, 3, 1.0, 4, x, y);
  const Resampled same = random_undersample(x, y, 1);
  CHECK(same.x.rows() == 20);

  gaussian_classes(20, 0, 3, 1.0, 4, x, y);
  CHECK(error_code([&] { random_undersample(x, y, 1); }) == ErrorCode::EmptyClass);
}

TEST_CASE("decision tree fits 8 separable points exactly") {
  Matrix x(8, 2);
  std::vector<bool> y(8);
  for (std::size_t i = 0; i < 8; ++i) {
    x(i, 0) = static_cast<double>(i);
    x(i, 1) = static_cast<double>((i * 5) % 8);
    y[i] = i >= 3;
  }
  TrainConfig c = TrainConfig::defaults(ModelKind::DecisionTree, 1);
  c.resampler = Resampler::None;
  const TrainedModel m = train(c, x, y);
  CHECK(m.predict_all(x) == y);
}

TEST_CASE("balanced random forest bootstraps are balanced") {
  Matrix x;
  std::vector<bool> y;
  gaussian_classes(120, 15, 5, 1.0, 5, x, y);
  const TrainedModel m = train(TrainConfig::defaults(ModelKind::BalancedRandomForest, 3), x, y);
  REQUIRE(m.forest() != nullptr);
  CHECK(m.forest()->trees().size() == 100);
  for (const auto& counts : m.forest()->bootstrap_class_counts()) {
    CHECK(counts[0] == 15);
    CHECK(counts[1] == 15);
  }
}

TEST_CASE("forest prediction is the exact majority vote") {
  Matrix x;
  std::vector<bool> y;
  gaussian_classes(150, 40, 4, 0.7, 6, x, y);
  for (ModelKind kind : {ModelKind::RandomForest, ModelKind::BalancedRandomForest}) {
    const TrainedModel m = train(TrainConfig::defaults(kind, 4), x, y);
    std::vector<double> z(4);
    for (std::size_t i = 0; i < x.rows(); ++i) {
      m.standardizer().apply(x.row(i), z);
      std::size_t pos = 0;
      for (const DecisionTree& t : m.forest()->trees()) pos += t.predict(z) == 1 ? 1 : 0;
      const std::size_t neg = m.forest()->trees().size() - pos;
      CHECK(m.predict(x.row(i)) == (pos > neg));
      CHECK(m.score(x.row(i)) == doctest::Approx(static_cast<double>(pos) / 100.0));
    }
  }
}

TEST_CASE("stratified dummy matches the training prior") {
  Matrix x;
  std::vector<bool> y;
  gaussian_classes(200, 20, 3, 0.0, 7, x, y);
  TrainConfig c = TrainConfig::defaults(ModelKind::Dummy, 9);
  c.resampler = Resampler::None;
  const TrainedModel m = train(c, x, y);
  Rng rng(10);
  Matrix probe(10000, 3);
  for (double& v : probe.data()) v = rng.normal();
  const auto pred = m.predict_all(probe);
  const double rate = static_cast<double>(count_true(pred)) / 10000.0;
  CHECK(std::abs(rate - 0.1) <= 0.02);
  CHECK(m.predict_all(probe) == pred);
}

TEST_CASE("logistic regression loss never increases") {
  Matrix x;
  std::vector<bool> y;
  gaussian_classes(200, 50, 6, 0.8, 8, x, y);
  const TrainedModel m = train(TrainConfig::defaults(ModelKind::LogisticRegression, 1), x, y);
  const auto& h = m.loss_history();
  REQUIRE(h.size() >= 2);
  for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i] <= h[i - 1]);
  CHECK(h.back() < h.front());
}

TEST_CASE("RUS AdaBoost weights stay a distribution") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Matrix x;
    std::vector<bool> y;
    gaussian_classes(200, 25, 5, 0.6, seed, x, y);
    const TrainedModel m = train(TrainConfig::defaults(ModelKind::RUSAdaBoost, seed), x, y);
    CHECK_FALSE(m.boost_weight_sums().empty());
    for (double s : m.boost_weight_sums()) CHECK(std::abs(s - 1.0) <= 1e-9);
    const auto& e = m.boost_errors();
    CHECK(e.size() <= 50);
    for (std::size_t r = 0; r + 1 < e.size(); ++r) CHECK(e[r] < 0.5);
    if (!e.empty() && e.back() >= 0.5) CHECK(e.size() <= 50);
    for (std::size_t i = 0; i < x.rows(); ++i) {
      const double s = m.score(x.row(i));
      CHECK(s >= 0.0);
      CHECK(s <= 1.0);
    }
  }
}

TEST_CASE("every model is deterministic and scores in [0, 1]") {
  Matrix x;
  std::vector<bool> y;
  gaussian_classes(120, 20, 5, 1.0, 12, x, y);
  Matrix probe;
  std::vector<bool> unused;
  gaussian_classes(40, 10, 5, 1.0, 13, probe, unused);
  for (ModelKind kind : kAllModels) {
    CAPTURE(model_name(kind));
    const TrainConfig c = TrainConfig::defaults(kind, 21);
    const TrainedModel a = train(c, x, y);
    const TrainedModel b = train(c, x, y);
    CHECK(a.score_all(probe) == b.score_all(probe));
    CHECK(a.predict_all(probe) == b.predict_all(probe));
    for (double s : a.score_all(probe)) {
      CHECK(s >= 0.0);
      CHECK(s <= 1.0);
    }
    TrainConfig serial = c;
    serial.parallel = false;
    CHECK(train(serial, x, y).score_all(probe) == a.score_all(probe));
  }
}

TEST_CASE("standardizer uses training statistics; constants map to 0") {
  Matrix x(4, 2);
  for (std::size_t i = 0; i < 4; ++i) {
    x(i, 0) = static_cast<double>(i);
    x(i, 1) = 3.0;
  }
  const Standardizer s = Standardizer::fit(x);
  CHECK(s.mean[0] == 1.5);
  CHECK(s.scale[1] == 0.0);
  Matrix other(1, 2);
  other(0, 0) = 1.5;
  other(0, 1) = 100.0;
  const Matrix z = s.apply(other);
  CHECK(z(0, 0) == 0.0);
  CHECK(z(0, 1) == 0.0);
}

TEST_CASE("training errors") {
  Matrix x;
  std::vector<bool> y;
  gaussian_classes(20, 0, 2, 0.0, 1, x, y);
  CHECK(error_code([&] { train(TrainConfig::defaults(ModelKind::LogisticRegression), x, y); }) ==
        ErrorCode::SingleClassTraining);
  gaussian_classes(20, 5, 2, 0.0, 1, x, y);
  TrainConfig brf = TrainConfig::defaults(ModelKind::BalancedRandomForest);
  brf.resampler = Resampler::SMOTE;
  CHECK(error_code([&] { train(brf, x, y); }) == ErrorCode::InvalidConfig);
  TrainConfig ada = TrainConfig::defaults(ModelKind::RUSAdaBoost);
  ada.resampler = Resampler::RandomUnderSample;
  CHECK(error_code([&] { train(ada, x, y); }) == ErrorCode::InvalidConfig);
  Matrix bad = x;
  bad(3, 1) = std::numeric_limits<double>::infinity();
  CHECK(error_code([&] { train(TrainConfig::defaults(ModelKind::KNN), bad, y); }) ==
        ErrorCode::NonFiniteInput);
  y.pop_back();
  CHECK(error_code([&] { train(TrainConfig::defaults(ModelKind::KNN), x, y); }) ==
        ErrorCode::LengthMismatch);
}

TEST_CASE("model names round-trip") {
  for (ModelKind kind : kAllModels) CHECK(parse_model(model_name(kind)) == kind);
  CHECK(parse_model("logisticregression") == ModelKind::LogisticRegression);
  CHECK(parse_model("rusada") == ModelKind::RUSAdaBoost);
  CHECK_FALSE(parse_model("svm").has_value());
  CHECK(default_resampler(ModelKind::BalancedRandomForest) == Resampler::None);
  CHECK(default_resampler(ModelKind::RUSAdaBoost) == Resampler::None);
  CHECK(default_resampler(ModelKind::KNN) == Resampler::SMOTE);
}

TEST_CASE("stratified folds partition the rows") {
  std::vector<bool> y(100, false);
  for (std::size_t i = 0; i < 10; ++i) y[i * 7] = true;
  const FoldPlan plan = stratified_folds(y, 5, 3);
  REQUIRE(plan.folds.size() == 5);
  std::vector<int> seen(100, 0);
  for (std::size_t f = 0; f < 5; ++f) {
    const auto& fold = plan.folds[f];
    CHECK(std::is_sorted(fold.begin(), fold.end()));
    CHECK(fold.size() == 20);
    std::size_t pos = 0;
    for (std::size_t i : fold) {
      ++seen[i];
      pos += y[i] ? 1 : 0;
    }
    CHECK(pos == 2);
    const auto train_idx = plan.training_indices(f);
    CHECK(train_idx.size() == 80);
    for (std::size_t i : train_idx) CHECK_FALSE(std::binary_search(fold.begin(), fold.end(), i));
  }
  for (int s : seen) CHECK(s == 1);
  CHECK(stratified_folds(y, 5, 3).folds == plan.folds);
  CHECK(stratified_folds(y, 5, 4).folds != plan.folds);

  CHECK(error_code([&] { stratified_folds(y, 1, 3); }) == ErrorCode::InvalidConfig);
  CHECK(error_code([&] { stratified_folds(y, 11, 3); }) == ErrorCode::TooFewSamplesPerClass);
}

TEST_CASE("uneven folds differ by at most one") {
  std::vector<bool> y(53, false);
  for (std::size_t i = 0; i < 13; ++i) y[i] = true;
  const FoldPlan plan = stratified_folds(y, 5, 1);
  std::size_t lo = 100, hi = 0, plo = 100, phi = 0;
  for (const auto& fold : plan.folds) {
    lo = std::min(lo, fold.size());
    hi = std::max(hi, fold.size());
    std::size_t pos = 0;
    for (std::size_t i : fold) pos += y[i] ? 1 : 0;
    plo = std::min(plo, pos);
    phi = std::max(phi, pos);
  }
  CHECK(hi - lo <= 1);
  CHECK(phi - plo <= 1);
}

TEST_CASE("cross validation reports folds, means and pooled counts") {
  Matrix x;
  std::vector<bool> y;
  gaussian_classes(100, 20, 4, 1.5, 14, x, y);
  const EvalReport r = cross_validate(TrainConfig::defaults(ModelKind::LogisticRegression, 2), x, y, 5, 2);
  REQUIRE(r.folds.size() == 5);
  double recall = 0;
  std::uint64_t total = 0;
  for (const FoldResult& f : r.folds) {
    recall += f.metrics.recall_pos;
    total += f.confusion.total();
    for (std::size_t i : f.test_indices) CHECK(i < 100);
  }
  CHECK(r.mean.recall == doctest::Approx(recall / 5));
  CHECK(total == 100);
  CHECK(r.pooled.total() == 100);
  CHECK(r.pooled.tp + r.pooled.fn == 20);
  CHECK(r.mean.auc_roc > 0.9);
}

TEST_CASE("evaluation rows never reach training") {
  Matrix x;
  std::vector<bool> y;
  gaussian_classes(80, 20, 3, 2.0, 15, x, y);
  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> test_idx;
  for (std::size_t i = 0; i < 80; ++i) (i % 4 == 0 ? test_idx : train_idx).push_back(i);
  const TrainConfig c = TrainConfig::defaults(ModelKind::KNN, 1);
  const FoldResult clean = evaluate_split(c, x, y, train_idx, test_idx);

  // Flipping test labels leaves every prediction unchanged, so each cell
  // moves to its label-flipped partner: the model cannot have seen them.
  std::vector<bool> flipped = y;
  for (std::size_t i : test_idx) flipped[i] = !y[i];
  const FoldResult other = evaluate_split(c, x, flipped, train_idx, test_idx);
  CHECK(other.confusion.tp == clean.confusion.fp);
  CHECK(other.confusion.fp == clean.confusion.tp);
  CHECK(other.confusion.tn == clean.confusion.fn);
  CHECK(other.confusion.fn == clean.confusion.tn);

  // Rows outside both index lists are invisible: plant absurd values there
  // and compare with a model trained on the training rows alone.
  Matrix planted = x;
  std::vector<bool> planted_y = y;
  for (std::size_t i = 0; i < 10; ++i) {
    const double junk[3] = {1e6, -1e6, 1e6};
    planted.append_row(junk);
    planted_y.push_back(i % 2 == 0);
  }
  const FoldResult with_junk = evaluate_split(c, planted, planted_y, train_idx, test_idx);
  CHECK(with_junk.confusion == clean.confusion);
  Matrix train_x(0, 3);
  std::vector<bool> train_y;
  for (std::size_t i : train_idx) {
    train_x.append_row(x.row(i));
    train_y.push_back(y[i]);
  }
  const TrainedModel alone = train(c, train_x, train_y);
  metrics::ConfusionMatrix expect;
  for (std::size_t i : test_idx) {
    const bool p = alone.predict(x.row(i));
    if (p && y[i]) ++expect.tp;
    if (p && !y[i]) ++expect.fp;
    if (!p && y[i]) ++expect.fn;
    if (!p && !y[i]) ++expect.tn;
  }
  CHECK(clean.confusion == expect);
}

TEST_CASE("perfectly coupled synthetic data is separable for LR") {
  corpus::SyntheticOptions o;
  o.n_authors = 400;
  o.positive_rate = 0.1;
  o.skill_style_coupling = 1.0;
  o.seed = 5;
  const testdata::Dataset d = testdata::synthetic_dataset(o);
  const EvalReport r = cross_validate(TrainConfig::defaults(ModelKind::LogisticRegression, 5), d.x, d.y, 5, 5);
  CHECK(r.mean.auc_roc >= 0.95);
}

TEST_CASE("too few samples per class") {
  Matrix x;
  std::vector<bool> y;
  gaussian_classes(50, 3, 2, 1.0, 16, x, y);
  CHECK(error_code([&] { cross_validate(TrainConfig::defaults(ModelKind::DecisionTree), x, y, 5, 1); }) ==
        ErrorCode::TooFewSamplesPerClass);
}

}  // TEST_SUITE
