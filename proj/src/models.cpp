#include "gcjstyle/models.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <numeric>

#include "gcjstyle/error.hpp"
#include "gcjstyle/resample.hpp"
#include "gcjstyle/rng.hpp"

namespace gcjstyle::learn {

namespace {

constexpr std::string_view kShortNames[] = {"Dummy", "LR", "SVC",  "KNN",
                                            "DT",    "RF", "BRF", "RUSAda"};
constexpr std::string_view kLongNames[] = {
    "Dummy",        "LogisticRegression", "LinearSVC",
    "KNN",          "DecisionTree",       "RandomForest",
    "BalancedRandomForest", "RUSAdaBoost"};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

double sigmoid(double m) {
  if (m >= 0.0) return 1.0 / (1.0 + std::exp(-m));
  const double e = std::exp(m);
  return e / (1.0 + e);
}

// log(1 + exp(-m)) without overflow.
double softplus_neg(double m) {
  return m > 0.0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<int> as_classes(const std::vector<bool>& y) {
  std::vector<int> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] ? 1 : 0;
  return out;
}

struct LrState {
  std::vector<double> w;
  double b = 0.0;
};

double lr_loss(const Matrix& x, const std::vector<bool>& y, const LrState& s,
               double lambda) {
  double loss = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double m = dot(x.row(i), s.w) + s.b;
    loss += softplus_neg(y[i] ? m : -m);
  }
  loss /= static_cast<double>(x.rows());
  return loss + 0.5 * lambda * dot(s.w, s.w);
}

void fit_logistic(const Matrix& x, const std::vector<bool>& y,
                  const TrainConfig& cfg, std::vector<double>& weights,
                  double& bias, std::vector<double>& history) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  LrState s{std::vector<double>(d, 0.0), 0.0};
  double loss = lr_loss(x, y, s, cfg.lr_lambda);
  history.push_back(loss);
  double step = 1.0;
  std::vector<double> gw(d);
  for (int epoch = 0; epoch < cfg.lr_max_epochs; ++epoch) {
    std::fill(gw.begin(), gw.end(), 0.0);
    double gb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto xi = x.row(i);
      const double r = sigmoid(dot(xi, s.w) + s.b) - (y[i] ? 1.0 : 0.0);
      for (std::size_t f = 0; f < d; ++f) gw[f] += r * xi[f];
      gb += r;
    }
    double gnorm2 = gb * gb / static_cast<double>(n * n);
    for (std::size_t f = 0; f < d; ++f) {
      gw[f] = gw[f] / static_cast<double>(n) + cfg.lr_lambda * s.w[f];
      gnorm2 += gw[f] * gw[f];
    }
    gb /= static_cast<double>(n);
    if (std::sqrt(gnorm2) < cfg.lr_tolerance) break;

    // Armijo backtracking; only accept steps that decrease the loss.
    LrState next;
    double next_loss = loss;
    bool accepted = false;
    for (; step > 1e-16; step /= 2.0) {
      next.w = s.w;
      for (std::size_t f = 0; f < d; ++f) next.w[f] -= step * gw[f];
      next.b = s.b - step * gb;
      next_loss = lr_loss(x, y, next, cfg.lr_lambda);
      if (next_loss <= loss - 1e-4 * step * gnorm2) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    s = std::move(next);
    loss = next_loss;
    history.push_back(loss);
    step = std::min(step * 2.0, 64.0);
  }
  weights = std::move(s.w);
  bias = s.b;
}

void fit_svc(const Matrix& x, const std::vector<bool>& y, const TrainConfig& cfg,
             std::vector<double>& weights, double& bias) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  weights.assign(d, 0.0);
  bias = 0.0;
  Rng rng(derive_seed(cfg.seed, 0x5ec));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  double t = 0.0;
  for (int epoch = 0; epoch < cfg.svc_epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t i : order) {
      const double eta = 1.0 / (cfg.svc_lambda * (t + cfg.svc_t0));
      t += 1.0;
      const auto xi = x.row(i);
      const double label = y[i] ? 1.0 : -1.0;
      const double margin = label * (dot(xi, weights) + bias);
      const double shrink = 1.0 - eta * cfg.svc_lambda;
      for (double& w : weights) w *= shrink;
      if (margin < 1.0) {
        for (std::size_t f = 0; f < d; ++f) weights[f] += eta * label * xi[f];
        bias += eta * label;
      }
    }
  }
}

}  // namespace

std::string_view model_name(ModelKind kind) {
  return kShortNames[static_cast<std::size_t>(kind)];
}

std::optional<ModelKind> parse_model(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kShortNames); ++i) {
    if (iequals(name, kShortNames[i]) || iequals(name, kLongNames[i])) {
      return static_cast<ModelKind>(i);
    }
  }
  return std::nullopt;
}

std::string_view resampler_name(Resampler r) {
  switch (r) {
    case Resampler::None: return "None";
    case Resampler::SMOTE: return "SMOTE";
    case Resampler::RandomUnderSample: return "RandomUnderSample";
  }
  return "?";
}

Resampler default_resampler(ModelKind kind) {
  return kind == ModelKind::BalancedRandomForest || kind == ModelKind::RUSAdaBoost
             ? Resampler::None
             : Resampler::SMOTE;
}

TrainConfig TrainConfig::defaults(ModelKind kind, std::uint64_t seed) {
  TrainConfig c;
  c.kind = kind;
  c.resampler = default_resampler(kind);
  c.seed = seed;
  return c;
}

Standardizer Standardizer::fit(const Matrix& x) {
  Standardizer s;
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  s.mean.assign(d, 0.0);
  s.scale.assign(d, 0.0);
  if (n == 0) return s;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t f = 0; f < d; ++f) s.mean[f] += x(i, f);
  }
  for (double& m : s.mean) m /= static_cast<double>(n);
  for (std::size_t f = 0; f < d; ++f) {
    double var = 0.0;
    bool constant = true;
    for (std::size_t i = 0; i < n; ++i) {
      const double dv = x(i, f) - s.mean[f];
      var += dv * dv;
      if (x(i, f) != x(0, f)) constant = false;
    }
    s.scale[f] = constant ? 0.0 : std::sqrt(var / static_cast<double>(n));
  }
  return s;
}

void Standardizer::apply(std::span<const double> in, std::span<double> out) const {
  for (std::size_t f = 0; f < mean.size(); ++f) {
    out[f] = scale[f] == 0.0 ? 0.0 : (in[f] - mean[f]) / scale[f];
  }
}

Matrix Standardizer::apply(const Matrix& x) const {
  Matrix z(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) apply(x.row(i), z.row(i));
  return z;
}

double TrainedModel::score_standardized(std::span<const double> z) const {
  switch (config_.kind) {
    case ModelKind::Dummy: {
      // Deterministic "coin" keyed by the seed and the row contents.
      std::uint64_t h = mix64(config_.seed);
      for (double v : z) h = mix64(h ^ std::bit_cast<std::uint64_t>(v));
      const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
      return u < prior_ ? 1.0 : 0.0;
    }
    case ModelKind::LogisticRegression:
    case ModelKind::LinearSVC:
      return sigmoid(dot(z, weights_) + bias_);
    case ModelKind::KNN: {
      const std::size_t k = std::min(config_.knn_k, train_x_.rows());
      std::vector<std::pair<double, std::size_t>> cand(train_x_.rows());
      for (std::size_t i = 0; i < train_x_.rows(); ++i) {
        cand[i] = {squared_distance(z, train_x_.row(i)), i};
      }
      std::partial_sort(cand.begin(), cand.begin() + static_cast<long>(k), cand.end());
      std::size_t pos = 0;
      for (std::size_t t = 0; t < k; ++t) pos += train_y_[cand[t].second] ? 1 : 0;
      return static_cast<double>(pos) / static_cast<double>(k);
    }
    case ModelKind::DecisionTree: {
      const auto dist = tree_->predict_proba(z);
      return dist.size() > 1 ? dist[1] : 0.0;
    }
    case ModelKind::RandomForest:
    case ModelKind::BalancedRandomForest:
      return forest_->positive_vote_fraction(z);
    case ModelKind::RUSAdaBoost: {
      double num = 0.0;
      double den = 0.0;
      for (std::size_t t = 0; t < stumps_.size(); ++t) {
        if (stumps_[t].predict(z) == 1) num += alphas_[t];
        den += alphas_[t];
      }
      return den > 0.0 ? num / den : 0.0;
    }
  }
  return 0.0;
}

bool TrainedModel::predict_standardized(std::span<const double> z) const {
  switch (config_.kind) {
    case ModelKind::RandomForest:
    case ModelKind::BalancedRandomForest:
      return forest_->predict(z) == 1;
    case ModelKind::DecisionTree:
      return tree_->predict(z) == 1;
    default:
      return score_standardized(z) >= 0.5;
  }
}

double TrainedModel::score(std::span<const double> row) const {
  std::vector<double> z(row.size());
  standardizer_.apply(row, z);
  return score_standardized(z);
}

bool TrainedModel::predict(std::span<const double> row) const {
  std::vector<double> z(row.size());
  standardizer_.apply(row, z);
  return predict_standardized(z);
}

std::vector<double> TrainedModel::score_all(const Matrix& x) const {
  std::vector<double> out(x.rows());
  std::vector<double> z(x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    standardizer_.apply(x.row(i), z);
    out[i] = score_standardized(z);
  }
  return out;
}

std::vector<bool> TrainedModel::predict_all(const Matrix& x) const {
  std::vector<bool> out(x.rows());
  std::vector<double> z(x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    standardizer_.apply(x.row(i), z);
    out[i] = predict_standardized(z);
  }
  return out;
}

TrainedModel train(const TrainConfig& config, const Matrix& x,
                   const std::vector<bool>& y) {
  if (x.rows() != y.size()) {
    throw Error(ErrorCode::LengthMismatch, "train: rows and labels differ");
  }
  if (!x.all_finite()) {
    throw Error(ErrorCode::NonFiniteInput, "train: non-finite feature value");
  }
  const auto positives = static_cast<std::size_t>(std::count(y.begin(), y.end(), true));
  if (positives == 0 || positives == y.size()) {
    throw Error(ErrorCode::SingleClassTraining,
                "train: training data must contain both classes");
  }
  if ((config.kind == ModelKind::BalancedRandomForest ||
       config.kind == ModelKind::RUSAdaBoost) &&
      config.resampler != Resampler::None) {
    throw Error(ErrorCode::InvalidConfig,
                std::string(model_name(config.kind)) +
                    " balances internally; resampler must be None");
  }

  TrainedModel m;
  m.config_ = config;
  m.standardizer_ = Standardizer::fit(x);
  Matrix z = m.standardizer_.apply(x);
  std::vector<bool> labels = y;

  const std::uint64_t resample_seed = derive_seed(config.seed, 0x7e5a);
  if (config.resampler == Resampler::SMOTE) {
    Resampled r = smote(z, labels, config.smote_k, resample_seed);
    z = std::move(r.x);
    labels = std::move(r.y);
    m.warnings_ = std::move(r.warnings);
  } else if (config.resampler == Resampler::RandomUnderSample) {
    Resampled r = random_undersample(z, labels, resample_seed);
    z = std::move(r.x);
    labels = std::move(r.y);
  }
  m.fitted_pos_ = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), true));
  m.fitted_neg_ = labels.size() - m.fitted_pos_;

  switch (config.kind) {
    case ModelKind::Dummy:
      m.prior_ = static_cast<double>(m.fitted_pos_) / static_cast<double>(labels.size());
      break;
    case ModelKind::LogisticRegression:
      fit_logistic(z, labels, config, m.weights_, m.bias_, m.loss_history_);
      break;
    case ModelKind::LinearSVC:
      fit_svc(z, labels, config, m.weights_, m.bias_);
      break;
    case ModelKind::KNN:
      m.train_x_ = std::move(z);
      m.train_y_ = std::move(labels);
      break;
    case ModelKind::DecisionTree: {
      std::vector<std::size_t> all(z.rows());
      std::iota(all.begin(), all.end(), std::size_t{0});
      Rng rng(derive_seed(config.seed, 0xd7));
      m.tree_ = std::make_shared<DecisionTree>();
      m.tree_->fit(z, as_classes(labels), 2, all, TreeOptions{}, rng);
      break;
    }
    case ModelKind::RandomForest:
    case ModelKind::BalancedRandomForest: {
      ForestOptions fo;
      fo.n_trees = config.n_trees;
      fo.bootstrap = config.kind == ModelKind::BalancedRandomForest
                         ? Bootstrap::Balanced
                         : Bootstrap::Standard;
      fo.parallel = config.parallel;
      m.forest_ = std::make_shared<RandomForest>();
      m.forest_->fit(z, as_classes(labels), 2, fo, config.seed);
      break;
    }
    case ModelKind::RUSAdaBoost: {
      const std::size_t n = z.rows();
      const std::vector<int> cls = as_classes(labels);
      std::vector<double> w(n, 1.0 / static_cast<double>(n));
      TreeOptions to;
      to.max_depth = config.boost_depth;
      for (int round = 0; round < config.boost_rounds; ++round) {
        Rng rng(derive_seed(config.seed, 0xb00 + static_cast<std::uint64_t>(round)));
        // Undersample the majority, then draw a weight-proportional sample
        // of the same size from the kept rows.
        Resampled rus = random_undersample(z, labels, rng.next());
        double kept_total = 0.0;
        std::vector<double> kept_w(rus.source_index.size());
        for (std::size_t j = 0; j < kept_w.size(); ++j) {
          kept_w[j] = w[rus.source_index[j]];
          kept_total += kept_w[j];
        }
        std::vector<std::size_t> sample(kept_w.size());
        for (std::size_t& s : sample) {
          s = rus.source_index[rng.weighted(kept_w, kept_total)];
        }
        DecisionTree tree;
        tree.fit(z, cls, 2, sample, to, rng);

        std::vector<bool> wrong(n);
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          wrong[i] = tree.predict(z.row(i)) != cls[i];
          if (wrong[i]) err += w[i];
        }
        m.boost_errors_.push_back(err);
        if (err >= 0.5) {
          if (m.stumps_.empty()) {
            // Keep the first learner so the ensemble is never empty.
            m.stumps_.push_back(std::move(tree));
            m.alphas_.push_back(1.0);
            m.warnings_.push_back("RUSAda: first round error >= 0.5");
          }
          break;
        }
        const double e = std::max(err, 1e-10);
        const double beta = e / (1.0 - e);
        m.stumps_.push_back(std::move(tree));
        m.alphas_.push_back(std::log(1.0 / beta));
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          if (!wrong[i]) w[i] *= beta;
          total += w[i];
        }
        double sum = 0.0;
        for (double& v : w) {
          v /= total;
          sum += v;
        }
        m.weight_sums_.push_back(sum);
        if (err == 0.0) break;
      }
      break;
    }
  }
  return m;
}

}  // namespace gcjstyle::learn
