#include <algorithm>
#include <cmath>
#include <limits>

#include "gcjstyle/cluster.hpp"
#include "gcjstyle/error.hpp"
#include "gcjstyle/kernels.hpp"
#include "gcjstyle/rng.hpp"

namespace gcjstyle::cluster {

namespace {

constexpr double kPerplexityTolerance = 1e-4;
constexpr double kMinGain = 0.01;

/// Fills row i of `cond` with p_{j|i} for the bandwidth whose perplexity is
/// closest to the target; returns the achieved perplexity.
double fit_row(std::span<const double> dist_row, std::size_t i,
               double target, std::span<double> out) {
  const std::size_t n = dist_row.size();
  double d_min = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    if (j != i) d_min = std::min(d_min, dist_row[j]);
  }

  double beta = 1.0;
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  double perp = 0.0;
  auto evaluate = [&](double b) {
    double sum = 0.0;
    double weighted = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) {
        out[j] = 0.0;
        continue;
      }
      const double shifted = dist_row[j] - d_min;
      const double v = std::exp(-b * shifted);
      out[j] = v;
      sum += v;
      weighted += shifted * v;
    }
    for (std::size_t j = 0; j < n; ++j) out[j] /= sum;
    // Natural-log entropy of the row.
    const double entropy = std::log(sum) + b * weighted / sum;
    return std::exp(entropy);
  };

  for (int iter = 0; iter < 200; ++iter) {
    perp = evaluate(beta);
    const double err = perp - target;
    if (std::abs(err) <= 0.1 * kPerplexityTolerance * target) break;
    if (err > 0.0) {
      // Too flat: sharpen.
      lo = beta;
      beta = std::isinf(hi) ? beta * 2.0 : (beta + hi) / 2.0;
    } else {
      hi = beta;
      beta = (beta + lo) / 2.0;
    }
  }
  return perp;
}

}  // namespace

Affinities compute_affinities(const Matrix& x, double perplexity) {
  const std::size_t n = x.rows();
  std::vector<double> dist(n * n);
  kernels::pairwise_sq_dists_parallel(x, dist);

  Affinities a;
  a.target_perplexity = perplexity;
  a.conditional = Matrix(n, n);
  a.achieved_perplexity.assign(n, 0.0);
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < static_cast<long>(n); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    a.achieved_perplexity[ui] =
        fit_row(std::span<const double>(dist).subspan(ui * n, n), ui,
                perplexity, a.conditional.row(ui));
  }

  a.joint = Matrix(n, n);
  const double scale = 1.0 / (2.0 * static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a.joint(i, j) = (a.conditional(i, j) + a.conditional(j, i)) * scale;
    }
  }
  return a;
}

double kl_divergence(const Matrix& joint, const Matrix& y) {
  const std::size_t n = y.rows();
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) z += 1.0 / (1.0 + squared_distance(y.row(i), y.row(j)));
    }
  }
  double kl = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double p = joint(i, j);
      if (i == j || p <= 0.0) continue;
      const double q =
          1.0 / (1.0 + squared_distance(y.row(i), y.row(j))) / z;
      kl += p * std::log(p / q);
    }
  }
  return kl;
}

Embedding2D tsne_embed(const Matrix& x, const TsneOptions& opt) {
  const std::size_t n = x.rows();
  if (n < 4) {
    throw Error(ErrorCode::TooFewPoints, "tsne_embed needs at least 4 points");
  }
  if (!x.all_finite()) {
    throw Error(ErrorCode::NonFiniteInput, "tsne_embed: non-finite input");
  }

  Embedding2D out;
  out.seed = opt.seed;
  out.perplexity = opt.perplexity;
  const double limit = static_cast<double>(n - 1) / 3.0;
  if (out.perplexity >= limit) {
    out.warnings.push_back("perplexity " + std::to_string(opt.perplexity) +
                           " clamped to " + std::to_string(limit) + " for n=" +
                           std::to_string(n));
    out.perplexity = std::nextafter(limit, 0.0);
  }

  const Affinities aff = compute_affinities(x, out.perplexity);
  const Matrix& p = aff.joint;

  Rng rng(opt.seed);
  Matrix y(n, 2);
  for (double& v : y.data()) v = rng.normal(0.0, opt.init_stddev);
  out.initial_kl = kl_divergence(p, y);

  Matrix grad(n, 2);
  Matrix update(n, 2);
  std::vector<double> gains(n * 2, 1.0);
  std::vector<double> num(n * n);
  for (int iter = 0; iter < opt.iterations; ++iter) {
    // The unexaggerated phase starts from rest; carrying the exploration
    // velocity into it stalls convergence.
    if (iter > 0 && iter == opt.exaggeration_iterations) {
      std::fill(update.data().begin(), update.data().end(), 0.0);
      std::fill(gains.begin(), gains.end(), 1.0);
    }
    const double exaggeration =
        iter < opt.exaggeration_iterations ? opt.early_exaggeration : 1.0;
    const double momentum = iter < opt.momentum_switch_iteration
                                ? opt.initial_momentum
                                : opt.final_momentum;
    if (opt.parallel) {
      kernels::tsne_gradient_parallel(p, y, exaggeration, grad, num);
    } else {
      kernels::tsne_gradient_serial(p, y, exaggeration, grad, num);
    }
    for (std::size_t k = 0; k < n * 2; ++k) {
      // Per-coordinate adaptive gain: grow while the step keeps reversing
      // the gradient's direction, shrink once they agree.
      const bool same_sign = (grad.data()[k] > 0.0) == (update.data()[k] > 0.0);
      gains[k] = same_sign ? gains[k] * 0.8 : gains[k] + 0.2;
      gains[k] = std::max(gains[k], kMinGain);
      update.data()[k] = momentum * update.data()[k] -
                         opt.learning_rate * gains[k] * grad.data()[k];
      y.data()[k] += update.data()[k];
    }
    // Re-center.
    for (std::size_t c = 0; c < 2; ++c) {
      double mean = 0.0;
      for (std::size_t i = 0; i < n; ++i) mean += y(i, c);
      mean /= static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) y(i, c) -= mean;
    }
  }

  out.final_kl = kl_divergence(p, y);
  out.points = std::move(y);
  return out;
}

}  // namespace gcjstyle::cluster
