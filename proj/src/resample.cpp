#include "gcjstyle/resample.hpp"

#include <algorithm>
#include <numeric>

#include "gcjstyle/error.hpp"
#include "gcjstyle/rng.hpp"

namespace gcjstyle::learn {

namespace {

Resampled copy_all(const Matrix& x, const std::vector<bool>& y) {
  Resampled r;
  r.x = x;
  r.y = y;
  r.source_index.resize(x.rows());
  std::iota(r.source_index.begin(), r.source_index.end(), std::size_t{0});
  return r;
}

}  // namespace

Resampled smote(const Matrix& x, const std::vector<bool>& y,
                std::size_t k_neighbors, std::uint64_t seed) {
  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
  for (std::size_t i = 0; i < y.size(); ++i) (y[i] ? pos : neg).push_back(i);
  const bool minority_label = pos.size() <= neg.size();
  const std::vector<std::size_t>& minority = minority_label ? pos : neg;
  const std::size_t majority_size = minority_label ? neg.size() : pos.size();
  if (minority.size() < 2) {
    throw Error(ErrorCode::MinorityTooSmall,
                "smote: minority class has fewer than 2 samples");
  }

  Resampled r = copy_all(x, y);
  const std::size_t needed = majority_size - minority.size();
  if (needed == 0) return r;

  std::size_t k = k_neighbors;
  if (k < 1 || k > minority.size() - 1) {
    k = std::clamp<std::size_t>(k, 1, minority.size() - 1);
    r.warnings.push_back("smote: k_neighbors clamped to " + std::to_string(k));
  }

  // k nearest minority neighbours of each minority row, ties to lower index.
  std::vector<std::vector<std::size_t>> neighbors(minority.size());
  std::vector<std::pair<double, std::size_t>> cand;
  for (std::size_t a = 0; a < minority.size(); ++a) {
    cand.clear();
    for (std::size_t b = 0; b < minority.size(); ++b) {
      if (a == b) continue;
      cand.emplace_back(squared_distance(x.row(minority[a]), x.row(minority[b])),
                        minority[b]);
    }
    std::partial_sort(cand.begin(), cand.begin() + static_cast<long>(k), cand.end());
    for (std::size_t t = 0; t < k; ++t) neighbors[a].push_back(cand[t].second);
  }

  Rng rng(seed);
  std::vector<double> row(x.cols());
  for (std::size_t s = 0; s < needed; ++s) {
    const std::size_t a = rng.below(minority.size());
    const std::size_t base = minority[a];
    const std::size_t nb = neighbors[a][rng.below(k)];
    const double u = rng.uniform();
    const auto xb = x.row(base);
    const auto xn = x.row(nb);
    for (std::size_t d = 0; d < x.cols(); ++d) row[d] = xb[d] + u * (xn[d] - xb[d]);
    r.x.append_row(row);
    r.y.push_back(minority_label);
    r.synthetic.push_back({base, nb, u});
  }
  return r;
}

Resampled random_undersample(const Matrix& x, const std::vector<bool>& y,
                             std::uint64_t seed) {
  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
  for (std::size_t i = 0; i < y.size(); ++i) (y[i] ? pos : neg).push_back(i);
  if (pos.empty() || neg.empty()) {
    throw Error(ErrorCode::EmptyClass, "random_undersample: a class is empty");
  }
  std::vector<std::size_t>& minority = pos.size() <= neg.size() ? pos : neg;
  std::vector<std::size_t>& majority = pos.size() <= neg.size() ? neg : pos;

  Rng rng(seed);
  // Partial Fisher-Yates: first minority.size() entries are the sample.
  for (std::size_t i = 0; i < minority.size(); ++i) {
    const std::size_t j = i + rng.below(majority.size() - i);
    std::swap(majority[i], majority[j]);
  }
  majority.resize(minority.size());

  std::vector<std::size_t> keep = minority;
  keep.insert(keep.end(), majority.begin(), majority.end());
  std::sort(keep.begin(), keep.end());

  Resampled r;
  r.x = x.select_rows(keep);
  for (std::size_t i : keep) r.y.push_back(y[i]);
  r.source_index = std::move(keep);
  return r;
}

}  // namespace gcjstyle::learn
