#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gcjstyle/matrix.hpp"

namespace gcjstyle::learn {

/// Provenance of a SMOTE row: base + u * (neighbor - base).
struct SyntheticOrigin {
  std::size_t base = 0;      // index into the input rows
  std::size_t neighbor = 0;  // index into the input rows
  double u = 0.0;
};

struct Resampled {
  Matrix x;
  std::vector<bool> y;
  /// For rows copied from the input: their input index. Synthetic rows are
  /// listed in `synthetic` and appended after the originals.
  std::vector<std::size_t> source_index;
  std::vector<SyntheticOrigin> synthetic;
  std::vector<std::string> warnings;
};

/// Oversamples the minority class by interpolating towards one of its
/// k nearest minority neighbours until classes are balanced. Originals are
/// kept. k is clamped to minority_size - 1 with a warning. Throws
/// MinorityTooSmall.
Resampled smote(const Matrix& x, const std::vector<bool>& y,
                std::size_t k_neighbors, std::uint64_t seed);

/// Keeps every minority row and a uniform subset (without replacement) of
/// the majority of the same size. Throws EmptyClass.
Resampled random_undersample(const Matrix& x, const std::vector<bool>& y,
                             std::uint64_t seed);

}  // namespace gcjstyle::learn
