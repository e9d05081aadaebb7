#pragma once

#include <map>
#include <string>
#include <vector>

#include "gcjstyle/corpus.hpp"
#include "gcjstyle/features.hpp"

namespace gcjstyle::stylometry {

/// Throws EmptySource when the file has no characters.
StyleFeatures extract_features(const corpus::SourceFile& file);

struct BatchResult {
  std::map<std::string, StyleFeatures> features;  // by author_id
  std::size_t warning_count = 0;
  std::vector<std::string> warnings;
};

/// Extracts every file in parallel. Files raising EmptySource are dropped
/// and counted. Throws EmptySelection.
BatchResult extract_batch(const std::vector<const corpus::SourceFile*>& files);

BatchResult extract_batch(const corpus::Corpus& corpus, int year, Round round,
                          std::string_view problem_id);

}  // namespace gcjstyle::stylometry
