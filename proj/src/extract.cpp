#include "gcjstyle/extract.hpp"

#include <optional>

#include "gcjstyle/error.hpp"

namespace gcjstyle::stylometry {

StyleFeatures extract_features(const corpus::SourceFile& file) {
  if (file.char_length == 0 || file.text.empty()) {
    throw Error(ErrorCode::EmptySource,
                "empty source file for author " + file.author_id);
  }
  return extract_features(file.text);
}

BatchResult extract_batch(const std::vector<const corpus::SourceFile*>& files) {
  if (files.empty()) {
    throw Error(ErrorCode::EmptySelection, "extract_batch: no files selected");
  }
  std::vector<std::optional<StyleFeatures>> slots(files.size());
  // Exceptions must not escape the parallel region; only EmptySource can
  // be raised per file.
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < static_cast<long>(files.size()); ++i) {
    try {
      slots[i] = extract_features(*files[i]);
    } catch (const Error&) {
      slots[i].reset();
    }
  }
  BatchResult out;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (slots[i]) {
      out.features.emplace(files[i]->author_id, *slots[i]);
    } else {
      ++out.warning_count;
      out.warnings.push_back("dropping empty source of author " +
                             files[i]->author_id);
    }
  }
  return out;
}

BatchResult extract_batch(const corpus::Corpus& corpus, int year, Round round,
                          std::string_view problem_id) {
  return extract_batch(corpus.select(year, round, problem_id));
}

}  // namespace gcjstyle::stylometry
