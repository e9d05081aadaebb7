#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gcjstyle/corpus.hpp"

namespace gcjstyle::corpus {

/// 296 Round 3 participants out of 11401 in the 2016 qualification round.
inline constexpr double kDefaultPositiveRate = 296.0 / 11401.0;

inline constexpr int kMaxStyleProfiles = 16;
inline constexpr int kSyntheticYear = 2016;
inline constexpr Round kSyntheticRound = Round::Qualification;
inline constexpr const char* kSyntheticProblem = "1001";

/// Layout habits of one profile. Profile bits: 0 brace on its own line,
/// 1 space indentation, 2 heavy commenting, 3 two-wide (not four-wide)
/// space indentation.
struct StyleProfile {
  bool brace_on_new_line = false;
  bool indent_with_tabs = true;
  bool heavy_comments = false;
  int indent_width = 4;
};

StyleProfile style_profile(int profile);

struct SyntheticOptions {
  std::uint64_t seed = 42;
  std::size_t n_authors = 400;
  double positive_rate = kDefaultPositiveRate;
  int style_profiles = 4;
  double skill_style_coupling = 0.0;
};

struct GroundTruth {
  std::string author_id;
  bool label = false;
  int profile = 0;
};

struct SyntheticCorpus {
  Corpus corpus;
  std::vector<ProgrammerRecord> manifest;
  std::vector<GroundTruth> truth;  // sorted by author_id
};

/// Number of positives for n authors at `rate`, by largest remainder.
std::size_t positive_count(std::size_t n, double rate);

/// One C++ solution in the given profile. Deterministic for fixed seed.
std::string render_solution(const StyleProfile& style, std::uint64_t seed);

/// Throws InvalidRate (rate outside (0,1) or coupling outside [0,1]) or
/// InvalidProfiles.
SyntheticCorpus gen_synthetic_corpus(const SyntheticOptions& options);

std::string format_ground_truth(const std::vector<GroundTruth>& truth);

/// Writes `<out>/corpus/...`, `<out>/manifest.csv` and
/// `<out>/ground_truth.csv`.
void write_synthetic(const SyntheticCorpus& synth,
                     const std::filesystem::path& out_dir);

}  // namespace gcjstyle::corpus
