#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gcjstyle/features.hpp"
#include "gcjstyle/round.hpp"

namespace gcjstyle::corpus {

struct ProgrammerRecord {
  std::string author_id;
  int year = 0;
  Round max_round = Round::Qualification;

  friend bool operator==(const ProgrammerRecord&,
                         const ProgrammerRecord&) = default;
};

struct SourceFile {
  std::string author_id;
  std::string problem_id;
  Round round = Round::Qualification;
  int year = 0;
  std::string text;  // UTF-8
  std::size_t char_length = 0;

  friend bool operator==(const SourceFile&, const SourceFile&) = default;
};

/// Decodes raw bytes as UTF-8, falling back to Latin-1. Returns nullopt
/// when the result contains NUL or C0 controls other than tab, LF and CR.
/// A leading UTF-8 byte-order mark is dropped.
std::optional<std::string> decode_source(std::string_view bytes);

/// Builds a SourceFile from decoded text. char_length counts characters.
SourceFile make_source_file(std::string author_id, std::string problem_id,
                            Round round, int year, std::string text);

class Corpus {
 public:
  Corpus() = default;
  Corpus(std::vector<SourceFile> files, std::vector<ProgrammerRecord> manifest);

  /// Sorted by (year, round, problem_id, author_id).
  const std::vector<SourceFile>& files() const noexcept { return files_; }
  const std::vector<ProgrammerRecord>& manifest() const noexcept {
    return manifest_;
  }

  const ProgrammerRecord* find_record(int year,
                                      std::string_view author_id) const;

  /// Files for one (year, round, problem), sorted by author_id.
  std::vector<const SourceFile*> select(int year, Round round,
                                        std::string_view problem_id) const;

  std::map<Round, std::size_t> files_per_round() const;

  std::size_t skipped_undecodable = 0;
  std::size_t skipped_unknown_author = 0;
  std::vector<std::string> warnings;

 private:
  std::vector<SourceFile> files_;
  std::vector<ProgrammerRecord> manifest_;
  std::map<std::pair<int, std::string>, std::size_t, std::less<>> index_;
};

/// Parses `author_id,year,max_round` CSV text. Throws ManifestRowMalformed
/// (with the 1-based line) or UnknownRoundName.
std::vector<ProgrammerRecord> parse_manifest(std::string_view csv);

/// Throws MissingManifest if the file cannot be read.
std::vector<ProgrammerRecord> read_manifest(const std::filesystem::path& path);

std::string format_manifest(const std::vector<ProgrammerRecord>& records);

/// Loads `<root>/<year>/<Q|1A|1B|1C|2|3|F>/<problem_id>/<author_id>.cpp`.
/// Undecodable files and authors absent from the manifest are skipped and
/// counted. Throws CorpusRootMissing, MissingManifest and the manifest
/// parse errors.
Corpus load_corpus(const std::filesystem::path& root,
                   const std::filesystem::path& manifest_path);

struct LabeledRow {
  std::string author_id;
  stylometry::StyleFeatures features;
  bool label = false;
  Round max_round = Round::Qualification;
};

struct LabeledDataset {
  std::vector<LabeledRow> rows;  // sorted by author_id
  std::string problem_id;
  Round round = Round::Qualification;
  int year = 0;

  std::size_t positives() const;
};

/// One row per author with a file for (year, round, problem_id); label is
/// max_round >= R3. Throws MissingFeatures.
LabeledDataset label_dataset(
    const Corpus& corpus, int year, Round round, std::string_view problem_id,
    const std::map<std::string, stylometry::StyleFeatures>& features);

}  // namespace gcjstyle::corpus
