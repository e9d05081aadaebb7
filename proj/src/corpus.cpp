#include "gcjstyle/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <tuple>

#include "gcjstyle/error.hpp"
#include "gcjstyle/io.hpp"

namespace gcjstyle {

std::string_view round_token(Round r) noexcept {
  switch (r) {
    case Round::Qualification: return "Q";
    case Round::R1A: return "1A";
    case Round::R1B: return "1B";
    case Round::R1C: return "1C";
    case Round::R2: return "2";
    case Round::R3: return "3";
    case Round::WorldFinals: return "F";
  }
  return "Q";
}

std::optional<Round> parse_round(std::string_view t) noexcept {
  if (t == "Q" || t == "Qualification") return Round::Qualification;
  if (t == "1A" || t == "R1A") return Round::R1A;
  if (t == "1B" || t == "R1B") return Round::R1B;
  if (t == "1C" || t == "R1C") return Round::R1C;
  if (t == "2" || t == "R2") return Round::R2;
  if (t == "3" || t == "R3") return Round::R3;
  if (t == "F" || t == "WF" || t == "WorldFinals") return Round::WorldFinals;
  return std::nullopt;
}

}  // namespace gcjstyle

namespace gcjstyle::corpus {

namespace fs = std::filesystem;

namespace {

/// Strict UTF-8 validation: no overlongs, surrogates or values past
/// U+10FFFF.
bool is_valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (c < 0x80) {
      ++i;
      continue;
    }
    std::size_t len = 0;
    std::uint32_t cp = 0;
    std::uint32_t min = 0;
    if ((c & 0xE0) == 0xC0) {
      len = 2, cp = c & 0x1F, min = 0x80;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3, cp = c & 0x0F, min = 0x800;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4, cp = c & 0x07, min = 0x10000;
    } else {
      return false;
    }
    if (i + len > s.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += len;
  }
  return true;
}

std::string latin1_to_utf8(std::string_view s) {
  std::string out;
  out.reserve(s.size() * 2);
  for (char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    if (c < 0x80) {
      out.push_back(ch);
    } else {
      out.push_back(static_cast<char>(0xC0 | (c >> 6)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
  }
  return out;
}

bool has_forbidden_control(std::string_view s) {
  for (char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    if (c < 0x20 && c != '\t' && c != '\n' && c != '\r') return true;
  }
  return false;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || s.empty()) return std::nullopt;
  return v;
}

[[noreturn]] void malformed(std::size_t line, const std::string& why) {
  throw Error(ErrorCode::ManifestRowMalformed,
              "manifest line " + std::to_string(line) + ": " + why);
}

}  // namespace

std::optional<std::string> decode_source(std::string_view bytes) {
  if (bytes.substr(0, 3) == "\xEF\xBB\xBF") bytes.remove_prefix(3);
  std::string text = is_valid_utf8(bytes) ? std::string(bytes)
                                          : latin1_to_utf8(bytes);
  if (text.empty() || has_forbidden_control(text)) return std::nullopt;
  return text;
}

SourceFile make_source_file(std::string author_id, std::string problem_id,
                            Round round, int year, std::string text) {
  SourceFile f;
  f.author_id = std::move(author_id);
  f.problem_id = std::move(problem_id);
  f.round = round;
  f.year = year;
  f.char_length = stylometry::count_chars(text);
  f.text = std::move(text);
  return f;
}

Corpus::Corpus(std::vector<SourceFile> files,
               std::vector<ProgrammerRecord> manifest)
    : files_(std::move(files)), manifest_(std::move(manifest)) {
  std::stable_sort(files_.begin(), files_.end(),
                   [](const SourceFile& a, const SourceFile& b) {
                     return std::tie(a.year, a.round, a.problem_id,
                                     a.author_id) <
                            std::tie(b.year, b.round, b.problem_id,
                                     b.author_id);
                   });
  for (std::size_t i = 0; i < manifest_.size(); ++i) {
    index_.emplace(std::make_pair(manifest_[i].year, manifest_[i].author_id),
                   i);
  }
}

const ProgrammerRecord* Corpus::find_record(int year,
                                            std::string_view author_id) const {
  const auto it = index_.find(std::make_pair(year, std::string(author_id)));
  return it == index_.end() ? nullptr : &manifest_[it->second];
}

std::vector<const SourceFile*> Corpus::select(
    int year, Round round, std::string_view problem_id) const {
  std::vector<const SourceFile*> out;
  for (const SourceFile& f : files_) {
    if (f.year == year && f.round == round && f.problem_id == problem_id) {
      out.push_back(&f);
    }
  }
  return out;
}

std::map<Round, std::size_t> Corpus::files_per_round() const {
  std::map<Round, std::size_t> counts;
  for (const SourceFile& f : files_) ++counts[f.round];
  return counts;
}

std::vector<ProgrammerRecord> parse_manifest(std::string_view csv) {
  const auto lines = io::split_lines(csv);
  std::vector<ProgrammerRecord> records;
  std::map<std::pair<int, std::string>, std::size_t> seen;
  bool header_seen = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (trim(lines[i]).empty()) continue;
    const auto fields = io::split_csv_line(lines[i]);
    if (!header_seen) {
      header_seen = true;
      if (fields.size() == 3 && trim(fields[0]) == "author_id" &&
          trim(fields[1]) == "year" && trim(fields[2]) == "max_round") {
        continue;
      }
      malformed(line_no, "expected header author_id,year,max_round");
    }
    if (fields.size() != 3) malformed(line_no, "expected 3 fields");
    ProgrammerRecord r;
    r.author_id = trim(fields[0]);
    if (r.author_id.empty()) malformed(line_no, "empty author_id");
    const auto year = parse_int(trim(fields[1]));
    if (!year) malformed(line_no, "year is not an integer");
    r.year = *year;
    const std::string token = trim(fields[2]);
    const auto round = parse_round(token);
    if (!round) {
      throw Error(ErrorCode::UnknownRoundName,
                  "manifest line " + std::to_string(line_no) +
                      ": unknown round '" + token + "'");
    }
    r.max_round = *round;
    if (!seen.emplace(std::make_pair(r.year, r.author_id), line_no).second) {
      malformed(line_no, "duplicate author " + r.author_id + " for year " +
                             std::to_string(r.year));
    }
    records.push_back(std::move(r));
  }
  if (!header_seen) malformed(1, "empty manifest");
  return records;
}

std::vector<ProgrammerRecord> read_manifest(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw Error(ErrorCode::MissingManifest,
                "manifest not found: " + path.string());
  }
  return parse_manifest(io::read_file(path));
}

std::string format_manifest(const std::vector<ProgrammerRecord>& records) {
  std::string out = "author_id,year,max_round\n";
  for (const auto& r : records) {
    out += r.author_id + "," + std::to_string(r.year) + "," +
           std::string(round_token(r.max_round)) + "\n";
  }
  return out;
}

namespace {

struct PendingFile {
  fs::path path;
  int year = 0;
  Round round = Round::Qualification;
  std::string problem_id;
  std::string author_id;
};

std::vector<fs::path> sorted_entries(const fs::path& dir, bool want_dirs) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (want_dirs ? entry.is_directory() : entry.is_regular_file()) {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Corpus load_corpus(const fs::path& root, const fs::path& manifest_path) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw Error(ErrorCode::CorpusRootMissing,
                "corpus root is not a directory: " + root.string());
  }
  std::vector<ProgrammerRecord> manifest = read_manifest(manifest_path);

  std::vector<std::string> warnings;
  std::vector<PendingFile> pending;
  for (const fs::path& year_dir : sorted_entries(root, true)) {
    const auto year = parse_int(year_dir.filename().string());
    if (!year) continue;
    for (const fs::path& round_dir : sorted_entries(year_dir, true)) {
      const auto round = parse_round(round_dir.filename().string());
      if (!round || round_token(*round) != round_dir.filename().string()) {
        warnings.push_back("ignoring directory with unknown round name: " +
                           round_dir.string());
        continue;
      }
      for (const fs::path& problem_dir : sorted_entries(round_dir, true)) {
        for (const fs::path& file : sorted_entries(problem_dir, false)) {
          if (file.extension() != ".cpp") continue;
          pending.push_back({file, *year, *round,
                             problem_dir.filename().string(),
                             file.stem().string()});
        }
      }
    }
  }

  std::vector<std::optional<std::string>> decoded(pending.size());
  std::vector<int> read_failed(pending.size(), 0);
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < static_cast<long>(pending.size()); ++i) {
    try {
      decoded[i] = decode_source(io::read_file(pending[i].path));
    } catch (const Error&) {
      read_failed[i] = 1;
    }
  }

  Corpus result;
  std::vector<SourceFile> files;
  std::size_t undecodable = 0;
  std::size_t unknown_author = 0;
  std::map<std::pair<int, std::string>, bool> known;
  for (const auto& r : manifest) known[{r.year, r.author_id}] = true;
  for (std::size_t i = 0; i < pending.size(); ++i) {
    PendingFile& p = pending[i];
    if (read_failed[i] || !decoded[i]) {
      ++undecodable;
      warnings.push_back("skipping undecodable file: " + p.path.string());
      continue;
    }
    if (!known.count({p.year, p.author_id})) {
      ++unknown_author;
      warnings.push_back("skipping file of author not in manifest: " +
                         p.author_id + " (" + p.path.string() + ")");
      continue;
    }
    files.push_back(make_source_file(std::move(p.author_id),
                                     std::move(p.problem_id), p.round, p.year,
                                     std::move(*decoded[i])));
  }

  result = Corpus(std::move(files), std::move(manifest));
  result.skipped_undecodable = undecodable;
  result.skipped_unknown_author = unknown_author;
  result.warnings = std::move(warnings);
  return result;
}

std::size_t LabeledDataset::positives() const {
  return static_cast<std::size_t>(std::count_if(
      rows.begin(), rows.end(), [](const LabeledRow& r) { return r.label; }));
}

LabeledDataset label_dataset(
    const Corpus& corpus, int year, Round round, std::string_view problem_id,
    const std::map<std::string, stylometry::StyleFeatures>& features) {
  LabeledDataset ds;
  ds.problem_id = std::string(problem_id);
  ds.round = round;
  ds.year = year;
  for (const SourceFile* f : corpus.select(year, round, problem_id)) {
    const auto it = features.find(f->author_id);
    if (it == features.end()) {
      throw Error(ErrorCode::MissingFeatures,
                  "no feature vector for author " + f->author_id);
    }
    const ProgrammerRecord* rec = corpus.find_record(year, f->author_id);
    if (rec == nullptr) {
      throw Error(ErrorCode::MissingFeatures,
                  "no manifest record for author " + f->author_id);
    }
    ds.rows.push_back({f->author_id, it->second, is_good(rec->max_round),
                       rec->max_round});
  }
  return ds;
}

}  // namespace gcjstyle::corpus
