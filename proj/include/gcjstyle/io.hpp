#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace gcjstyle::io {

/// Whole file as bytes. Throws Error(IoError).
std::string read_file(const std::filesystem::path& path);

/// Writes through a sibling temporary and renames it into place, so readers
/// never observe a partial file. Parent directories are created.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view contents);

/// Splits one CSV record on commas. Quoting is not supported; none of the
/// emitted schemas need it.
std::vector<std::string> split_csv_line(std::string_view line);

/// Lines without terminators; a trailing '\r' is dropped.
std::vector<std::string_view> split_lines(std::string_view text);

/// %.9g
std::string format_float(double value);

}  // namespace gcjstyle::io
