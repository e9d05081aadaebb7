#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "gcjstyle/matrix.hpp"

namespace gcjstyle::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSchemaVersion = "1";

enum ExitCode : int { kOk = 0, kRuntimeError = 1, kUsageError = 2 };

/// Rows of the feature matrix CSV:
/// `author_id,problem_id,label,<30 feature names>`.
struct FeatureTable {
  std::vector<std::string> author_ids;
  std::vector<std::string> problem_ids;
  std::vector<bool> labels;
  Matrix x;
};

std::string format_feature_csv(const FeatureTable& table);
/// Throws SchemaMismatch on a wrong header, column count or number.
FeatureTable parse_feature_csv(std::string_view text);

/// Runs one subcommand (extract, cluster, train, synth). Reports go to
/// files; progress and tables to `out`; diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);
int run_cli(int argc, const char* const* argv);

}  // namespace gcjstyle::cli
