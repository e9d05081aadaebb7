#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "gcjstyle/lexer.hpp"

namespace gcjstyle::stylometry {

inline constexpr std::size_t kNumFeatures = 30;

/// The 30 layout and lexical style features of one source file. Fields
/// ending in _per_len are raw counts divided by the file length in
/// characters.
struct StyleFeatures {
  double num_tabs_per_len = 0;
  double num_spaces_per_len = 0;
  double num_empty_lines_per_len = 0;
  double whitespace_ratio = 0;
  double new_line_before_open_brace = 0;
  double tabs_lead_lines = 0;
  double avg_line_length = 0;
  double std_dev_line_length = 0;
  double kw_if_per_len = 0;
  double kw_else_per_len = 0;
  double kw_elseif_per_len = 0;
  double kw_for_per_len = 0;
  double kw_while_per_len = 0;
  double kw_do_per_len = 0;
  double kw_break_per_len = 0;
  double kw_continue_per_len = 0;
  double kw_switch_per_len = 0;
  double kw_case_per_len = 0;
  double num_ternary_per_len = 0;
  double num_tokens_per_len = 0;
  double num_unique_tokens_per_len = 0;
  double num_comments_per_len = 0;
  double num_line_comments_per_len = 0;
  double num_block_comments_per_len = 0;
  double num_literals_per_len = 0;
  double num_macros_per_len = 0;
  double nesting_depth = 0;
  double num_functions_per_len = 0;
  double avg_params = 0;
  double std_dev_num_params = 0;

  std::array<double, kNumFeatures> to_array() const;
  static StyleFeatures from_array(const std::array<double, kNumFeatures>& a);

  /// Column names, in field order.
  static const std::array<std::string_view, kNumFeatures>& names();

  friend bool operator==(const StyleFeatures&, const StyleFeatures&) = default;
};

/// Integer counts behind the features, before length normalization.
struct RawCounts {
  std::size_t char_length = 0;
  std::size_t tabs = 0;
  std::size_t spaces = 0;
  std::size_t empty_lines = 0;
  std::size_t whitespace_chars = 0;      // spaces, tabs, CR, LF
  std::size_t non_whitespace_chars = 0;
  std::size_t braces_on_new_line = 0;
  std::size_t braces_trailing = 0;
  std::size_t tab_led_lines = 0;
  std::size_t other_nonblank_lines = 0;
  std::vector<std::size_t> line_lengths;  // in characters
  std::size_t kw_if = 0;
  std::size_t kw_else = 0;
  std::size_t kw_elseif = 0;
  std::size_t kw_for = 0;
  std::size_t kw_while = 0;
  std::size_t kw_do = 0;
  std::size_t kw_break = 0;
  std::size_t kw_continue = 0;
  std::size_t kw_switch = 0;
  std::size_t kw_case = 0;
  std::size_t ternaries = 0;
  std::size_t tokens = 0;
  std::size_t unique_tokens = 0;
  std::size_t line_comments = 0;
  std::size_t block_comments = 0;
  std::size_t literals = 0;
  std::size_t macros = 0;
  std::size_t nesting_depth = 0;
  std::vector<std::size_t> function_params;  // one entry per function
  bool unbalanced_braces = false;

  friend bool operator==(const RawCounts&, const RawCounts&) = default;
};

/// Number of characters (code points) in UTF-8 text.
std::size_t count_chars(std::string_view utf8);

/// Highest depth of control statements, counting braced and braceless
/// bodies of if/else/for/while/do/switch.
std::size_t control_nesting_depth(const std::vector<Token>& tokens);

/// Parameter counts of detected function definitions.
std::vector<std::size_t> detect_functions(const std::vector<Token>& tokens);

RawCounts count(std::string_view text, const LexSummary& summary);
RawCounts count(std::string_view text);

StyleFeatures normalize(const RawCounts& counts);

/// Throws EmptySource.
StyleFeatures extract_features(std::string_view text);

}  // namespace gcjstyle::stylometry
