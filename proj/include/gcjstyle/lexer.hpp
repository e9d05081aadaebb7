#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace gcjstyle::stylometry {

enum class TokenKind {
  Identifier,
  Keyword,
  NumericLiteral,
  StringLiteral,
  CharLiteral,
  OperatorPunct,
  PreprocessorDirective,
};

struct Token {
  TokenKind kind;
  /// Keyword name, operator spelling, or the literal/identifier text.
  std::string spelling;
  int line = 0;    // 1-based
  int column = 0;  // 1-based, counted in characters

  bool is(TokenKind k, std::string_view s) const {
    return kind == k && spelling == s;
  }
  bool is_keyword(std::string_view s) const {
    return is(TokenKind::Keyword, s);
  }
  bool is_punct(std::string_view s) const {
    return is(TokenKind::OperatorPunct, s);
  }
};

struct BraceEvent {
  std::size_t token_index = 0;
  /// Only whitespace between the start of the brace's line and the brace.
  bool preceded_by_newline = false;
  /// Opens the body of if/else/for/while/do/switch.
  bool is_control_block = false;
};

struct LexSummary {
  std::vector<Token> tokens;
  std::size_t line_comment_count = 0;
  std::size_t block_comment_count = 0;
  std::size_t macro_directive_count = 0;
  /// Raw lines split on '\n', without the terminator. A trailing newline
  /// does not start a new line.
  std::vector<std::string> lines;
  std::vector<BraceEvent> brace_events;
  /// Non-fatal: '{' and '}' counts do not balance.
  bool unbalanced_braces = false;
};

bool is_cpp_keyword(std::string_view word);

/// Tokenizes UTF-8 C++ source. Comments, string/char literals and
/// preprocessor directives are recognized before anything else so their
/// contents never produce keyword, brace or operator tokens.
/// Throws EmptySource on empty text.
LexSummary lex(std::string_view text);

/// Index of the token matching the '(' at `open`, or tokens.size() if the
/// group is not closed.
std::size_t match_paren(const std::vector<Token>& tokens, std::size_t open);

}  // namespace gcjstyle::stylometry
