#include "gcjstyle/lexer.hpp"

#include <algorithm>
#include <array>

#include "gcjstyle/error.hpp"

namespace gcjstyle::stylometry {

namespace {

constexpr std::string_view kKeywords[] = {
    "alignas",      "alignof",     "and",          "and_eq",
    "asm",          "auto",        "bitand",       "bitor",
    "bool",         "break",       "case",         "catch",
    "char",         "char8_t",     "char16_t",     "char32_t",
    "class",        "compl",       "concept",      "const",
    "consteval",    "constexpr",   "constinit",    "const_cast",
    "continue",     "co_await",    "co_return",    "co_yield",
    "decltype",     "default",     "delete",       "do",
    "double",       "dynamic_cast", "else",        "enum",
    "explicit",     "export",      "extern",       "false",
    "float",        "for",         "friend",       "goto",
    "if",           "inline",      "int",          "long",
    "mutable",      "namespace",   "new",          "noexcept",
    "not",          "not_eq",      "nullptr",      "operator",
    "or",           "or_eq",       "private",      "protected",
    "public",       "register",    "reinterpret_cast", "requires",
    "return",       "short",       "signed",       "sizeof",
    "static",       "static_assert", "static_cast", "struct",
    "switch",       "template",    "this",         "thread_local",
    "throw",        "true",        "try",          "typedef",
    "typeid",       "typename",    "union",        "unsigned",
    "using",        "virtual",     "void",         "volatile",
    "wchar_t",      "while",       "xor",          "xor_eq",
};

// Longest first so a linear scan implements maximal munch.
constexpr std::array<std::string_view, 27> kMultiCharPunct = {
    "<=>", "<<=", ">>=", "->*", "...", "::", "->", "++", "--",
    "<<",  ">>",  "<=",  ">=",  "==",  "!=", "&&", "||", "+=",
    "-=",  "*=",  "/=",  "%=",  "&=",  "|=", "^=", ".*", "##",
};

constexpr std::array<std::string_view, 9> kStringPrefixes = {
    "u8", "u", "U", "L", "R", "u8R", "uR", "UR", "LR",
};

bool is_ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
         c >= 0x80;
}

bool is_ident_char(unsigned char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9');
}

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

bool is_blank(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  LexSummary run() {
    split_lines();
    while (pos_ < text_.size()) step();
    classify_braces();
    return std::move(out_);
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  bool starts_with(std::string_view s) const {
    return text_.substr(pos_, s.size()) == s;
  }

  /// Consumes n bytes, tracking line, character column and whether the
  /// current line has seen anything other than blanks.
  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
      const auto c = static_cast<unsigned char>(text_[pos_++]);
      if (c == '\n') {
        ++line_;
        column_ = 1;
        line_has_content_ = false;
        continue;
      }
      if ((c & 0xC0) != 0x80) ++column_;
      if (!is_blank(c)) line_has_content_ = true;
    }
  }

  /// Backslash immediately before the newline at `nl` (allowing "\\\r\n").
  bool is_spliced(std::size_t nl) const {
    std::size_t k = nl;
    if (k > 0 && text_[k - 1] == '\r') --k;
    return k > 0 && text_[k - 1] == '\\';
  }

  void push(TokenKind kind, std::size_t begin, int line, int column) {
    out_.tokens.push_back(
        {kind, std::string(text_.substr(begin, pos_ - begin)), line, column});
  }

  void step() {
    const auto c = static_cast<unsigned char>(peek());
    if (c == '\n' || is_blank(c)) {
      advance();
      return;
    }
    if (c == '\\' && (peek(1) == '\n' || (peek(1) == '\r' && peek(2) == '\n'))) {
      advance(peek(1) == '\n' ? 2 : 3);
      return;
    }
    if (starts_with("//")) {
      skip_line_comment();
      return;
    }
    if (starts_with("/*")) {
      skip_block_comment();
      return;
    }
    const int line = line_;
    const int column = column_;
    const std::size_t begin = pos_;
    if (c == '#' && !line_has_content_) {
      lex_directive(begin, line, column);
      return;
    }
    if (is_ident_start(c)) {
      lex_word(begin, line, column);
      return;
    }
    if (is_digit(c) || (c == '.' && is_digit(static_cast<unsigned char>(peek(1))))) {
      lex_number();
      push(TokenKind::NumericLiteral, begin, line, column);
      return;
    }
    if (c == '"') {
      skip_quoted('"');
      push(TokenKind::StringLiteral, begin, line, column);
      return;
    }
    if (c == '\'') {
      skip_quoted('\'');
      push(TokenKind::CharLiteral, begin, line, column);
      return;
    }
    lex_punct(begin, line, column);
  }

  void skip_line_comment() {
    ++out_.line_comment_count;
    while (pos_ < text_.size()) {
      if (peek() == '\n' && !is_spliced(pos_)) return;
      advance();
    }
  }

  void skip_block_comment() {
    ++out_.block_comment_count;
    advance(2);
    while (pos_ < text_.size() && !starts_with("*/")) advance();
    advance(2);
  }

  /// Quoted literal with backslash escapes. An unterminated literal stops
  /// at the end of its line.
  void skip_quoted(char quote) {
    advance();
    while (pos_ < text_.size()) {
      const char ch = peek();
      if (ch == '\\' && pos_ + 1 < text_.size()) {
        advance(2);
        continue;
      }
      if (ch == '\n') return;
      advance();
      if (ch == quote) return;
    }
  }

  /// R"delim( ... )delim" with pos_ on the opening quote. Returns false if
  /// the delimiter is malformed, leaving pos_ untouched.
  bool skip_raw_string() {
    std::size_t k = pos_ + 1;
    while (k < text_.size() && k - pos_ - 1 <= 16 && text_[k] != '(') {
      const char ch = text_[k];
      if (ch == ' ' || ch == ')' || ch == '\\' || ch == '\n' || ch == '"') {
        return false;
      }
      ++k;
    }
    if (k >= text_.size() || text_[k] != '(') return false;
    const std::string closing =
        ")" + std::string(text_.substr(pos_ + 1, k - pos_ - 1)) + "\"";
    const std::size_t end = text_.find(closing, k + 1);
    const std::size_t stop =
        end == std::string_view::npos ? text_.size() : end + closing.size();
    advance(stop - pos_);
    return true;
  }

  void lex_word(std::size_t begin, int line, int column) {
    while (pos_ < text_.size() &&
           is_ident_char(static_cast<unsigned char>(peek()))) {
      advance();
    }
    const std::string_view word = text_.substr(begin, pos_ - begin);
    const bool prefix = std::find(kStringPrefixes.begin(), kStringPrefixes.end(),
                                  word) != kStringPrefixes.end();
    if (prefix && peek() == '"') {
      if (word.back() == 'R' && skip_raw_string()) {
        push(TokenKind::StringLiteral, begin, line, column);
        return;
      }
      if (word.back() != 'R') {
        skip_quoted('"');
        push(TokenKind::StringLiteral, begin, line, column);
        return;
      }
    }
    if (prefix && word.back() != 'R' && peek() == '\'') {
      skip_quoted('\'');
      push(TokenKind::CharLiteral, begin, line, column);
      return;
    }
    push(is_cpp_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier,
         begin, line, column);
  }

  /// pp-number: digits, letters, '_', '.', digit separators and signed
  /// exponents.
  void lex_number() {
    advance();
    while (pos_ < text_.size()) {
      const auto ch = static_cast<unsigned char>(peek());
      if (is_ident_char(ch) || ch == '.') {
        advance();
        continue;
      }
      if (ch == '\'' && is_ident_char(static_cast<unsigned char>(peek(1)))) {
        advance();
        continue;
      }
      if ((ch == '+' || ch == '-') && pos_ > 0) {
        const char prev = text_[pos_ - 1];
        if (prev == 'e' || prev == 'E' || prev == 'p' || prev == 'P') {
          advance();
          continue;
        }
      }
      break;
    }
  }

  void lex_punct(std::size_t begin, int line, int column) {
    std::size_t len = 1;
    for (std::string_view p : kMultiCharPunct) {
      if (starts_with(p)) {
        len = p.size();
        break;
      }
    }
    // Keep multi-byte UTF-8 sequences together.
    if (static_cast<unsigned char>(peek()) >= 0x80) {
      while (pos_ + len < text_.size() &&
             (static_cast<unsigned char>(text_[pos_ + len]) & 0xC0) == 0x80) {
        ++len;
      }
    }
    const bool brace = peek() == '{';
    const bool on_new_line = !line_has_content_;
    advance(len);
    push(TokenKind::OperatorPunct, begin, line, column);
    if (brace) {
      out_.brace_events.push_back(
          {out_.tokens.size() - 1, on_new_line, false});
    }
  }

  /// A directive runs to the end of its logical line. Comments inside it
  /// are still counted; a trailing line comment is not part of the token.
  void lex_directive(std::size_t begin, int line, int column) {
    ++out_.macro_directive_count;
    std::size_t end = pos_;
    while (pos_ < text_.size()) {
      const char ch = peek();
      if (ch == '\n') {
        if (!is_spliced(pos_)) break;
        advance();
        end = pos_;
        continue;
      }
      if (starts_with("//")) {
        skip_line_comment();
        break;
      }
      if (starts_with("/*")) {
        skip_block_comment();
        end = pos_;
        continue;
      }
      if (ch == '"' || ch == '\'') {
        skip_quoted(ch);
        end = pos_;
        continue;
      }
      advance();
      if (!is_blank(static_cast<unsigned char>(ch))) end = pos_;
    }
    std::string spelling(text_.substr(begin, end - begin));
    out_.tokens.push_back(
        {TokenKind::PreprocessorDirective, std::move(spelling), line, column});
  }

  void split_lines() {
    std::size_t start = 0;
    while (start < text_.size()) {
      const std::size_t nl = text_.find('\n', start);
      if (nl == std::string_view::npos) {
        out_.lines.emplace_back(text_.substr(start));
        break;
      }
      out_.lines.emplace_back(text_.substr(start, nl - start));
      start = nl + 1;
    }
  }

  void classify_braces() {
    long depth = 0;
    for (const Token& t : out_.tokens) {
      if (t.is_punct("{")) ++depth;
      if (t.is_punct("}") && --depth < 0) out_.unbalanced_braces = true;
    }
    if (depth != 0) out_.unbalanced_braces = true;

    for (BraceEvent& ev : out_.brace_events) {
      ev.is_control_block = opens_control_block(ev.token_index);
    }
  }

  /// Nearest preceding code token, skipping one balanced parenthesized
  /// group (and a `constexpr` after `if`), is a control keyword.
  bool opens_control_block(std::size_t brace) const {
    const auto& toks = out_.tokens;
    auto prev = [&](std::size_t i) -> std::size_t {
      while (i > 0) {
        --i;
        if (toks[i].kind != TokenKind::PreprocessorDirective) return i;
      }
      return toks.size();
    };
    std::size_t k = prev(brace);
    if (k == toks.size()) return false;
    if (toks[k].is_punct(")")) {
      long depth = 0;
      std::size_t j = k + 1;
      while (j > 0) {
        --j;
        if (toks[j].kind == TokenKind::PreprocessorDirective) continue;
        if (toks[j].is_punct(")")) ++depth;
        if (toks[j].is_punct("(") && --depth == 0) break;
      }
      if (depth != 0) return false;
      k = prev(j);
      if (k == toks.size()) return false;
      if (toks[k].is_keyword("constexpr")) {
        const std::size_t before = prev(k);
        if (before != toks.size() && toks[before].is_keyword("if")) k = before;
      }
    }
    static constexpr std::array<std::string_view, 6> kControl = {
        "if", "else", "for", "while", "do", "switch"};
    const Token& t = toks[k];
    return t.kind == TokenKind::Keyword &&
           std::find(kControl.begin(), kControl.end(), t.spelling) !=
               kControl.end();
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  bool line_has_content_ = false;
  LexSummary out_;
};

}  // namespace

bool is_cpp_keyword(std::string_view word) {
  return std::find(std::begin(kKeywords), std::end(kKeywords), word) !=
         std::end(kKeywords);
}

LexSummary lex(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::EmptySource, "lex: empty source");
  return Lexer(text).run();
}

std::size_t match_paren(const std::vector<Token>& tokens, std::size_t open) {
  long depth = 0;
  for (std::size_t i = open; i < tokens.size(); ++i) {
    if (tokens[i].is_punct("(")) ++depth;
    if (tokens[i].is_punct(")") && --depth == 0) return i;
  }
  return tokens.size();
}

}  // namespace gcjstyle::stylometry
