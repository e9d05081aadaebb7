#include "gcjstyle/features.hpp"

#include <cmath>
#include <set>

#include "gcjstyle/error.hpp"

namespace gcjstyle::stylometry {

namespace {

using Member = double StyleFeatures::*;

constexpr std::array<Member, kNumFeatures> kMembers = {
    &StyleFeatures::num_tabs_per_len,
    &StyleFeatures::num_spaces_per_len,
    &StyleFeatures::num_empty_lines_per_len,
    &StyleFeatures::whitespace_ratio,
    &StyleFeatures::new_line_before_open_brace,
    &StyleFeatures::tabs_lead_lines,
    &StyleFeatures::avg_line_length,
    &StyleFeatures::std_dev_line_length,
    &StyleFeatures::kw_if_per_len,
    &StyleFeatures::kw_else_per_len,
    &StyleFeatures::kw_elseif_per_len,
    &StyleFeatures::kw_for_per_len,
    &StyleFeatures::kw_while_per_len,
    &StyleFeatures::kw_do_per_len,
    &StyleFeatures::kw_break_per_len,
    &StyleFeatures::kw_continue_per_len,
    &StyleFeatures::kw_switch_per_len,
    &StyleFeatures::kw_case_per_len,
    &StyleFeatures::num_ternary_per_len,
    &StyleFeatures::num_tokens_per_len,
    &StyleFeatures::num_unique_tokens_per_len,
    &StyleFeatures::num_comments_per_len,
    &StyleFeatures::num_line_comments_per_len,
    &StyleFeatures::num_block_comments_per_len,
    &StyleFeatures::num_literals_per_len,
    &StyleFeatures::num_macros_per_len,
    &StyleFeatures::nesting_depth,
    &StyleFeatures::num_functions_per_len,
    &StyleFeatures::avg_params,
    &StyleFeatures::std_dev_num_params,
};

constexpr std::array<std::string_view, kNumFeatures> kNames = {
    "num_tabs_per_len",
    "num_spaces_per_len",
    "num_empty_lines_per_len",
    "whitespace_ratio",
    "new_line_before_open_brace",
    "tabs_lead_lines",
    "avg_line_length",
    "std_dev_line_length",
    "kw_if_per_len",
    "kw_else_per_len",
    "kw_elseif_per_len",
    "kw_for_per_len",
    "kw_while_per_len",
    "kw_do_per_len",
    "kw_break_per_len",
    "kw_continue_per_len",
    "kw_switch_per_len",
    "kw_case_per_len",
    "num_ternary_per_len",
    "num_tokens_per_len",
    "num_unique_tokens_per_len",
    "num_comments_per_len",
    "num_line_comments_per_len",
    "num_block_comments_per_len",
    "num_literals_per_len",
    "num_macros_per_len",
    "nesting_depth",
    "num_functions_per_len",
    "avg_params",
    "std_dev_num_params",
};

bool is_line_blank(std::string_view line) {
  for (char c : line) {
    if (c != ' ' && c != '\t' && c != '\r' && c != '\v' && c != '\f') {
      return false;
    }
  }
  return true;
}

/// Tokens the structural passes look at: everything except directives.
std::vector<Token> code_tokens(const std::vector<Token>& tokens) {
  std::vector<Token> code;
  code.reserve(tokens.size());
  for (const Token& t : tokens) {
    if (t.kind != TokenKind::PreprocessorDirective) code.push_back(t);
  }
  return code;
}

bool is_control_keyword(const Token& t) {
  if (t.kind != TokenKind::Keyword) return false;
  const std::string& s = t.spelling;
  return s == "if" || s == "else" || s == "for" || s == "while" || s == "do" ||
         s == "switch";
}

/// Same rule the lexer applies to brace events, over code tokens.
bool brace_is_control(const std::vector<Token>& toks, std::size_t brace) {
  if (brace == 0) return false;
  std::size_t k = brace - 1;
  if (toks[k].is_punct(")")) {
    long depth = 0;
    std::size_t j = k + 1;
    while (j > 0) {
      --j;
      if (toks[j].is_punct(")")) ++depth;
      if (toks[j].is_punct("(") && --depth == 0) break;
    }
    if (depth != 0 || j == 0) return false;
    k = j - 1;
    if (toks[k].is_keyword("constexpr") && k > 0 &&
        toks[k - 1].is_keyword("if")) {
      --k;
    }
  }
  return is_control_keyword(toks[k]);
}

struct Scope {
  bool brace = false;    // false: braceless control body
  bool control = false;  // counts toward nesting depth
  bool do_body = false;
  long saved_paren_depth = 0;
};

/// Walks code tokens keeping a stack of open braces and braceless control
/// bodies. `on_token` is called with the current control depth before each
/// token is applied.
template <typename F>
std::size_t walk_structure(const std::vector<Token>& toks, F&& on_token) {
  const std::size_t n = toks.size();
  // body_starts_after[i]: a control header ends at token i.
  std::vector<bool> body_starts_after(n, false);
  std::vector<bool> do_tail(n, false);
  std::vector<Scope> stack;
  std::size_t depth = 0;
  std::size_t max_depth = 0;
  long paren_depth = 0;

  auto push = [&](Scope s) {
    if (s.control) {
      ++depth;
      max_depth = std::max(max_depth, depth);
    }
    stack.push_back(s);
  };
  auto pop = [&]() {
    if (stack.back().control) --depth;
    stack.pop_back();
  };
  auto next_is_else = [&](std::size_t i) {
    return i + 1 < n && toks[i + 1].is_keyword("else");
  };

  for (std::size_t i = 0; i < n; ++i) {
    const Token& t = toks[i];
    on_token(i, depth);

    if (t.kind == TokenKind::Keyword && !do_tail[i]) {
      const std::string& s = t.spelling;
      if (s == "if" || s == "for" || s == "while" || s == "switch") {
        std::size_t open = i + 1;
        if (open < n && toks[open].is_keyword("constexpr")) ++open;
        if (open < n && toks[open].is_punct("(")) {
          const std::size_t close = match_paren(toks, open);
          if (close < n) body_starts_after[close] = true;
        }
      } else if (s == "do" || (s == "else" && !(i + 1 < n && toks[i + 1].is_keyword("if")))) {
        body_starts_after[i] = true;
      }
    }

    if (t.is_punct("(")) ++paren_depth;
    if (t.is_punct(")") && paren_depth > 0) --paren_depth;

    if (t.is_punct("{")) {
      Scope s;
      s.brace = true;
      s.control = brace_is_control(toks, i);
      s.do_body = i > 0 && toks[i - 1].is_keyword("do");
      s.saved_paren_depth = paren_depth;
      paren_depth = 0;
      push(s);
    } else if (t.is_punct("}")) {
      while (!stack.empty() && !stack.back().brace) pop();
      if (!stack.empty()) {
        const Scope closed = stack.back();
        pop();
        paren_depth = closed.saved_paren_depth;
        if (closed.do_body) {
          if (i + 1 < n && toks[i + 1].is_keyword("while")) do_tail[i + 1] = true;
        } else if (closed.control && !next_is_else(i)) {
          while (!stack.empty() && !stack.back().brace) pop();
        }
      }
    } else if (t.is_punct(";") && paren_depth == 0) {
      if (next_is_else(i)) {
        if (!stack.empty() && !stack.back().brace) pop();
      } else {
        while (!stack.empty() && !stack.back().brace) pop();
      }
    }

    if (body_starts_after[i] && !(i + 1 < n && toks[i + 1].is_punct("{"))) {
      Scope s;
      s.control = true;
      push(s);
    }
  }
  return max_depth;
}

bool is_function_qualifier(const Token& t) {
  if (t.kind == TokenKind::Keyword) {
    return t.spelling == "const" || t.spelling == "volatile" ||
           t.spelling == "noexcept";
  }
  if (t.kind == TokenKind::Identifier) {
    return t.spelling == "override" || t.spelling == "final";
  }
  return t.is_punct("&") || t.is_punct("&&");
}

bool is_type_token(const Token& t) {
  return t.kind == TokenKind::Identifier || t.kind == TokenKind::Keyword ||
         t.is_punct("::") || t.is_punct("<") || t.is_punct(">") ||
         t.is_punct(">>") || t.is_punct("*") || t.is_punct("&") ||
         t.is_punct("&&") || t.is_punct(",");
}

/// Index of the '{' that opens a function body whose parameter list closes
/// at `close`, or n when the tokens after `close` are not a definition.
std::size_t function_body_after(const std::vector<Token>& toks,
                                std::size_t close) {
  const std::size_t n = toks.size();
  std::size_t j = close + 1;
  while (j < n) {
    const Token& t = toks[j];
    if (t.is_punct("{")) return j;
    if (t.is_keyword("noexcept") && j + 1 < n && toks[j + 1].is_punct("(")) {
      j = match_paren(toks, j + 1);
      if (j >= n) return n;
      ++j;
      continue;
    }
    if (is_function_qualifier(t)) {
      ++j;
      continue;
    }
    if (t.is_punct("->")) {
      ++j;
      while (j < n && is_type_token(toks[j])) ++j;
      continue;
    }
    return n;
  }
  return n;
}

std::size_t count_params(const std::vector<Token>& toks, std::size_t open,
                         std::size_t close) {
  if (close == open + 1) return 0;
  if (close == open + 2 && toks[open + 1].is_keyword("void")) return 0;
  std::size_t segments = 1;
  long depth = 0;
  for (std::size_t j = open + 1; j < close; ++j) {
    const Token& t = toks[j];
    if (t.is_punct("(") || t.is_punct("[") || t.is_punct("{") ||
        t.is_punct("<")) {
      ++depth;
    } else if (t.is_punct(")") || t.is_punct("]") || t.is_punct("}") ||
               t.is_punct(">")) {
      depth = std::max(0L, depth - 1);
    } else if (t.is_punct(">>")) {
      depth = std::max(0L, depth - 2);
    } else if (t.is_punct(",") && depth == 0) {
      ++segments;
    }
  }
  return segments;
}

double mean(const std::vector<std::size_t>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (auto x : v) s += static_cast<double>(x);
  return s / static_cast<double>(v.size());
}

double population_stddev(const std::vector<std::size_t>& v) {
  if (v.empty()) return 0.0;
  const double m = mean(v);
  double ss = 0.0;
  for (auto x : v) {
    const double d = static_cast<double>(x) - m;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(v.size()));
}

}  // namespace

std::array<double, kNumFeatures> StyleFeatures::to_array() const {
  std::array<double, kNumFeatures> a{};
  for (std::size_t i = 0; i < kNumFeatures; ++i) a[i] = this->*kMembers[i];
  return a;
}

StyleFeatures StyleFeatures::from_array(
    const std::array<double, kNumFeatures>& a) {
  StyleFeatures f;
  for (std::size_t i = 0; i < kNumFeatures; ++i) f.*kMembers[i] = a[i];
  return f;
}

const std::array<std::string_view, kNumFeatures>& StyleFeatures::names() {
  return kNames;
}

std::size_t count_chars(std::string_view utf8) {
  std::size_t n = 0;
  for (char c : utf8) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::size_t control_nesting_depth(const std::vector<Token>& tokens) {
  return walk_structure(code_tokens(tokens), [](std::size_t, std::size_t) {});
}

std::vector<std::size_t> detect_functions(const std::vector<Token>& tokens) {
  const std::vector<Token> toks = code_tokens(tokens);
  const std::size_t n = toks.size();
  std::vector<std::size_t> params;
  walk_structure(toks, [&](std::size_t i, std::size_t depth) {
    if (depth != 0 || toks[i].kind != TokenKind::Identifier) return;
    if (i + 1 >= n || !toks[i + 1].is_punct("(")) return;
    const std::size_t close = match_paren(toks, i + 1);
    if (close >= n) return;
    if (function_body_after(toks, close) >= n) return;
    params.push_back(count_params(toks, i + 1, close));
  });
  return params;
}

RawCounts count(std::string_view text, const LexSummary& summary) {
  RawCounts c;
  c.char_length = count_chars(text);
  for (char ch : text) {
    switch (ch) {
      case '\t': ++c.tabs; ++c.whitespace_chars; break;
      case ' ': ++c.spaces; ++c.whitespace_chars; break;
      case '\n':
      case '\r': ++c.whitespace_chars; break;
      default: break;
    }
  }
  c.non_whitespace_chars = c.char_length - c.whitespace_chars;

  for (const std::string& raw : summary.lines) {
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    c.line_lengths.push_back(count_chars(line));
    if (is_line_blank(line)) {
      ++c.empty_lines;
    } else if (line.front() == '\t') {
      ++c.tab_led_lines;
    } else {
      ++c.other_nonblank_lines;
    }
  }

  for (const BraceEvent& ev : summary.brace_events) {
    (ev.preceded_by_newline ? c.braces_on_new_line : c.braces_trailing)++;
  }

  const std::vector<Token>& toks = summary.tokens;
  std::set<std::string> spellings;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const Token& t = toks[i];
    spellings.insert(t.spelling);
    switch (t.kind) {
      case TokenKind::NumericLiteral:
      case TokenKind::StringLiteral:
      case TokenKind::CharLiteral:
        ++c.literals;
        break;
      case TokenKind::OperatorPunct:
        if (t.spelling == "?") ++c.ternaries;
        break;
      default:
        break;
    }
  }
  c.tokens = toks.size();
  c.unique_tokens = spellings.size();

  // Keyword counts over code tokens so "else <directive> if" still pairs.
  const std::vector<Token> code = code_tokens(toks);
  for (std::size_t i = 0; i < code.size(); ++i) {
    const Token& t = code[i];
    if (t.kind != TokenKind::Keyword) continue;
    const std::string& s = t.spelling;
    if (s == "else") {
      if (i + 1 < code.size() && code[i + 1].is_keyword("if")) {
        ++c.kw_elseif;
        ++i;  // the paired `if` is consumed
      } else {
        ++c.kw_else;
      }
    } else if (s == "if") {
      ++c.kw_if;
    } else if (s == "for") {
      ++c.kw_for;
    } else if (s == "while") {
      ++c.kw_while;
    } else if (s == "do") {
      ++c.kw_do;
    } else if (s == "break") {
      ++c.kw_break;
    } else if (s == "continue") {
      ++c.kw_continue;
    } else if (s == "switch") {
      ++c.kw_switch;
    } else if (s == "case") {
      ++c.kw_case;
    }
  }

  c.line_comments = summary.line_comment_count;
  c.block_comments = summary.block_comment_count;
  c.macros = summary.macro_directive_count;
  c.nesting_depth = walk_structure(code, [](std::size_t, std::size_t) {});
  c.function_params = detect_functions(toks);
  c.unbalanced_braces = summary.unbalanced_braces;
  return c;
}

RawCounts count(std::string_view text) { return count(text, lex(text)); }

StyleFeatures normalize(const RawCounts& c) {
  const double len = static_cast<double>(c.char_length);
  auto per_len = [len](std::size_t x) {
    return len == 0.0 ? 0.0 : static_cast<double>(x) / len;
  };
  auto proportion = [](std::size_t a, std::size_t b) {
    return a + b == 0 ? 0.0
                      : static_cast<double>(a) / static_cast<double>(a + b);
  };

  StyleFeatures f;
  f.num_tabs_per_len = per_len(c.tabs);
  f.num_spaces_per_len = per_len(c.spaces);
  f.num_empty_lines_per_len = per_len(c.empty_lines);
  f.whitespace_ratio =
      c.non_whitespace_chars == 0
          ? 0.0
          : static_cast<double>(c.whitespace_chars) /
                static_cast<double>(c.non_whitespace_chars);
  f.new_line_before_open_brace =
      proportion(c.braces_on_new_line, c.braces_trailing);
  f.tabs_lead_lines = proportion(c.tab_led_lines, c.other_nonblank_lines);
  f.avg_line_length = mean(c.line_lengths);
  f.std_dev_line_length = population_stddev(c.line_lengths);
  f.kw_if_per_len = per_len(c.kw_if);
  f.kw_else_per_len = per_len(c.kw_else);
  f.kw_elseif_per_len = per_len(c.kw_elseif);
  f.kw_for_per_len = per_len(c.kw_for);
  f.kw_while_per_len = per_len(c.kw_while);
  f.kw_do_per_len = per_len(c.kw_do);
  f.kw_break_per_len = per_len(c.kw_break);
  f.kw_continue_per_len = per_len(c.kw_continue);
  f.kw_switch_per_len = per_len(c.kw_switch);
  f.kw_case_per_len = per_len(c.kw_case);
  f.num_ternary_per_len = per_len(c.ternaries);
  f.num_tokens_per_len = per_len(c.tokens);
  f.num_unique_tokens_per_len = per_len(c.unique_tokens);
  f.num_comments_per_len = per_len(c.line_comments + c.block_comments);
  f.num_line_comments_per_len = per_len(c.line_comments);
  f.num_block_comments_per_len = per_len(c.block_comments);
  f.num_literals_per_len = per_len(c.literals);
  f.num_macros_per_len = per_len(c.macros);
  f.nesting_depth = static_cast<double>(c.nesting_depth);
  f.num_functions_per_len = per_len(c.function_params.size());
  f.avg_params = mean(c.function_params);
  f.std_dev_num_params = population_stddev(c.function_params);
  return f;
}

StyleFeatures extract_features(std::string_view text) {
  return normalize(count(text));
}

}  // namespace gcjstyle::stylometry
