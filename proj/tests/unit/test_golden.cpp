#include <doctest.h>

#include "gcjstyle/features.hpp"
#include "gcjstyle/io.hpp"
#include "golden_oracle.hpp"

using namespace gcjstyle::stylometry;

TEST_SUITE("golden") {

TEST_CASE("fixture corpus covers every feature") {
  const auto fixtures = golden::load(GOLDEN_DIR);
  REQUIRE(fixtures.size() >= 20);
  // Each feature must be non-zero on at least one fixture, otherwise the
  // fixture set would not exercise it.
  std::array<bool, 30> seen{};
  for (const auto& e : fixtures) {
    const auto f = golden::features(e);
    for (std::size_t i = 0; i < 30; ++i) seen[i] = seen[i] || f[i] != 0.0;
  }
  for (std::size_t i = 0; i < 30; ++i) {
    CAPTURE(StyleFeatures::names()[i]);
    CHECK(seen[i]);
  }
}

TEST_CASE("raw counts match the hand counts exactly") {
  for (const auto& e : golden::load(GOLDEN_DIR)) {
    CAPTURE(e.file);
    const std::string text = gcjstyle::io::read_file(std::string(GOLDEN_DIR) + "/" + e.file);
    const RawCounts c = count(text);
    CHECK(c.char_length == e.chars);
    CHECK(c.tabs == e.tabs);
    CHECK(c.spaces == e.spaces);
    CHECK(c.whitespace_chars == e.whitespace);
    CHECK(c.empty_lines == e.empty_lines);
    CHECK(c.tab_led_lines == e.tab_led);
    CHECK(c.other_nonblank_lines == e.other_nonblank);
    CHECK(c.line_lengths == e.line_lengths);
    CHECK(c.tokens == e.tokens);
    CHECK(c.unique_tokens == e.unique);
    const std::array<std::size_t, 10> kw = {c.kw_if,    c.kw_else,  c.kw_elseif,   c.kw_for,
                                            c.kw_while, c.kw_do,    c.kw_break,    c.kw_continue,
                                            c.kw_switch, c.kw_case};
    CHECK(kw == e.kw);
    CHECK(c.ternaries == e.ternary);
    CHECK(c.literals == e.literals);
    CHECK(c.line_comments == e.line_comments);
    CHECK(c.block_comments == e.block_comments);
    CHECK(c.macros == e.macros);
    CHECK(c.braces_on_new_line == e.braces_newline);
    CHECK(c.braces_trailing == e.braces_trailing);
    CHECK(c.nesting_depth == e.depth);
    CHECK(c.function_params == e.params);
  }
}

TEST_CASE("features match the oracle to 1e-9") {
  for (const auto& e : golden::load(GOLDEN_DIR)) {
    CAPTURE(e.file);
    const std::string text = gcjstyle::io::read_file(std::string(GOLDEN_DIR) + "/" + e.file);
    const auto got = extract_features(text).to_array();
    const auto want = golden::features(e);
    for (std::size_t i = 0; i < 30; ++i) {
      CAPTURE(StyleFeatures::names()[i]);
      CHECK(std::abs(got[i] - want[i]) <= 1e-9);
    }
  }
}

}  // TEST_SUITE
