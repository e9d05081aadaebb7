#pragma once

#include <compare>
#include <optional>
#include <string_view>

namespace gcjstyle {

enum class Round {
  Qualification,
  R1A,
  R1B,
  R1C,
  R2,
  R3,
  WorldFinals,
};

/// Position in the contest progression; the three Round 1 variants share
/// rank 1.
constexpr int round_rank(Round r) noexcept {
  switch (r) {
    case Round::Qualification: return 0;
    case Round::R1A:
    case Round::R1B:
    case Round::R1C: return 1;
    case Round::R2: return 2;
    case Round::R3: return 3;
    case Round::WorldFinals: return 4;
  }
  return 0;
}

/// Partial order: distinct Round 1 variants are unordered.
constexpr std::partial_ordering compare_rounds(Round a, Round b) noexcept {
  if (a == b) return std::partial_ordering::equivalent;
  const int ra = round_rank(a);
  const int rb = round_rank(b);
  if (ra == rb) return std::partial_ordering::unordered;
  return ra <=> rb;
}

/// "Good" programmers reached Round 3 or the World Finals.
constexpr bool is_good(Round max_round) noexcept {
  return round_rank(max_round) >= round_rank(Round::R3);
}

/// On-disk token: Q, 1A, 1B, 1C, 2, 3, F.
std::string_view round_token(Round r) noexcept;

/// Accepts the on-disk tokens and the long names (Qualification, R1A, ...,
/// R2, R3, WorldFinals, WF).
std::optional<Round> parse_round(std::string_view token) noexcept;

}  // namespace gcjstyle
