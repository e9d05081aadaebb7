#include "gcjstyle/synth.hpp"

#include <array>
#include <cmath>
#include <cstdio>

#include "gcjstyle/error.hpp"
#include "gcjstyle/io.hpp"
#include "gcjstyle/rng.hpp"

namespace gcjstyle::corpus {

namespace fs = std::filesystem;

namespace {

template <std::size_t N>
const char* pick(Rng& rng, const std::array<const char*, N>& options) {
  return options[rng.below(N)];
}

constexpr std::array<const char*, 6> kCommentTexts = {
    "read input", "main loop", "compute the answer", "edge case",
    "print result", "helper",
};

// Identifier choices of different lengths give every file a slightly
// different size, so per-length features vary within a profile.
constexpr std::array<const char*, 4> kFirstNames = {"a", "x", "u", "p"};
constexpr std::array<const char*, 4> kSecondNames = {"b", "y", "v", "q"};
constexpr std::array<const char*, 5> kAnswerNames = {"r", "s", "ans", "res",
                                                     "sum"};
constexpr std::array<const char*, 4> kCountNames = {"n", "N", "m", "nn"};

class Emitter {
 public:
  Emitter(const StyleProfile& style, Rng& rng) : style_(style), rng_(rng) {}

  void line(const std::string& s) {
    indent();
    out_ += s;
    out_ += '\n';
  }

  void raw(const std::string& s) { out_ += s + '\n'; }

  void blank() { out_ += '\n'; }

  void open(const std::string& header) {
    if (style_.brace_on_new_line) {
      line(header);
      line("{");
    } else {
      line(header + " {");
    }
    ++level_;
  }

  void close(const std::string& suffix = "") {
    --level_;
    line("}" + suffix);
  }

  /// `else` continuation after a closed block.
  void close_else(const std::string& header) {
    --level_;
    if (style_.brace_on_new_line) {
      line("}");
      open(header);
    } else {
      line("} " + header + " {");
      ++level_;
    }
  }

  void maybe_comment(double light, double heavy) {
    if (!rng_.bernoulli(style_.heavy_comments ? heavy : light)) return;
    const std::string text = pick(rng_, kCommentTexts);
    if (rng_.bernoulli(0.75)) {
      line("// " + text);
    } else {
      line("/* " + text + " */");
    }
  }

  std::string take() { return std::move(out_); }

 private:
  void indent() {
    if (style_.indent_with_tabs) {
      out_.append(static_cast<std::size_t>(level_), '\t');
    } else {
      out_.append(static_cast<std::size_t>(level_ * style_.indent_width), ' ');
    }
  }

  StyleProfile style_;
  Rng& rng_;
  std::string out_;
  int level_ = 0;
};

void emit_gcd(Emitter& e, Rng& rng) {
  const std::string a = pick(rng, kFirstNames);
  const std::string b = pick(rng, kSecondNames);
  e.maybe_comment(0.0, 0.9);
  e.open("long long gcd(long long " + a + ", long long " + b + ")");
  e.line("if (" + b + " == 0) return " + a + ";");
  e.line("return gcd(" + b + ", " + a + " % " + b + ");");
  e.close();
}

void emit_main_body(Emitter& e, Rng& rng) {
  const std::string ans = pick(rng, kAnswerNames);
  const std::string n = pick(rng, kCountNames);
  e.line("int " + n + ";");
  e.line("scanf(\"%d\", &" + n + ");");
  e.maybe_comment(0.0, 0.6);
  e.line("long long " + ans + " = 0;");
  switch (1) {
    case 0:
      e.open("for (int i = 0; i < " + n + "; ++i)");
      e.line("int x;");
      e.line("scanf(\"%d\", &x);");
      e.open("if (x % 2 == 0)");
      e.line(ans + " += x;");
      e.close_else("else");
      e.line(ans + " -= 1;");
      e.close();
      e.close();
      break;
    case 1:
      e.line("vector<int> v(" + n + ");");
      e.open("for (int i = 0; i < " + n + "; ++i)");
      e.line("scanf(\"%d\", &v[i]);");
      e.close();
      e.line("sort(v.begin(), v.end());");
      e.open("for (int i = 0; i < " + n + "; ++i)");
      e.line(ans + " = max(" + ans + ", (long long)v[i] * (" + n + " - i));");
      e.close();
      break;
    default:
      e.line("int i = 0;");
      e.open("while (i < " + n + ")");
      e.line(ans + " += i % 3 == 0 ? i : 1;");
      e.line("++i;");
      e.close();
      break;
  }
  e.maybe_comment(0.0, 0.6);
  e.line("printf(\"Case #%d: %lld\\n\", tc, " + ans + ");");
}

}  // namespace

StyleProfile style_profile(int profile) {
  StyleProfile s;
  s.brace_on_new_line = (profile & 1) != 0;
  s.indent_with_tabs = (profile & 2) == 0;
  s.heavy_comments = (profile & 4) != 0;
  s.indent_width = (profile & 8) != 0 ? 2 : 4;
  return s;
}

std::size_t positive_count(std::size_t n, double rate) {
  const double exact_pos = static_cast<double>(n) * rate;
  const double exact_neg = static_cast<double>(n) * (1.0 - rate);
  auto pos = static_cast<std::size_t>(std::floor(exact_pos));
  const auto neg = static_cast<std::size_t>(std::floor(exact_neg));
  if (pos + neg < n) {
    // One seat left over; it goes to the larger remainder, positives on ties.
    const double rem_pos = exact_pos - std::floor(exact_pos);
    const double rem_neg = exact_neg - std::floor(exact_neg);
    if (rem_pos >= rem_neg) ++pos;
  }
  return pos;
}

std::string render_solution(const StyleProfile& style, std::uint64_t seed) {
  Rng rng(seed);
  Emitter e(style, rng);
  e.raw("#include <cstdio>");
  e.raw("#include <vector>");
  e.raw("#include <algorithm>");
  e.raw("using namespace std;");
  e.blank();
  emit_gcd(e, rng);
  e.blank();
  e.maybe_comment(0.0, 0.9);
  e.open("int main()");
  e.line("int T;");
  e.line("scanf(\"%d\", &T);");
  e.open("for (int tc = 1; tc <= T; ++tc)");
  emit_main_body(e, rng);
  e.close();
  e.line("return 0;");
  e.close();
  return e.take();
}

SyntheticCorpus gen_synthetic_corpus(const SyntheticOptions& opt) {
  if (!(opt.positive_rate > 0.0 && opt.positive_rate < 1.0)) {
    throw Error(ErrorCode::InvalidRate, "positive rate must lie in (0, 1)");
  }
  if (!(opt.skill_style_coupling >= 0.0 && opt.skill_style_coupling <= 1.0)) {
    throw Error(ErrorCode::InvalidRate, "coupling must lie in [0, 1]");
  }
  if (opt.style_profiles < 1 || opt.style_profiles > kMaxStyleProfiles) {
    throw Error(ErrorCode::InvalidProfiles,
                "style profiles must lie in [1, " +
                    std::to_string(kMaxStyleProfiles) + "]");
  }

  const std::size_t n = opt.n_authors;
  const std::size_t n_pos = positive_count(n, opt.positive_rate);
  std::vector<bool> good(n, false);
  {
    Rng label_rng(derive_seed(opt.seed, 0));
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    label_rng.shuffle(idx);
    for (std::size_t i = 0; i < n_pos; ++i) good[idx[i]] = true;
  }

  const int profiles = opt.style_profiles;
  const int width = static_cast<int>(std::to_string(n).size());
  SyntheticCorpus out;
  std::vector<SourceFile> files;
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(derive_seed(opt.seed, i + 1));
    char id[32];
    std::snprintf(id, sizeof id, "author%0*zu", width, i);

    int profile = 0;
    if (rng.bernoulli(opt.skill_style_coupling)) {
      profile = good[i] || profiles == 1
                    ? 0
                    : 1 + static_cast<int>(rng.below(profiles - 1));
    } else {
      profile = static_cast<int>(rng.below(static_cast<std::size_t>(profiles)));
    }

    Round max_round;
    if (good[i]) {
      max_round = rng.bernoulli(0.1) ? Round::WorldFinals : Round::R3;
    } else {
      max_round = rng.bernoulli(0.15) ? Round::R2 : Round::Qualification;
    }

    out.manifest.push_back({id, kSyntheticYear, max_round});
    out.truth.push_back({id, good[i], profile});
    files.push_back(make_source_file(
        id, kSyntheticProblem, kSyntheticRound, kSyntheticYear,
        render_solution(style_profile(profile), rng.next())));
  }
  out.corpus = Corpus(std::move(files), out.manifest);
  return out;
}

std::string format_ground_truth(const std::vector<GroundTruth>& truth) {
  std::string out = "author_id,label,profile\n";
  for (const auto& t : truth) {
    out += t.author_id + "," + (t.label ? "1" : "0") + "," +
           std::to_string(t.profile) + "\n";
  }
  return out;
}

void write_synthetic(const SyntheticCorpus& synth, const fs::path& out_dir) {
  for (const SourceFile& f : synth.corpus.files()) {
    const fs::path p = out_dir / "corpus" / std::to_string(f.year) /
                       std::string(round_token(f.round)) / f.problem_id /
                       (f.author_id + ".cpp");
    io::write_file_atomic(p, f.text);
  }
  io::write_file_atomic(out_dir / "manifest.csv",
                        format_manifest(synth.manifest));
  io::write_file_atomic(out_dir / "ground_truth.csv",
                        format_ground_truth(synth.truth));
}

}  // namespace gcjstyle::corpus
