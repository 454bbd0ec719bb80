#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "monoidw/dfa.hpp"
#include "monoidw/monoid.hpp"

namespace monoidw {

inline constexpr std::size_t kDefaultDelayBound = 8;

/// A set of nonempty words over `alphabet`, either listed or given by an
/// automaton that rejects the empty word.
class CodeSpec {
 public:
  /// InvalidCode on empty or repeated words.
  static CodeSpec from_words(std::string_view alphabet, std::vector<std::string> words);
  /// InvalidCode if d accepts the empty word.
  static CodeSpec from_dfa(const Dfa& d);

  const std::string& alphabet() const noexcept { return alphabet_; }
  bool is_finite_list() const noexcept { return std::holds_alternative<std::vector<std::string>>(body_); }
  const std::vector<std::string>* words() const noexcept {
    return std::get_if<std::vector<std::string>>(&body_);
  }
  /// Minimal DFA of the code over `alphabet()`.
  const Dfa& language() const noexcept { return language_; }

 private:
  CodeSpec(std::string alphabet, std::variant<std::vector<std::string>, Dfa> body, Dfa language)
      : alphabet_(std::move(alphabet)), body_(std::move(body)), language_(std::move(language)) {}

  std::string alphabet_;
  std::variant<std::vector<std::string>, Dfa> body_;
  Dfa language_;
};

struct PrefixCheck {
  bool prefix_free = true;
  std::optional<std::pair<std::string, std::string>> witness;  // (u, uv), both in K
};

PrefixCheck is_prefix_free(const CodeSpec& k);

struct DelayWitness {
  std::string u, v, w;
};

struct DelayCheck {
  bool holds = true;
  std::optional<DelayWitness> witness;  // shortest uvw in K* with v in K^d, uv not in K*
};

/// Decides synchronization delay d (d >= 1). NotPrefixFree when K is not a
/// prefix code.
DelayCheck has_sync_delay(const CodeSpec& k, std::size_t d);

/// Least d <= d_max with delay d.
std::optional<std::size_t> min_sync_delay(const CodeSpec& k, std::size_t d_max = kDefaultDelayBound);

struct ControlledStarSpec {
  FiniteMonoid group;
  std::vector<std::pair<Elem, CodeSpec>> parts;  // group element -> K_g
  std::size_t delay_bound = kDefaultDelayBound;
};

struct ControlledStar {
  Dfa language;       // minimal
  std::size_t delay;  // certified synchronization delay of the union code
  std::string alphabet;
};

/// Sequences of codewords whose labels multiply to the identity.
/// Raises NotAGroup, InvalidCode, PartsNotDisjoint, NotPrefixFree or
/// DelayNotCertified.
ControlledStar controlled_star(const ControlledStarSpec& spec);

// Code file:
//   code
//   alphabet a b c        (optional)
//   words <w1> <w2> ... | dfa <path> | regex <pattern>
// Relative paths are resolved against `base`.
CodeSpec parse_code(std::string_view text, const std::filesystem::path& base = {});
CodeSpec read_code_file(const std::filesystem::path& path);

// Controlled-star file:
//   cstar
//   group <monoid path>
//   alphabet a b c        (optional)
//   delay <n>             (optional bound, default 8)
//   part <g> words ... | part <g> dfa <path> | part <g> regex <pattern>
ControlledStarSpec parse_cstar(std::string_view text, const std::filesystem::path& base = {});
ControlledStarSpec read_cstar_file(const std::filesystem::path& path);

}  // namespace monoidw
