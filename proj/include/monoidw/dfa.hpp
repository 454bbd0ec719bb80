#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "monoidw/error.hpp"

namespace monoidw {

inline constexpr std::size_t kDefaultStateCap = 1'000'000;

/// Complete deterministic automaton over single-character symbols.
///
/// The alphabet is kept sorted and duplicate-free; `delta` is row-major
/// (state * |alphabet| + symbol index). Every state has every transition, so
/// complementing is just flipping the final set.
class Dfa {
 public:
  using State = std::uint32_t;

  /// Validates totality and ranges. `delta` columns follow the order of
  /// `alphabet` as given; the alphabet is normalized afterwards.
  Dfa(std::string alphabet, std::size_t states, State initial, std::vector<bool> finals,
      std::vector<State> delta);

  const std::string& alphabet() const noexcept { return alphabet_; }
  std::size_t state_count() const noexcept { return states_; }
  State initial() const noexcept { return initial_; }
  bool is_final(State q) const { return finals_.at(q); }
  const std::vector<bool>& finals() const noexcept { return finals_; }

  std::optional<std::size_t> symbol_index(char symbol) const noexcept;
  State next(State q, std::size_t symbol) const noexcept {
    return delta_[std::size_t{q} * alphabet_.size() + symbol];
  }
  State next(State q, char symbol) const;
  /// Runs the word from q; AlphabetMismatch on foreign symbols.
  State run(State q, std::string_view word) const;
  bool accepts(std::string_view word) const { return finals_[run(initial_, word)]; }

  bool operator==(const Dfa&) const = default;

 private:
  std::string alphabet_;
  std::size_t states_;
  State initial_;
  std::vector<bool> finals_;
  std::vector<State> delta_;
  std::array<std::int16_t, 256> index_{};
};

/// Sorted, duplicate-free union of the two symbol sets.
std::string merge_alphabets(std::string_view a, std::string_view b);
std::string normalize_alphabet(std::string_view symbols);

Dfa empty_language(std::string_view alphabet);
Dfa universal_language(std::string_view alphabet);
Dfa from_finite_set(std::string_view alphabet, std::span<const std::string> words);
Dfa from_word(std::string_view alphabet, std::string_view word);

/// Same language over a larger alphabet (new symbols go to a sink).
Dfa with_alphabet(const Dfa& d, std::string_view alphabet);

// Binary operations work over the union of both alphabets.
Dfa complement(const Dfa& d);
Dfa intersection(const Dfa& a, const Dfa& b);
Dfa union_of(const Dfa& a, const Dfa& b);
Dfa difference(const Dfa& a, const Dfa& b);
Dfa concat(const Dfa& a, const Dfa& b, std::size_t state_cap = kDefaultStateCap);
Dfa star(const Dfa& d, std::size_t state_cap = kDefaultStateCap);
/// d^k (k >= 0; d^0 = {ε}).
Dfa power(const Dfa& d, std::size_t k, std::size_t state_cap = kDefaultStateCap);

/// Unique minimal complete DFA with states numbered in BFS order from the
/// initial state (symbols in alphabet order).
Dfa minimize(const Dfa& d);

bool is_empty(const Dfa& d);
bool is_finite(const Dfa& d);
/// Number of accepted words, or nullopt when infinite.
std::optional<std::uint64_t> count_words(const Dfa& d);
/// Up to `limit` accepted words in shortlex order.
std::vector<std::string> enumerate_words(const Dfa& d, std::size_t limit);
std::optional<std::string> shortest_word(const Dfa& d);

/// Shortest word on which the two automata disagree, or nullopt if equivalent.
std::optional<std::string> distinguishing_word(const Dfa& a, const Dfa& b);
bool equivalent(const Dfa& a, const Dfa& b);
bool is_subset(const Dfa& a, const Dfa& b);

/// Minimal regular expressions: symbols, juxtaposition, '|', '*', parentheses
/// ("()" is the empty word).
Dfa from_regex(std::string_view pattern, std::string_view alphabet);

// Text format:
//   dfa
//   alphabet a b ...
//   states <n>
//   initial <q>
//   final <q> <q> ...
//   trans <q> <symbol> <q'>     (one line per transition; must be total)
Dfa parse_dfa(std::string_view text);
Dfa read_dfa_file(const std::filesystem::path& path);
std::string format_dfa(const Dfa& d);

}  // namespace monoidw
