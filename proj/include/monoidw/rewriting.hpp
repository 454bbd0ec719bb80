#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "monoidw/dfa.hpp"
#include "monoidw/monoid.hpp"

namespace monoidw {

struct Rule {
  std::string lhs;
  std::string rhs;
  bool operator==(const Rule&) const = default;
};

/// Finite string rewriting system. The alphabet is sorted; every rule has a
/// nonempty left side, uses only alphabet symbols, and differs from its
/// right side. Rules are kept in input order.
class SemiThueSystem {
 public:
  /// Validates and builds. Symbols used by the rules are added to
  /// `alphabet`. Raises InvalidSystem.
  static SemiThueSystem make(std::string_view alphabet, std::vector<Rule> rules);

  const std::string& alphabet() const noexcept { return alphabet_; }
  const std::vector<Rule>& rules() const noexcept { return rules_; }
  std::size_t symbol_index(char c) const;

 private:
  SemiThueSystem(std::string alphabet, std::vector<Rule> rules)
      : alphabet_(std::move(alphabet)), rules_(std::move(rules)) {}

  std::string alphabet_;
  std::vector<Rule> rules_;
};

/// Positive weights per symbol, indexed like the system alphabet.
struct WeightFunction {
  std::vector<std::uint64_t> weights;

  static WeightFunction uniform(std::size_t symbols) { return {std::vector<std::uint64_t>(symbols, 1)}; }
  std::uint64_t of(const SemiThueSystem& s, std::string_view word) const;
};

enum class OrderKind { Length, Weight, Parikh, Subword };

struct ReductionOrder {
  OrderKind kind = OrderKind::Length;
  WeightFunction gamma;  // only for Weight
};

std::string_view to_string(OrderKind kind) noexcept;
std::optional<OrderKind> parse_order_kind(std::string_view name);

/// Letter counts of w, indexed like `alphabet`. AlphabetMismatch on foreign
/// symbols.
std::vector<std::size_t> parikh_image(std::string_view alphabet, std::string_view w);

/// Scattered subword: u is obtained from w by deleting letters.
bool is_subword(std::string_view u, std::string_view w) noexcept;

struct ReducingCheck {
  bool ok = true;
  std::optional<std::size_t> violating_rule;
};

ReducingCheck check_reducing(const SemiThueSystem& s, const ReductionOrder& order);

/// A weight function for which every rule strictly decreases, if one is
/// found: the uniform weight when the system is length-reducing, otherwise a
/// small exhaustive search over weights 1..8.
std::optional<WeightFunction> find_termination_weight(const SemiThueSystem& s);

/// Left-to-right stack rewriting driven by an Aho-Corasick automaton over
/// the left sides. Among several rules matching at the top of the stack the
/// one listed first wins.
class Rewriter {
 public:
  /// `gamma` must make every rule weight-reducing (not rechecked here); it
  /// bounds the number of steps.
  Rewriter(const SemiThueSystem& s, WeightFunction gamma);

  std::string normal_form(std::string_view w) const;
  bool is_irreducible(std::string_view w) const;

  /// IRR(S) as a minimal DFA over the system alphabet.
  Dfa irreducible_words() const;

  const SemiThueSystem& system() const noexcept { return system_; }
  const WeightFunction& gamma() const noexcept { return gamma_; }

 private:
  SemiThueSystem system_;
  WeightFunction gamma_;
  std::vector<std::uint32_t> go_;     // state * |A| + symbol
  std::vector<std::uint32_t> match_;  // lowest matching rule index or kNone
};

/// Normal form using a termination weight found by find_termination_weight.
/// PreconditionNotCertified if none is found.
std::string normal_form(const SemiThueSystem& s, std::string_view w);

struct CriticalPair {
  std::string word;  // the overlap word
  std::string left;
  std::string right;
  std::size_t rule_a;
  std::size_t rule_b;
};

/// Suffix-prefix overlaps of every ordered pair of left sides (self-overlaps
/// included) and occurrences of one left side inside another.
std::vector<CriticalPair> critical_pairs(const SemiThueSystem& s);

struct ConfluenceResult {
  bool confluent = true;
  std::optional<CriticalPair> witness;
  std::string left_normal_form;
  std::string right_normal_form;
  std::size_t pairs_checked = 0;
};

/// Critical-pair test. PreconditionNotCertified when no termination weight
/// is found.
ConfluenceResult is_confluent(const SemiThueSystem& s);

/// Number of congruence classes, nullopt when infinite. Requires a
/// terminating confluent system (PreconditionNotCertified otherwise).
std::optional<std::uint64_t> finite_index(const SemiThueSystem& s);

inline constexpr std::size_t kDefaultQuotientCap = 1024;

struct QuotientMonoid {
  FiniteMonoid monoid;
  std::vector<std::string> elements;  // irreducible words, shortlex; element k <-> elements[k]
  std::string alphabet;
  std::vector<Elem> letter_images;

  Elem evaluate(std::string_view word) const;
};

/// A*/S on the irreducible words. InfiniteIndex when the index is infinite.
QuotientMonoid quotient_monoid(const SemiThueSystem& s, std::size_t cap = kDefaultQuotientCap);

/// Whether phi (given on letters, indexed like the system alphabet) sends
/// both sides of every rule to the same element.
bool factorizes_through(const FiniteMonoid& target, const std::vector<Elem>& letter_images,
                        const SemiThueSystem& s);

/// Whether L is a union of congruence classes of S.
bool recognizes(const SemiThueSystem& s, const Dfa& language);

// Text format: one rule per line `<lhs> -> <rhs>`, `eps` for the empty
// word, `#` comments, optional first line `alphabet a b c`.
SemiThueSystem parse_system(std::string_view text);
SemiThueSystem read_system_file(const std::filesystem::path& path);
std::string format_system(const SemiThueSystem& s);

}  // namespace monoidw
