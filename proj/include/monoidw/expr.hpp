#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "monoidw/codes.hpp"
#include "monoidw/dfa.hpp"
#include "monoidw/monoid.hpp"

namespace monoidw {

/// Expression tree over finite languages. SD expressions use Finite, Union,
/// Concat and CStar; SF expressions use Finite, Union, Concat and
/// Complement.
struct Expr {
  enum class Kind { Finite, Union, Concat, Complement, CStar };

  Kind kind = Kind::Finite;
  std::vector<std::string> words;                    // Finite
  std::vector<Expr> children;                        // Union, Concat, Complement
  std::shared_ptr<const ControlledStarSpec> cstar;   // CStar
  std::string label;                                 // CStar source, for printing

  static Expr finite(std::vector<std::string> words);
  static Expr union_of(std::vector<Expr> children);
  static Expr concat(std::vector<Expr> children);
  static Expr complement(Expr child);
  static Expr controlled_star(ControlledStarSpec spec, std::string label = "inline");
};

/// Prefix syntax: (finite w ...), (union e ...), (concat e ...),
/// (complement e), (cstar <path>). `eps` is the empty word. Paths are
/// resolved against `base`.
Expr parse_expression(std::string_view text, const std::filesystem::path& base = {});
std::string format_expression(const Expr& e);

/// Symbols occurring in finite sets and controlled-star parts.
std::string expression_alphabet(const Expr& e);

bool is_sd_expression(const Expr& e);
bool is_sf_expression(const Expr& e);

/// Minimal DFA over `alphabet` merged with the expression's own symbols.
/// Complement is taken relative to that alphabet.
Dfa evaluate(const Expr& e, std::string_view alphabet = {});
/// Like evaluate, but InvalidExpression on Complement / CStar nodes.
Dfa eval_sd(const Expr& e, std::string_view alphabet = {});
Dfa eval_sf(const Expr& e, std::string_view alphabet = {});

/// Whether every subgroup of the syntactic monoid of the SD expression lies
/// in h. InvalidExpression if some controlled star uses a group outside h.
bool verify_sd_in_hbar(const Expr& e, Variety h, std::string_view alphabet = {});

}  // namespace monoidw
