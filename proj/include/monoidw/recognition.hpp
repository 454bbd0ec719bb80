#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "monoidw/dfa.hpp"
#include "monoidw/monoid.hpp"

namespace monoidw {

inline constexpr std::size_t kDefaultTransitionCap = 4096;

/// Monoid of transformations of {0..degree-1} generated by `generators`,
/// composed left to right: (x * y)(q) = y(x(q)). Element 0 is the identity
/// map; the others appear in breadth-first order over the generators.
struct TransformationMonoid {
  FiniteMonoid monoid;
  std::vector<std::vector<Elem>> transformations;
  std::vector<Elem> generator_images;
};

TransformationMonoid transformation_monoid(std::size_t degree,
                                           const std::vector<std::vector<Elem>>& generators,
                                           std::size_t cap = kDefaultTransitionCap);

/// A monoid morphism phi: A* -> M given on letters together with an
/// accepting subset, so that the recognized language is phi^-1(accepting).
struct RecognitionData {
  FiniteMonoid monoid;
  std::string alphabet;
  std::vector<Elem> letter_images;  // indexed like `alphabet`
  std::vector<Elem> accepting;      // sorted

  Elem evaluate(std::string_view word) const;
  bool accepts(std::string_view word) const;
};

/// Transition monoid of d. The result is cross-checked against d on every
/// word of length <= 8 (fewer for large alphabets).
RecognitionData transition_monoid(const Dfa& d, std::size_t cap = kDefaultTransitionCap);

/// Transition monoid of the minimal automaton.
RecognitionData syntactic_monoid(const Dfa& d, std::size_t cap = kDefaultTransitionCap);

inline constexpr std::size_t kDefaultElementCap = 1'000'000;

/// Whether every maximal subgroup of the transition monoid of d lies in h.
/// Works on the transformations alone, without a multiplication table, so it
/// reaches monoids well past the table cap. x lies in a subgroup iff
/// x^(w+1) = x, and that subgroup is H(x^w).
bool transition_subgroups_satisfy(const Dfa& d, Variety h, std::size_t cap = kDefaultElementCap);

}  // namespace monoidw
