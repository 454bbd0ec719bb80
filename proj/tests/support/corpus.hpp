#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "monoidw/dfa.hpp"
#include "monoidw/monoid.hpp"

namespace testsupport {

using monoidw::Dfa;
using monoidw::Elem;
using monoidw::FiniteMonoid;

struct Named {
  std::string name;
  FiniteMonoid monoid;
};

/// Every monoid of order n (1..4) with identity 0, one per isomorphism class.
std::vector<FiniteMonoid> monoids_of_order(std::size_t n);
/// monoids_of_order(1..n) concatenated.
std::vector<FiniteMonoid> monoids_up_to(std::size_t n);

FiniteMonoid klein_group();
FiniteMonoid symmetric_group3();
/// All maps {0..n-1} -> {0..n-1} under composition.
FiniteMonoid full_transformation_monoid(std::size_t n);
/// {1, a, b} with xy = y on {a, b}.
FiniteMonoid u2_monoid();
/// Five-element Brandt monoid B2 with an identity adjoined.
FiniteMonoid brandt_b2_with_identity();

/// Hand-picked monoids up to size 30.
std::vector<Named> named_monoids();

/// Random complete DFA with the given number of states over `alphabet`.
Dfa random_dfa(std::mt19937_64& rng, std::size_t states, const std::string& alphabet,
               double final_probability = 0.4);

/// Transition monoid of a random DFA (2 letters, 2..max_states states) of
/// size at most max_size; retries until one fits.
FiniteMonoid random_transition_monoid(std::mt19937_64& rng, std::size_t max_states,
                                      std::size_t max_size);

/// Enumerated small monoids, named ones and random transition monoids
/// (deterministic seed), all of size <= max_size.
std::vector<Named> corpus(std::size_t max_size, std::size_t random_count = 40,
                          std::uint64_t seed = 0x5eed);

/// Random word of length in [0, max_len].
std::string random_word(std::mt19937_64& rng, const std::string& alphabet, std::size_t max_len);

/// All words over `alphabet` of length <= max_len in shortlex order.
std::vector<std::string> all_words(const std::string& alphabet, std::size_t max_len);

}  // namespace testsupport
