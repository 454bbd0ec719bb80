#include <doctest.h>

#include <optional>
#include <random>
#include <set>

#include "monoidw/dfa.hpp"
#include "monoidw/green.hpp"
#include "monoidw/recognition.hpp"
#include "monoidw/rewriting.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace monoidw;
using namespace testsupport;

namespace {

Membership member(const Dfa& d) {
  return [d](const std::string& w) { return d.accepts(w); };
}

Dfa even_length() {
  return parse_dfa(
      "dfa\nalphabet a b\nstates 2\ninitial 0\nfinal 0\n"
      "trans 0 a 1\ntrans 0 b 1\ntrans 1 a 0\ntrans 1 b 0\n");
}

}  // namespace

TEST_SUITE("langs") {
  TEST_CASE("construction examples") {
    const std::vector<std::string> none;
    CHECK(equivalent(complement(from_finite_set("ab", none)), universal_language("ab")));
    const std::vector<std::string> block{"aa", "ab", "ba", "bb"};
    CHECK(equivalent(star(from_finite_set("ab", block)), even_length()));
    const auto bstar_c = concat(star(from_finite_set("abc", std::vector<std::string>{"a", "b"})), from_word("abc", "c"));
    CHECK(equivalent(bstar_c, from_regex("(a|b)*c", "abc")));
    for (const auto& w : all_words("abc", 6)) {
      const bool expected = !w.empty() && w.back() == 'c' && w.find('c') == w.size() - 1;
      CHECK(bstar_c.accepts(w) == expected);
    }
  }

  TEST_CASE("operations agree with brute-force membership") {
    std::mt19937_64 rng(59);
    const auto words = all_words("ab", 8);
    for (int trial = 0; trial < 25; ++trial) {
      const auto a = random_dfa(rng, 1 + rng() % 4, "ab");
      const auto b = random_dfa(rng, 1 + rng() % 4, "ab");
      const auto u = union_of(a, b), i = intersection(a, b), d = difference(a, b), c = complement(a);
      const auto cat = concat(a, b), st = star(a), sq = power(a, 2);
      for (const auto& w : words) {
        REQUIRE(u.accepts(w) == (a.accepts(w) || b.accepts(w)));
        REQUIRE(i.accepts(w) == (a.accepts(w) && b.accepts(w)));
        REQUIRE(d.accepts(w) == (a.accepts(w) && !b.accepts(w)));
        REQUIRE(c.accepts(w) == !a.accepts(w));
        REQUIRE(cat.accepts(w) == brute_concat(member(a), member(b), w));
        REQUIRE(st.accepts(w) == brute_star(member(a), w));
        REQUIRE(sq.accepts(w) == brute_concat(member(a), member(a), w));
      }
      CHECK(power(a, 0).accepts(""));
      CHECK(count_words(power(a, 0)) == 1u);
    }
  }

  TEST_CASE("mixed alphabets are merged") {
    const auto a = from_word("a", "a");
    const auto b = from_word("b", "b");
    const auto u = union_of(a, b);
    CHECK(u.alphabet() == "ab");
    CHECK(u.accepts("a"));
    CHECK(u.accepts("b"));
    CHECK_FALSE(u.accepts("ab"));
    CHECK_FALSE(with_alphabet(a, "abc").accepts("c"));
  }

  TEST_CASE("minimization") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 60; ++trial) {
      const auto d = random_dfa(rng, 1 + rng() % 7, trial % 2 ? "ab" : "abc");
      const auto m = minimize(d);
      CHECK(equivalent(d, m));
      CHECK(minimize(m) == m);
      CHECK(m.state_count() <= d.state_count());
      CHECK_FALSE(distinguishing_word(d, m).has_value());
    }
    // Renumbering states must not change the canonical form.
    const auto e = even_length();
    const Dfa swapped("ab", 2, 1, {false, true}, {1, 1, 0, 0});
    CHECK(minimize(swapped) == minimize(e));
  }

  TEST_CASE("finiteness, counting and enumeration") {
    CHECK_FALSE(is_finite(star(from_word("ab", "ab"))));
    const auto irr = Rewriter(SemiThueSystem::make("a", {{"aaa", "a"}}), WeightFunction::uniform(1))
                         .irreducible_words();
    CHECK(is_finite(irr));
    CHECK(count_words(irr) == 3u);
    CHECK(enumerate_words(irr, 10) == std::vector<std::string>{"", "a", "aa"});
    CHECK(is_empty(empty_language("ab")));
    CHECK(shortest_word(from_regex("ab*a", "ab")) == std::string("aa"));
    CHECK(enumerate_words(even_length(), 5) == std::vector<std::string>{"", "aa", "ab", "ba", "bb"});

    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 40; ++trial) {
      const auto d = random_dfa(rng, 1 + rng() % 5, "ab");
      const auto words = enumerate_words(d, 30);
      std::vector<std::string> expected;
      for (const auto& w : all_words("ab", 12))
        if (d.accepts(w) && expected.size() < 30) expected.push_back(w);
      if (!words.empty() && words.back().size() <= 12) {
        CHECK(words == expected);
      }
      if (const auto n = count_words(d)) CHECK(words.size() == std::min<std::uint64_t>(*n, 30));
    }
  }

  TEST_CASE("distinguishing words are shortest") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 40; ++trial) {
      const auto a = random_dfa(rng, 1 + rng() % 4, "ab");
      const auto b = random_dfa(rng, 1 + rng() % 4, "ab");
      const auto w = distinguishing_word(a, b);
      std::optional<std::string> expected;
      for (const auto& v : all_words("ab", 8)) {
        if (a.accepts(v) != b.accepts(v)) {
          expected = v;
          break;
        }
      }
      if (expected) {
        REQUIRE(w);
        CHECK(w->size() == expected->size());
        CHECK(a.accepts(*w) != b.accepts(*w));
      }
      CHECK(w.has_value() == !equivalent(a, b));
    }
  }

  TEST_CASE("transition monoids") {
    CHECK(transition_monoid(universal_language("ab")).monoid.size() == 1);
    const auto z2 = transition_monoid(even_length());
    CHECK(z2.monoid.size() == 2);
    CHECK(is_group(z2.monoid));
    // Unary a^k counter modulo n with threshold: cyclic monoids with index and period.
    for (std::size_t n = 1; n <= 6; ++n) {
      for (std::size_t t = 0; t < n; ++t) {
        std::vector<Dfa::State> delta(n);
        for (std::size_t q = 0; q + 1 < n; ++q) delta[q] = static_cast<Dfa::State>(q + 1);
        delta[n - 1] = static_cast<Dfa::State>(t);
        std::vector<bool> finals(n, false);
        finals[n - 1] = true;
        const Dfa d("a", n, 0, finals, delta);
        const auto rd = transition_monoid(d);
        CHECK(rd.monoid.size() == n);
        if (n > 1) CHECK(index_and_period(rd.monoid, rd.letter_images[0]) == std::pair<std::size_t, std::size_t>{t == 0 ? 1 : t, n - t});
      }
    }
  }

  TEST_CASE("recognition data recognizes the language") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 40; ++trial) {
      const auto d = random_dfa(rng, 1 + rng() % 5, "ab");
      const auto rd = transition_monoid(d);
      const auto syn = syntactic_monoid(d);
      for (const auto& w : all_words("ab", 8)) {
        REQUIRE(rd.accepts(w) == d.accepts(w));
        REQUIRE(syn.accepts(w) == d.accepts(w));
      }
      CHECK(syn.monoid.size() <= rd.monoid.size());
      if (rd.monoid.size() <= kDefaultDivisionGuard) CHECK(divides(syn.monoid, rd.monoid).divides);
    }
  }

  TEST_CASE("table-free subgroup check agrees with the table") {
    std::mt19937_64 rng(113);
    int compared = 0;
    for (int trial = 0; trial < 300; ++trial) {
      const auto d = random_dfa(rng, 1 + rng() % 6, trial % 3 ? "ab" : "abc");
      std::optional<RecognitionData> tm;
      try {
        tm = transition_monoid(d);
      } catch (const Error& e) {
        // Past the table cap; only the table-free path can run.
        REQUIRE(e.kind() == ErrorKind::SizeGuardExceeded);
        (void)transition_subgroups_satisfy(d, Variety::Abelian);
        continue;
      }
      ++compared;
      for (auto h : {Variety::Trivial, Variety::Abelian, Variety::AllGroups}) {
        CHECK(transition_subgroups_satisfy(d, h) == subgroups_satisfy(tm->monoid, h));
      }
    }
    CHECK(compared >= 280);
    CHECK_FALSE(transition_subgroups_satisfy(even_length(), Variety::Trivial));
    CHECK(transition_subgroups_satisfy(even_length(), Variety::Abelian));
    CHECK_THROWS_AS(transition_subgroups_satisfy(even_length(), Variety::Abelian, 1), Error);
  }

  TEST_CASE("syntactic monoid examples") {
    const auto even = syntactic_monoid(even_length());
    CHECK(even.monoid.size() == 2);
    CHECK(is_group(even.monoid));
    CHECK_FALSE(is_aperiodic(even.monoid));
    CHECK(syntactic_monoid(universal_language("ab")).monoid.size() == 1);
    CHECK(is_aperiodic(syntactic_monoid(from_regex("(a|b)*c", "abc")).monoid));
    CHECK(is_aperiodic(syntactic_monoid(concat(from_regex("(a|b)*c", "abc"), from_regex("a(b|c)*", "abc"))).monoid));
  }

  TEST_CASE("regex parser") {
    const auto d = from_regex("a(b|c)* | ()", "abc");
    CHECK(d.accepts(""));
    CHECK(d.accepts("abcb"));
    CHECK_FALSE(d.accepts("b"));
    CHECK_THROWS_AS(from_regex("(ab", "ab"), Error);
    CHECK_THROWS_AS(from_regex("a|*", "ab"), Error);
  }

  TEST_CASE("DFA text format") {
    const auto e = even_length();
    CHECK(parse_dfa(format_dfa(e)) == e);
    auto kind_of = [](std::string_view text) {
      try {
        parse_dfa(text);
      } catch (const Error& err) {
        return err.kind();
      }
      return ErrorKind::NoWitness;
    };
    // Missing transition for (1, b).
    CHECK(kind_of("dfa\nalphabet a b\nstates 2\ninitial 0\nfinal 0\ntrans 0 a 1\ntrans 0 b 1\ntrans 1 a 0\n") ==
          ErrorKind::InvalidDfa);
    CHECK(kind_of("dfa\nalphabet a\nstates 1\ninitial 3\nfinal 0\ntrans 0 a 0\n") != ErrorKind::NoWitness);
    CHECK(kind_of("automaton\n") == ErrorKind::Parse);
  }
}
