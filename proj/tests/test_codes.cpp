#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <random>
#include <set>

#include "monoidw/codes.hpp"
#include "monoidw/expr.hpp"
#include "monoidw/green.hpp"
#include "monoidw/recognition.hpp"
#include "support/corpus.hpp"
#include "support/expressions.hpp"
#include "support/oracles.hpp"

using namespace monoidw;
using namespace testsupport;

namespace {

const std::filesystem::path kData = MONOIDW_TEST_DATA;

CodeSpec words(std::string_view alphabet, std::vector<std::string> w) {
  return CodeSpec::from_words(alphabet, std::move(w));
}

CodeSpec bstar_c() { return CodeSpec::from_dfa(from_regex("(a|b)*c", "abc")); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::NoWitness;
}

// Random prefix code over {a, b}: up to 4 words of length <= 3.
std::optional<std::set<std::string>> random_prefix_code(std::mt19937_64& rng) {
  std::set<std::string> code;
  const std::size_t count = 1 + rng() % 4;
  for (int attempt = 0; attempt < 40 && code.size() < count; ++attempt) {
    auto w = random_word(rng, "ab", 3);
    if (w.empty()) continue;
    bool clash = false;
    for (const auto& u : code) {
      const std::size_t n = std::min(u.size(), w.size());
      clash = clash || u.compare(0, n, w, 0, n) == 0;
    }
    if (!clash) code.insert(std::move(w));
  }
  if (code.empty()) return std::nullopt;
  return code;
}

void check_witness(const std::set<std::string>& code, std::size_t d, const DelayWitness& w) {
  CHECK(brute_in_power(code, w.u + w.v + w.w, std::nullopt));
  CHECK(brute_in_power(code, w.v, d));
  CHECK_FALSE(brute_in_power(code, w.u + w.v, std::nullopt));
}

}  // namespace

TEST_SUITE("codes") {
  TEST_CASE("code construction") {
    CHECK(kind_of([] { words("ab", {"a", ""}); }) == ErrorKind::InvalidCode);
    CHECK(kind_of([] { words("ab", {"a", "a"}); }) == ErrorKind::InvalidCode);
    CHECK(kind_of([] { CodeSpec::from_dfa(from_regex("a*", "a")); }) == ErrorKind::InvalidCode);
    const auto k = words("", {"ba", "a"});
    CHECK(k.alphabet() == "ab");
    CHECK(k.is_finite_list());
    CHECK(count_words(k.language()) == 2u);
  }

  TEST_CASE("prefix-free examples") {
    CHECK(is_prefix_free(words("ab", {"a", "ba", "bb"})).prefix_free);
    const auto bad = is_prefix_free(words("ab", {"a", "ab"}));
    CHECK_FALSE(bad.prefix_free);
    REQUIRE(bad.witness);
    CHECK(bad.witness->first == "a");
    CHECK(bad.witness->second == "ab");
    CHECK(is_prefix_free(bstar_c()).prefix_free);
    const auto dfa_bad = is_prefix_free(CodeSpec::from_dfa(from_regex("ab*", "ab")));
    CHECK_FALSE(dfa_bad.prefix_free);
    REQUIRE(dfa_bad.witness);
    CHECK(dfa_bad.witness->first == "a");
    CHECK(dfa_bad.witness->second == "ab");
  }

  TEST_CASE("prefix check for listed and automaton codes agree") {
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<std::string> list;
      for (std::size_t i = 0, n = 1 + rng() % 4; i < n; ++i) {
        auto w = random_word(rng, "ab", 3);
        if (!w.empty() && std::find(list.begin(), list.end(), w) == list.end()) list.push_back(w);
      }
      if (list.empty()) continue;
      const auto listed = words("ab", list);
      const auto automaton = CodeSpec::from_dfa(listed.language());
      CHECK(is_prefix_free(listed).prefix_free == is_prefix_free(automaton).prefix_free);
    }
  }

  TEST_CASE("delay examples") {
    const auto d1 = has_sync_delay(bstar_c(), 1);
    CHECK(d1.holds);
    CHECK(min_sync_delay(bstar_c()) == 1u);
    CHECK(has_sync_delay(words("a", {"a"}), 1).holds);
    CHECK(min_sync_delay(words("a", {"a"})) == 1u);

    const std::set<std::string> block{"aa", "ab", "ba", "bb"};
    const auto a2 = words("ab", {block.begin(), block.end()});
    for (std::size_t d = 1; d <= 8; ++d) {
      const auto r = has_sync_delay(a2, d);
      REQUIRE_FALSE(r.holds);
      REQUIRE(r.witness);
      check_witness(block, d, *r.witness);
    }
    CHECK_FALSE(min_sync_delay(a2).has_value());
    CHECK(kind_of([] { has_sync_delay(words("ab", {"a", "ab"}), 1); }) == ErrorKind::NotPrefixFree);
    CHECK(kind_of([] { has_sync_delay(words("ab", {"a"}), 0); }) == ErrorKind::InvalidCode);
  }

  TEST_CASE("delay agrees with exhaustive search") {
    std::mt19937_64 rng(83);
    int checked = 0;
    while (checked < 40) {
      const auto code = random_prefix_code(rng);
      if (!code) continue;
      ++checked;
      const auto spec = words("ab", {code->begin(), code->end()});
      for (std::size_t d = 1; d <= 3; ++d) {
        INFO("code size " << code->size() << " d=" << d);
        const auto ours = has_sync_delay(spec, d);
        const auto brute = brute_delay_counterexample(*code, d, 14);
        std::optional<std::size_t> ours_len;
        if (!ours.holds) {
          REQUIRE(ours.witness);
          check_witness(*code, d, *ours.witness);
          const auto len = ours.witness->u.size() + ours.witness->v.size() + ours.witness->w.size();
          if (len <= 14) ours_len = len;
        }
        CHECK(ours_len == brute);
      }
    }
  }

  TEST_CASE("delay is monotone in d") {
    std::mt19937_64 rng(89);
    for (int trial = 0; trial < 60; ++trial) {
      const auto code = random_prefix_code(rng);
      if (!code) continue;
      const auto spec = words("ab", {code->begin(), code->end()});
      bool previous = false;
      for (std::size_t d = 1; d <= 5; ++d) {
        const bool now = has_sync_delay(spec, d).holds;
        if (previous) CHECK(now);
        previous = now;
      }
    }
  }

  TEST_CASE("controlled star with the trivial group is the star") {
    std::mt19937_64 rng(97);
    for (int trial = 0; trial < 20; ++trial) {
      const auto spec = random_cstar_spec(rng, trivial_monoid());
      Dfa all = empty_language("abc");
      for (const auto& [g, k] : spec.parts) all = union_of(all, k.language());
      CHECK(equivalent(controlled_star(spec).language, star(all)));
    }
  }

  TEST_CASE("controlled star examples") {
    const auto unary = read_cstar_file(kData / "unary_z2.cst");
    const auto result = controlled_star(unary);
    CHECK(equivalent(result.language, from_regex("(aa)*", "a")));
    CHECK(result.delay == 1);
    const auto syn = syntactic_monoid(result.language);
    CHECK(syn.monoid.size() == 2);
    CHECK(is_group(syn.monoid));

    const auto acbc = controlled_star(read_cstar_file(kData / "acbc_z2.cst")).language;
    const std::set<std::string> blocks{"ac", "bc"};
    for (const auto& w : all_words("abc", 10)) {
      bool expected = brute_in_power(blocks, w, std::nullopt);
      if (expected) {
        std::size_t bc = 0;
        for (std::size_t p = 0; p + 1 < w.size(); p += 2) bc += w[p] == 'b';
        expected = bc % 2 == 0;
      }
      REQUIRE(acbc.accepts(w) == expected);
    }
  }

  TEST_CASE("controlled star is contained in the star of the code") {
    std::mt19937_64 rng(101);
    const std::vector<FiniteMonoid> groups{cyclic_group(2), cyclic_group(3), klein_group(), symmetric_group3()};
    for (int trial = 0; trial < 40; ++trial) {
      const auto spec = random_cstar_spec(rng, groups[trial % groups.size()]);
      Dfa all = empty_language("abc");
      for (const auto& [g, k] : spec.parts) all = union_of(all, k.language());
      const auto result = controlled_star(spec);
      CHECK(is_subset(result.language, star(all)));
      CHECK(result.language.accepts(""));
    }
  }

  TEST_CASE("controlled star errors") {
    const auto z2 = cyclic_group(2);
    auto spec = [&](FiniteMonoid g, std::vector<std::pair<Elem, CodeSpec>> parts) {
      return ControlledStarSpec{std::move(g), std::move(parts), kDefaultDelayBound};
    };
    CHECK(kind_of([&] { controlled_star(spec(u1_monoid(), {{1, words("a", {"a"})}})); }) == ErrorKind::NotAGroup);
    CHECK(kind_of([&] { controlled_star(spec(z2, {{5, words("a", {"a"})}})); }) == ErrorKind::IndexOutOfRange);
    CHECK(kind_of([&] { controlled_star(spec(z2, {{0, words("a", {"a"})}, {0, words("b", {"b"})}})); }) ==
          ErrorKind::InvalidCode);
    CHECK(kind_of([&] { controlled_star(spec(z2, {{0, words("ab", {"a", "b"})}, {1, words("a", {"a"})}})); }) ==
          ErrorKind::PartsNotDisjoint);
    CHECK(kind_of([&] { controlled_star(spec(z2, {{0, words("ab", {"a"})}, {1, words("ab", {"ab"})}})); }) ==
          ErrorKind::NotPrefixFree);
    CHECK(kind_of([&] { controlled_star(spec(z2, {{0, words("ab", {"aa", "ab"})}, {1, words("ab", {"ba", "bb"})}})); }) ==
          ErrorKind::DelayNotCertified);
  }

  TEST_CASE("code and cstar files") {
    const auto k = read_code_file(kData / "bstarc.code");
    CHECK(is_prefix_free(k).prefix_free);
    CHECK(parse_code("code\nwords ab ba\n").words()->size() == 2);
    CHECK(equivalent(parse_code("code\nalphabet a b\nregex a*b\n").language(), from_regex("a*b", "ab")));
    CHECK(kind_of([] { parse_code("code\n"); }) == ErrorKind::Parse);
    CHECK(kind_of([] { parse_code("words a\n"); }) == ErrorKind::Parse);
    const auto cs = parse_cstar("cstar\ngroup z2.monoid\ndelay 3\npart 1 regex a\n", kData);
    CHECK(cs.delay_bound == 3);
    CHECK(cs.parts.size() == 1);
    CHECK(kind_of([] { parse_cstar("cstar\npart 1 words a\n"); }) == ErrorKind::Parse);
  }

  TEST_CASE("expression parsing and classification") {
    const auto e = parse_expression("(union (finite ab eps) (concat (finite a) (complement (finite))))");
    CHECK(is_sf_expression(e));
    CHECK_FALSE(is_sd_expression(e));
    CHECK(expression_alphabet(e) == "ab");
    CHECK(format_expression(parse_expression(format_expression(e))) == format_expression(e));
    CHECK(kind_of([] { parse_expression("(finite a"); }) == ErrorKind::InvalidExpression);
    CHECK(kind_of([] { parse_expression("(star (finite a))"); }) == ErrorKind::InvalidExpression);

    const auto sd = parse_expression("(concat (cstar unary_z2.cst) (finite a))", kData);
    CHECK(is_sd_expression(sd));
    CHECK(equivalent(eval_sd(sd), from_regex("a(aa)*", "a")));
    CHECK(kind_of([&] { eval_sf(sd); }) == ErrorKind::InvalidExpression);
    CHECK(kind_of([&] { eval_sd(e); }) == ErrorKind::InvalidExpression);
  }

  TEST_CASE("expression evaluation examples") {
    CHECK(equivalent(eval_sf(Expr::complement(Expr::finite({})), "ab"), universal_language("ab")));
    const auto sd = parse_expression("(cstar unary_z2.cst)", kData);
    CHECK(equivalent(eval_sd(sd), from_regex("(aa)*", "a")));
    CHECK(verify_sd_in_hbar(sd, Variety::Abelian));
    CHECK(verify_sd_in_hbar(sd, Variety::AllGroups));
    CHECK(kind_of([&] { verify_sd_in_hbar(sd, Variety::Trivial); }) == ErrorKind::InvalidExpression);
    const auto star_free = parse_expression("(concat (finite a b) (finite ab))");
    CHECK(verify_sd_in_hbar(star_free, Variety::Trivial));
  }

  TEST_CASE("expression evaluation matches the language operations") {
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 30; ++trial) {
      const auto e = random_sf_expression(rng, 3);
      const auto d = eval_sf(e, "ab");
      // Recompute bottom-up through the plain operations.
      std::function<Dfa(const Expr&)> direct = [&](const Expr& x) -> Dfa {
        switch (x.kind) {
          case Expr::Kind::Finite:
            return from_finite_set("ab", x.words);
          case Expr::Kind::Union:
            return union_of(direct(x.children[0]), direct(x.children[1]));
          case Expr::Kind::Concat:
            return concat(direct(x.children[0]), direct(x.children[1]));
          default:
            return complement(direct(x.children[0]));
        }
      };
      CHECK(equivalent(d, direct(e)));
    }
  }

  TEST_CASE("SD expressions land in the matching variety") {
    std::mt19937_64 rng(107);
    const std::vector<FiniteMonoid> abelian{cyclic_group(2), cyclic_group(3), klein_group()};
    const std::vector<FiniteMonoid> trivial{trivial_monoid()};
    for (int trial = 0; trial < 30; ++trial) {
      CHECK(verify_sd_in_hbar(random_sd_expression(rng, abelian, 2), Variety::Abelian, "abc"));
      CHECK(verify_sd_in_hbar(random_sd_expression(rng, trivial, 2), Variety::Trivial, "abc"));
    }
  }

  TEST_CASE("SF expressions have aperiodic syntactic monoids") {
    std::mt19937_64 rng(109);
    for (int trial = 0; trial < 30; ++trial) {
      const auto e = random_sf_expression(rng, 3);
      CHECK(is_aperiodic(syntactic_monoid(eval_sf(e, "ab")).monoid));
    }
  }
}
