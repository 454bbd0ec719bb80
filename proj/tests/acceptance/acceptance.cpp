// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "monoidw/codes.hpp"
#include "monoidw/expr.hpp"
#include "monoidw/green.hpp"
#include "monoidw/local_divisor.hpp"
#include "monoidw/recognition.hpp"
#include "monoidw/rees.hpp"
#include "monoidw/rewriting.hpp"
#include "support/corpus.hpp"
#include "support/expressions.hpp"
#include "support/oracles.hpp"

using namespace monoidw;
using namespace testsupport;

namespace {

const std::filesystem::path kData = MONOIDW_TEST_DATA;

struct CliRun {
  std::string output;
  int status = -1;
};

CliRun run_cli(const std::string& args) {
  const std::string command = "cd '" + kData.string() + "' && '" MONOIDW_CLI "' " + args + " 2>&1";
  CliRun run;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return run;
  std::array<char, 512> buffer{};
  while (fgets(buffer.data(), buffer.size(), pipe)) run.output += buffer.data();
  const int raw = pclose(pipe);
  run.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return run;
}

bool has_line(const CliRun& run, const std::string& line) {
  std::istringstream in(run.output);
  for (std::string l; std::getline(in, l);)
    if (l == line) return true;
  return false;
}

// Collects failures for one criterion; prints details as they happen.
class Criterion {
 public:
  explicit Criterion(int number) : number_(number) {}
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 5) std::cout << "    [" << number_ << "] violated: " << what << "\n";
  }
  void note(const std::string& text) const { std::cout << "    [" << number_ << "] " << text << "\n"; }
  bool passed() const { return failures_ == 0; }
  std::size_t failures() const { return failures_; }

 private:
  int number_;
  std::size_t failures_ = 0;
};

using Body = std::function<void(Criterion&)>;

bool run_criterion(int number, const std::string& title, const Body& body) {
  Criterion c(number);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "criterion " << number << ": " << (c.passed() ? "PASS" : "FAIL") << "  " << title;
  if (!c.passed()) std::cout << " (" << c.failures() << " violations)";
  std::cout << "  [" << std::fixed;
  std::cout.precision(2);
  std::cout << secs << "s]\n" << std::flush;
  return c.passed();
}

std::string partition_string(const std::vector<std::size_t>& p) {
  std::string out;
  for (auto x : p) out += std::to_string(x) + ",";
  return out;
}

// Class ids by first occurrence for a brute-force equivalence.
std::vector<std::size_t> brute_partition(const FiniteMonoid& m, bool (*related)(const FiniteMonoid&, Elem, Elem)) {
  std::vector<std::size_t> id(m.size(), SIZE_MAX);
  std::size_t next = 0;
  for (Elem x = 0; x < m.size(); ++x) {
    if (id[x] != SIZE_MAX) continue;
    for (Elem y = x; y < m.size(); ++y)
      if (id[y] == SIZE_MAX && related(m, x, y)) id[y] = next;
    ++next;
  }
  return id;
}

void c1(Criterion& c) {
  const auto run = run_cli("lang synmon even.dfa");
  c.expect(has_line(run, "RESULT: size=2 group=true aperiodic=false"), "CLI output:\n" + run.output);
  c.expect(run.status == 0, "CLI exit status");
  const auto syn = syntactic_monoid(read_dfa_file(kData / "even.dfa"));
  c.expect(syn.monoid.size() == 2 && is_group(syn.monoid) && !is_aperiodic(syn.monoid), "library result");
}

void c2(Criterion& c) {
  const auto run = run_cli("code delay bstarc.code --d 1");
  c.expect(has_line(run, "RESULT: true"), "CLI output:\n" + run.output);
  const auto k = read_code_file(kData / "bstarc.code");
  c.expect(has_sync_delay(k, 1).holds, "has_sync_delay(B*c, 1)");
  c.expect(min_sync_delay(k) == std::optional<std::size_t>(1), "min_sync_delay(B*c) = 1");
  c.expect(has_line(run_cli("code delay bstarc.code"), "RESULT: 1"), "CLI min delay");
}

void c3(Criterion& c) {
  const std::set<std::string> block{"aa", "ab", "ba", "bb"};
  const auto k = read_code_file(kData / "block2.code");
  for (std::size_t d = 1; d <= 8; ++d) {
    const auto r = has_sync_delay(k, d);
    if (r.holds || !r.witness) {
      c.expect(false, "A^2 has delay " + std::to_string(d));
      continue;
    }
    const auto& w = *r.witness;
    c.note("d=" + std::to_string(d) + " u=" + w.u + " v=" + w.v + " w=" + w.w);
    c.expect(brute_in_power(block, w.u + w.v + w.w, std::nullopt), "uvw in K*");
    c.expect(brute_in_power(block, w.v, d), "v in K^d");
    c.expect(!brute_in_power(block, w.u + w.v, std::nullopt), "uv not in K*");
  }
  const auto run = run_cli("code delay block2.code");
  c.expect(has_line(run, "RESULT: none (up to 8)") && run.status == 1, "CLI output:\n" + run.output);
}

void c4(Criterion& c) {
  std::mt19937_64 rng(0xC4);
  std::size_t largest = 0, total = 0;
  for (int i = 0; i < 200; ++i) {
    const auto m = random_transition_monoid(rng, 8, 60);
    largest = std::max(largest, m.size());
    total += m.size();
    const auto classes = green_classes(m);
    const auto j = brute_partition(m, brute_j_related);
    const auto d = brute_partition(m, brute_d_related);
    c.expect(j == d, "brute-force J != D on monoid " + std::to_string(i));
    c.expect(classes.j == j && classes.d == d,
             "library partitions differ on monoid " + std::to_string(i) + ": " + partition_string(classes.j));
  }
  c.note("200 monoids, largest " + std::to_string(largest) + ", mean size " + std::to_string(total / 200));
}

void c5(Criterion& c) {
  std::size_t checked = 0;
  for (const auto& [name, m] : corpus(30, 60)) {
    for (Elem e = 0; e < m.size(); ++e) {
      const LocalDivisor ld(m, e);  // validates the table of o
      ++checked;
      const auto lambda = lambda_c(ld);
      c.expect(check_morphism(lambda).ok && lambda.is_surjective(), name + ": lambda_c at " + std::to_string(e));
      const auto carrier = ld.carrier();
      for (Elem z1 : carrier)
        for (Elem z2 : carrier)
          for (Elem x = 0; x < m.size(); ++x)
            if (m(x, e) == z1) c.expect(m(x, z2) == ld.compose(z1, z2), name + ": witness dependence");
      if (is_unit(m, e)) {
        const auto iso = unit_isomorphism(m, e);
        c.expect(iso.is_injective() && iso.is_surjective() && check_morphism(iso).ok,
                 name + ": unit isomorphism at " + std::to_string(e));
      } else {
        c.expect(carrier.size() < m.size() && !ld.contains(m.identity()), name + ": strictness");
      }
    }
  }
  c.note(std::to_string(checked) + " local divisors checked");
}

void c6_c7(Criterion& c6, Criterion& c7) {
  const auto small = monoids_up_to(3);
  std::size_t count = 0;
  for (const auto& n : small) {
    for (const auto& l : small) {
      const bool ap = is_aperiodic(n) && is_aperiodic(l);
      const bool ab = subgroups_satisfy(n, Variety::Abelian) && subgroups_satisfy(l, Variety::Abelian);
      std::vector<Elem> rho(n.size(), 0);
      for (;;) {
        ++count;
        try {
          const ReesExtension r(n, l, rho);
          c6.expect(r.monoid().size() == n.size() + n.size() * n.size() * l.size(), "size formula");
          // Re-validate from the raw table, independent of the constructor.
          const auto t = r.monoid().table();
          FiniteMonoid::validate(r.monoid().size(), {t.begin(), t.end()}, r.monoid().identity());
          if (ap) c7.expect(is_aperiodic(r.monoid()), "aperiodic inputs, periodic extension");
          if (ab) c7.expect(subgroups_satisfy(r.monoid(), Variety::Abelian), "abelian inputs, non-abelian subgroup");
        } catch (const Error& e) {
          c6.expect(false, std::string("construction failed: ") + e.what());
        }
        std::size_t k = 0;
        while (k < rho.size() && rho[k] == l.size() - 1) rho[k++] = 0;
        if (k == rho.size()) break;
        ++rho[k];
      }
    }
  }
  c6.note(std::to_string(small.size()) + " monoids of order <= 3, " + std::to_string(count) + " (N, L, rho) triples");
}

void c8(Criterion& c) {
  std::size_t verified = 0;
  double worst_ratio = 0;
  for (const auto& [name, m] : corpus(8, 60)) {
    const auto tree = decomposition_tree(m);
    for (const auto& node : tree.nodes)
      if (node.leaf) c.expect(is_group(node.label), name + ": non-group leaf");
    if (m.size() <= 6) {
      const auto report = verify_decomposition_tree(m, tree);
      c.expect(report.fully_verified(), name + ": verification incomplete");
      ++verified;
    }
    const double bound = std::pow(3.0, static_cast<double>(non_unit_count(m)) / 3.0);
    worst_ratio = std::max(worst_ratio, static_cast<double>(tree.node_count()) / bound);
  }
  c.note(std::to_string(verified) + " trees fully verified; max nodes / 3^(n/3) = " + std::to_string(worst_ratio));
}

void c9(Criterion& c) {
  std::size_t pairs = 0;
  for (const auto& [name, m] : corpus(30, 60)) {
    const auto classes = green_classes(m);
    for (Elem s = 0; s < m.size(); ++s) {
      for (Elem t = 0; t < m.size(); ++t) {
        if (classes.r[s] != classes.r[t]) continue;
        ++pairs;
        const auto iso = greens_lemma_iso(m, s, t);
        c.expect(check_morphism(iso).ok && iso.is_injective() && iso.is_surjective(), name + ": Green iso");
      }
      // H(s) by brute force against the units of M_s.
      std::vector<Elem> h;
      for (Elem y = 0; y < m.size(); ++y)
        if (brute_l_related(m, s, y) && brute_r_related(m, s, y)) h.push_back(y);
      const LocalDivisor ld(m, s);
      std::vector<Elem> units;
      for (Elem p : group_of_units(ld.monoid()).elements) units.push_back(ld.element(p));
      std::sort(units.begin(), units.end());
      c.expect(units == h, name + ": units of M_s != H(s)");
    }
  }
  c.note(std::to_string(pairs) + " R-equivalent pairs");
}

// All rules over {a, b} with |lhs| <= 3 and |rhs| < |lhs|.
std::vector<Rule> length_reducing_rules() {
  std::vector<Rule> rules;
  for (const auto& l : all_words("ab", 3)) {
    if (l.empty()) continue;
    for (const auto& r : all_words("ab", l.size() - 1)) rules.push_back({l, r});
  }
  return rules;
}

void c10(Criterion& c) {
  const auto rules = length_reducing_rules();
  std::size_t systems = 0, confluent = 0;
  auto check = [&](std::vector<Rule> chosen) {
    const auto s = SemiThueSystem::make("ab", std::move(chosen));
    DescendantOracle oracle(s);
    const bool ours = is_confluent(s).confluent;
    const bool brute = oracle.confluent_up_to(8);
    ++systems;
    confluent += ours;
    c.expect(ours == brute, "disagreement on\n" + format_system(s));
  };
  const std::size_t n = rules.size();
  for (std::size_t i = 0; i < n; ++i) {
    check({rules[i]});
    for (std::size_t j = i + 1; j < n; ++j) {
      check({rules[i], rules[j]});
      for (std::size_t k = j + 1; k < n; ++k) check({rules[i], rules[j], rules[k]});
    }
  }
  const std::size_t length_systems = systems;
  // Terminating but not length-reducing: one non-shortening rule that a weight certifies.
  std::vector<Rule> others;
  for (const auto& l : all_words("ab", 3)) {
    if (l.empty()) continue;
    for (const auto& r : all_words("ab", 3))
      if (r.size() >= l.size() && r != l) others.push_back({l, r});
  }
  for (const auto& extra : others) {
    for (std::size_t i = 0; i <= n; ++i) {
      std::vector<Rule> chosen{extra};
      if (i < n) chosen.push_back(rules[i]);
      const auto s = SemiThueSystem::make("ab", chosen);
      if (!find_termination_weight(s)) continue;
      check(std::move(chosen));
    }
  }
  c.note(std::to_string(length_systems) + " length-reducing systems, " + std::to_string(systems - length_systems) +
         " weight-reducing systems, " + std::to_string(confluent) + " confluent");
}

void c11(Criterion& c) {
  const auto s = read_system_file(kData / "trivial_group.sts");
  c.expect(check_reducing(s, {OrderKind::Subword, {}}).ok, "subword-reducing");
  c.expect(is_confluent(s).confluent, "confluent");
  c.expect(finite_index(s) == std::optional<std::uint64_t>(1), "index 1");
  c.expect(quotient_monoid(s).monoid.size() == 1, "trivial quotient");
  c.expect(recognizes(s, universal_language("ab")), "recognizes A*");
  c.expect(recognizes(s, empty_language("ab")), "recognizes the empty set");
  c.expect(has_line(run_cli("rw recognizes trivial_group.sts all_ab.dfa"), "RESULT: true"), "CLI, A*");
  c.expect(has_line(run_cli("rw recognizes trivial_group.sts none_ab.dfa"), "RESULT: true"), "CLI, empty set");
}

void c12(Criterion& c) {
  const auto s = read_system_file(kData / "aaa_to_a.sts");
  c.expect(is_confluent(s).confluent, "confluent");
  c.expect(finite_index(s) == std::optional<std::uint64_t>(3), "index 3");
  const auto q = quotient_monoid(s);
  c.expect(!is_aperiodic(q.monoid), "quotient aperiodic");
  bool z2 = false;
  for (const auto& g : maximal_subgroups(q.monoid)) z2 = z2 || g.group.size() == 2;
  c.expect(z2, "no 2-element subgroup");
  c.expect(recognizes(s, read_dfa_file(kData / "even_a.dfa")), "recognizes (aa)*");
  c.expect(has_line(run_cli("rw recognizes aaa_to_a.sts even_a.dfa"), "RESULT: true"), "CLI");
}

void c13(Criterion& c) {
  std::mt19937_64 rng(0xC13);
  const std::vector<FiniteMonoid> groups{cyclic_group(2), cyclic_group(3), klein_group()};
  std::size_t stars = 0;
  for (int i = 0; i < 100; ++i) {
    const auto e = random_sd_expression(rng, groups, 3);
    std::function<std::size_t(const Expr&)> count = [&](const Expr& x) -> std::size_t {
      std::size_t k = x.kind == Expr::Kind::CStar;
      for (const auto& ch : x.children) k += count(ch);
      return k;
    };
    stars += count(e);
    c.expect(verify_sd_in_hbar(e, Variety::Abelian, "abc"), "SD expression outside Ab-bar: " + format_expression(e));
  }
  for (int i = 0; i < 100; ++i) {
    const auto e = random_sf_expression(rng, 3);
    c.expect(is_aperiodic(syntactic_monoid(eval_sf(e, "ab")).monoid), "SF expression not aperiodic: " + format_expression(e));
  }
  c.note(std::to_string(stars) + " controlled stars across 100 SD expressions");
}

void c14(Criterion& c) {
  const auto s = SemiThueSystem::make("ab", {{"aa", ""}, {"bb", ""}});
  c.expect(is_confluent(s).confluent, "system not confluent");
  const Rewriter rw(s, WeightFunction::uniform(2));
  std::mt19937_64 rng(0xC14);
  auto median_time = [&](std::size_t length) {
    std::string w(length, 'a');
    for (auto& ch : w) ch = "ab"[rng() % 2];
    rw.normal_form(w);  // warm-up
    std::vector<double> times;
    for (int run = 0; run < 5; ++run) {
      const auto start = std::chrono::steady_clock::now();
      const auto nf = rw.normal_form(w);
      times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
      c.expect(rw.is_irreducible(nf), "output reducible");
    }
    std::sort(times.begin(), times.end());
    return times[2];
  };
  const double small = median_time(100'000);
  const double large = median_time(200'000);
  const double ratio = large / small;
  c.note("median " + std::to_string(small * 1e3) + " ms at 1e5, " + std::to_string(large * 1e3) +
         " ms at 2e5, ratio " + std::to_string(ratio));
  c.expect(ratio <= 2.5, "ratio " + std::to_string(ratio) + " exceeds 2.5");
}

void c15(Criterion& c) {
  const auto result = controlled_star(read_cstar_file(kData / "unary_z2.cst"));
  c.expect(equivalent(result.language, from_regex("(aa)*", "a")), "language differs from (aa)*");
  const auto syn = syntactic_monoid(result.language);
  c.expect(syn.monoid.size() == 2 && is_group(syn.monoid), "syntactic monoid is not Z/2Z");
  c.expect(syn.monoid == cyclic_group(2), "table differs from Z/2Z");
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run_criterion(1, "syntactic monoid of even-length words is Z/2Z", c1);
  ok &= run_criterion(2, "B*c has synchronization delay 1", c2);
  ok &= run_criterion(3, "A^2 fails delay d for d = 1..8 with witnesses", c3);
  ok &= run_criterion(4, "J = D on 200 random transition monoids", c4);
  ok &= run_criterion(5, "local divisor laws over the corpus", c5);
  {
    Criterion c6(6), c7(7);
    const auto start = std::chrono::steady_clock::now();
    try {
      c6_c7(c6, c7);
    } catch (const std::exception& e) {
      c6.expect(false, e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "criterion 6: " << (c6.passed() ? "PASS" : "FAIL")
              << "  Rees extensions associative with size |N| + |N|^2 |L|  [" << secs << "s]\n";
    std::cout << "criterion 7: " << (c7.passed() ? "PASS" : "FAIL")
              << "  Rees extensions preserve aperiodicity and abelian subgroups\n";
    ok &= c6.passed() && c7.passed();
  }
  ok &= run_criterion(8, "decomposition trees terminate, group leaves, verified up to size 6", c8);
  ok &= run_criterion(9, "Green's lemma isomorphisms and units of M_s = H(s)", c9);
  ok &= run_criterion(10, "critical-pair confluence matches brute-force joinability", c10);
  ok &= run_criterion(11, "{a -> eps, b -> eps} presents the trivial monoid", c11);
  ok &= run_criterion(12, "{aaa -> a} certifies (aa)*", c12);
  ok &= run_criterion(13, "SD expressions in Ab-bar, SF expressions aperiodic", c13);
  ok &= run_criterion(14, "normal forms scale linearly", c14);
  ok &= run_criterion(15, "unary Z/2Z controlled star is (aa)*", c15);
  std::cout << (ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAILED") << "\n";
  return ok ? 0 : 1;
}
