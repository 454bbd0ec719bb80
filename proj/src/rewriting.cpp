#include "monoidw/rewriting.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "monoidw/monoid_io.hpp"

namespace monoidw {
namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint64_t kMaxSearchWeight = 8;
constexpr std::size_t kWeightSearchBudget = 1u << 20;

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorKind::InvalidSystem, message);
}

std::string show(std::string_view w) { return w.empty() ? std::string("eps") : std::string(w); }

}  // namespace

SemiThueSystem SemiThueSystem::make(std::string_view alphabet, std::vector<Rule> rules) {
  std::string symbols(alphabet);
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const Rule& r = rules[i];
    if (r.lhs.empty()) invalid("rule " + std::to_string(i + 1) + " has an empty left side");
    if (r.lhs == r.rhs) invalid("rule " + std::to_string(i + 1) + " has equal sides");
    for (std::size_t j = 0; j < i; ++j) {
      if (rules[j] == r) invalid("rule " + std::to_string(i + 1) + " duplicates rule " + std::to_string(j + 1));
    }
    symbols += r.lhs;
    symbols += r.rhs;
  }
  for (char c : symbols) {
    if (static_cast<unsigned char>(c) <= ' ') invalid("whitespace or control character used as a symbol");
  }
  return SemiThueSystem(normalize_alphabet(symbols), std::move(rules));
}

std::size_t SemiThueSystem::symbol_index(char c) const {
  const auto i = alphabet_.find(c);
  if (i == std::string::npos) {
    throw Error(ErrorKind::AlphabetMismatch, std::string("symbol '") + c + "' not in alphabet");
  }
  return i;
}

std::uint64_t WeightFunction::of(const SemiThueSystem& s, std::string_view word) const {
  std::uint64_t total = 0;
  for (char c : word) total += weights.at(s.symbol_index(c));
  return total;
}

std::string_view to_string(OrderKind kind) noexcept {
  switch (kind) {
    case OrderKind::Length: return "length";
    case OrderKind::Weight: return "weight";
    case OrderKind::Parikh: return "parikh";
    case OrderKind::Subword: return "subword";
  }
  return "?";
}

std::optional<OrderKind> parse_order_kind(std::string_view name) {
  for (auto k : {OrderKind::Length, OrderKind::Weight, OrderKind::Parikh, OrderKind::Subword}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::vector<std::size_t> parikh_image(std::string_view alphabet, std::string_view w) {
  std::vector<std::size_t> counts(alphabet.size(), 0);
  for (char c : w) {
    const auto i = alphabet.find(c);
    if (i == std::string_view::npos) {
      throw Error(ErrorKind::AlphabetMismatch, std::string("symbol '") + c + "' not in alphabet");
    }
    ++counts[i];
  }
  return counts;
}

bool is_subword(std::string_view u, std::string_view w) noexcept {
  std::size_t i = 0;
  for (char c : w) {
    if (i < u.size() && u[i] == c) ++i;
  }
  return i == u.size();
}

namespace {

bool rule_reduces(const SemiThueSystem& s, const Rule& r, const ReductionOrder& order) {
  switch (order.kind) {
    case OrderKind::Length:
      return r.lhs.size() > r.rhs.size();
    case OrderKind::Weight:
      return order.gamma.of(s, r.lhs) > order.gamma.of(s, r.rhs);
    case OrderKind::Parikh: {
      const auto pl = parikh_image(s.alphabet(), r.lhs);
      const auto pr = parikh_image(s.alphabet(), r.rhs);
      bool strict = false;
      for (std::size_t a = 0; a < pl.size(); ++a) {
        if (pl[a] < pr[a]) return false;
        strict = strict || pl[a] > pr[a];
      }
      return strict;
    }
    case OrderKind::Subword:
      return r.lhs != r.rhs && is_subword(r.rhs, r.lhs);
  }
  return false;
}

}  // namespace

ReducingCheck check_reducing(const SemiThueSystem& s, const ReductionOrder& order) {
  if (order.kind == OrderKind::Weight) {
    if (order.gamma.weights.size() != s.alphabet().size()) {
      throw Error(ErrorKind::InvalidSystem, "weight function needs one weight per symbol");
    }
    for (auto w : order.gamma.weights) {
      if (w == 0) throw Error(ErrorKind::InvalidSystem, "weights must be positive");
    }
  }
  for (std::size_t i = 0; i < s.rules().size(); ++i) {
    if (!rule_reduces(s, s.rules()[i], order)) return {false, i};
  }
  return {};
}

std::optional<WeightFunction> find_termination_weight(const SemiThueSystem& s) {
  const std::size_t k = s.alphabet().size();
  auto uniform = WeightFunction::uniform(k);
  if (check_reducing(s, {OrderKind::Length, {}}).ok) return uniform;

  std::vector<std::vector<long long>> diffs;
  for (const auto& r : s.rules()) {
    const auto pl = parikh_image(s.alphabet(), r.lhs);
    const auto pr = parikh_image(s.alphabet(), r.rhs);
    std::vector<long long> d(k);
    for (std::size_t a = 0; a < k; ++a) d[a] = static_cast<long long>(pl[a]) - static_cast<long long>(pr[a]);
    diffs.push_back(std::move(d));
  }
  std::vector<std::uint64_t> w(k, 1);
  for (std::size_t tried = 0; tried < kWeightSearchBudget; ++tried) {
    const bool ok = std::all_of(diffs.begin(), diffs.end(), [&](const auto& d) {
      long long total = 0;
      for (std::size_t a = 0; a < k; ++a) total += d[a] * static_cast<long long>(w[a]);
      return total > 0;
    });
    if (ok) return WeightFunction{w};
    std::size_t a = 0;
    while (a < k && w[a] == kMaxSearchWeight) w[a++] = 1;
    if (a == k) break;
    ++w[a];
  }
  return std::nullopt;
}

Rewriter::Rewriter(const SemiThueSystem& s, WeightFunction gamma)
    : system_(s), gamma_(std::move(gamma)) {
  const std::size_t k = s.alphabet().size();
  // Trie over the left sides.
  std::vector<std::uint32_t> trie(k, kNone);
  match_.assign(1, kNone);
  for (std::size_t i = 0; i < s.rules().size(); ++i) {
    std::uint32_t q = 0;
    for (char c : s.rules()[i].lhs) {
      const std::size_t a = s.symbol_index(c);
      if (trie[q * k + a] == kNone) {
        trie[q * k + a] = static_cast<std::uint32_t>(match_.size());
        match_.push_back(kNone);
        trie.resize(trie.size() + k, kNone);
      }
      q = trie[q * k + a];
    }
    match_[q] = std::min<std::uint32_t>(match_[q], static_cast<std::uint32_t>(i));
  }
  // Breadth-first failure links turned into a complete goto table.
  const std::size_t states = match_.size();
  go_.assign(states * k, 0);
  std::vector<std::uint32_t> fail(states, 0);
  std::vector<std::uint32_t> queue;
  for (std::size_t a = 0; a < k; ++a) {
    if (trie[a] != kNone) {
      go_[a] = trie[a];
      queue.push_back(trie[a]);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t q = queue[head];
    match_[q] = std::min(match_[q], match_[fail[q]]);
    for (std::size_t a = 0; a < k; ++a) {
      const std::uint32_t child = trie[q * k + a];
      if (child != kNone) {
        fail[child] = go_[std::size_t{fail[q]} * k + a];
        go_[q * k + a] = child;
        queue.push_back(child);
      } else {
        go_[q * k + a] = go_[std::size_t{fail[q]} * k + a];
      }
    }
  }
}

std::string Rewriter::normal_form(std::string_view w) const {
  const std::size_t k = system_.alphabet().size();
  std::array<std::int16_t, 256> index;
  index.fill(-1);
  for (std::size_t a = 0; a < k; ++a) index[static_cast<unsigned char>(system_.alphabet()[a])] = static_cast<std::int16_t>(a);

  const std::uint64_t budget = gamma_.of(system_, w);
  std::uint64_t steps = 0;
  std::string out;
  std::vector<std::uint32_t> states{0};
  std::string todo(w.rbegin(), w.rend());
  out.reserve(w.size());
  states.reserve(w.size() + 1);
  while (!todo.empty()) {
    const char c = todo.back();
    todo.pop_back();
    const auto a = index[static_cast<unsigned char>(c)];
    if (a < 0) throw Error(ErrorKind::AlphabetMismatch, std::string("symbol '") + c + "' not in alphabet");
    const std::uint32_t q = go_[std::size_t{states.back()} * k + static_cast<std::size_t>(a)];
    out.push_back(c);
    states.push_back(q);
    if (match_[q] == kNone) continue;
    if (++steps > budget) {
      throw Error(ErrorKind::NonTerminatingSuspected,
                  "more than " + std::to_string(budget) + " rewrite steps");
    }
    const Rule& r = system_.rules()[match_[q]];
    out.resize(out.size() - r.lhs.size());
    states.resize(states.size() - r.lhs.size());
    todo.append(r.rhs.rbegin(), r.rhs.rend());
  }
  return out;
}

bool Rewriter::is_irreducible(std::string_view w) const {
  const std::size_t k = system_.alphabet().size();
  std::uint32_t q = 0;
  for (char c : w) {
    q = go_[std::size_t{q} * k + system_.symbol_index(c)];
    if (match_[q] != kNone) return false;
  }
  return true;
}

Dfa Rewriter::irreducible_words() const {
  const std::size_t k = system_.alphabet().size();
  const std::size_t states = match_.size();
  const auto dead = static_cast<Dfa::State>(states);
  std::vector<Dfa::State> delta((states + 1) * k, dead);
  std::vector<bool> finals(states + 1, false);
  for (std::size_t q = 0; q < states; ++q) {
    if (match_[q] != kNone) continue;
    finals[q] = true;
    for (std::size_t a = 0; a < k; ++a) {
      const std::uint32_t r = go_[q * k + a];
      delta[q * k + a] = match_[r] == kNone ? r : dead;
    }
  }
  return minimize(Dfa(system_.alphabet(), states + 1, 0, std::move(finals), std::move(delta)));
}

namespace {

WeightFunction certified_weight(const SemiThueSystem& s) {
  auto gamma = find_termination_weight(s);
  if (!gamma) {
    throw Error(ErrorKind::PreconditionNotCertified, "no weight function makes every rule decrease");
  }
  return *gamma;
}

}  // namespace

std::string normal_form(const SemiThueSystem& s, std::string_view w) {
  return Rewriter(s, certified_weight(s)).normal_form(w);
}

std::vector<CriticalPair> critical_pairs(const SemiThueSystem& s) {
  std::vector<CriticalPair> pairs;
  const auto& rules = s.rules();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const std::string& li = rules[i].lhs;
    for (std::size_t j = 0; j < rules.size(); ++j) {
      const std::string& lj = rules[j].lhs;
      // A proper suffix of li equal to a proper prefix of lj.
      for (std::size_t len = 1; len < li.size() && len < lj.size(); ++len) {
        if (li.compare(li.size() - len, len, lj, 0, len) != 0) continue;
        const std::string tail = lj.substr(len);
        pairs.push_back({li + tail, rules[i].rhs + tail,
                         li.substr(0, li.size() - len) + rules[j].rhs, i, j});
      }
      // lj inside li.
      if (i == j || lj.size() > li.size()) continue;
      for (std::size_t p = li.find(lj); p != std::string::npos; p = li.find(lj, p + 1)) {
        pairs.push_back({li, rules[i].rhs,
                         li.substr(0, p) + rules[j].rhs + li.substr(p + lj.size()), i, j});
      }
    }
  }
  return pairs;
}

ConfluenceResult is_confluent(const SemiThueSystem& s) {
  const Rewriter rw(s, certified_weight(s));
  ConfluenceResult result;
  for (auto& pair : critical_pairs(s)) {
    ++result.pairs_checked;
    auto left = rw.normal_form(pair.left);
    auto right = rw.normal_form(pair.right);
    if (left != right) {
      result.confluent = false;
      result.witness = std::move(pair);
      result.left_normal_form = std::move(left);
      result.right_normal_form = std::move(right);
      return result;
    }
  }
  return result;
}

namespace {

Rewriter certified_rewriter(const SemiThueSystem& s) {
  const auto confluence = is_confluent(s);
  if (!confluence.confluent) {
    throw Error(ErrorKind::PreconditionNotCertified,
                "system is not confluent (critical pair on " + show(confluence.witness->word) + ")");
  }
  return Rewriter(s, certified_weight(s));
}

}  // namespace

std::optional<std::uint64_t> finite_index(const SemiThueSystem& s) {
  return count_words(certified_rewriter(s).irreducible_words());
}

Elem QuotientMonoid::evaluate(std::string_view word) const {
  Elem x = monoid.identity();
  for (char c : word) {
    const auto a = alphabet.find(c);
    if (a == std::string::npos) {
      throw Error(ErrorKind::AlphabetMismatch, std::string("symbol '") + c + "' not in alphabet");
    }
    x = monoid(x, letter_images[a]);
  }
  return x;
}

QuotientMonoid quotient_monoid(const SemiThueSystem& s, std::size_t cap) {
  const Rewriter rw = certified_rewriter(s);
  const Dfa irr = rw.irreducible_words();
  const auto count = count_words(irr);
  if (!count) throw Error(ErrorKind::InfiniteIndex, "infinitely many irreducible words");
  if (*count > cap) {
    throw Error(ErrorKind::SizeGuardExceeded,
                "quotient has " + std::to_string(*count) + " elements, cap " + std::to_string(cap));
  }
  auto words = enumerate_words(irr, static_cast<std::size_t>(*count));
  std::unordered_map<std::string, Elem> ids;
  for (std::size_t i = 0; i < words.size(); ++i) ids.emplace(words[i], static_cast<Elem>(i));
  const std::size_t n = words.size();
  std::vector<Elem> table(n * n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) table[u * n + v] = ids.at(rw.normal_form(words[u] + words[v]));
  }
  std::vector<Elem> letters;
  for (char c : s.alphabet()) letters.push_back(ids.at(rw.normal_form(std::string(1, c))));
  // Shortlex puts the empty word first.
  return QuotientMonoid{FiniteMonoid::validate(n, std::move(table), 0), std::move(words),
                        s.alphabet(), std::move(letters)};
}

bool factorizes_through(const FiniteMonoid& target, const std::vector<Elem>& letter_images,
                        const SemiThueSystem& s) {
  if (letter_images.size() != s.alphabet().size()) {
    throw Error(ErrorKind::AlphabetMismatch, "need one image per alphabet symbol");
  }
  for (Elem x : letter_images) {
    if (x >= target.size()) throw Error(ErrorKind::IndexOutOfRange, "letter image out of range");
  }
  auto eval = [&](std::string_view w) {
    Elem x = target.identity();
    for (char c : w) x = target(x, letter_images[s.symbol_index(c)]);
    return x;
  };
  return std::all_of(s.rules().begin(), s.rules().end(),
                     [&](const Rule& r) { return eval(r.lhs) == eval(r.rhs); });
}

bool recognizes(const SemiThueSystem& s, const Dfa& language) {
  for (char c : language.alphabet()) s.symbol_index(c);
  const Dfa l = with_alphabet(language, s.alphabet());
  const auto q = quotient_monoid(s);
  const std::size_t n = q.monoid.size();
  const std::size_t k = s.alphabet().size();
  std::vector<Dfa::State> delta(n * k);
  std::vector<bool> finals(n);
  for (Elem m = 0; m < n; ++m) {
    for (std::size_t a = 0; a < k; ++a) delta[m * k + a] = q.monoid(m, q.letter_images[a]);
    finals[m] = l.accepts(q.elements[m]);
  }
  return equivalent(l, Dfa(s.alphabet(), n, q.monoid.identity(), std::move(finals), std::move(delta)));
}

SemiThueSystem parse_system(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t number = 0;
  std::string alphabet;
  bool seen_rule = false;
  bool seen_alphabet = false;
  std::vector<Rule> rules;
  auto error = [&](const std::string& message) -> Error {
    return Error(ErrorKind::Parse, "line " + std::to_string(number) + ": " + message, {number});
  };
  auto word = [&](const std::string& token) {
    if (token == "eps") return std::string();
    return token;
  };
  while (std::getline(in, raw)) {
    ++number;
    std::istringstream words(raw);
    std::vector<std::string> tokens;
    for (std::string w; words >> w;) tokens.push_back(w);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (tokens.front() == "alphabet") {
      if (seen_rule || seen_alphabet) throw error("alphabet must be the first line");
      seen_alphabet = true;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (tokens[i].size() != 1) throw error("symbols must be single characters");
        alphabet += tokens[i];
      }
      continue;
    }
    if (tokens.size() != 3 || tokens[1] != "->") throw error("expected '<lhs> -> <rhs>'");
    seen_rule = true;
    Rule r{word(tokens[0]), word(tokens[2])};
    if (r.lhs.empty()) throw Error(ErrorKind::InvalidSystem, "line " + std::to_string(number) + ": empty left side");
    if (seen_alphabet) {
      for (char c : r.lhs + r.rhs) {
        if (alphabet.find(c) == std::string::npos) {
          throw error(std::string("symbol '") + c + "' not in declared alphabet");
        }
      }
    }
    rules.push_back(std::move(r));
  }
  return SemiThueSystem::make(alphabet, std::move(rules));
}

SemiThueSystem read_system_file(const std::filesystem::path& path) {
  return parse_system(read_text_file(path));
}

std::string format_system(const SemiThueSystem& s) {
  std::ostringstream out;
  out << "alphabet";
  for (char c : s.alphabet()) out << ' ' << c;
  out << '\n';
  for (const auto& r : s.rules()) out << show(r.lhs) << " -> " << show(r.rhs) << '\n';
  return out.str();
}

}  // namespace monoidw
