#include "monoidw/dfa.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <queue>
#include <set>

namespace monoidw {

using State = Dfa::State;

std::string normalize_alphabet(std::string_view symbols) {
  std::string out(symbols);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string merge_alphabets(std::string_view a, std::string_view b) {
  return normalize_alphabet(std::string(a) + std::string(b));
}

Dfa::Dfa(std::string alphabet, std::size_t states, State initial, std::vector<bool> finals,
         std::vector<State> delta)
    : states_(states), initial_(initial), finals_(std::move(finals)) {
  const std::size_t k = alphabet.size();
  if (normalize_alphabet(alphabet).size() != k) {
    throw Error(ErrorKind::InvalidDfa, "alphabet has repeated symbols");
  }
  if (states == 0) throw Error(ErrorKind::InvalidDfa, "a DFA needs at least one state");
  if (states >= std::numeric_limits<State>::max()) {
    throw Error(ErrorKind::SizeGuardExceeded, "too many states");
  }
  if (initial >= states) throw Error(ErrorKind::InvalidDfa, "initial state out of range");
  if (finals_.size() != states) throw Error(ErrorKind::InvalidDfa, "final flags do not match states");
  if (delta.size() != states * k) throw Error(ErrorKind::InvalidDfa, "transition table not total");
  for (State target : delta) {
    if (target >= states) throw Error(ErrorKind::InvalidDfa, "transition target out of range");
  }
  alphabet_ = normalize_alphabet(alphabet);
  if (alphabet_ == alphabet) {
    delta_ = std::move(delta);
  } else {
    delta_.resize(delta.size());
    for (std::size_t col = 0; col < k; ++col) {
      const std::size_t to = alphabet_.find(alphabet[col]);
      for (std::size_t q = 0; q < states; ++q) delta_[q * k + to] = delta[q * k + col];
    }
  }
  index_.fill(-1);
  for (std::size_t i = 0; i < k; ++i) {
    index_[static_cast<unsigned char>(alphabet_[i])] = static_cast<std::int16_t>(i);
  }
}

std::optional<std::size_t> Dfa::symbol_index(char symbol) const noexcept {
  const auto i = index_[static_cast<unsigned char>(symbol)];
  if (i < 0) return std::nullopt;
  return static_cast<std::size_t>(i);
}

State Dfa::next(State q, char symbol) const {
  const auto i = symbol_index(symbol);
  if (!i) {
    throw Error(ErrorKind::AlphabetMismatch, std::string("symbol '") + symbol + "' not in alphabet");
  }
  return next(q, *i);
}

State Dfa::run(State q, std::string_view word) const {
  for (char c : word) q = next(q, c);
  return q;
}

Dfa empty_language(std::string_view alphabet) {
  const std::string a = normalize_alphabet(alphabet);
  return Dfa(a, 1, 0, {false}, std::vector<State>(a.size(), 0));
}

Dfa universal_language(std::string_view alphabet) {
  const std::string a = normalize_alphabet(alphabet);
  return Dfa(a, 1, 0, {true}, std::vector<State>(a.size(), 0));
}

Dfa from_finite_set(std::string_view alphabet, std::span<const std::string> words) {
  std::string a = normalize_alphabet(alphabet);
  for (const auto& w : words) a = merge_alphabets(a, w);
  const std::size_t k = a.size();
  // State 0 is the sink, state 1 the root of the trie.
  std::vector<State> delta(2 * k, 0);
  std::vector<bool> finals{false, false};
  for (const auto& w : words) {
    State q = 1;
    for (char c : w) {
      const std::size_t s = a.find(c);
      if (delta[q * k + s] == 0) {
        delta[q * k + s] = static_cast<State>(finals.size());
        finals.push_back(false);
        delta.resize(delta.size() + k, 0);
      }
      q = delta[q * k + s];
    }
    finals[q] = true;
  }
  return minimize(Dfa(a, finals.size(), 1, finals, std::move(delta)));
}

Dfa from_word(std::string_view alphabet, std::string_view word) {
  const std::string w(word);
  return from_finite_set(alphabet, std::span<const std::string>(&w, 1));
}

Dfa with_alphabet(const Dfa& d, std::string_view alphabet) {
  const std::string a = merge_alphabets(d.alphabet(), alphabet);
  if (a == d.alphabet()) return d;
  const std::size_t k = a.size();
  const std::size_t sink = d.state_count();
  std::vector<State> delta((sink + 1) * k, static_cast<State>(sink));
  std::vector<bool> finals = d.finals();
  finals.push_back(false);
  for (State q = 0; q < d.state_count(); ++q) {
    for (std::size_t s = 0; s < k; ++s) {
      if (const auto old = d.symbol_index(a[s])) delta[q * k + s] = d.next(q, *old);
    }
  }
  return Dfa(a, sink + 1, d.initial(), std::move(finals), std::move(delta));
}

Dfa complement(const Dfa& d) {
  std::vector<bool> finals = d.finals();
  finals.flip();
  std::vector<State> delta;
  delta.reserve(d.state_count() * d.alphabet().size());
  for (State q = 0; q < d.state_count(); ++q) {
    for (std::size_t s = 0; s < d.alphabet().size(); ++s) delta.push_back(d.next(q, s));
  }
  return Dfa(d.alphabet(), d.state_count(), d.initial(), std::move(finals), std::move(delta));
}

namespace {

template <typename Accept>
Dfa product(const Dfa& a0, const Dfa& b0, Accept accept) {
  const std::string alphabet = merge_alphabets(a0.alphabet(), b0.alphabet());
  const Dfa a = with_alphabet(a0, alphabet);
  const Dfa b = with_alphabet(b0, alphabet);
  const std::size_t k = alphabet.size();
  std::map<std::pair<State, State>, State> ids;
  std::vector<std::pair<State, State>> order;
  auto id_of = [&](std::pair<State, State> p) {
    const auto [it, inserted] = ids.emplace(p, static_cast<State>(order.size()));
    if (inserted) order.push_back(p);
    return it->second;
  };
  id_of({a.initial(), b.initial()});
  std::vector<State> delta;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto [p, q] = order[i];
    for (std::size_t s = 0; s < k; ++s) delta.push_back(id_of({a.next(p, s), b.next(q, s)}));
  }
  std::vector<bool> finals(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    finals[i] = accept(a.is_final(order[i].first), b.is_final(order[i].second));
  }
  return Dfa(alphabet, order.size(), 0, std::move(finals), std::move(delta));
}

/// Epsilon-NFA used for concatenation and star.
struct Nfa {
  std::size_t symbols = 0;
  std::vector<std::vector<std::vector<State>>> next;  // [state][symbol] -> targets
  std::vector<std::vector<State>> epsilon;
  std::vector<bool> finals;
  std::vector<State> initial;

  State add_state(bool final) {
    next.emplace_back(symbols);
    epsilon.emplace_back();
    finals.push_back(final);
    return static_cast<State>(finals.size() - 1);
  }

  /// Copies d in, returning the offset of its states.
  State embed(const Dfa& d, bool keep_finals) {
    const State offset = static_cast<State>(finals.size());
    for (State q = 0; q < d.state_count(); ++q) add_state(keep_finals && d.is_final(q));
    for (State q = 0; q < d.state_count(); ++q) {
      for (std::size_t s = 0; s < symbols; ++s) next[offset + q][s].push_back(offset + d.next(q, s));
    }
    return offset;
  }

  void close(std::vector<State>& set) const {
    std::vector<char> in(finals.size(), 0);
    for (State q : set) in[q] = 1;
    for (std::size_t i = 0; i < set.size(); ++i) {
      for (State r : epsilon[set[i]]) {
        if (!in[r]) {
          in[r] = 1;
          set.push_back(r);
        }
      }
    }
    std::sort(set.begin(), set.end());
  }

  Dfa determinize(const std::string& alphabet, std::size_t cap) const {
    std::map<std::vector<State>, State> ids;
    std::vector<std::vector<State>> order;
    auto id_of = [&](std::vector<State> set) {
      close(set);
      const auto [it, inserted] = ids.emplace(set, static_cast<State>(order.size()));
      if (inserted) {
        if (order.size() >= cap) {
          throw Error(ErrorKind::SizeGuardExceeded,
                      "subset construction exceeds " + std::to_string(cap) + " states");
        }
        order.push_back(std::move(set));
      }
      return it->second;
    };
    id_of(initial);
    std::vector<State> delta;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t s = 0; s < symbols; ++s) {
        std::vector<State> target;
        for (State q : order[i]) {
          for (State r : next[q][s]) target.push_back(r);
        }
        std::sort(target.begin(), target.end());
        target.erase(std::unique(target.begin(), target.end()), target.end());
        delta.push_back(id_of(std::move(target)));
      }
    }
    std::vector<bool> fin(order.size(), false);
    for (std::size_t i = 0; i < order.size(); ++i) {
      fin[i] = std::any_of(order[i].begin(), order[i].end(), [&](State q) { return finals[q]; });
    }
    return minimize(Dfa(alphabet, order.size(), 0, std::move(fin), std::move(delta)));
  }
};

}  // namespace

Dfa intersection(const Dfa& a, const Dfa& b) {
  return minimize(product(a, b, [](bool x, bool y) { return x && y; }));
}

Dfa union_of(const Dfa& a, const Dfa& b) {
  return minimize(product(a, b, [](bool x, bool y) { return x || y; }));
}

Dfa difference(const Dfa& a, const Dfa& b) {
  return minimize(product(a, b, [](bool x, bool y) { return x && !y; }));
}

Dfa concat(const Dfa& a0, const Dfa& b0, std::size_t state_cap) {
  const std::string alphabet = merge_alphabets(a0.alphabet(), b0.alphabet());
  const Dfa a = with_alphabet(a0, alphabet);
  const Dfa b = with_alphabet(b0, alphabet);
  Nfa nfa;
  nfa.symbols = alphabet.size();
  const State oa = nfa.embed(a, false);
  const State ob = nfa.embed(b, true);
  for (State q = 0; q < a.state_count(); ++q) {
    if (a.is_final(q)) nfa.epsilon[oa + q].push_back(ob + b.initial());
  }
  nfa.initial = {oa + a.initial()};
  return nfa.determinize(alphabet, state_cap);
}

Dfa star(const Dfa& d, std::size_t state_cap) {
  Nfa nfa;
  nfa.symbols = d.alphabet().size();
  const State start = nfa.add_state(true);
  const State offset = nfa.embed(d, true);
  nfa.epsilon[start].push_back(offset + d.initial());
  for (State q = 0; q < d.state_count(); ++q) {
    if (d.is_final(q)) nfa.epsilon[offset + q].push_back(offset + d.initial());
  }
  nfa.initial = {start};
  return nfa.determinize(d.alphabet(), state_cap);
}

Dfa power(const Dfa& d, std::size_t k, std::size_t state_cap) {
  Dfa result = from_word(d.alphabet(), "");
  for (std::size_t i = 0; i < k; ++i) result = concat(result, d, state_cap);
  return result;
}

Dfa minimize(const Dfa& d) {
  const std::size_t k = d.alphabet().size();
  // Reachable part.
  std::vector<State> reach_id(d.state_count(), std::numeric_limits<State>::max());
  std::vector<State> reachable{d.initial()};
  reach_id[d.initial()] = 0;
  for (std::size_t i = 0; i < reachable.size(); ++i) {
    for (std::size_t s = 0; s < k; ++s) {
      const State r = d.next(reachable[i], s);
      if (reach_id[r] == std::numeric_limits<State>::max()) {
        reach_id[r] = static_cast<State>(reachable.size());
        reachable.push_back(r);
      }
    }
  }
  const std::size_t n = reachable.size();

  // Moore refinement.
  std::vector<State> block(n);
  for (std::size_t i = 0; i < n; ++i) block[i] = d.is_final(reachable[i]) ? 1 : 0;
  std::size_t blocks = 0;
  for (;;) {
    std::map<std::vector<State>, State> signature_ids;
    std::vector<State> next_block(n);
    std::vector<State> signature(k + 1);
    for (std::size_t i = 0; i < n; ++i) {
      signature[0] = block[i];
      for (std::size_t s = 0; s < k; ++s) signature[s + 1] = block[reach_id[d.next(reachable[i], s)]];
      next_block[i] = signature_ids.emplace(signature, static_cast<State>(signature_ids.size()))
                          .first->second;
    }
    const std::size_t count = signature_ids.size();
    block = std::move(next_block);
    if (count == blocks) break;
    blocks = count;
  }

  // Canonical renumbering by BFS from the initial block.
  std::vector<std::size_t> representative(blocks, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (representative[block[i]] == n) representative[block[i]] = i;
  }
  std::vector<State> canon(blocks, std::numeric_limits<State>::max());
  std::vector<State> order{block[0]};
  canon[block[0]] = 0;
  std::vector<State> delta;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t rep = representative[order[i]];
    for (std::size_t s = 0; s < k; ++s) {
      const State target = block[reach_id[d.next(reachable[rep], s)]];
      if (canon[target] == std::numeric_limits<State>::max()) {
        canon[target] = static_cast<State>(order.size());
        order.push_back(target);
      }
      delta.push_back(canon[target]);
    }
  }
  std::vector<bool> finals(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    finals[i] = d.is_final(reachable[representative[order[i]]]);
  }
  return Dfa(d.alphabet(), order.size(), 0, std::move(finals), std::move(delta));
}

namespace {

std::vector<char> reachable_states(const Dfa& d) {
  std::vector<char> seen(d.state_count(), 0);
  std::vector<State> stack{d.initial()};
  seen[d.initial()] = 1;
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    for (std::size_t s = 0; s < d.alphabet().size(); ++s) {
      const State r = d.next(q, s);
      if (!seen[r]) {
        seen[r] = 1;
        stack.push_back(r);
      }
    }
  }
  return seen;
}

std::vector<char> coreachable_states(const Dfa& d) {
  std::vector<std::vector<State>> reverse(d.state_count());
  for (State q = 0; q < d.state_count(); ++q) {
    for (std::size_t s = 0; s < d.alphabet().size(); ++s) reverse[d.next(q, s)].push_back(q);
  }
  std::vector<char> seen(d.state_count(), 0);
  std::vector<State> stack;
  for (State q = 0; q < d.state_count(); ++q) {
    if (d.is_final(q)) {
      seen[q] = 1;
      stack.push_back(q);
    }
  }
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    for (State p : reverse[q]) {
      if (!seen[p]) {
        seen[p] = 1;
        stack.push_back(p);
      }
    }
  }
  return seen;
}

/// Topological order of the useful states, or nullopt if they contain a cycle.
std::optional<std::vector<State>> useful_topological_order(const Dfa& d) {
  const auto reach = reachable_states(d);
  const auto coreach = coreachable_states(d);
  std::vector<char> useful(d.state_count());
  for (State q = 0; q < d.state_count(); ++q) useful[q] = reach[q] && coreach[q];
  std::vector<std::size_t> indegree(d.state_count(), 0);
  for (State q = 0; q < d.state_count(); ++q) {
    if (!useful[q]) continue;
    for (std::size_t s = 0; s < d.alphabet().size(); ++s) {
      if (useful[d.next(q, s)]) ++indegree[d.next(q, s)];
    }
  }
  std::vector<State> order;
  for (State q = 0; q < d.state_count(); ++q) {
    if (useful[q] && indegree[q] == 0) order.push_back(q);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t s = 0; s < d.alphabet().size(); ++s) {
      const State r = d.next(order[i], s);
      if (useful[r] && --indegree[r] == 0) order.push_back(r);
    }
  }
  const auto useful_count = static_cast<std::size_t>(std::count(useful.begin(), useful.end(), 1));
  if (order.size() != useful_count) return std::nullopt;
  return order;
}

}  // namespace

bool is_empty(const Dfa& d) {
  const auto reach = reachable_states(d);
  for (State q = 0; q < d.state_count(); ++q) {
    if (reach[q] && d.is_final(q)) return false;
  }
  return true;
}

bool is_finite(const Dfa& d) { return useful_topological_order(d).has_value(); }

std::optional<std::uint64_t> count_words(const Dfa& d) {
  const auto order = useful_topological_order(d);
  if (!order) return std::nullopt;
  std::vector<std::uint64_t> paths(d.state_count(), 0);
  std::uint64_t total = 0;
  if (!order->empty()) paths[d.initial()] = 1;
  for (State q : *order) {
    if (d.is_final(q)) {
      if (__builtin_add_overflow(total, paths[q], &total)) {
        throw Error(ErrorKind::SizeGuardExceeded, "word count overflows 64 bits");
      }
    }
    for (std::size_t s = 0; s < d.alphabet().size(); ++s) {
      const State r = d.next(q, s);
      if (__builtin_add_overflow(paths[r], paths[q], &paths[r])) {
        throw Error(ErrorKind::SizeGuardExceeded, "word count overflows 64 bits");
      }
    }
  }
  return total;
}

std::vector<std::string> enumerate_words(const Dfa& d, std::size_t limit) {
  const auto coreach = coreachable_states(d);
  std::vector<std::string> out;
  if (!coreach[d.initial()] || limit == 0) return out;
  std::deque<std::pair<State, std::string>> frontier{{d.initial(), ""}};
  while (!frontier.empty() && out.size() < limit) {
    auto [q, word] = std::move(frontier.front());
    frontier.pop_front();
    if (d.is_final(q)) out.push_back(word);
    for (std::size_t s = 0; s < d.alphabet().size(); ++s) {
      const State r = d.next(q, s);
      if (coreach[r]) frontier.emplace_back(r, word + d.alphabet()[s]);
    }
  }
  return out;
}

std::optional<std::string> shortest_word(const Dfa& d) {
  auto words = enumerate_words(d, 1);
  if (words.empty()) return std::nullopt;
  return words.front();
}

std::optional<std::string> distinguishing_word(const Dfa& a0, const Dfa& b0) {
  const std::string alphabet = merge_alphabets(a0.alphabet(), b0.alphabet());
  const Dfa a = with_alphabet(a0, alphabet);
  const Dfa b = with_alphabet(b0, alphabet);
  std::map<std::pair<State, State>, std::pair<std::size_t, char>> parent;  // -> (index, symbol)
  std::vector<std::pair<State, State>> order{{a.initial(), b.initial()}};
  parent[order.front()] = {0, '\0'};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto [p, q] = order[i];
    if (a.is_final(p) != b.is_final(q)) {
      std::string word;
      for (std::size_t j = i; j != 0;) {
        const auto [from, symbol] = parent[order[j]];
        word.insert(word.begin(), symbol);
        j = from;
      }
      return word;
    }
    for (std::size_t s = 0; s < alphabet.size(); ++s) {
      const std::pair<State, State> next{a.next(p, s), b.next(q, s)};
      if (parent.emplace(next, std::make_pair(i, alphabet[s])).second) order.push_back(next);
    }
  }
  return std::nullopt;
}

bool equivalent(const Dfa& a, const Dfa& b) { return !distinguishing_word(a, b).has_value(); }

bool is_subset(const Dfa& a, const Dfa& b) { return is_empty(difference(a, b)); }

namespace {

class RegexParser {
 public:
  RegexParser(std::string_view pattern, std::string alphabet)
      : pattern_(pattern), alphabet_(std::move(alphabet)) {}

  Dfa parse() {
    Dfa result = alternation();
    if (pos_ != pattern_.size()) fail("unexpected '" + std::string(1, pattern_[pos_]) + "'");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw Error(ErrorKind::Parse, "regex column " + std::to_string(pos_ + 1) + ": " + message);
  }

  void skip_space() {
    while (pos_ < pattern_.size() && pattern_[pos_] == ' ') ++pos_;
  }

  Dfa alternation() {
    Dfa result = sequence();
    skip_space();
    while (pos_ < pattern_.size() && pattern_[pos_] == '|') {
      ++pos_;
      result = union_of(result, sequence());
      skip_space();
    }
    return result;
  }

  Dfa sequence() {
    Dfa result = from_word(alphabet_, "");
    for (;;) {
      skip_space();
      if (pos_ >= pattern_.size() || pattern_[pos_] == '|' || pattern_[pos_] == ')') break;
      result = concat(result, repetition());
    }
    return result;
  }

  Dfa repetition() {
    Dfa result = atom();
    skip_space();
    while (pos_ < pattern_.size() && pattern_[pos_] == '*') {
      ++pos_;
      result = star(result);
      skip_space();
    }
    return result;
  }

  Dfa atom() {
    const char c = pattern_[pos_];
    if (c == '(') {
      ++pos_;
      Dfa inner = alternation();
      if (pos_ >= pattern_.size() || pattern_[pos_] != ')') fail("missing ')'");
      ++pos_;
      return inner;
    }
    if (c == '*' || c == '|') fail("operator without operand");
    if (alphabet_.find(c) == std::string::npos) fail(std::string("symbol '") + c + "' not in alphabet");
    ++pos_;
    return from_word(alphabet_, std::string_view(&c, 1));
  }

  std::string_view pattern_;
  std::string alphabet_;
  std::size_t pos_ = 0;
};

}  // namespace

Dfa from_regex(std::string_view pattern, std::string_view alphabet) {
  return RegexParser(pattern, normalize_alphabet(alphabet)).parse();
}

}  // namespace monoidw
