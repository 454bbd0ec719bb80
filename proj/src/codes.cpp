#include "monoidw/codes.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "monoidw/monoid_io.hpp"

namespace monoidw {
namespace {

using State = Dfa::State;
}  // namespace

CodeSpec CodeSpec::from_words(std::string_view alphabet, std::vector<std::string> words) {
  std::string symbols(alphabet);
  for (const auto& w : words) {
    if (w.empty()) throw Error(ErrorKind::InvalidCode, "codes cannot contain the empty word");
    symbols += w;
  }
  std::vector<std::string> sorted = words;
  std::sort(sorted.begin(), sorted.end());
  const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) throw Error(ErrorKind::InvalidCode, "repeated word '" + *dup + "'");
  const std::string a = normalize_alphabet(symbols);
  Dfa language = from_finite_set(a, words);
  return CodeSpec(a, std::move(words), std::move(language));
}

CodeSpec CodeSpec::from_dfa(const Dfa& d) {
  if (d.accepts("")) throw Error(ErrorKind::InvalidCode, "codes cannot contain the empty word");
  return CodeSpec(d.alphabet(), d, minimize(d));
}

PrefixCheck is_prefix_free(const CodeSpec& k) {
  if (const auto* words = k.words()) {
    std::vector<std::string> sorted = *words;
    std::sort(sorted.begin(), sorted.end());
    // Every word having u as a prefix sorts right after u.
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
      if (sorted[i + 1].compare(0, sorted[i].size(), sorted[i]) == 0) {
        return {false, std::make_pair(sorted[i], sorted[i + 1])};
      }
    }
    return {};
  }

  // Some accepting state must not lead to another acceptance.
  const Dfa& d = k.language();
  const std::size_t n = d.state_count();
  const std::size_t symbols = d.alphabet().size();
  // Shortest nonempty word leading from each state to a final state.
  std::vector<std::vector<std::pair<State, char>>> reverse(n);
  for (State q = 0; q < n; ++q) {
    for (std::size_t a = 0; a < symbols; ++a) reverse[d.next(q, a)].push_back({q, d.alphabet()[a]});
  }
  std::vector<std::string> tail(n);
  std::vector<char> has_tail(n, 0);
  std::deque<State> queue;
  for (State q = 0; q < n; ++q) {
    for (std::size_t a = 0; a < symbols; ++a) {
      if (d.is_final(d.next(q, a)) && !has_tail[q]) {
        has_tail[q] = 1;
        tail[q] = std::string(1, d.alphabet()[a]);
        queue.push_back(q);
      }
    }
  }
  while (!queue.empty()) {
    const State q = queue.front();
    queue.pop_front();
    for (const auto& [p, c] : reverse[q]) {
      if (!has_tail[p]) {
        has_tail[p] = 1;
        tail[p] = c + tail[q];
        queue.push_back(p);
      }
    }
  }
  // Breadth-first over reachable states for the shortest u.
  std::vector<std::string> path(n);
  std::vector<char> seen(n, 0);
  std::deque<State> bfs{d.initial()};
  seen[d.initial()] = 1;
  while (!bfs.empty()) {
    const State q = bfs.front();
    bfs.pop_front();
    if (d.is_final(q) && has_tail[q]) return {false, std::make_pair(path[q], path[q] + tail[q])};
    for (std::size_t a = 0; a < symbols; ++a) {
      const State r = d.next(q, a);
      if (!seen[r]) {
        seen[r] = 1;
        path[r] = path[q] + d.alphabet()[a];
        bfs.push_back(r);
      }
    }
  }
  return {};
}

namespace {

void require_prefix_free(const CodeSpec& k) {
  const auto check = is_prefix_free(k);
  if (!check.prefix_free) {
    throw Error(ErrorKind::NotPrefixFree, "'" + check.witness->first + "' is a prefix of '" +
                                              check.witness->second + "'");
  }
}

}  // namespace

DelayCheck has_sync_delay(const CodeSpec& k, std::size_t d) {
  if (d == 0) throw Error(ErrorKind::InvalidCode, "delay must be positive");
  require_prefix_free(k);
  const Dfa kstar = star(k.language());
  const Dfa kd = minimize(power(k.language(), d));
  const std::string& alphabet = kstar.alphabet();
  const std::size_t symbols = alphabet.size();
  const std::size_t ns = kstar.state_count();
  const std::size_t np = kd.state_count();

  // Phase 0 reads u (K* state), phase 1 reads v (K* state, K^d state),
  // phase 2 reads w (K* state). Moving 0 -> 1 is free; moving 1 -> 2 needs
  // v in K^d and uv outside K*. A state of phase 2 whose K* component is
  // final ends a counterexample.
  const std::size_t phase1 = ns;
  const std::size_t phase2 = ns + ns * np;
  const std::size_t total = phase2 + ns;
  auto id1 = [&](State s, State p) { return phase1 + std::size_t{s} * np + p; };

  std::vector<std::size_t> dist(total, std::numeric_limits<std::size_t>::max());
  std::vector<std::size_t> parent(total, total);
  std::vector<char> via(total, 0);  // symbol read on the edge into the node, 0 for free moves
  std::deque<std::size_t> queue;
  dist[kstar.initial()] = 0;
  queue.push_back(kstar.initial());
  auto relax = [&](std::size_t from, std::size_t to, char symbol) {
    const std::size_t cost = dist[from] + (symbol ? 1 : 0);
    if (cost >= dist[to]) return;
    dist[to] = cost;
    parent[to] = from;
    via[to] = symbol;
    if (symbol) {
      queue.push_back(to);
    } else {
      queue.push_front(to);
    }
  };

  std::optional<std::size_t> goal;
  std::vector<char> done(total, 0);
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    if (done[x]) continue;
    done[x] = 1;
    if (x < phase1) {
      const auto s = static_cast<State>(x);
      relax(x, id1(s, kd.initial()), 0);
      for (std::size_t a = 0; a < symbols; ++a) relax(x, kstar.next(s, a), alphabet[a]);
    } else if (x < phase2) {
      const auto s = static_cast<State>((x - phase1) / np);
      const auto p = static_cast<State>((x - phase1) % np);
      if (kd.is_final(p) && !kstar.is_final(s)) relax(x, phase2 + s, 0);
      for (std::size_t a = 0; a < symbols; ++a) {
        relax(x, id1(kstar.next(s, a), kd.next(p, a)), alphabet[a]);
      }
    } else {
      const auto s = static_cast<State>(x - phase2);
      if (kstar.is_final(s)) {
        goal = x;
        break;
      }
      for (std::size_t a = 0; a < symbols; ++a) relax(x, phase2 + kstar.next(s, a), alphabet[a]);
    }
  }
  if (!goal) return {};

  DelayWitness witness;
  for (std::size_t x = *goal; parent[x] != total; x = parent[x]) {
    if (!via[x]) continue;
    std::string& part = x < phase1 ? witness.u : (x < phase2 ? witness.v : witness.w);
    part.insert(part.begin(), via[x]);
  }
  return {false, std::move(witness)};
}

std::optional<std::size_t> min_sync_delay(const CodeSpec& k, std::size_t d_max) {
  for (std::size_t d = 1; d <= d_max; ++d) {
    if (has_sync_delay(k, d).holds) return d;
  }
  return std::nullopt;
}

ControlledStar controlled_star(const ControlledStarSpec& spec) {
  const FiniteMonoid& g = spec.group;
  if (!is_group(g)) throw Error(ErrorKind::NotAGroup, "controlling monoid is not a group");

  std::string alphabet;
  std::set<Elem> labels;
  for (const auto& [label, code] : spec.parts) {
    if (label >= g.size()) {
      throw Error(ErrorKind::IndexOutOfRange, "part label " + std::to_string(label) + " out of range",
                  {label});
    }
    if (!labels.insert(label).second) {
      throw Error(ErrorKind::InvalidCode, "two parts labelled " + std::to_string(label), {label});
    }
    alphabet = merge_alphabets(alphabet, code.alphabet());
  }
  std::vector<Dfa> parts;
  for (const auto& part : spec.parts) parts.push_back(minimize(with_alphabet(part.second.language(), alphabet)));

  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      if (auto w = shortest_word(intersection(parts[i], parts[j]))) {
        throw Error(ErrorKind::PartsNotDisjoint,
                    "parts " + std::to_string(spec.parts[i].first) + " and " +
                        std::to_string(spec.parts[j].first) + " share '" + *w + "'",
                    {spec.parts[i].first, spec.parts[j].first});
      }
    }
  }
  Dfa united = empty_language(alphabet);
  for (const auto& p : parts) united = union_of(united, p);
  const CodeSpec code = CodeSpec::from_dfa(united);
  require_prefix_free(code);
  const auto delay = min_sync_delay(code, spec.delay_bound);
  if (!delay) {
    throw Error(ErrorKind::DelayNotCertified,
                "no synchronization delay up to " + std::to_string(spec.delay_bound));
  }

  // Which part states can still complete a codeword.
  std::vector<std::vector<char>> alive;
  for (const auto& p : parts) {
    std::vector<char> live(p.state_count(), 0);
    for (State q = 0; q < p.state_count(); ++q) {
      // Minimal automata have at most one dead state: non-final with all loops.
      bool dead = !p.is_final(q);
      for (std::size_t a = 0; dead && a < alphabet.size(); ++a) dead = p.next(q, a) == q;
      live[q] = !dead;
    }
    alive.push_back(std::move(live));
  }

  // Node key: boundary flag, one state per part, accumulated group element.
  using Key = std::vector<State>;
  std::map<Key, State> ids;
  std::vector<Key> order;
  const auto dead_id = State{0};
  order.push_back({});  // the global dead state
  ids.emplace(Key{}, dead_id);
  auto id_of = [&](Key key) {
    const auto [it, inserted] = ids.emplace(key, static_cast<State>(order.size()));
    if (inserted) {
      if (order.size() >= kDefaultStateCap) {
        throw Error(ErrorKind::SizeGuardExceeded, "controlled star automaton too large");
      }
      order.push_back(std::move(key));
    }
    return it->second;
  };
  Key start{1};
  for (const auto& p : parts) start.push_back(p.initial());
  start.push_back(g.identity());
  const State initial = id_of(start);

  const std::size_t k = alphabet.size();
  std::vector<State> delta;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i == dead_id) {
      delta.insert(delta.end(), k, dead_id);
      continue;
    }
    const Key key = order[i];
    for (std::size_t a = 0; a < k; ++a) {
      Key next(key.size());
      bool any_alive = false;
      std::optional<std::size_t> completed;
      for (std::size_t j = 0; j < parts.size(); ++j) {
        const State r = parts[j].next(key[1 + j], a);
        next[1 + j] = r;
        any_alive = any_alive || alive[j][r];
        if (parts[j].is_final(r)) completed = j;
      }
      const Elem acc = key.back();
      if (completed) {
        next[0] = 1;
        for (std::size_t j = 0; j < parts.size(); ++j) next[1 + j] = parts[j].initial();
        next.back() = g(acc, spec.parts[*completed].first);
        delta.push_back(id_of(std::move(next)));
      } else if (any_alive) {
        next[0] = 0;
        next.back() = acc;
        delta.push_back(id_of(std::move(next)));
      } else {
        delta.push_back(dead_id);
      }
    }
  }
  std::vector<bool> finals(order.size(), false);
  for (std::size_t i = 1; i < order.size(); ++i) finals[i] = order[i][0] == 1 && order[i].back() == g.identity();
  Dfa raw(alphabet, order.size(), initial, std::move(finals), std::move(delta));
  return ControlledStar{minimize(raw), *delay, alphabet};
}

namespace {

struct Tokens {
  std::size_t line;
  std::vector<std::string> items;
};

std::vector<Tokens> tokenize(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<Tokens> out;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::istringstream words(raw);
    Tokens t{number, {}};
    for (std::string w; words >> w;) t.items.push_back(w);
    if (t.items.empty() || t.items.front().front() == '#') continue;
    out.push_back(std::move(t));
  }
  return out;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& message) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + message, {line});
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

std::string symbols_of_pattern(std::string_view pattern) {
  std::string out;
  for (char c : pattern) {
    if (c != '(' && c != ')' && c != '|' && c != '*' && c != ' ') out += c;
  }
  return out;
}

/// `kind args...` where kind is words, dfa or regex.
CodeSpec code_body(const Tokens& t, std::size_t first, const std::string& alphabet,
                   const std::filesystem::path& base) {
  if (first >= t.items.size()) parse_error(t.line, "expected 'words', 'dfa' or 'regex'");
  const std::string& kind = t.items[first];
  std::vector<std::string> args(t.items.begin() + static_cast<std::ptrdiff_t>(first) + 1, t.items.end());
  if (kind == "words") {
    for (const auto& w : args) {
      if (w == "eps") parse_error(t.line, "codes cannot contain the empty word");
      if (!alphabet.empty()) {
        for (char c : w) {
          if (alphabet.find(c) == std::string::npos) {
            parse_error(t.line, std::string("symbol '") + c + "' not in declared alphabet");
          }
        }
      }
    }
    return CodeSpec::from_words(alphabet, std::move(args));
  }
  if (kind == "dfa") {
    if (args.size() != 1) parse_error(t.line, "expected 'dfa <path>'");
    Dfa d = read_dfa_file(resolve(base, args[0]));
    if (!alphabet.empty()) d = with_alphabet(d, alphabet);
    return CodeSpec::from_dfa(d);
  }
  if (kind == "regex") {
    std::string pattern;
    for (const auto& a : args) pattern += a;
    if (pattern.empty()) parse_error(t.line, "empty pattern");
    const std::string a = merge_alphabets(alphabet, symbols_of_pattern(pattern));
    return CodeSpec::from_dfa(from_regex(pattern, a));
  }
  parse_error(t.line, "expected 'words', 'dfa' or 'regex', got '" + kind + "'");
}

std::string alphabet_line(const Tokens& t) {
  std::string a;
  for (std::size_t i = 1; i < t.items.size(); ++i) {
    if (t.items[i].size() != 1) parse_error(t.line, "symbols must be single characters");
    a += t.items[i];
  }
  return normalize_alphabet(a);
}

}  // namespace

CodeSpec parse_code(std::string_view text, const std::filesystem::path& base) {
  const auto lines = tokenize(text);
  if (lines.empty() || lines[0].items != std::vector<std::string>{"code"}) {
    parse_error(lines.empty() ? 1 : lines[0].line, "expected 'code'");
  }
  std::string alphabet;
  std::size_t i = 1;
  if (i < lines.size() && lines[i].items[0] == "alphabet") alphabet = alphabet_line(lines[i++]);
  if (i >= lines.size()) parse_error(lines.back().line + 1, "missing code body");
  CodeSpec spec = code_body(lines[i], 0, alphabet, base);
  if (i + 1 != lines.size()) parse_error(lines[i + 1].line, "trailing content");
  return spec;
}

CodeSpec read_code_file(const std::filesystem::path& path) {
  return parse_code(read_text_file(path), path.parent_path());
}

ControlledStarSpec parse_cstar(std::string_view text, const std::filesystem::path& base) {
  const auto lines = tokenize(text);
  if (lines.empty() || lines[0].items != std::vector<std::string>{"cstar"}) {
    parse_error(lines.empty() ? 1 : lines[0].line, "expected 'cstar'");
  }
  std::optional<FiniteMonoid> group;
  std::string alphabet;
  std::size_t delay = kDefaultDelayBound;
  std::vector<std::pair<Elem, CodeSpec>> parts;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Tokens& t = lines[i];
    const std::string& key = t.items[0];
    if (key == "group") {
      if (t.items.size() != 2) parse_error(t.line, "expected 'group <path>'");
      group = read_monoid_file(resolve(base, t.items[1]));
    } else if (key == "alphabet") {
      if (!parts.empty()) parse_error(t.line, "alphabet must precede the parts");
      alphabet = alphabet_line(t);
    } else if (key == "delay") {
      if (t.items.size() != 2) parse_error(t.line, "expected 'delay <n>'");
      delay = std::stoul(t.items[1]);
    } else if (key == "part") {
      if (t.items.size() < 3) parse_error(t.line, "expected 'part <g> words|dfa|regex ...'");
      std::size_t label = 0;
      try {
        label = std::stoul(t.items[1]);
      } catch (const std::exception&) {
        parse_error(t.line, "part label must be an element index");
      }
      parts.emplace_back(static_cast<Elem>(label), code_body(t, 2, alphabet, base));
    } else {
      parse_error(t.line, "unknown directive '" + key + "'");
    }
  }
  if (!group) parse_error(lines.back().line + 1, "missing 'group'");
  return ControlledStarSpec{std::move(*group), std::move(parts), delay};
}

ControlledStarSpec read_cstar_file(const std::filesystem::path& path) {
  return parse_cstar(read_text_file(path), path.parent_path());
}

}  // namespace monoidw
