#include <charconv>
#include <sstream>

#include "monoidw/dfa.hpp"
#include "monoidw/monoid_io.hpp"

namespace monoidw {
namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& message) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + message, {line});
}

std::size_t parse_number(std::size_t line, const std::string& token) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    parse_error(line, "expected a non-negative integer, got '" + token + "'");
  }
  return value;
}

}  // namespace

Dfa parse_dfa(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t number = 0;
  bool header = false;
  std::optional<std::string> alphabet;
  std::optional<std::size_t> states;
  std::optional<std::size_t> initial;
  std::vector<std::size_t> finals;
  struct Trans {
    std::size_t line, from;
    char symbol;
    std::size_t to;
  };
  std::vector<Trans> transitions;

  while (std::getline(in, raw)) {
    ++number;
    std::istringstream words(raw);
    std::vector<std::string> tokens;
    for (std::string w; words >> w;) tokens.push_back(w);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    const std::string& key = tokens.front();
    if (!header) {
      if (tokens.size() != 1 || key != "dfa") parse_error(number, "expected 'dfa'");
      header = true;
    } else if (key == "alphabet") {
      if (alphabet) parse_error(number, "duplicate alphabet");
      std::string a;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (tokens[i].size() != 1) parse_error(number, "symbols must be single characters");
        a += tokens[i];
      }
      if (normalize_alphabet(a).size() != a.size()) parse_error(number, "repeated symbol");
      alphabet = a;
    } else if (key == "states") {
      if (tokens.size() != 2) parse_error(number, "expected 'states <n>'");
      states = parse_number(number, tokens[1]);
    } else if (key == "initial") {
      if (tokens.size() != 2) parse_error(number, "expected 'initial <q>'");
      initial = parse_number(number, tokens[1]);
    } else if (key == "final") {
      for (std::size_t i = 1; i < tokens.size(); ++i) finals.push_back(parse_number(number, tokens[i]));
    } else if (key == "trans") {
      if (tokens.size() != 4 || tokens[2].size() != 1) {
        parse_error(number, "expected 'trans <q> <symbol> <q>'");
      }
      transitions.push_back(
          {number, parse_number(number, tokens[1]), tokens[2][0], parse_number(number, tokens[3])});
    } else {
      parse_error(number, "unknown directive '" + key + "'");
    }
  }
  if (!header) parse_error(number + 1, "expected 'dfa'");
  if (!alphabet) parse_error(number + 1, "missing alphabet");
  if (!states || *states == 0) parse_error(number + 1, "missing or zero 'states'");
  if (!initial) parse_error(number + 1, "missing 'initial'");

  const std::size_t n = *states;
  const std::size_t k = alphabet->size();
  constexpr auto kUnset = std::numeric_limits<Dfa::State>::max();
  std::vector<Dfa::State> delta(n * k, kUnset);
  for (const auto& t : transitions) {
    const auto s = alphabet->find(t.symbol);
    if (s == std::string::npos) parse_error(t.line, std::string("symbol '") + t.symbol + "' not in alphabet");
    if (t.from >= n || t.to >= n) parse_error(t.line, "state out of range");
    auto& slot = delta[t.from * k + s];
    if (slot != kUnset) parse_error(t.line, "duplicate transition");
    slot = static_cast<Dfa::State>(t.to);
  }
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t s = 0; s < k; ++s) {
      if (delta[q * k + s] == kUnset) {
        throw Error(ErrorKind::InvalidDfa, "missing transition from state " + std::to_string(q) +
                                               " on '" + (*alphabet)[s] + "'");
      }
    }
  }
  std::vector<bool> final_flags(n, false);
  for (std::size_t q : finals) {
    if (q >= n) throw Error(ErrorKind::InvalidDfa, "final state out of range");
    final_flags[q] = true;
  }
  if (*initial >= n) throw Error(ErrorKind::InvalidDfa, "initial state out of range");
  return Dfa(*alphabet, n, static_cast<Dfa::State>(*initial), std::move(final_flags),
             std::move(delta));
}

Dfa read_dfa_file(const std::filesystem::path& path) { return parse_dfa(read_text_file(path)); }

std::string format_dfa(const Dfa& d) {
  std::ostringstream out;
  out << "dfa\nalphabet";
  for (char c : d.alphabet()) out << ' ' << c;
  out << "\nstates " << d.state_count() << "\ninitial " << d.initial() << "\nfinal";
  for (Dfa::State q = 0; q < d.state_count(); ++q) {
    if (d.is_final(q)) out << ' ' << q;
  }
  out << '\n';
  for (Dfa::State q = 0; q < d.state_count(); ++q) {
    for (std::size_t s = 0; s < d.alphabet().size(); ++s) {
      out << "trans " << q << ' ' << d.alphabet()[s] << ' ' << d.next(q, s) << '\n';
    }
  }
  return out.str();
}

}  // namespace monoidw
