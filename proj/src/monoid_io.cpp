#include "monoidw/monoid_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace monoidw {
namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> significant_lines(std::string_view text) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::istringstream words(raw);
    std::vector<std::string> tokens;
    for (std::string w; words >> w;) tokens.push_back(w);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    out.push_back(Line{number, std::move(tokens)});
  }
  return out;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& message) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + message, {line});
}

std::size_t parse_index(const Line& line, const std::string& token) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    parse_error(line.number, "expected a non-negative integer, got '" + token + "'");
  }
  return value;
}

}  // namespace

FiniteMonoid parse_monoid(std::string_view text) {
  const auto lines = significant_lines(text);
  std::size_t cursor = 0;
  auto next = [&](const char* what) -> const Line& {
    if (cursor >= lines.size()) {
      const std::size_t last = lines.empty() ? 1 : lines.back().number + 1;
      parse_error(last, std::string("unexpected end of input, expected ") + what);
    }
    return lines[cursor++];
  };

  const Line& header = next("'monoid <n>'");
  if (header.tokens.size() != 2 || header.tokens[0] != "monoid") {
    parse_error(header.number, "expected 'monoid <n>'");
  }
  const std::size_t n = parse_index(header, header.tokens[1]);
  if (n == 0) parse_error(header.number, "monoid size must be positive");

  const Line& id_line = next("'identity <i>'");
  if (id_line.tokens.size() != 2 || id_line.tokens[0] != "identity") {
    parse_error(id_line.number, "expected 'identity <i>'");
  }
  const std::size_t identity = parse_index(id_line, id_line.tokens[1]);
  if (identity >= n) parse_error(id_line.number, "identity out of range");

  const Line& table_line = next("'table'");
  if (table_line.tokens.size() != 1 || table_line.tokens[0] != "table") {
    parse_error(table_line.number, "expected 'table'");
  }

  std::vector<Elem> table;
  table.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const Line& row = next("a table row");
    if (row.tokens.size() != n) {
      parse_error(row.number, "row " + std::to_string(i) + " has " +
                                  std::to_string(row.tokens.size()) + " entries, expected " +
                                  std::to_string(n));
    }
    for (const auto& token : row.tokens) {
      const std::size_t v = parse_index(row, token);
      if (v >= n) parse_error(row.number, "entry " + token + " out of range");
      table.push_back(static_cast<Elem>(v));
    }
  }
  if (cursor != lines.size()) parse_error(lines[cursor].number, "trailing content after table");
  return FiniteMonoid::validate(n, std::move(table), static_cast<Elem>(identity));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

FiniteMonoid read_monoid_file(const std::filesystem::path& path) {
  return parse_monoid(read_text_file(path));
}

std::string format_monoid(const FiniteMonoid& m) {
  std::ostringstream out;
  out << "monoid " << m.size() << "\nidentity " << m.identity() << "\ntable\n";
  for (Elem i = 0; i < m.size(); ++i) {
    const auto row = m.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
    out << '\n';
  }
  return out.str();
}

}  // namespace monoidw
