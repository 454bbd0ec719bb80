#include "monoidw/expr.hpp"

#include <cctype>

#include "monoidw/green.hpp"
#include "monoidw/recognition.hpp"

namespace monoidw {

Expr Expr::finite(std::vector<std::string> words) {
  Expr e;
  e.kind = Kind::Finite;
  e.words = std::move(words);
  return e;
}

Expr Expr::union_of(std::vector<Expr> children) {
  Expr e;
  e.kind = Kind::Union;
  e.children = std::move(children);
  return e;
}

Expr Expr::concat(std::vector<Expr> children) {
  Expr e;
  e.kind = Kind::Concat;
  e.children = std::move(children);
  return e;
}

Expr Expr::complement(Expr child) {
  Expr e;
  e.kind = Kind::Complement;
  e.children.push_back(std::move(child));
  return e;
}

Expr Expr::controlled_star(ControlledStarSpec spec, std::string label) {
  Expr e;
  e.kind = Kind::CStar;
  e.cstar = std::make_shared<const ControlledStarSpec>(std::move(spec));
  e.label = std::move(label);
  return e;
}

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, std::filesystem::path base) : text_(text), base_(std::move(base)) {}

  Expr parse() {
    Expr e = node();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw Error(ErrorKind::InvalidExpression,
                "column " + std::to_string(pos_ + 1) + ": " + message, {pos_});
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string atom() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')') {
      ++pos_;
    }
    if (start == pos_) fail("expected a symbol");
    return std::string(text_.substr(start, pos_ - start));
  }

  bool at_close() {
    skip_space();
    if (pos_ >= text_.size()) fail("missing ')'");
    return text_[pos_] == ')';
  }

  Expr node() {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '(') fail("expected '('");
    ++pos_;
    const std::string op = atom();
    Expr e;
    if (op == "finite") {
      std::vector<std::string> words;
      while (!at_close()) {
        std::string w = atom();
        words.push_back(w == "eps" ? std::string() : w);
      }
      e = Expr::finite(std::move(words));
    } else if (op == "union" || op == "concat") {
      std::vector<Expr> children;
      while (!at_close()) children.push_back(node());
      if (children.empty()) fail("'" + op + "' needs at least one operand");
      e = op == "union" ? Expr::union_of(std::move(children)) : Expr::concat(std::move(children));
    } else if (op == "complement") {
      e = Expr::complement(node());
    } else if (op == "cstar") {
      const std::string path = atom();
      const std::filesystem::path p(path);
      e = Expr::controlled_star(read_cstar_file(p.is_absolute() || base_.empty() ? p : base_ / p), path);
    } else {
      fail("unknown operator '" + op + "'");
    }
    if (!at_close()) fail("expected ')'");
    ++pos_;
    return e;
  }

  std::string_view text_;
  std::filesystem::path base_;
  std::size_t pos_ = 0;
};

bool uses(const Expr& e, Expr::Kind kind) {
  if (e.kind == kind) return true;
  for (const auto& c : e.children) {
    if (uses(c, kind)) return true;
  }
  return false;
}

Dfa eval_node(const Expr& e, const std::string& alphabet) {
  switch (e.kind) {
    case Expr::Kind::Finite:
      return from_finite_set(alphabet, e.words);
    case Expr::Kind::Union: {
      Dfa acc = empty_language(alphabet);
      for (const auto& c : e.children) acc = union_of(acc, eval_node(c, alphabet));
      return acc;
    }
    case Expr::Kind::Concat: {
      Dfa acc = from_word(alphabet, "");
      for (const auto& c : e.children) acc = concat(acc, eval_node(c, alphabet));
      return acc;
    }
    case Expr::Kind::Complement:
      return complement(eval_node(e.children.at(0), alphabet));
    case Expr::Kind::CStar:
      return with_alphabet(controlled_star(*e.cstar).language, alphabet);
  }
  throw Error(ErrorKind::InvalidExpression, "unknown node");
}

void collect_groups(const Expr& e, std::vector<const FiniteMonoid*>& out) {
  if (e.kind == Expr::Kind::CStar) out.push_back(&e.cstar->group);
  for (const auto& c : e.children) collect_groups(c, out);
}

}  // namespace

Expr parse_expression(std::string_view text, const std::filesystem::path& base) {
  return ExprParser(text, base).parse();
}

std::string format_expression(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Finite: {
      std::string out = "(finite";
      for (const auto& w : e.words) out += " " + (w.empty() ? std::string("eps") : w);
      return out + ")";
    }
    case Expr::Kind::Union:
    case Expr::Kind::Concat: {
      std::string out = e.kind == Expr::Kind::Union ? "(union" : "(concat";
      for (const auto& c : e.children) out += " " + format_expression(c);
      return out + ")";
    }
    case Expr::Kind::Complement:
      return "(complement " + format_expression(e.children.at(0)) + ")";
    case Expr::Kind::CStar:
      return "(cstar " + e.label + ")";
  }
  return "?";
}

std::string expression_alphabet(const Expr& e) {
  std::string out;
  for (const auto& w : e.words) out += w;
  if (e.cstar) {
    for (const auto& part : e.cstar->parts) out += part.second.alphabet();
  }
  for (const auto& c : e.children) out += expression_alphabet(c);
  return normalize_alphabet(out);
}

bool is_sd_expression(const Expr& e) { return !uses(e, Expr::Kind::Complement); }
bool is_sf_expression(const Expr& e) { return !uses(e, Expr::Kind::CStar); }

Dfa evaluate(const Expr& e, std::string_view alphabet) {
  return minimize(eval_node(e, merge_alphabets(alphabet, expression_alphabet(e))));
}

Dfa eval_sd(const Expr& e, std::string_view alphabet) {
  if (!is_sd_expression(e)) throw Error(ErrorKind::InvalidExpression, "complement is not an SD operation");
  return evaluate(e, alphabet);
}

Dfa eval_sf(const Expr& e, std::string_view alphabet) {
  if (!is_sf_expression(e)) throw Error(ErrorKind::InvalidExpression, "controlled star is not an SF operation");
  return evaluate(e, alphabet);
}

bool verify_sd_in_hbar(const Expr& e, Variety h, std::string_view alphabet) {
  std::vector<const FiniteMonoid*> groups;
  collect_groups(e, groups);
  for (const auto* g : groups) {
    if (!satisfies(h, *g)) {
      throw Error(ErrorKind::InvalidExpression,
                  "a controlled star uses a group outside " + std::string(to_string(h)));
    }
  }
  const Dfa d = eval_sd(e, alphabet);
  try {
    return subgroups_satisfy(syntactic_monoid(d).monoid, h);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::SizeGuardExceeded) throw;
  }
  return transition_subgroups_satisfy(d, h);
}

}  // namespace monoidw
