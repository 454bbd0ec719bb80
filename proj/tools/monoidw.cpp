// Batch front end. Every verb ends its report with a `RESULT: ...` line.
// Exit status: 0 success, 1 negative decision, 2 error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "monoidw/codes.hpp"
#include "monoidw/dfa.hpp"
#include "monoidw/expr.hpp"
#include "monoidw/green.hpp"
#include "monoidw/local_divisor.hpp"
#include "monoidw/monoid.hpp"
#include "monoidw/monoid_io.hpp"
#include "monoidw/recognition.hpp"
#include "monoidw/rees.hpp"
#include "monoidw/rewriting.hpp"

using namespace monoidw;

namespace {

std::string show_word(std::string_view w) { return w.empty() ? std::string("eps") : std::string(w); }
const char* yes_no(bool b) { return b ? "true" : "false"; }

int decision(bool value) {
  std::cout << "RESULT: " << yes_no(value) << '\n';
  return value ? 0 : 1;
}

template <typename Range>
std::string join(const Range& r, const char* sep = " ") {
  std::ostringstream out;
  bool first = true;
  for (const auto& x : r) {
    out << (first ? "" : sep) << x;
    first = false;
  }
  return out.str();
}

void print_table(const FiniteMonoid& m) { std::cout << format_monoid(m); }

std::vector<Elem> parse_index_list(const std::string& text) {
  std::vector<Elem> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    std::istringstream words(token);
    for (std::string w; words >> w;) {
      try {
        std::size_t used = 0;
        const unsigned long v = std::stoul(w, &used);
        if (used != w.size()) throw std::invalid_argument(w);
        out.push_back(static_cast<Elem>(v));
      } catch (const std::exception&) {
        throw Error(ErrorKind::Parse, "'" + w + "' is not an element index");
      }
    }
  }
  return out;
}

int cmd_validate(const std::string& path) {
  std::optional<FiniteMonoid> m;
  try {
    m = read_monoid_file(path);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    std::cout << "invalid: " << e.what() << '\n';
    std::cout << "RESULT: invalid " << to_string(e.kind()) << '\n';
    return 1;
  }
  const auto units = group_of_units(*m);
  std::cout << "size " << m->size() << ", identity " << m->identity() << '\n'
            << "idempotents: " << join(idempotents(*m)) << '\n'
            << "units: " << join(units.elements) << '\n'
            << "commutative: " << yes_no(is_commutative(*m)) << '\n'
            << "aperiodic: " << yes_no(is_aperiodic(*m)) << '\n'
            << "group: " << yes_no(is_group(*m)) << '\n';
  std::cout << "RESULT: valid size=" << m->size() << '\n';
  return 0;
}

int cmd_green(const std::string& path) {
  const auto m = read_monoid_file(path);
  const auto g = green_classes(m);
  std::cout << render_eggbox(m, g);
  for (const auto& s : maximal_subgroups(m)) {
    std::cout << "H(" << s.idempotent << ") = {" << join(s.elements, ", ") << "}"
              << (is_commutative(s.group) ? " abelian" : " non-abelian") << '\n';
  }
  std::cout << "RESULT: L=" << g.class_count(Relation::L) << " R=" << g.class_count(Relation::R)
            << " J=" << g.class_count(Relation::J) << " H=" << g.class_count(Relation::H)
            << " D=" << g.class_count(Relation::D) << '\n';
  return 0;
}

int cmd_localdiv(const std::string& path, Elem c) {
  const auto m = read_monoid_file(path);
  if (c >= m.size()) throw Error(ErrorKind::IndexOutOfRange, "c out of range", {c});
  const LocalDivisor ld(m, c);
  const auto lambda = lambda_c(ld);
  std::cout << "carrier: " << join(ld.carrier()) << '\n'
            << "positions follow the carrier order; identity is c\n";
  print_table(ld.monoid());
  std::cout << "lambda_c: " << lambda.carrier.size() << " preimages, surjective\n";
  if (is_unit(m, c)) unit_isomorphism(m, c);
  std::cout << "RESULT: size=" << ld.monoid().size() << " unit=" << yes_no(is_unit(m, c)) << '\n';
  return 0;
}

int cmd_rees(const std::string& n_path, const std::string& l_path, const std::string& rho_text,
             const std::string& out_path) {
  const auto n = read_monoid_file(n_path);
  const auto l = read_monoid_file(l_path);
  const ReesExtension r(n, l, parse_index_list(rho_text));
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw Error(ErrorKind::Parse, "cannot write '" + out_path + "'");
    out << format_monoid(r.monoid());
  } else {
    print_table(r.monoid());
  }
  std::cout << "RESULT: size=" << r.monoid().size() << " aperiodic=" << yes_no(is_aperiodic(r.monoid()))
            << '\n';
  return 0;
}

int cmd_rees_tree(const std::string& path, const std::string& strategy_name, bool verify,
                  std::size_t guard) {
  const auto m = read_monoid_file(path);
  const auto strategy = parse_tree_strategy(strategy_name);
  if (!strategy) throw Error(ErrorKind::Parse, "unknown strategy '" + strategy_name + "'");
  const auto tree = decomposition_tree(m, *strategy);
  std::optional<TreeReport> report;
  if (verify) report = verify_decomposition_tree(m, tree, guard);
  std::cout << render_tree(tree, report ? &*report : nullptr);
  std::cout << "RESULT: nodes=" << tree.node_count() << " leaves=" << tree.leaf_count()
            << " depth=" << tree.depth();
  if (!report) {
    std::cout << '\n';
    return 0;
  }
  const char* verdict = !report->ok() ? "fail" : (report->fully_verified() ? "pass" : "partial");
  std::cout << " verified=" << verdict << '\n';
  return report->ok() ? 0 : 1;
}

int cmd_rw_check(const std::string& path, const std::string& order_name, const std::string& gamma) {
  const auto s = read_system_file(path);
  const auto kind = parse_order_kind(order_name);
  if (!kind) throw Error(ErrorKind::Parse, "unknown order '" + order_name + "'");
  ReductionOrder order{*kind, {}};
  if (*kind == OrderKind::Weight) {
    if (gamma.empty()) throw Error(ErrorKind::Parse, "--gamma is required for the weight order");
    for (Elem w : parse_index_list(gamma)) order.gamma.weights.push_back(w);
  }
  const auto check = check_reducing(s, order);
  std::cout << "alphabet: " << s.alphabet() << ", " << s.rules().size() << " rules\n";
  if (!check.ok) {
    const Rule& r = s.rules()[*check.violating_rule];
    std::cout << "rule " << *check.violating_rule + 1 << " (" << show_word(r.lhs) << " -> "
              << show_word(r.rhs) << ") is not " << order_name << "-reducing\n";
  }
  return decision(check.ok);
}

int cmd_rw_nf(const std::string& path, const std::string& word) {
  const auto s = read_system_file(path);
  const std::string w = word == "eps" ? std::string() : word;
  std::cout << "RESULT: " << show_word(normal_form(s, w)) << '\n';
  return 0;
}

int cmd_rw_confluent(const std::string& path) {
  const auto s = read_system_file(path);
  const auto result = is_confluent(s);
  std::cout << result.pairs_checked << " critical pairs checked\n";
  if (!result.confluent) {
    const auto& p = *result.witness;
    std::cout << "overlap " << show_word(p.word) << ": " << show_word(p.left) << " ->* "
              << show_word(result.left_normal_form) << ", " << show_word(p.right) << " ->* "
              << show_word(result.right_normal_form) << '\n';
  }
  return decision(result.confluent);
}

int cmd_rw_quotient(const std::string& path) {
  const auto s = read_system_file(path);
  const auto q = quotient_monoid(s);
  std::cout << "elements:";
  for (std::size_t i = 0; i < q.elements.size(); ++i) std::cout << ' ' << i << '=' << show_word(q.elements[i]);
  std::cout << '\n';
  print_table(q.monoid);
  std::cout << "RESULT: size=" << q.monoid.size() << '\n';
  return 0;
}

int cmd_rw_recognizes(const std::string& system_path, const std::string& dfa_path) {
  return decision(recognizes(read_system_file(system_path), read_dfa_file(dfa_path)));
}

int cmd_code_prefixfree(const std::string& path) {
  const auto check = is_prefix_free(read_code_file(path));
  if (check.witness) {
    std::cout << "witness: " << check.witness->first << " is a prefix of " << check.witness->second << '\n';
  }
  return decision(check.prefix_free);
}

void print_delay_witness(std::size_t d, const DelayWitness& w) {
  std::cout << "d=" << d << " fails: u=" << show_word(w.u) << " v=" << show_word(w.v)
            << " w=" << show_word(w.w) << '\n';
}

int cmd_code_delay(const std::string& path, std::optional<std::size_t> d, std::size_t max) {
  const auto k = read_code_file(path);
  if (d) {
    const auto check = has_sync_delay(k, *d);
    if (check.witness) print_delay_witness(*d, *check.witness);
    return decision(check.holds);
  }
  for (std::size_t i = 1; i <= max; ++i) {
    const auto check = has_sync_delay(k, i);
    if (check.holds) {
      std::cout << "RESULT: " << i << '\n';
      return 0;
    }
    print_delay_witness(i, *check.witness);
  }
  std::cout << "RESULT: none (up to " << max << ")\n";
  return 1;
}

int cmd_code_cstar(const std::string& path, const std::string& out_path) {
  const auto star = controlled_star(read_cstar_file(path));
  if (out_path.empty()) {
    std::cout << format_dfa(star.language);
  } else {
    std::ofstream out(out_path);
    if (!out) throw Error(ErrorKind::Parse, "cannot write '" + out_path + "'");
    out << format_dfa(star.language);
  }
  std::cout << "RESULT: states=" << star.language.state_count() << " delay=" << star.delay << '\n';
  return 0;
}

int cmd_lang_synmon(const std::string& path) {
  const auto data = syntactic_monoid(read_dfa_file(path));
  print_table(data.monoid);
  for (std::size_t a = 0; a < data.alphabet.size(); ++a) {
    std::cout << data.alphabet[a] << " -> " << data.letter_images[a] << '\n';
  }
  std::cout << "accepting: " << join(data.accepting) << '\n';
  std::cout << "RESULT: size=" << data.monoid.size() << " group=" << yes_no(is_group(data.monoid))
            << " aperiodic=" << yes_no(is_aperiodic(data.monoid)) << '\n';
  return 0;
}

int cmd_lang_aperiodic(const std::string& path) {
  const auto data = syntactic_monoid(read_dfa_file(path));
  std::cout << "syntactic monoid size " << data.monoid.size() << '\n';
  return decision(is_aperiodic(data.monoid));
}

int cmd_sd_eval(const std::string& input, const std::string& alphabet, const std::string& hbar) {
  Expr e = [&] {
    if (!input.empty() && input.front() == '(') return parse_expression(input);
    const std::filesystem::path p(input);
    return parse_expression(read_text_file(p), p.parent_path());
  }();
  std::cout << format_expression(e) << '\n';
  if (!hbar.empty()) {
    const auto h = parse_variety(hbar);
    if (!h) throw Error(ErrorKind::Parse, "unknown variety '" + hbar + "'");
    return decision(verify_sd_in_hbar(e, *h, alphabet));
  }
  const Dfa d = evaluate(e, alphabet);
  std::cout << format_dfa(d);
  std::cout << "RESULT: states=" << d.state_count() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite monoids, local divisors, Rees extensions, rewriting and codes"};
  app.require_subcommand(1);
  int status = 0;

  std::string path, path2, rho, out, strategy = "first-nonunit", order, gamma, word, alphabet, hbar;
  Elem c = 0;
  bool verify = false;
  std::optional<std::size_t> delay;
  std::size_t max_delay = kDefaultDelayBound;
  std::size_t guard = division_guard_from_env();

  auto* validate = app.add_subcommand("validate", "Check the monoid axioms");
  validate->add_option("monoid", path)->required();
  validate->callback([&] { status = cmd_validate(path); });

  auto* green = app.add_subcommand("green", "Green's relations and eggbox diagram");
  green->add_option("monoid", path)->required();
  green->callback([&] { status = cmd_green(path); });

  auto* localdiv = app.add_subcommand("localdiv", "Local divisor at c");
  localdiv->add_option("monoid", path)->required();
  localdiv->add_option("--c", c, "element index")->required();
  localdiv->callback([&] { status = cmd_localdiv(path, c); });

  auto* rees = app.add_subcommand("rees", "Rees extension of N by L");
  rees->add_option("N", path)->required();
  rees->add_option("L", path2)->required();
  rees->add_option("--rho", rho, "images of N's elements in L, comma separated")->required();
  rees->add_option("--out", out, "write the extension to this file");
  rees->callback([&] { status = cmd_rees(path, path2, rho, out); });

  auto* tree = app.add_subcommand("rees-tree", "Rees decomposition tree");
  tree->add_option("monoid", path)->required();
  tree->add_option("--strategy", strategy, "first-nonunit or max-shrink");
  tree->add_flag("--verify", verify, "check the tree conditions");
  tree->add_option("--guard", guard, "size bound for divisor searches");
  tree->callback([&] { status = cmd_rees_tree(path, strategy, verify, guard); });

  auto* rw = app.add_subcommand("rw", "String rewriting systems");
  rw->require_subcommand(1);
  auto* rw_check = rw->add_subcommand("check", "Check a reduction order");
  rw_check->add_option("system", path)->required();
  rw_check->add_option("--order", order, "length, weight, parikh or subword")->required();
  rw_check->add_option("--gamma", gamma, "weights per symbol in alphabet order");
  rw_check->callback([&] { status = cmd_rw_check(path, order, gamma); });
  auto* rw_nf = rw->add_subcommand("nf", "Normal form of a word");
  rw_nf->add_option("system", path)->required();
  rw_nf->add_option("word", word)->required();
  rw_nf->callback([&] { status = cmd_rw_nf(path, word); });
  auto* rw_conf = rw->add_subcommand("confluent", "Critical-pair confluence test");
  rw_conf->add_option("system", path)->required();
  rw_conf->callback([&] { status = cmd_rw_confluent(path); });
  auto* rw_quot = rw->add_subcommand("quotient", "Quotient monoid A*/S");
  rw_quot->add_option("system", path)->required();
  rw_quot->callback([&] { status = cmd_rw_quotient(path); });
  auto* rw_rec = rw->add_subcommand("recognizes", "Is the language a union of classes");
  rw_rec->add_option("system", path)->required();
  rw_rec->add_option("dfa", path2)->required();
  rw_rec->callback([&] { status = cmd_rw_recognizes(path, path2); });

  auto* code = app.add_subcommand("code", "Prefix codes");
  code->require_subcommand(1);
  auto* code_pf = code->add_subcommand("prefixfree", "Prefix-freeness");
  code_pf->add_option("spec", path)->required();
  code_pf->callback([&] { status = cmd_code_prefixfree(path); });
  auto* code_delay = code->add_subcommand("delay", "Synchronization delay");
  code_delay->add_option("spec", path)->required();
  auto* d_opt = code_delay->add_option("--d", delay, "decide this delay");
  code_delay->add_option("--max", max_delay, "search bound for the least delay")->excludes(d_opt);
  code_delay->callback([&] { status = cmd_code_delay(path, delay, max_delay); });
  auto* code_cstar = code->add_subcommand("cstar", "Controlled star automaton");
  code_cstar->add_option("spec", path)->required();
  code_cstar->add_option("--out", out, "write the automaton to this file");
  code_cstar->callback([&] { status = cmd_code_cstar(path, out); });

  auto* lang = app.add_subcommand("lang", "Regular languages");
  lang->require_subcommand(1);
  auto* synmon = lang->add_subcommand("synmon", "Syntactic monoid");
  synmon->add_option("dfa", path)->required();
  synmon->callback([&] { status = cmd_lang_synmon(path); });
  auto* aperiodic = lang->add_subcommand("aperiodic", "Aperiodic syntactic monoid");
  aperiodic->add_option("dfa", path)->required();
  aperiodic->callback([&] { status = cmd_lang_aperiodic(path); });

  auto* sd = app.add_subcommand("sd", "SD and SF expressions");
  sd->require_subcommand(1);
  auto* sd_eval = sd->add_subcommand("eval", "Evaluate an expression (file or literal)");
  sd_eval->add_option("expr", path)->required();
  sd_eval->add_option("--alphabet", alphabet, "symbols beyond those in the expression");
  sd_eval->add_option("--verify-hbar", hbar, "trivial, abelian or all");
  sd_eval->callback([&] { status = cmd_sd_eval(path, alphabet, hbar); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    std::cout << "RESULT: error " << to_string(e.kind()) << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    std::cout << "RESULT: error\n";
    return 2;
  }
  return status;
}
