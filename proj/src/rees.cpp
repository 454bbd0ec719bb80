#include "monoidw/rees.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "monoidw/green.hpp"

namespace monoidw {
namespace {

FiniteMonoid build_rees(const FiniteMonoid& base, const FiniteMonoid& middle,
                        const std::vector<Elem>& rho, std::size_t cap) {
  const std::size_t nb = base.size();
  const std::size_t nl = middle.size();
  if (rho.size() != nb) {
    throw Error(ErrorKind::IndexOutOfRange,
                "rho has " + std::to_string(rho.size()) + " entries, expected " + std::to_string(nb));
  }
  for (Elem x : rho) {
    if (x >= nl) throw Error(ErrorKind::IndexOutOfRange, "rho value out of range", {x});
  }
  const std::size_t size = nb + nb * nb * nl;
  if (size > cap) {
    throw Error(ErrorKind::SizeGuardExceeded, "Rees extension of size " + std::to_string(size) +
                                                  " exceeds cap " + std::to_string(cap));
  }
  auto encode = [&](std::size_t n1, std::size_t m, std::size_t n2) {
    return static_cast<Elem>(nb + (n1 * nl + m) * nb + n2);
  };
  struct Triple {
    Elem n1, m, n2;
  };
  auto decode = [&](std::size_t x) {
    const std::size_t t = x - nb;
    return Triple{static_cast<Elem>(t / (nl * nb)), static_cast<Elem>((t / nb) % nl),
                  static_cast<Elem>(t % nb)};
  };

  std::vector<Elem> table(size * size);
  for (std::size_t x = 0; x < size; ++x) {
    for (std::size_t y = 0; y < size; ++y) {
      Elem product;
      if (x < nb && y < nb) {
        product = base(static_cast<Elem>(x), static_cast<Elem>(y));
      } else if (x < nb) {
        const Triple t = decode(y);
        product = encode(base(static_cast<Elem>(x), t.n1), t.m, t.n2);
      } else if (y < nb) {
        const Triple t = decode(x);
        product = encode(t.n1, t.m, base(t.n2, static_cast<Elem>(y)));
      } else {
        const Triple a = decode(x);
        const Triple b = decode(y);
        const Elem link = rho[base(a.n2, b.n1)];
        product = encode(a.n1, middle(middle(a.m, link), b.m), b.n2);
      }
      table[x * size + y] = product;
    }
  }
  return FiniteMonoid::validate(size, std::move(table), base.identity());
}

}  // namespace

ReesExtension::ReesExtension(FiniteMonoid base, FiniteMonoid middle, std::vector<Elem> rho,
                             std::size_t cap)
    : base_(std::move(base)),
      middle_(std::move(middle)),
      rho_(std::move(rho)),
      result_(build_rees(base_, middle_, rho_, cap)) {}

Elem ReesExtension::triple(Elem n1, Elem m, Elem n2) const {
  const std::size_t nb = base_.size();
  const std::size_t nl = middle_.size();
  if (n1 >= nb || n2 >= nb || m >= nl) {
    throw Error(ErrorKind::IndexOutOfRange, "triple component out of range", {n1, m, n2});
  }
  return static_cast<Elem>(nb + (std::size_t{n1} * nl + m) * nb + n2);
}

ReesExtension::Parts ReesExtension::decode(Elem x) const {
  const std::size_t nb = base_.size();
  const std::size_t nl = middle_.size();
  if (x >= result_.size()) throw Error(ErrorKind::IndexOutOfRange, "element out of range", {x});
  if (x < nb) return Parts{true, x, 0, 0, 0};
  const std::size_t t = x - nb;
  return Parts{false, 0, static_cast<Elem>(t / (nl * nb)), static_cast<Elem>((t / nb) % nl),
               static_cast<Elem>(t % nb)};
}

MonoidMorphism LocalReesExtension::evaluation() const {
  const FiniteMonoid& parent = divisor.parent();
  const FiniteMonoid& ext = extension.monoid();
  MonoidMorphism phi{ext, parent, {}, {}, true};
  for (Elem x = 0; x < ext.size(); ++x) {
    const auto parts = extension.decode(x);
    phi.carrier.push_back(x);
    if (parts.in_base) {
      phi.images.push_back(n_carrier[parts.n]);
    } else {
      const Elem middle = divisor.element(parts.m);
      phi.images.push_back(parent(parent(n_carrier[parts.n1], middle), n_carrier[parts.n2]));
    }
  }
  return phi;
}

LocalReesExtension local_rees_extension(const FiniteMonoid& m, std::span<const Elem> n_gens,
                                        Elem c, std::size_t cap) {
  if (c >= m.size()) throw Error(ErrorKind::IndexOutOfRange, "c out of range", {c});
  if (is_unit(m, c)) throw Error(ErrorKind::CIsUnit, "c must not be a unit", {c});
  std::vector<Elem> n_carrier = submonoid_generated(m, n_gens);
  if (n_carrier.size() == m.size()) {
    throw Error(ErrorKind::NDoesNotShrink, "N is the whole monoid");
  }
  std::vector<Elem> with_c(n_gens.begin(), n_gens.end());
  with_c.push_back(c);
  if (submonoid_generated(m, with_c).size() != m.size()) {
    throw Error(ErrorKind::DoesNotGenerate, "N and c do not generate the monoid", {c});
  }
  LocalDivisor divisor(m, c);
  FiniteMonoid n_monoid = restrict_to(m, n_carrier, m.identity());
  std::vector<Elem> rho;
  rho.reserve(n_carrier.size());
  for (Elem x : n_carrier) rho.push_back(divisor.position(m(m(c, x), c)).value());
  ReesExtension extension(std::move(n_monoid), divisor.monoid(), std::move(rho), cap);
  return LocalReesExtension{std::move(n_carrier), std::move(divisor), std::move(extension)};
}

std::string_view to_string(TreeStrategy s) noexcept {
  return s == TreeStrategy::FirstNonunit ? "first-nonunit" : "max-shrink";
}

std::optional<TreeStrategy> parse_tree_strategy(std::string_view name) {
  if (name == "first-nonunit") return TreeStrategy::FirstNonunit;
  if (name == "max-shrink") return TreeStrategy::MaxShrink;
  return std::nullopt;
}

std::vector<Elem> minimal_generating_set(const FiniteMonoid& m) {
  std::vector<Elem> gens(m.size());
  for (Elem x = 0; x < m.size(); ++x) gens[x] = x;
  for (Elem x = 0; x < m.size(); ++x) {
    std::vector<Elem> rest;
    std::copy_if(gens.begin(), gens.end(), std::back_inserter(rest),
                 [x](Elem g) { return g != x; });
    if (submonoid_generated(m, rest).size() == m.size()) gens = std::move(rest);
  }
  return gens;
}

std::size_t ReesDecompositionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const ReesTreeNode& n) { return n.leaf; }));
}

std::size_t ReesDecompositionTree::depth() const {
  if (nodes.empty()) return 0;
  std::function<std::size_t(std::size_t)> walk = [&](std::size_t i) -> std::size_t {
    const auto& node = nodes[i];
    return node.leaf ? 1 : 1 + std::max(walk(node.left), walk(node.right));
  };
  return walk(0);
}

namespace {

std::vector<Elem> without(const std::vector<Elem>& xs, Elem x) {
  std::vector<Elem> out;
  std::copy_if(xs.begin(), xs.end(), std::back_inserter(out), [x](Elem y) { return y != x; });
  return out;
}

std::size_t build_node(const FiniteMonoid& m, TreeStrategy strategy, std::size_t cap,
                       std::vector<ReesTreeNode>& nodes) {
  if (nodes.size() >= cap) {
    throw Error(ErrorKind::SizeGuardExceeded,
                "decomposition tree exceeds " + std::to_string(cap) + " nodes");
  }
  const std::size_t index = nodes.size();
  nodes.push_back(ReesTreeNode{m, true, kNoElem, {}, 0, 0});
  if (is_group(m)) return index;

  const std::vector<Elem> gens = minimal_generating_set(m);
  Elem c = kNoElem;
  std::size_t best = 0;
  for (Elem g : gens) {
    if (is_unit(m, g)) continue;
    if (strategy == TreeStrategy::FirstNonunit) {
      c = g;
      break;
    }
    const std::size_t cost =
        submonoid_generated(m, without(gens, g)).size() + LocalDivisor(m, g).carrier().size();
    if (c == kNoElem || cost < best) {
      c = g;
      best = cost;
    }
  }
  // Units generate only units, so a non-group has a non-unit generator.
  if (c == kNoElem) throw Error(ErrorKind::NoWitness, "no non-unit generator");

  std::vector<Elem> n_carrier = submonoid_generated(m, without(gens, c));
  FiniteMonoid n_monoid = restrict_to(m, n_carrier, m.identity());
  FiniteMonoid local = LocalDivisor(m, c).monoid();

  const std::size_t left = build_node(n_monoid, strategy, cap, nodes);
  const std::size_t right = build_node(local, strategy, cap, nodes);
  ReesTreeNode& node = nodes[index];
  node.leaf = false;
  node.c = c;
  node.n_carrier = std::move(n_carrier);
  node.left = left;
  node.right = right;
  return index;
}

}  // namespace

ReesDecompositionTree decomposition_tree(const FiniteMonoid& m, TreeStrategy strategy,
                                         std::size_t node_cap) {
  ReesDecompositionTree tree;
  build_node(m, strategy, node_cap, tree.nodes);
  return tree;
}

std::string_view to_string(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Unverified: return "unverified";
  }
  return "?";
}

std::size_t TreeReport::count(CheckStatus s) const {
  return static_cast<std::size_t>(std::count_if(
      checks.begin(), checks.end(), [s](const TreeCheck& c) { return c.status == s; }));
}

namespace {

CheckStatus division_status(const FiniteMonoid& small, const FiniteMonoid& big, std::size_t guard,
                            std::string& detail) {
  try {
    const Division result = divides(small, big, guard);
    detail = result.divides ? "divisor search found a witness" : "no surjective morphism exists";
    return result.divides ? CheckStatus::Pass : CheckStatus::Fail;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SizeGuardExceeded) throw;
    detail = "beyond division guard";
    return CheckStatus::Unverified;
  }
}

void verify_inner(const ReesTreeNode& node, std::size_t index, const ReesDecompositionTree& tree,
                  std::size_t guard, TreeReport& report) {
  const FiniteMonoid& label = node.label;
  const auto& left = tree.nodes.at(node.left).label;
  const auto& right = tree.nodes.at(node.right).label;

  std::optional<LocalReesExtension> loc;
  try {
    loc.emplace(local_rees_extension(label, node.n_carrier, node.c));
  } catch (const Error& e) {
    const CheckStatus status =
        e.kind() == ErrorKind::SizeGuardExceeded ? CheckStatus::Unverified : CheckStatus::Fail;
    report.checks.push_back({index, "local-rees", status, e.what()});
    return;
  }
  const bool children_ok = loc->n_carrier == node.n_carrier &&
                           left == loc->extension.base() && right == loc->divisor.monoid();
  report.checks.push_back({index, "children", children_ok ? CheckStatus::Pass : CheckStatus::Fail,
                           children_ok ? "children are N and M_c" : "child labels do not match"});

  const MonoidMorphism eval = loc->evaluation();
  if (check_morphism(eval).ok && eval.is_surjective()) {
    report.checks.push_back({index, "divides-locrees", CheckStatus::Pass,
                             "evaluation map onto the label (|LocRees| = " +
                                 std::to_string(eval.domain.size()) + ")"});
    return;
  }
  std::string detail;
  const CheckStatus status = division_status(label, loc->extension.monoid(), guard, detail);
  report.checks.push_back({index, "divides-locrees", status, detail});
}

}  // namespace

TreeReport verify_decomposition_tree(const FiniteMonoid& m, const ReesDecompositionTree& tree,
                                     std::size_t division_guard) {
  TreeReport report;
  if (tree.nodes.empty()) {
    report.checks.push_back({0, "root-label", CheckStatus::Fail, "empty tree"});
    return report;
  }
  const bool root_ok = tree.nodes.front().label == m;
  report.checks.push_back({0, "root-label", root_ok ? CheckStatus::Pass : CheckStatus::Fail,
                           root_ok ? "root is the input monoid" : "root label differs"});
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const ReesTreeNode& node = tree.nodes[i];
    if (node.leaf) {
      const bool group = is_group(node.label);
      report.checks.push_back({i, "leaf-group", group ? CheckStatus::Pass : CheckStatus::Fail,
                               group ? "group of order " + std::to_string(node.label.size())
                                     : "leaf is not a group"});
      if (group) {
        std::string detail;
        const CheckStatus status = division_status(node.label, m, division_guard, detail);
        report.checks.push_back({i, "leaf-divides-root", status, detail});
      }
    } else {
      verify_inner(node, i, tree, division_guard, report);
    }
  }
  return report;
}

std::string render_tree(const ReesDecompositionTree& tree, const TreeReport* report) {
  std::ostringstream out;
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t i, std::size_t indent) {
    const auto& node = tree.nodes[i];
    out << std::string(indent * 2, ' ') << "[" << i << "] size=" << node.label.size();
    if (node.leaf) {
      out << " leaf";
    } else {
      out << " inner c=" << node.c << " |N|=" << tree.nodes[node.left].label.size()
          << " |M_c|=" << tree.nodes[node.right].label.size();
    }
    if (report != nullptr) {
      for (const auto& check : report->checks) {
        if (check.node == i) out << " " << check.name << "=" << to_string(check.status);
      }
    }
    out << '\n';
    if (!node.leaf) {
      walk(node.left, indent + 1);
      walk(node.right, indent + 1);
    }
  };
  if (!tree.nodes.empty()) walk(0, 0);
  return out.str();
}

std::size_t non_unit_count(const FiniteMonoid& m) {
  std::size_t count = 0;
  for (Elem x = 0; x < m.size(); ++x) count += is_unit(m, x) ? 0 : 1;
  return count;
}

PreservationResult subgroup_preservation_check(const FiniteMonoid& n, const FiniteMonoid& l,
                                               std::span<const Elem> rho, Variety h) {
  PreservationResult result;
  result.premise = subgroups_satisfy(n, h) && subgroups_satisfy(l, h);
  const ReesExtension ext(n, l, std::vector<Elem>(rho.begin(), rho.end()));
  result.conclusion = subgroups_satisfy(ext.monoid(), h);
  return result;
}

}  // namespace monoidw
