#include "monoidw/green.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "monoidw/local_divisor.hpp"

namespace monoidw {
namespace {

template <typename Key>
std::vector<std::size_t> ids_by_first_occurrence(const std::vector<Key>& keys) {
  std::map<Key, std::size_t> seen;
  std::vector<std::size_t> ids;
  ids.reserve(keys.size());
  for (const auto& key : keys) {
    const auto [it, inserted] = seen.emplace(key, seen.size());
    ids.push_back(it->second);
  }
  return ids;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

const std::vector<std::size_t>& GreenClasses::of(Relation rel) const {
  switch (rel) {
    case Relation::L: return l;
    case Relation::R: return r;
    case Relation::J: return j;
    case Relation::H: return h;
    case Relation::D: return d;
  }
  return h;
}

std::size_t GreenClasses::class_count(Relation rel) const {
  const auto& ids = of(rel);
  return ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end()) + 1;
}

std::vector<Elem> GreenClasses::members(Relation rel, Elem x) const {
  const auto& ids = of(rel);
  std::vector<Elem> out;
  for (Elem y = 0; y < ids.size(); ++y) {
    if (ids[y] == ids.at(x)) out.push_back(y);
  }
  return out;
}

GreenClasses green_classes(const FiniteMonoid& m) {
  const std::size_t n = m.size();
  GreenClasses g;
  g.left_ideal.assign(n, std::vector<bool>(n, false));
  g.right_ideal.assign(n, std::vector<bool>(n, false));
  g.two_sided_ideal.assign(n, std::vector<bool>(n, false));
  for (Elem x = 0; x < n; ++x) {
    for (Elem a = 0; a < n; ++a) {
      g.left_ideal[x][m(a, x)] = true;
      g.right_ideal[x][m(x, a)] = true;
    }
    for (Elem y = 0; y < n; ++y) {
      if (!g.right_ideal[x][y]) continue;
      for (Elem a = 0; a < n; ++a) g.two_sided_ideal[x][m(a, y)] = true;
    }
  }
  g.l = ids_by_first_occurrence(g.left_ideal);
  g.r = ids_by_first_occurrence(g.right_ideal);
  g.j = ids_by_first_occurrence(g.two_sided_ideal);

  std::vector<std::pair<std::size_t, std::size_t>> lr(n);
  for (std::size_t x = 0; x < n; ++x) lr[x] = {g.l[x], g.r[x]};
  g.h = ids_by_first_occurrence(lr);

  UnionFind uf(n);
  std::vector<std::size_t> first_l(n, n), first_r(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    if (first_l[g.l[x]] == n) first_l[g.l[x]] = x;
    if (first_r[g.r[x]] == n) first_r[g.r[x]] = x;
    uf.unite(x, first_l[g.l[x]]);
    uf.unite(x, first_r[g.r[x]]);
  }
  std::vector<std::size_t> roots(n);
  for (std::size_t x = 0; x < n; ++x) roots[x] = uf.find(x);
  g.d = ids_by_first_occurrence(roots);

  if (g.d != g.j) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if ((g.d[x] == g.d[y]) != (g.j[x] == g.j[y])) {
          throw Error(ErrorKind::InternalJDMismatch,
                      "J and D disagree on (" + std::to_string(x) + ", " + std::to_string(y) + ")",
                      {x, y});
        }
      }
    }
  }
  return g;
}

std::vector<Elem> h_class(const FiniteMonoid& m, Elem s) {
  if (s >= m.size()) throw Error(ErrorKind::IndexOutOfRange, "element out of range", {s});
  return green_classes(m).members(Relation::H, s);
}

std::vector<MaximalSubgroup> maximal_subgroups(const FiniteMonoid& m) {
  const GreenClasses classes = green_classes(m);
  std::vector<MaximalSubgroup> out;
  for (Elem e : idempotents(m)) {
    std::vector<Elem> members = classes.members(Relation::H, e);
    std::optional<FiniteMonoid> group;
    try {
      group = restrict_to(m, members, e);
    } catch (const Error&) {
      throw Error(ErrorKind::NotAGroup, "H-class of idempotent is not closed", {e});
    }
    if (!is_group(*group)) throw Error(ErrorKind::NotAGroup, "H(e) is not a group", {e});
    out.push_back(MaximalSubgroup{e, std::move(members), std::move(*group)});
  }
  return out;
}

bool subgroups_satisfy(const FiniteMonoid& m, Variety h) {
  for (const auto& sub : maximal_subgroups(m)) {
    if (!satisfies(h, sub.group)) return false;
  }
  return true;
}

namespace {

enum class Side { Left, Right };

MonoidMorphism greens_iso(const FiniteMonoid& m, Elem s, Elem t, Side side) {
  if (s >= m.size() || t >= m.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "element out of range", {s, t});
  }
  const GreenClasses classes = green_classes(m);
  if (side == Side::Right && classes.r[s] != classes.r[t]) {
    throw Error(ErrorKind::NotREquivalent,
                std::to_string(s) + " and " + std::to_string(t) + " are not R-equivalent", {s, t});
  }
  if (side == Side::Left && classes.l[s] != classes.l[t]) {
    throw Error(ErrorKind::NotLEquivalent,
                std::to_string(s) + " and " + std::to_string(t) + " are not L-equivalent", {s, t});
  }
  Elem v = kNoElem;
  for (Elem x = 0; x < m.size() && v == kNoElem; ++x) {
    if ((side == Side::Right ? m(s, x) : m(x, s)) == t) v = x;
  }
  if (v == kNoElem) throw Error(ErrorKind::NoWitness, "no multiplier carries s to t", {s, t});

  const LocalDivisor from(m, s);
  const LocalDivisor to(m, t);
  MonoidMorphism phi{from.monoid(), to.monoid(), {}, {}, true};
  for (Elem p = 0; p < from.carrier().size(); ++p) {
    const Elem z = from.element(p);
    const Elem image = side == Side::Right ? m(z, v) : m(v, z);
    const auto q = to.position(image);
    if (!q) {
      throw Error(ErrorKind::MorphismViolation, "multiplication leaves M_t", {z, image});
    }
    phi.carrier.push_back(p);
    phi.images.push_back(*q);
  }
  const MorphismCheck check = check_morphism(phi);
  if (!check.ok) throw Error(ErrorKind::MorphismViolation, "Green iso: " + check.reason);
  if (from.carrier().size() != to.carrier().size() || !phi.is_injective() ||
      !phi.is_surjective()) {
    throw Error(ErrorKind::MorphismViolation, "Green iso is not bijective", {s, t});
  }
  return phi;
}

}  // namespace

MonoidMorphism greens_lemma_iso(const FiniteMonoid& m, Elem s, Elem t) {
  return greens_iso(m, s, t, Side::Right);
}

MonoidMorphism greens_lemma_iso_left(const FiniteMonoid& m, Elem s, Elem t) {
  return greens_iso(m, s, t, Side::Left);
}

bool units_of_local_divisor_equal_h_class(const FiniteMonoid& m, Elem s) {
  const LocalDivisor divisor(m, s);
  const Units units = group_of_units(divisor.monoid());
  std::vector<Elem> as_parent;
  for (Elem p : units.elements) as_parent.push_back(divisor.element(p));
  std::sort(as_parent.begin(), as_parent.end());
  return as_parent == h_class(m, s);
}

std::string render_eggbox(const FiniteMonoid& m, const GreenClasses& classes) {
  const std::size_t n = m.size();
  std::ostringstream out;
  for (std::size_t dclass = 0; dclass < classes.class_count(Relation::D); ++dclass) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t x = 0; x < n; ++x) {
      if (classes.d[x] != dclass) continue;
      if (std::find(rows.begin(), rows.end(), classes.r[x]) == rows.end()) rows.push_back(classes.r[x]);
      if (std::find(cols.begin(), cols.end(), classes.l[x]) == cols.end()) cols.push_back(classes.l[x]);
    }
    std::vector<std::vector<std::string>> cells(rows.size(), std::vector<std::string>(cols.size()));
    std::size_t width = 1;
    for (std::size_t ri = 0; ri < rows.size(); ++ri) {
      for (std::size_t ci = 0; ci < cols.size(); ++ci) {
        std::string cell;
        bool group = false;
        for (Elem x = 0; x < n; ++x) {
          if (classes.r[x] != rows[ri] || classes.l[x] != cols[ci]) continue;
          if (!cell.empty()) cell += ',';
          cell += std::to_string(x);
          group = group || m(x, x) == x;
        }
        if (group) cell += '*';
        width = std::max(width, cell.size());
        cells[ri][ci] = std::move(cell);
      }
    }
    out << "D-class " << dclass << " (" << rows.size() << " R x " << cols.size() << " L)\n";
    const std::string rule = "+" + [&] {
      std::string s;
      for (std::size_t ci = 0; ci < cols.size(); ++ci) s += std::string(width + 2, '-') + "+";
      return s;
    }();
    out << rule << '\n';
    for (const auto& row : cells) {
      out << '|';
      for (const auto& cell : row) out << ' ' << cell << std::string(width - cell.size() + 1, ' ') << '|';
      out << '\n' << rule << '\n';
    }
  }
  return out.str();
}

}  // namespace monoidw
