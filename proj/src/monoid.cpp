#include "monoidw/monoid.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace monoidw {

FiniteMonoid FiniteMonoid::validate(std::size_t n, std::vector<Elem> table, Elem identity) {
  if (n == 0) throw Error(ErrorKind::IndexOutOfRange, "a monoid needs at least one element");
  if (n >= static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
    throw Error(ErrorKind::SizeGuardExceeded, "table too large");
  }
  if (table.size() != n * n) {
    throw Error(ErrorKind::IndexOutOfRange,
                "table has " + std::to_string(table.size()) + " entries, expected " +
                    std::to_string(n * n));
  }
  if (identity >= n) {
    throw Error(ErrorKind::IndexOutOfRange,
                "identity " + std::to_string(identity) + " out of range", {identity});
  }
  for (std::size_t k = 0; k < table.size(); ++k) {
    if (table[k] >= n) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "entry (" + std::to_string(k / n) + ", " + std::to_string(k % n) +
                      ") = " + std::to_string(table[k]) + " out of range",
                  {k / n, k % n});
    }
  }
  for (Elem i = 0; i < n; ++i) {
    if (table[std::size_t{identity} * n + i] != i || table[std::size_t{i} * n + identity] != i) {
      throw Error(ErrorKind::IdentityViolation,
                  "element " + std::to_string(identity) + " is not neutral for " +
                      std::to_string(i),
                  {i});
    }
  }
  const auto& kernels = kernels::active();
  for (Elem i = 0; i < n; ++i) {
    for (Elem j = 0; j < n; ++j) {
      const std::size_t k = kernels.assoc_mismatch(table.data(), n, i, j);
      if (k < n) {
        throw Error(ErrorKind::AssocViolation,
                    "(" + std::to_string(i) + "*" + std::to_string(j) + ")*" +
                        std::to_string(k) + " != " + std::to_string(i) + "*(" +
                        std::to_string(j) + "*" + std::to_string(k) + ")",
                    {i, j, k});
      }
    }
  }
  return FiniteMonoid(n, std::move(table), identity);
}

FiniteMonoid FiniteMonoid::validate(const std::vector<std::vector<Elem>>& rows, Elem identity) {
  const std::size_t n = rows.size();
  std::vector<Elem> table;
  table.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                      " entries, expected " + std::to_string(n),
                  {i});
    }
    table.insert(table.end(), rows[i].begin(), rows[i].end());
  }
  return validate(n, std::move(table), identity);
}

FiniteMonoid trivial_monoid() { return FiniteMonoid::validate(1, {0}, 0); }

FiniteMonoid cyclic_group(std::size_t order) {
  std::vector<Elem> table(order * order);
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = 0; j < order; ++j) table[i * order + j] = static_cast<Elem>((i + j) % order);
  }
  return FiniteMonoid::validate(order, std::move(table), 0);
}

FiniteMonoid u1_monoid() { return FiniteMonoid::validate(2, {0, 1, 1, 1}, 0); }

namespace {

void check_indices(const FiniteMonoid& m, std::span<const Elem> xs) {
  for (Elem x : xs) {
    if (x >= m.size()) {
      throw Error(ErrorKind::IndexOutOfRange, "element " + std::to_string(x) + " out of range",
                  {x});
    }
  }
}

}  // namespace

std::vector<Elem> subsemigroup_generated(const FiniteMonoid& m, std::span<const Elem> gens) {
  check_indices(m, gens);
  std::vector<char> member(m.size(), 0);
  std::vector<Elem> order;
  for (Elem g : gens) {
    if (!member[g]) {
      member[g] = 1;
      order.push_back(g);
    }
  }
  const std::vector<Elem> generators = order;
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (Elem g : generators) {
      const Elem p = m(order[k], g);
      if (!member[p]) {
        member[p] = 1;
        order.push_back(p);
      }
    }
  }
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<Elem> submonoid_generated(const FiniteMonoid& m, std::span<const Elem> gens) {
  std::vector<Elem> with_identity(gens.begin(), gens.end());
  with_identity.push_back(m.identity());
  return subsemigroup_generated(m, with_identity);
}

std::vector<Elem> idempotents(const FiniteMonoid& m) {
  std::vector<Elem> out;
  for (Elem x = 0; x < m.size(); ++x) {
    if (m(x, x) == x) out.push_back(x);
  }
  return out;
}

bool is_unit(const FiniteMonoid& m, Elem x) {
  for (Elem y = 0; y < m.size(); ++y) {
    if (m(x, y) == m.identity() && m(y, x) == m.identity()) return true;
  }
  return false;
}

Units group_of_units(const FiniteMonoid& m) {
  std::vector<Elem> units;
  for (Elem x = 0; x < m.size(); ++x) {
    if (is_unit(m, x)) units.push_back(x);
  }
  FiniteMonoid group = restrict_to(m, units, m.identity());
  return Units{std::move(units), std::move(group)};
}

bool is_group(const FiniteMonoid& m) {
  for (Elem x = 0; x < m.size(); ++x) {
    if (!is_unit(m, x)) return false;
  }
  return true;
}

bool is_commutative(const FiniteMonoid& m) {
  for (Elem x = 0; x < m.size(); ++x) {
    for (Elem y = x + 1; y < m.size(); ++y) {
      if (m(x, y) != m(y, x)) return false;
    }
  }
  return true;
}

std::pair<std::size_t, std::size_t> index_and_period(const FiniteMonoid& m, Elem x) {
  std::vector<std::size_t> first_seen(m.size(), 0);
  std::size_t exponent = 1;
  Elem power = x;
  while (first_seen[power] == 0) {
    first_seen[power] = exponent;
    power = m(power, x);
    ++exponent;
  }
  return {first_seen[power], exponent - first_seen[power]};
}

bool is_aperiodic(const FiniteMonoid& m) {
  for (Elem x = 0; x < m.size(); ++x) {
    if (index_and_period(m, x).second != 1) return false;
  }
  return true;
}

FiniteMonoid restrict_to(const FiniteMonoid& m, std::span<const Elem> subset, Elem identity) {
  check_indices(m, subset);
  std::vector<Elem> position(m.size(), kNoElem);
  for (std::size_t k = 0; k < subset.size(); ++k) position[subset[k]] = static_cast<Elem>(k);
  if (identity >= m.size() || position[identity] == kNoElem) {
    throw Error(ErrorKind::NotClosed, "identity " + std::to_string(identity) + " not in subset");
  }
  const std::size_t k = subset.size();
  std::vector<Elem> table(k * k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      const Elem p = position[m(subset[a], subset[b])];
      if (p == kNoElem) {
        throw Error(ErrorKind::NotClosed,
                    "product " + std::to_string(subset[a]) + "*" + std::to_string(subset[b]) +
                        " leaves the subset",
                    {subset[a], subset[b]});
      }
      table[a * k + b] = p;
    }
  }
  return FiniteMonoid::validate(k, std::move(table), position[identity]);
}

FiniteMonoid direct_product(const FiniteMonoid& m, const FiniteMonoid& n, std::size_t cap) {
  const std::size_t size = m.size() * n.size();
  if (size > cap) {
    throw Error(ErrorKind::SizeGuardExceeded,
                "product of size " + std::to_string(size) + " exceeds cap " + std::to_string(cap));
  }
  std::vector<Elem> table(size * size);
  for (Elem i1 = 0; i1 < m.size(); ++i1) {
    for (Elem j1 = 0; j1 < n.size(); ++j1) {
      const std::size_t row = std::size_t{i1} * n.size() + j1;
      for (Elem i2 = 0; i2 < m.size(); ++i2) {
        for (Elem j2 = 0; j2 < n.size(); ++j2) {
          const std::size_t col = std::size_t{i2} * n.size() + j2;
          table[row * size + col] = static_cast<Elem>(m(i1, i2) * n.size() + n(j1, j2));
        }
      }
    }
  }
  return FiniteMonoid::validate(size, std::move(table),
                                static_cast<Elem>(m.identity() * n.size() + n.identity()));
}

std::optional<Elem> MonoidMorphism::apply(Elem x) const {
  const auto it = std::lower_bound(carrier.begin(), carrier.end(), x);
  if (it == carrier.end() || *it != x) return std::nullopt;
  return images[static_cast<std::size_t>(it - carrier.begin())];
}

bool MonoidMorphism::is_surjective() const {
  std::vector<char> hit(codomain.size(), 0);
  for (Elem y : images) {
    if (y < codomain.size()) hit[y] = 1;
  }
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

bool MonoidMorphism::is_injective() const {
  std::vector<Elem> sorted = images;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

MorphismCheck check_morphism(const MonoidMorphism& phi) {
  auto fail = [](std::string reason, Elem a, Elem b) {
    return MorphismCheck{false, std::move(reason), std::make_pair(a, b)};
  };
  if (phi.carrier.size() != phi.images.size()) {
    return MorphismCheck{false, "carrier and image lists differ in length", std::nullopt};
  }
  std::vector<Elem> image_of(phi.domain.size(), kNoElem);
  for (std::size_t k = 0; k < phi.carrier.size(); ++k) {
    const Elem x = phi.carrier[k];
    if (x >= phi.domain.size() || phi.images[k] >= phi.codomain.size()) {
      return fail("index out of range", x, x);
    }
    if (k > 0 && phi.carrier[k - 1] >= x) return fail("carrier not strictly sorted", x, x);
    image_of[x] = phi.images[k];
  }
  for (Elem a : phi.carrier) {
    for (Elem b : phi.carrier) {
      const Elem ab = phi.domain(a, b);
      if (image_of[ab] == kNoElem) return fail("carrier not closed", a, b);
      if (image_of[ab] != phi.codomain(image_of[a], image_of[b])) {
        return fail("not multiplicative", a, b);
      }
    }
  }
  const Elem one = phi.domain.identity();
  if (phi.unital && image_of[one] != kNoElem && image_of[one] != phi.codomain.identity()) {
    return fail("identity not preserved", one, one);
  }
  return MorphismCheck{};
}

namespace {

/// Minimal (by inclusion) semigroup generating set, greedy in index order.
std::vector<Elem> semigroup_generators(const FiniteMonoid& m) {
  std::vector<Elem> gens(m.size());
  std::iota(gens.begin(), gens.end(), Elem{0});
  for (Elem x = 0; x < m.size(); ++x) {
    std::vector<Elem> rest;
    for (Elem g : gens) {
      if (g != x) rest.push_back(g);
    }
    if (!rest.empty() && subsemigroup_generated(m, rest).size() == m.size()) gens = std::move(rest);
  }
  return gens;
}

struct PartialMap {
  std::vector<Elem> image;    // indexed by element of the large monoid
  std::vector<Elem> members;  // domain of the map, in discovery order
};

/// Adds x -> g and closes the domain under products, keeping the map
/// multiplicative. False on the first conflict.
bool extend(const FiniteMonoid& big, const FiniteMonoid& small, PartialMap& map, Elem x, Elem g) {
  std::vector<std::pair<Elem, Elem>> pending{{x, g}};
  while (!pending.empty()) {
    const auto [y, h] = pending.back();
    pending.pop_back();
    if (map.image[y] != kNoElem) {
      if (map.image[y] != h) return false;
      continue;
    }
    map.image[y] = h;
    map.members.push_back(y);
    const std::size_t count = map.members.size();
    for (std::size_t k = 0; k < count; ++k) {
      const Elem z = map.members[k];
      const Elem hz = map.image[z];
      pending.emplace_back(big(y, z), small(h, hz));
      pending.emplace_back(big(z, y), small(hz, h));
    }
  }
  return true;
}

bool search(const FiniteMonoid& big, const FiniteMonoid& small, std::span<const Elem> gens,
            const std::vector<std::vector<Elem>>& candidates, std::size_t level,
            const PartialMap& map, PartialMap& found) {
  if (level == gens.size()) {
    found = map;
    return true;
  }
  for (Elem x : candidates[level]) {
    PartialMap next = map;
    if (!extend(big, small, next, x, gens[level])) continue;
    if (search(big, small, gens, candidates, level + 1, next, found)) return true;
  }
  return false;
}

}  // namespace

Division divides(const FiniteMonoid& n, const FiniteMonoid& m, std::size_t guard) {
  if (m.size() > guard) {
    throw Error(ErrorKind::SizeGuardExceeded,
                "divisor search on a monoid of size " + std::to_string(m.size()) +
                    " exceeds guard " + std::to_string(guard));
  }
  if (n.size() > m.size()) return Division{};

  // Any surjection from a subsemigroup restricts to one from the subsemigroup
  // generated by chosen preimages of a generating set of n, so it suffices
  // to search over preimage tuples.
  std::vector<Elem> gens = semigroup_generators(n);
  std::vector<std::vector<Elem>> candidates(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const auto [gi, gp] = index_and_period(n, gens[k]);
    for (Elem x = 0; x < m.size(); ++x) {
      const auto [xi, xp] = index_and_period(m, x);
      if (xi >= gi && xp % gp == 0) candidates[k].push_back(x);
    }
  }
  std::vector<std::size_t> order(gens.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return candidates[a].size() < candidates[b].size();
  });
  std::vector<Elem> sorted_gens;
  std::vector<std::vector<Elem>> sorted_candidates;
  for (std::size_t k : order) {
    sorted_gens.push_back(gens[k]);
    sorted_candidates.push_back(candidates[k]);
  }

  PartialMap start{std::vector<Elem>(m.size(), kNoElem), {}};
  PartialMap found;
  if (!search(m, n, sorted_gens, sorted_candidates, 0, start, found)) return Division{};

  std::vector<Elem> carrier = found.members;
  std::sort(carrier.begin(), carrier.end());
  std::vector<Elem> images;
  images.reserve(carrier.size());
  for (Elem x : carrier) images.push_back(found.image[x]);
  return Division{true, MonoidMorphism{m, n, std::move(carrier), std::move(images), false}};
}

bool satisfies(Variety h, const FiniteMonoid& group) {
  if (!is_group(group)) throw Error(ErrorKind::NotAGroup, "variety test applied to a non-group");
  switch (h) {
    case Variety::Trivial: return group.size() == 1;
    case Variety::Abelian: return is_commutative(group);
    case Variety::AllGroups: return true;
  }
  return false;
}

std::string_view to_string(Variety h) noexcept {
  switch (h) {
    case Variety::Trivial: return "trivial";
    case Variety::Abelian: return "abelian";
    case Variety::AllGroups: return "all";
  }
  return "?";
}

std::optional<Variety> parse_variety(std::string_view name) {
  if (name == "trivial" || name == "1") return Variety::Trivial;
  if (name == "abelian" || name == "ab") return Variety::Abelian;
  if (name == "all" || name == "groups" || name == "G") return Variety::AllGroups;
  return std::nullopt;
}

std::size_t division_guard_from_env(std::size_t fallback) {
  const char* raw = std::getenv("MONOIDW_SIZE_GUARD");
  if (raw == nullptr) return fallback;
  const std::string_view text(raw);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) return fallback;
  return value;
}

}  // namespace monoidw
