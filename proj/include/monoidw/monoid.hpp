#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "monoidw/error.hpp"
#include "monoidw/kernels.hpp"

namespace monoidw {

inline constexpr Elem kNoElem = std::numeric_limits<Elem>::max();

inline constexpr std::size_t kDefaultProductCap = 1'000'000;
inline constexpr std::size_t kDefaultDivisionGuard = 12;

/// A finite monoid given by its multiplication table over the dense indices
/// 0..n-1. The identity is explicit and need not be 0. Instances only come
/// out of `validate`, so every FiniteMonoid satisfies the monoid axioms.
class FiniteMonoid {
 public:
  /// Checks range, identity laws and associativity (n^3 scan).
  static FiniteMonoid validate(std::size_t n, std::vector<Elem> table, Elem identity);
  static FiniteMonoid validate(const std::vector<std::vector<Elem>>& rows, Elem identity);

  std::size_t size() const noexcept { return n_; }
  Elem identity() const noexcept { return identity_; }

  Elem operator()(Elem a, Elem b) const noexcept { return table_[std::size_t{a} * n_ + b]; }
  std::span<const Elem> row(Elem a) const noexcept {
    return {table_.data() + std::size_t{a} * n_, n_};
  }
  std::span<const Elem> table() const noexcept { return table_; }

  bool operator==(const FiniteMonoid&) const = default;

 private:
  FiniteMonoid(std::size_t n, std::vector<Elem> table, Elem identity)
      : n_(n), identity_(identity), table_(std::move(table)) {}

  std::size_t n_;
  Elem identity_;
  std::vector<Elem> table_;
};

FiniteMonoid trivial_monoid();
/// Z/nZ with element k standing for k (identity 0).
FiniteMonoid cyclic_group(std::size_t order);
/// {1, 0} with identity 0 and absorbing element 1.
FiniteMonoid u1_monoid();

/// Least submonoid containing `gens`, as a sorted index list.
std::vector<Elem> submonoid_generated(const FiniteMonoid& m, std::span<const Elem> gens);
/// Least subsemigroup containing `gens` (no identity unless produced).
std::vector<Elem> subsemigroup_generated(const FiniteMonoid& m, std::span<const Elem> gens);

std::vector<Elem> idempotents(const FiniteMonoid& m);
bool is_unit(const FiniteMonoid& m, Elem x);

struct Units {
  std::vector<Elem> elements;  // sorted parent indices
  FiniteMonoid group;          // restriction, position k <-> elements[k]
};
Units group_of_units(const FiniteMonoid& m);
bool is_group(const FiniteMonoid& m);
bool is_commutative(const FiniteMonoid& m);

/// Smallest (index, period) with x^index = x^(index + period).
std::pair<std::size_t, std::size_t> index_and_period(const FiniteMonoid& m, Elem x);
bool is_aperiodic(const FiniteMonoid& m);

/// The sub-structure on `subset` (sorted, closed under multiplication) with
/// `identity` as its neutral element; position k stands for subset[k].
FiniteMonoid restrict_to(const FiniteMonoid& m, std::span<const Elem> subset, Elem identity);

/// Componentwise product; element (i, j) is encoded as i * |n| + j.
FiniteMonoid direct_product(const FiniteMonoid& m, const FiniteMonoid& n,
                            std::size_t cap = kDefaultProductCap);

/// Map from a subsemigroup (`carrier`) of `domain` into `codomain`.
/// When `unital` is set the map must also send the domain identity (if it is
/// in the carrier) to the codomain identity.
struct MonoidMorphism {
  FiniteMonoid domain;
  FiniteMonoid codomain;
  std::vector<Elem> carrier;  // sorted
  std::vector<Elem> images;   // images[k] = map(carrier[k])
  bool unital = true;

  /// Image of x, or nullopt when x lies outside the carrier.
  std::optional<Elem> apply(Elem x) const;
  bool is_surjective() const;
  bool is_injective() const;
};

struct MorphismCheck {
  bool ok = true;
  std::string reason;
  std::optional<std::pair<Elem, Elem>> witness;
};

MorphismCheck check_morphism(const MonoidMorphism& phi);

/// Outcome of a divisor search. On success `witness` is a surjective
/// semigroup morphism from a subsemigroup of the larger monoid onto the
/// smaller one.
struct Division {
  bool divides = false;
  std::optional<MonoidMorphism> witness;
};

/// Decides whether `n` divides `m`. Throws SizeGuardExceeded when |m| > guard.
Division divides(const FiniteMonoid& n, const FiniteMonoid& m,
                 std::size_t guard = kDefaultDivisionGuard);

/// The closed family of group varieties used throughout: 1, Ab and G.
enum class Variety { Trivial, Abelian, AllGroups };

/// Membership test, defined on groups.
bool satisfies(Variety h, const FiniteMonoid& group);
std::string_view to_string(Variety h) noexcept;
std::optional<Variety> parse_variety(std::string_view name);

/// Process-wide override of the division guard (MONOIDW_SIZE_GUARD), or the
/// given default when the variable is unset or malformed.
std::size_t division_guard_from_env(std::size_t fallback = kDefaultDivisionGuard);

}  // namespace monoidw
