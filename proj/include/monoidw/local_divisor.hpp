#pragma once

#include <optional>
#include <span>
#include <vector>

#include "monoidw/monoid.hpp"

namespace monoidw {

/// The local divisor (M_c, o, c): carrier cM ∩ Mc with xc o cy = xcy.
///
/// Carrier elements keep their parent indices; `monoid()` is the same
/// structure reindexed to positions 0..k-1 (position p <-> carrier()[p]).
/// Construction checks every witness of every product, so a theory or
/// implementation error surfaces as WitnessDisagreement.
class LocalDivisor {
 public:
  LocalDivisor(FiniteMonoid parent, Elem c);

  const FiniteMonoid& parent() const noexcept { return parent_; }
  Elem c() const noexcept { return c_; }
  std::span<const Elem> carrier() const noexcept { return carrier_; }
  const FiniteMonoid& monoid() const noexcept { return monoid_; }

  std::optional<Elem> position(Elem parent_element) const;
  Elem element(Elem pos) const { return carrier_.at(pos); }
  bool contains(Elem parent_element) const { return position(parent_element).has_value(); }

  /// z1 o z2 on parent indices; both must lie in the carrier.
  Elem compose(Elem z1, Elem z2) const;

 private:
  FiniteMonoid parent_;
  Elem c_;
  std::vector<Elem> carrier_;
  std::vector<Elem> position_;  // parent index -> position, kNoElem outside
  FiniteMonoid monoid_;
};

LocalDivisor local_divisor(const FiniteMonoid& m, Elem c);

/// lambda_c(x) = cx on {x : cx ∈ M_c}, landing in positions of M_c.
/// Verified closed, o-multiplicative, surjective and unital (1 -> c).
MonoidMorphism lambda_c(const LocalDivisor& divisor);
MonoidMorphism lambda_c(const FiniteMonoid& m, Elem c);

/// x -> cx as an isomorphism M -> M_c for a unit c; verified bijective and
/// multiplicative. Raises NotAGroup when c is not a unit.
MonoidMorphism unit_isomorphism(const FiniteMonoid& m, Elem c);

struct StrictnessEntry {
  Elem c;
  std::size_t size;  // |M_c|
  bool unit;
};

/// One entry per element; raises StrictnessViolation if some non-unit c has
/// |M_c| >= |M| or 1 ∈ M_c.
std::vector<StrictnessEntry> strictness_report(const FiniteMonoid& m);

}  // namespace monoidw
