#include "monoidw/local_divisor.hpp"

#include <algorithm>

namespace monoidw {
namespace {

std::vector<Elem> carrier_of(const FiniteMonoid& m, Elem c) {
  std::vector<char> in_cm(m.size(), 0), in_mc(m.size(), 0);
  for (Elem x = 0; x < m.size(); ++x) {
    in_cm[m(c, x)] = 1;
    in_mc[m(x, c)] = 1;
  }
  std::vector<Elem> out;
  for (Elem z = 0; z < m.size(); ++z) {
    if (in_cm[z] && in_mc[z]) out.push_back(z);
  }
  return out;
}

FiniteMonoid build_table(const FiniteMonoid& m, Elem c, const std::vector<Elem>& carrier,
                         const std::vector<Elem>& position) {
  // Left witnesses: z = x * c.
  std::vector<std::vector<Elem>> witnesses(m.size());
  for (Elem x = 0; x < m.size(); ++x) witnesses[m(x, c)].push_back(x);

  const std::size_t k = carrier.size();
  std::vector<Elem> table(k * k);
  for (std::size_t a = 0; a < k; ++a) {
    const auto& xs = witnesses[carrier[a]];
    for (std::size_t b = 0; b < k; ++b) {
      const Elem product = m(xs.front(), carrier[b]);
      for (Elem x : xs) {
        if (m(x, carrier[b]) != product) {
          throw Error(ErrorKind::WitnessDisagreement,
                      "witnesses " + std::to_string(xs.front()) + " and " + std::to_string(x) +
                          " disagree on " + std::to_string(carrier[a]) + " o " +
                          std::to_string(carrier[b]),
                      {carrier[a], carrier[b], x});
        }
      }
      if (position[product] == kNoElem) {
        throw Error(ErrorKind::WitnessDisagreement,
                    "product leaves cM ∩ Mc", {carrier[a], carrier[b]});
      }
      table[a * k + b] = position[product];
    }
  }
  return FiniteMonoid::validate(k, std::move(table), position[c]);
}

std::vector<Elem> positions_of(const FiniteMonoid& m, const std::vector<Elem>& carrier) {
  std::vector<Elem> position(m.size(), kNoElem);
  for (std::size_t p = 0; p < carrier.size(); ++p) position[carrier[p]] = static_cast<Elem>(p);
  return position;
}

}  // namespace

LocalDivisor::LocalDivisor(FiniteMonoid parent, Elem c)
    : parent_(std::move(parent)),
      c_(c),
      carrier_(c < parent_.size()
                   ? carrier_of(parent_, c)
                   : throw Error(ErrorKind::IndexOutOfRange, "c out of range", {c})),
      position_(positions_of(parent_, carrier_)),
      monoid_(build_table(parent_, c_, carrier_, position_)) {}

std::optional<Elem> LocalDivisor::position(Elem parent_element) const {
  if (parent_element >= position_.size() || position_[parent_element] == kNoElem) {
    return std::nullopt;
  }
  return position_[parent_element];
}

Elem LocalDivisor::compose(Elem z1, Elem z2) const {
  const auto p1 = position(z1);
  const auto p2 = position(z2);
  if (!p1 || !p2) throw Error(ErrorKind::IndexOutOfRange, "operand outside cM ∩ Mc", {z1, z2});
  return carrier_[monoid_(*p1, *p2)];
}

LocalDivisor local_divisor(const FiniteMonoid& m, Elem c) { return LocalDivisor(m, c); }

MonoidMorphism lambda_c(const LocalDivisor& divisor) {
  const FiniteMonoid& m = divisor.parent();
  const Elem c = divisor.c();
  MonoidMorphism phi{m, divisor.monoid(), {}, {}, true};
  for (Elem x = 0; x < m.size(); ++x) {
    if (const auto p = divisor.position(m(c, x))) {
      phi.carrier.push_back(x);
      phi.images.push_back(*p);
    }
  }
  if (const auto check = check_morphism(phi); !check.ok) {
    throw Error(ErrorKind::MorphismViolation, "lambda_c: " + check.reason,
                {check.witness->first, check.witness->second});
  }
  if (!phi.is_surjective()) throw Error(ErrorKind::MorphismViolation, "lambda_c not surjective");
  return phi;
}

MonoidMorphism lambda_c(const FiniteMonoid& m, Elem c) { return lambda_c(LocalDivisor(m, c)); }

MonoidMorphism unit_isomorphism(const FiniteMonoid& m, Elem c) {
  if (!is_unit(m, c)) throw Error(ErrorKind::NotAGroup, "element is not a unit", {c});
  const LocalDivisor divisor(m, c);
  MonoidMorphism phi{m, divisor.monoid(), {}, {}, true};
  for (Elem x = 0; x < m.size(); ++x) {
    phi.carrier.push_back(x);
    phi.images.push_back(divisor.position(m(c, x)).value());
  }
  const auto check = check_morphism(phi);
  if (!check.ok || !phi.is_injective() || !phi.is_surjective()) {
    throw Error(ErrorKind::MorphismViolation, "x -> cx is not an isomorphism M -> M_c", {c});
  }
  return phi;
}

std::vector<StrictnessEntry> strictness_report(const FiniteMonoid& m) {
  std::vector<StrictnessEntry> out;
  for (Elem c = 0; c < m.size(); ++c) {
    const LocalDivisor divisor(m, c);
    const bool unit = is_unit(m, c);
    if (!unit && (divisor.carrier().size() >= m.size() || divisor.contains(m.identity()))) {
      throw Error(ErrorKind::StrictnessViolation,
                  "non-unit " + std::to_string(c) + " has a local divisor that does not shrink",
                  {c});
    }
    out.push_back(StrictnessEntry{c, divisor.carrier().size(), unit});
  }
  return out;
}

}  // namespace monoidw
