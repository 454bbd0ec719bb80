#pragma once

#include <string>
#include <vector>

#include "monoidw/monoid.hpp"

namespace monoidw {

enum class Relation { L, R, J, H, D };

/// Green's relations of a finite monoid. Each partition is a class id per
/// element, ids numbered by first occurrence in index order, so two
/// partitions are equal iff their id vectors are equal.
struct GreenClasses {
  std::vector<std::size_t> l, r, j, h, d;
  std::vector<std::vector<bool>> left_ideal;       // Mx
  std::vector<std::vector<bool>> right_ideal;      // xM
  std::vector<std::vector<bool>> two_sided_ideal;  // MxM

  const std::vector<std::size_t>& of(Relation rel) const;
  std::size_t class_count(Relation rel) const;
  std::vector<Elem> members(Relation rel, Elem x) const;
};

/// Computes L, R, J from ideal equality, H as L ∩ R and D as the join of L
/// and R (union-find). Raises InternalJDMismatch if J != D.
GreenClasses green_classes(const FiniteMonoid& m);

std::vector<Elem> h_class(const FiniteMonoid& m, Elem s);

struct MaximalSubgroup {
  Elem idempotent;
  std::vector<Elem> elements;  // H(e), sorted
  FiniteMonoid group;          // restriction with identity e
};

std::vector<MaximalSubgroup> maximal_subgroups(const FiniteMonoid& m);

/// True iff every maximal subgroup lies in the variety.
bool subgroups_satisfy(const FiniteMonoid& m, Variety h);

/// For s R t: right multiplication by the lowest v with sv = t, as a verified
/// isomorphism M_s -> M_t between local divisors (positions).
MonoidMorphism greens_lemma_iso(const FiniteMonoid& m, Elem s, Elem t);
/// For s L t: left multiplication by the lowest u with us = t.
MonoidMorphism greens_lemma_iso_left(const FiniteMonoid& m, Elem s, Elem t);

/// Whether the group of units of M_s equals H(s) as a set of parent indices.
bool units_of_local_divisor_equal_h_class(const FiniteMonoid& m, Elem s);

/// Plain-text eggbox: one grid per D-class, rows are R-classes, columns are
/// L-classes; H-classes containing an idempotent are starred.
std::string render_eggbox(const FiniteMonoid& m, const GreenClasses& classes);

}  // namespace monoidw
