#pragma once

#include <span>
#include <string>
#include <vector>

#include "monoidw/local_divisor.hpp"
#include "monoidw/monoid.hpp"

namespace monoidw {

inline constexpr std::size_t kDefaultReesCap = 4096;

/// Rees(N, L, rho) on the carrier N ∪ (N x L x N):
///
///   n * n'                    = nn'
///   n * (n1, m, n2) * n'      = (nn1, m, n2n')
///   (n1, m, n2) * (n1', m', n2') = (n1, m rho(n2 n1') m', n2')
///
/// Indices 0..|N|-1 are the elements of N; the triple (n1, m, n2) has index
/// |N| + (n1 * |L| + m) * |N| + n2. The identity is that of N.
class ReesExtension {
 public:
  ReesExtension(FiniteMonoid base, FiniteMonoid middle, std::vector<Elem> rho,
                std::size_t cap = kDefaultReesCap);

  const FiniteMonoid& base() const noexcept { return base_; }
  const FiniteMonoid& middle() const noexcept { return middle_; }
  std::span<const Elem> rho() const noexcept { return rho_; }
  const FiniteMonoid& monoid() const noexcept { return result_; }

  Elem triple(Elem n1, Elem m, Elem n2) const;

  struct Parts {
    bool in_base;
    Elem n;            // valid when in_base
    Elem n1, m, n2;    // valid otherwise
  };
  Parts decode(Elem x) const;

 private:
  FiniteMonoid base_;
  FiniteMonoid middle_;
  std::vector<Elem> rho_;
  FiniteMonoid result_;
};

/// LocRees(N, M_c) = Rees(N, M_c, x -> cxc) for N generated by `n_gens`.
struct LocalReesExtension {
  std::vector<Elem> n_carrier;  // N as sorted indices of the parent
  LocalDivisor divisor;
  ReesExtension extension;

  /// n -> n, (n1, m, n2) -> n1 m n2: a homomorphism from the extension onto
  /// the parent whenever N and c generate it.
  MonoidMorphism evaluation() const;
};

/// Requires c not a unit (CIsUnit), N != M (NDoesNotShrink) and N ∪ {c}
/// generating M (DoesNotGenerate).
LocalReesExtension local_rees_extension(const FiniteMonoid& m, std::span<const Elem> n_gens,
                                        Elem c, std::size_t cap = kDefaultReesCap);

enum class TreeStrategy { FirstNonunit, MaxShrink };

std::string_view to_string(TreeStrategy s) noexcept;
std::optional<TreeStrategy> parse_tree_strategy(std::string_view name);

/// Minimal-by-inclusion monoid generating set, by greedy removal in index order.
std::vector<Elem> minimal_generating_set(const FiniteMonoid& m);

struct ReesTreeNode {
  FiniteMonoid label;
  bool leaf = true;
  // Inner nodes only:
  Elem c = kNoElem;             // chosen non-unit of `label`
  std::vector<Elem> n_carrier;  // N as indices of `label`
  std::size_t left = 0;         // child labelled N
  std::size_t right = 0;        // child labelled label_c
};

/// Flat tree, root at index 0.
struct ReesDecompositionTree {
  std::vector<ReesTreeNode> nodes;

  std::size_t node_count() const noexcept { return nodes.size(); }
  std::size_t leaf_count() const;
  std::size_t depth() const;  // levels; a lone leaf has depth 1
};

/// Splits M into N (generated by a minimal generating set minus c) and the
/// local divisor M_c until every label is a group. Both parts are strictly
/// smaller than M, so the recursion terminates.
ReesDecompositionTree decomposition_tree(const FiniteMonoid& m,
                                         TreeStrategy strategy = TreeStrategy::FirstNonunit,
                                         std::size_t node_cap = 1'000'000);

enum class CheckStatus { Pass, Fail, Unverified };
std::string_view to_string(CheckStatus s) noexcept;

struct TreeCheck {
  std::size_t node;
  std::string name;
  CheckStatus status;
  std::string detail;
};

struct TreeReport {
  std::vector<TreeCheck> checks;

  std::size_t count(CheckStatus s) const;
  bool ok() const { return count(CheckStatus::Fail) == 0; }
  bool fully_verified() const { return ok() && count(CheckStatus::Unverified) == 0; }
};

/// Checks the root label, that leaves are groups dividing the root, that
/// children are N and M'_c, and that every inner label divides
/// LocRees(N, M'_c). Divisibility is shown with the evaluation morphism when
/// it verifies, otherwise by search within `division_guard`, otherwise it is
/// reported unverified.
TreeReport verify_decomposition_tree(const FiniteMonoid& m, const ReesDecompositionTree& tree,
                                     std::size_t division_guard = kDefaultDivisionGuard);

std::string render_tree(const ReesDecompositionTree& tree, const TreeReport* report = nullptr);

std::size_t non_unit_count(const FiniteMonoid& m);

struct PreservationResult {
  bool premise = false;     // N and L have all subgroups in H
  bool conclusion = false;  // Rees(N, L, rho) has all subgroups in H
  bool holds() const noexcept { return !premise || conclusion; }
};

PreservationResult subgroup_preservation_check(const FiniteMonoid& n, const FiniteMonoid& l,
                                               std::span<const Elem> rho, Variety h);

}  // namespace monoidw
