#pragma once

// Reductive splits g = h ⊕ m₁ ⊕ ⋯ ⊕ m_s and the structural checks that make a
// space admissible for the closed-form charged-particle motion.
//
// Ad(H)-invariance of the modules is verified infinitesimally as [h, mᵢ] ⊆ mᵢ.
// That is equivalent to Ad(H)mᵢ ⊆ mᵢ only when H is connected; connectedness
// is not machine-checked. Catalog entries declare it, custom input must ensure it.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homofiber/lie_core.hpp"

namespace homofiber {

/// Exactness-grade tolerance for built-in (integer / half-integer) data.
inline constexpr double kCatalogTolerance = 1e-12;
/// Tolerance for user-supplied data.
inline constexpr double kUserTolerance = 1e-10;

/// Nested subalgebras h ⊆ k ⊆ g, given by spanning sets.
struct SubalgebraChain {
  std::size_t ambient = 0;
  std::vector<AlgebraElement> g_basis;
  std::vector<AlgebraElement> k_basis;
  std::vector<AlgebraElement> h_basis;
};

/// Designated module pair (a, b), zero-based. An empty `b` stands for m_b = {0}.
struct ModulePair {
  std::size_t a = 0;
  std::optional<std::size_t> b;
};

class ReductiveSplit {
 public:
  ReductiveSplit() = default;
  ReductiveSplit(Subspace g, Subspace h, std::vector<Subspace> modules,
                 std::optional<Subspace> k = std::nullopt);

  std::size_t ambient() const { return g_.ambient(); }
  const Subspace& g() const { return g_; }
  const Subspace& h() const { return h_; }
  /// The intermediate subalgebra k when the split came from a chain H ⊆ K ⊆ G.
  const std::optional<Subspace>& k() const { return k_; }
  const std::vector<Subspace>& modules() const { return modules_; }
  const Subspace& module(std::size_t i) const;
  std::size_t module_count() const { return modules_.size(); }
  /// m = m₁ ⊕ ⋯ ⊕ m_s.
  const Subspace& m() const { return m_; }

  /// Module designated by `b`, or an empty subspace when `b` is unset or m_b = {0}.
  Subspace module_or_empty(const std::optional<std::size_t>& b) const;

 private:
  Subspace g_;
  Subspace h_;
  std::optional<Subspace> k_;
  std::vector<Subspace> modules_;
  Subspace m_;
};

/// Outcome of one structural condition.
struct ConditionResult {
  ConditionResult() = default;
  explicit ConditionResult(std::string n) : name(std::move(n)) {}

  std::string name;
  bool checked = false;
  bool passed = true;
  double worst_residual = 0.0;
  std::string detail;
};

struct ValidationReport {
  ConditionResult chain_closure{"chain_closure"};
  ConditionResult orthogonality{"orthogonality"};
  ConditionResult completeness{"completeness"};
  ConditionResult ad_invariance{"ad_invariance"};
  ConditionResult fibration_invariance{"fibration_invariance"};
  ConditionResult bracket_condition{"bracket_condition"};
  ConditionResult center_membership{"center_membership"};

  std::vector<const ConditionResult*> conditions() const;
  bool all_passed() const;
  double worst_residual() const;
};

/// m₁ = k^⊥ in g and m₂ = h^⊥ in k; modules = [m₁, m₂] (m₂ may be empty).
/// Throws StructuralError if g, k or h is not closed under the bracket or the
/// chain is not nested.
ReductiveSplit build_split(const SubalgebraChain& chain, double tol = kUserTolerance);

/// Split from explicit module spanning sets. Each module is orthonormalized on
/// its own; overlap between modules or with h is a StructuralError.
ReductiveSplit build_custom_split(std::size_t ambient, const std::vector<AlgebraElement>& g_basis,
                                  const std::vector<AlgebraElement>& h_basis,
                                  const std::vector<std::vector<AlgebraElement>>& module_bases,
                                  double tol = kUserTolerance);

/// Worst residual of [x, y] against the span of `s`, over basis pairs.
ConditionResult check_closure(const Subspace& s, const std::string& label, double tol);
ConditionResult check_orthogonality(const ReductiveSplit& split, double tol);
ConditionResult check_completeness(const ReductiveSplit& split, double tol);
ConditionResult check_ad_invariance(const ReductiveSplit& split, double tol);
/// [m₁, k] ⊆ m₁; only applicable to chain-built splits.
ConditionResult check_fibration_invariance(const ReductiveSplit& split, double tol);
/// W ∈ h and [W, x] = 0 for every x in the h basis.
ConditionResult check_center_membership(const ReductiveSplit& split, const AlgebraElement& w,
                                        double tol);

/// [m_a, m_b] ⊆ m_a. Vacuous when m_b is empty.
ConditionResult validate_pair(const ReductiveSplit& split, const ModulePair& pair,
                              double tol = kUserTolerance);

/// Runs every condition; never throws on a failed condition.
ValidationReport validate(const ReductiveSplit& split, const ModulePair& pair,
                          const AlgebraElement& w, double tol = kUserTolerance);

/// Orthonormal basis of the center z(h).
Subspace center_basis(const ReductiveSplit& split, double tol = kUserTolerance);

}  // namespace homofiber
