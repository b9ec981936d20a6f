#pragma once

// Ready-made spaces with exact integer or half-integer bases, plus the
// JSON space document used to round-trip them.
//
// Embeddings: u(n) sits in the top-left block of u(n+1); the maximal torus of
// su(3) is the diagonal. All subgroups used here are connected.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "homofiber/field_metric.hpp"
#include "homofiber/homogeneous_model.hpp"
#include "homofiber/motion_engine.hpp"

namespace homofiber {

struct CatalogEntry {
  std::string name;
  std::string description;

  // Source data, kept verbatim so that export reproduces the entry.
  std::size_t ambient = 0;
  std::vector<AlgebraElement> g_basis;
  std::vector<AlgebraElement> h_basis;
  std::optional<std::vector<AlgebraElement>> k_basis;
  std::optional<std::vector<std::vector<AlgebraElement>>> module_bases;

  ReductiveSplit split;
  std::vector<double> weights;
  ModulePair pair;
  AlgebraElement w;
  double charge = 0.0;
  /// λ used when m_b is empty.
  double fiber_ratio = 1.0;
  /// Value of λ at which the vector model is a round sphere, if known.
  std::optional<double> round_ratio;
  std::optional<BasePointModel> model;
  double tolerance = kCatalogTolerance;

  std::vector<std::size_t> module_dims() const;
  ValidationReport validate() const;
};

struct SystemOptions {
  std::optional<std::vector<double>> weights;
  std::optional<ModulePair> pair;
  double w_scale = 1.0;
  std::optional<double> charge;
  std::optional<double> fiber_ratio;
  std::optional<double> tolerance;
};

/// The entry's defaults with any overrides applied.
ChargedSystem make_system(const CatalogEntry& entry, const SystemOptions& opts = {});

/// S^{2n+1} = U(n+1)/U(n) over ℂPⁿ, fiber S¹.
CatalogEntry hopf(int n);

enum class LieGroupKind { SU2, U2 };

/// G/{e} with m₂ = k and m₁ its B-complement. Default k: span(A3) for SU(2),
/// the diagonal torus for U(2).
CatalogEntry lie_group(LieGroupKind group,
                       std::optional<std::vector<AlgebraElement>> subgroup_basis = std::nullopt);

/// SU(2)/U(1) ≅ S² with a single module and m_b empty.
CatalogEntry kahler_s2();

/// SU(3)/T² over ℂP² = SU(3)/S(U(1)×U(2)), fiber S².
CatalogEntry twistor_su3();

/// su(2) basis A1 = [[0,1],[−1,0]], A2 = [[0,i],[i,0]], A3 = diag(i,−i).
std::vector<AlgebraElement> su2_basis();

/// Names accepted by catalog_lookup, in listing order.
std::vector<std::string> catalog_names();
/// Throws DomainError for an unknown name. Accepts "hopfN" for any N ≥ 1.
CatalogEntry catalog_lookup(std::string_view name);

/// Parses a space document. Throws ParseError for malformed input and
/// StructuralError when the bases do not form a reductive split.
CatalogEntry load_custom(std::string_view document);
CatalogEntry load_custom_file(const std::string& path);

/// Space document for `entry`, pretty-printed.
std::string export_document(const CatalogEntry& entry);

}  // namespace homofiber
