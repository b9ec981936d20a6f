#include "homofiber/homogeneous_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace homofiber {

namespace {

std::string describe_residual(double r) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << r;
  return os.str();
}

void finish(ConditionResult& c, double worst, double tol, std::string detail = {}) {
  c.checked = true;
  c.worst_residual = worst;
  c.passed = worst <= tol;
  if (!c.passed && c.detail.empty()) {
    c.detail = detail.empty() ? "worst residual " + describe_residual(worst) : std::move(detail);
  }
}

// Worst residual of span(inner) against span(outer), as an inclusion check.
double inclusion_residual(const Subspace& inner, const Subspace& outer) {
  double worst = 0.0;
  for (const auto& x : inner.basis()) worst = std::max(worst, residual_norm(outer, x));
  return worst;
}

}  // namespace

ReductiveSplit::ReductiveSplit(Subspace g, Subspace h, std::vector<Subspace> modules,
                               std::optional<Subspace> k)
    : g_(std::move(g)), h_(std::move(h)), k_(std::move(k)), modules_(std::move(modules)) {
  m_ = direct_sum(modules_);
  if (m_.ambient() == 0) m_ = Subspace(g_.ambient());
  if (h_.ambient() == 0) h_ = Subspace(g_.ambient());
}

const Subspace& ReductiveSplit::module(std::size_t i) const {
  if (i >= modules_.size()) {
    throw DomainError("module index " + std::to_string(i + 1) + " out of range (s = " +
                      std::to_string(modules_.size()) + ")");
  }
  return modules_[i];
}

Subspace ReductiveSplit::module_or_empty(const std::optional<std::size_t>& b) const {
  if (!b) return Subspace(ambient());
  return module(*b);
}

std::vector<const ConditionResult*> ValidationReport::conditions() const {
  return {&chain_closure, &orthogonality, &completeness,     &ad_invariance,
          &fibration_invariance, &bracket_condition, &center_membership};
}

bool ValidationReport::all_passed() const {
  const auto all = conditions();
  return std::all_of(all.begin(), all.end(), [](const ConditionResult* c) { return c->passed; });
}

double ValidationReport::worst_residual() const {
  double worst = 0.0;
  for (const auto* c : conditions()) {
    if (c->checked) worst = std::max(worst, c->worst_residual);
  }
  return worst;
}

ConditionResult check_closure(const Subspace& s, const std::string& label, double tol) {
  ConditionResult c{label + "_closure"};
  double worst = 0.0;
  std::string offender;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    for (std::size_t j = i + 1; j < s.dim(); ++j) {
      const double r = residual_norm(s, bracket(s[i], s[j]));
      if (r > worst) {
        worst = r;
        if (r > tol) {
          offender = "[" + label + "_" + std::to_string(i + 1) + ", " + label + "_" +
                     std::to_string(j + 1) + "] leaves " + label + " (residual " +
                     describe_residual(r) + ")";
        }
      }
    }
  }
  finish(c, worst, tol, offender);
  return c;
}

namespace {

Subspace orthonormalize_or_fail(std::size_t ambient, const std::vector<AlgebraElement>& v,
                                const std::string& label) {
  for (const auto& x : v) {
    if (x.size() != ambient) {
      throw DimensionError(label + " basis element has size " + std::to_string(x.size()) +
                           ", expected " + std::to_string(ambient));
    }
    if (!x.is_skew_hermitian(kSkewTolerance * std::max(1.0, x.matrix().cwiseAbs().maxCoeff()))) {
      throw StructuralError(label + " basis element is not skew-Hermitian");
    }
  }
  return orthonormalize(ambient, v);
}

void require_closed(const Subspace& s, const std::string& label, double tol) {
  const auto c = check_closure(s, label, tol);
  if (!c.passed) throw StructuralError(label + " is not closed under the bracket: " + c.detail);
}

}  // namespace

ReductiveSplit build_split(const SubalgebraChain& chain, double tol) {
  const Subspace g = orthonormalize_or_fail(chain.ambient, chain.g_basis, "g");
  const Subspace k = orthonormalize_or_fail(chain.ambient, chain.k_basis, "k");
  const Subspace h = orthonormalize_or_fail(chain.ambient, chain.h_basis, "h");
  require_closed(g, "g", tol);
  require_closed(k, "k", tol);
  require_closed(h, "h", tol);
  if (const double r = inclusion_residual(h, k); r > tol) {
    throw StructuralError("h is not contained in k (residual " + describe_residual(r) + ")");
  }
  if (const double r = inclusion_residual(k, g); r > tol) {
    throw StructuralError("k is not contained in g (residual " + describe_residual(r) + ")");
  }

  Subspace m1 = complement(g, k);
  Subspace m2 = complement(k, h);
  ReductiveSplit split(g, h, {std::move(m1), std::move(m2)}, k);

  // [m₁, k] ⊆ m₁ and [h, mᵢ] ⊆ mᵢ follow from closure and Ad-invariance of B;
  // verify anyway, the residuals feed the report.
  if (const auto c = check_fibration_invariance(split, tol); !c.passed) {
    throw StructuralError("Ad(K) does not preserve m1: " + c.detail);
  }
  if (const auto c = check_ad_invariance(split, tol); !c.passed) {
    throw StructuralError("modules are not ad(h)-invariant: " + c.detail);
  }
  return split;
}

ReductiveSplit build_custom_split(std::size_t ambient, const std::vector<AlgebraElement>& g_basis,
                                  const std::vector<AlgebraElement>& h_basis,
                                  const std::vector<std::vector<AlgebraElement>>& module_bases,
                                  double tol) {
  const Subspace g = orthonormalize_or_fail(ambient, g_basis, "g");
  const Subspace h = orthonormalize_or_fail(ambient, h_basis, "h");
  require_closed(g, "g", tol);
  require_closed(h, "h", tol);
  if (const double r = inclusion_residual(h, g); r > tol) {
    throw StructuralError("h is not contained in g (residual " + describe_residual(r) + ")");
  }

  std::vector<Subspace> modules;
  modules.reserve(module_bases.size());
  for (std::size_t i = 0; i < module_bases.size(); ++i) {
    const std::string label = "m" + std::to_string(i + 1);
    Subspace mi = orthonormalize_or_fail(ambient, module_bases[i], label);
    if (mi.dim() != module_bases[i].size()) {
      throw StructuralError(label + " spanning set is linearly dependent");
    }
    if (const double r = inclusion_residual(mi, g); r > tol) {
      throw StructuralError(label + " is not contained in g (residual " + describe_residual(r) +
                            ")");
    }
    modules.push_back(std::move(mi));
  }

  ReductiveSplit split(g, h, std::move(modules));
  if (const auto c = check_orthogonality(split, tol); !c.passed) {
    throw StructuralError("decomposition is not B-orthogonal: " + c.detail);
  }
  if (const auto c = check_completeness(split, tol); !c.passed) {
    throw StructuralError("h and the modules do not span g: " + c.detail);
  }
  return split;
}

ConditionResult check_orthogonality(const ReductiveSplit& split, double tol) {
  ConditionResult c{"orthogonality"};
  std::vector<std::pair<std::string, const Subspace*>> parts{{"h", &split.h()}};
  for (std::size_t i = 0; i < split.module_count(); ++i) {
    parts.emplace_back("m" + std::to_string(i + 1), &split.module(i));
  }
  double worst = 0.0;
  std::string detail;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    for (std::size_t q = p + 1; q < parts.size(); ++q) {
      for (const auto& x : parts[p].second->basis()) {
        for (const auto& y : parts[q].second->basis()) {
          const double r = std::abs(inner_B(x, y));
          if (r > worst) {
            worst = r;
            if (r > tol) {
              detail = parts[p].first + " and " + parts[q].first + " overlap (|B| = " +
                       describe_residual(r) + ")";
            }
          }
        }
      }
    }
  }
  finish(c, worst, tol, detail);
  return c;
}

ConditionResult check_completeness(const ReductiveSplit& split, double tol) {
  ConditionResult c{"completeness"};
  const Subspace parts[] = {split.h(), split.m()};
  const Subspace hm = direct_sum(parts);
  const std::size_t dims = split.h().dim() + split.m().dim();
  double worst = inclusion_residual(split.g(), hm);
  std::string detail;
  if (dims != split.g().dim()) {
    detail = "dim h + sum dim m_i = " + std::to_string(dims) + " but dim g = " +
             std::to_string(split.g().dim());
    worst = std::max(worst, 1.0);
  }
  finish(c, worst, tol, detail);
  return c;
}

ConditionResult check_ad_invariance(const ReductiveSplit& split, double tol) {
  ConditionResult c{"ad_invariance"};
  double worst = 0.0;
  std::string detail;
  for (std::size_t i = 0; i < split.module_count(); ++i) {
    const Subspace& mi = split.module(i);
    for (const auto& x : split.h().basis()) {
      for (const auto& y : mi.basis()) {
        const double r = residual_norm(mi, bracket(x, y));
        if (r > worst) {
          worst = r;
          if (r > tol) detail = "[h, m" + std::to_string(i + 1) + "] leaves m" + std::to_string(i + 1);
        }
      }
    }
  }
  finish(c, worst, tol, detail);
  return c;
}

ConditionResult check_fibration_invariance(const ReductiveSplit& split, double tol) {
  ConditionResult c{"fibration_invariance"};
  if (!split.k() || split.module_count() == 0) return c;
  const Subspace& m1 = split.module(0);
  double worst = 0.0;
  for (const auto& x : m1.basis()) {
    for (const auto& y : split.k()->basis()) worst = std::max(worst, residual_norm(m1, bracket(x, y)));
  }
  finish(c, worst, tol, "[m1, k] leaves m1 (residual " + describe_residual(worst) + ")");
  return c;
}

ConditionResult check_center_membership(const ReductiveSplit& split, const AlgebraElement& w,
                                        double tol) {
  ConditionResult c{"center_membership"};
  if (w.size() != split.ambient()) {
    throw DimensionError("W has size " + std::to_string(w.size()) + ", expected " +
                         std::to_string(split.ambient()));
  }
  double worst = residual_norm(split.h(), w);
  std::string detail = worst > tol ? "W is not in h" : "";
  for (const auto& x : split.h().basis()) {
    const double r = norm_B(bracket(w, x));
    if (r > worst) {
      worst = r;
      if (r > tol) detail = "W does not commute with h";
    }
  }
  finish(c, worst, tol, detail);
  return c;
}

ConditionResult validate_pair(const ReductiveSplit& split, const ModulePair& pair, double tol) {
  ConditionResult c{"bracket_condition"};
  const Subspace& ma = split.module(pair.a);
  if (pair.b && *pair.b == pair.a) {
    throw PreconditionError("module pair needs a != b (got a = b = " + std::to_string(pair.a + 1) +
                            ")");
  }
  const Subspace mb = split.module_or_empty(pair.b);
  double worst = 0.0;
  for (const auto& x : ma.basis()) {
    for (const auto& y : mb.basis()) worst = std::max(worst, residual_norm(ma, bracket(x, y)));
  }
  finish(c, worst, tol,
         "[m_a, m_b] leaves m_a (residual " + describe_residual(worst) + ")");
  if (mb.empty()) c.detail = "vacuous: m_b is empty";
  return c;
}

ValidationReport validate(const ReductiveSplit& split, const ModulePair& pair,
                          const AlgebraElement& w, double tol) {
  ValidationReport report;

  {
    std::vector<ConditionResult> closures{check_closure(split.g(), "g", tol),
                                          check_closure(split.h(), "h", tol)};
    double incl = inclusion_residual(split.h(), split.g());
    if (split.k()) {
      closures.push_back(check_closure(*split.k(), "k", tol));
      incl = std::max({incl, inclusion_residual(split.h(), *split.k()),
                       inclusion_residual(*split.k(), split.g())});
    }
    double worst = incl;
    std::string detail = incl > tol ? "chain is not nested" : "";
    for (const auto& c : closures) {
      if (c.worst_residual > worst) {
        worst = c.worst_residual;
        if (!c.passed) detail = c.detail;
      }
    }
    finish(report.chain_closure, worst, tol, detail);
  }
  report.orthogonality = check_orthogonality(split, tol);
  report.completeness = check_completeness(split, tol);
  report.ad_invariance = check_ad_invariance(split, tol);
  report.fibration_invariance = check_fibration_invariance(split, tol);
  report.bracket_condition = validate_pair(split, pair, tol);
  report.center_membership = check_center_membership(split, w, tol);
  return report;
}

Subspace center_basis(const ReductiveSplit& split, double tol) {
  const Subspace& h = split.h();
  const std::size_t n = split.ambient();
  const auto d = static_cast<Eigen::Index>(h.dim());
  if (d == 0) return Subspace(n);

  // Column i stacks the real and imaginary parts of [h_i, h_j] for every j.
  const auto block = static_cast<Eigen::Index>(2 * n * n);
  Eigen::MatrixXd ad(block * d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const Matrix br = bracket(h[static_cast<std::size_t>(i)], h[static_cast<std::size_t>(j)]).matrix();
      const Eigen::Map<const Eigen::VectorXcd> flat(br.data(), br.size());
      ad.block(j * block, i, flat.size(), 1) = flat.real();
      ad.block(j * block + flat.size(), i, flat.size(), 1) = flat.imag();
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(ad, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > tol) ++rank;
  }
  std::vector<AlgebraElement> null_vectors;
  for (Eigen::Index col = rank; col < d; ++col) {
    const Eigen::VectorXd v = svd.matrixV().col(col);
    null_vectors.push_back(h.combine(std::span<const double>(v.data(), static_cast<std::size_t>(v.size()))));
  }
  return orthonormalize(n, null_vectors);
}

}  // namespace homofiber
