#include "homofiber/field_metric.hpp"

#include <cmath>
#include <string>

namespace homofiber {

DiagonalMetric::DiagonalMetric(std::vector<double> weights) : weights_(std::move(weights)) {
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i]) || weights_[i] <= 0.0) {
      throw DomainError("metric weight lambda_" + std::to_string(i + 1) +
                        " must be positive, got " + std::to_string(weights_[i]));
    }
  }
}

double DiagonalMetric::weight(std::size_t i) const {
  if (i >= weights_.size()) {
    throw DomainError("no metric weight for module " + std::to_string(i + 1));
  }
  return weights_[i];
}

ChargedSystem::ChargedSystem(ReductiveSplit split, DiagonalMetric metric, ModulePair pair,
                             AlgebraElement w, double charge, double tol, double empty_b_ratio)
    : split_(std::move(split)),
      metric_(std::move(metric)),
      pair_(pair),
      w_(std::move(w)),
      charge_(charge),
      tol_(tol) {
  if (metric_.size() != split_.module_count()) {
    throw DomainError("expected " + std::to_string(split_.module_count()) +
                      " metric weights, got " + std::to_string(metric_.size()));
  }
  if (!std::isfinite(charge_)) throw DomainError("charge constant k must be finite");
  mb_ = split_.module_or_empty(pair_.b);

  if (const auto c = check_center_membership(split_, w_, tol_); !c.passed) {
    throw StructuralError("W is not in the center of h: " + c.detail);
  }
  if (const auto c = validate_pair(split_, pair_, tol_); !c.passed) {
    throw StructuralError("module pair fails the bracket condition: " + c.detail);
  }

  if (pair_.b) {
    lambda_ = metric_.weight(*pair_.b) / metric_.weight(pair_.a);
  } else {
    if (!std::isfinite(empty_b_ratio) || empty_b_ratio <= 0.0) {
      throw DomainError("lambda ratio must be positive");
    }
    lambda_ = empty_b_ratio;
  }
}

ChargedSystem ChargedSystem::with_charge(double charge) const {
  ChargedSystem copy = *this;
  if (!std::isfinite(charge)) throw DomainError("charge constant k must be finite");
  copy.charge_ = charge;
  return copy;
}

namespace {

void require_in_m(const ChargedSystem& sys, const AlgebraElement& x, const char* what) {
  const double off = residual_norm(sys.split().m(), x);
  if (off > sys.tolerance()) {
    throw DomainError(std::string(what) + " has a component outside m (" + std::to_string(off) + ")");
  }
}

}  // namespace

double metric_inner(const ChargedSystem& sys, const AlgebraElement& x, const AlgebraElement& y) {
  require_in_m(sys, x, "metric_inner: X");
  require_in_m(sys, y, "metric_inner: Y");
  double total = 0.0;
  for (std::size_t i = 0; i < sys.split().module_count(); ++i) {
    const Subspace& mi = sys.split().module(i);
    if (mi.empty()) continue;
    total += sys.metric().weight(i) * inner_B(project(mi, x), project(mi, y));
  }
  return total;
}

double metric_norm(const ChargedSystem& sys, const AlgebraElement& x) {
  return std::sqrt(std::max(metric_inner(sys, x, x), 0.0));
}

AlgebraElement apply_I0(const ChargedSystem& sys, const AlgebraElement& x) {
  const AlgebraElement xa = project(sys.ma(), x);
  const AlgebraElement xb = project(sys.mb(), x);
  const double off = norm_B(x - xa - xb);
  if (off > sys.tolerance()) {
    throw DomainError("apply_I0: argument has a component outside m_a + m_b (" +
                      std::to_string(off) + ")");
  }
  return bracket(sys.w(), xa) + (1.0 / sys.lambda()) * bracket(sys.w(), xb);
}

double em_two_form(const ChargedSystem& sys, const AlgebraElement& x, const AlgebraElement& y) {
  return metric_inner(sys, x, apply_I0(sys, y));
}

std::vector<AlgebraElement> metric_orthonormal_basis(const ChargedSystem& sys) {
  std::vector<AlgebraElement> out;
  for (std::size_t i = 0; i < sys.split().module_count(); ++i) {
    const double s = 1.0 / std::sqrt(sys.metric().weight(i));
    for (const auto& b : sys.split().module(i).basis()) out.push_back(s * b);
  }
  return out;
}

}  // namespace homofiber
