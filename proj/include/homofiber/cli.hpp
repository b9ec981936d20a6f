#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "homofiber/space_catalog.hpp"

namespace homofiber::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

struct RunConfig {
  std::string space = "hopf1";
  std::vector<double> lambdas;
  /// 1-based "a,b"; b = 0 selects m_b = 0.
  std::optional<std::string> pair;
  double w_scale = 1.0;
  std::optional<double> k;
  std::optional<double> fiber_ratio;
  std::vector<double> xa;
  std::vector<double> xb;
  double t0 = -2.0;
  double t1 = 2.0;
  std::size_t samples = 25;
  double fd_step = 1e-4;
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::optional<std::string> out;
  std::optional<std::string> format;
  double perturb = 0.0;
};

/// Catalog name or path to a space document.
CatalogEntry resolve_space(const std::string& space);

/// Default tolerance, or HOMOFIBER_TOL when set.
double default_tolerance(double fallback);

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_catalog_list(std::ostream& out);
int cmd_catalog_export(const std::string& name, const std::optional<std::string>& path,
                       std::ostream& out, std::ostream& err);

/// Parses argv and dispatches; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace homofiber::cli
