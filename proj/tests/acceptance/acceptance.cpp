// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "homofiber/cli.hpp"
#include "homofiber/space_catalog.hpp"
#include "homofiber/verification_oracle.hpp"
#include "support.hpp"

using namespace homofiber;
using testing_support::random_unit;

namespace {

constexpr std::uint64_t kSeed = 20240611;
constexpr int kPairs = 5;
constexpr std::size_t kTimes = 25;
const std::vector<double> kLambdas{0.5, 1.0, 2.0};
const std::vector<double> kCharges{0.0, 1.0, -0.5};

int failures = 0;

void report(const std::string& id, bool ok, const std::string& what) {
  std::printf("[%s] %s %s\n", ok ? "PASS" : "FAIL", id.c_str(), what.c_str());
  if (!ok) ++failures;
}

std::string g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct InitialPair {
  AlgebraElement xa;
  AlgebraElement xb;
};

std::vector<InitialPair> seeded_pairs(const CatalogEntry& e, std::mt19937_64& rng) {
  std::vector<InitialPair> out;
  for (int i = 0; i < kPairs; ++i) {
    InitialPair p;
    p.xa = random_unit(e.split.module(e.pair.a), rng);
    p.xb = random_unit(e.split.module(*e.pair.b), rng);
    out.push_back(p);
  }
  return out;
}

ChargedSystem weighted(const CatalogEntry& e, double lambda, double k) {
  return make_system(e, SystemOptions{std::vector<double>{1.0, lambda}, std::nullopt, 1.0, k});
}

// Criteria 1–5 share one sweep.
void solution_sweep() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(kSeed);
  const std::vector<double> ts = uniform_times(-2.0, 2.0, kTimes);
  ResidualConfig cfg;
  cfg.t_samples = ts;

  double koszul = 0.0, algebraic = 0.0, module_inv = 0.0, velocity = 0.0, conservation = 0.0;
  double collapse = 0.0;
  std::size_t evaluations = 0;
  for (int n : {1, 2}) {
    const CatalogEntry e = hopf(n);
    const auto pairs = seeded_pairs(e, rng);
    for (double lambda : kLambdas) {
      for (double k : kCharges) {
        const ChargedSystem sys = weighted(e, lambda, k);
        const auto probes = metric_orthonormal_basis(sys);
        for (const auto& p : pairs) {
          const ClosedFormMotion m = build_motion(sys, p.xa, p.xb);
          const ResidualReport r = koszul_sweep(m, cfg);
          koszul = std::max(koszul, r.max_abs_residual);
          evaluations += r.entries.size();
          for (double t : ts) {
            for (const auto& z : probes) algebraic = std::max(algebraic, algebraic_identity_check(m, t, z));
            module_inv = std::max(module_inv, transport_module_residual(m, t));
            velocity = std::max(velocity, body_velocity_residual(m, t));
          }
          conservation = std::max(conservation, conservation_sweep(m, -2.0, 2.0, kTimes).max_deviation);
          if (lambda == 1.0) collapse = std::max(collapse, lambda_collapse_check(m, ts));
        }
      }
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  report("1", koszul <= 1e-6 && seconds <= 30.0,
         "closed-form solution: max |koszul residual| = " + g(koszul) + " (tol 1e-6) over " +
             std::to_string(evaluations) + " (t, Z) evaluations, sweep runtime " + g(seconds) + " s (limit 30 s)");
  report("2", algebraic <= 1e-11,
         "algebraic identity: max discrepancy = " + g(algebraic) + " (tol 1e-11)");
  report("3a", module_inv <= 1e-10,
         "module invariance of T(t)X_a: max residual = " + g(module_inv) + " (tol 1e-10)");
  report("3b", velocity <= 1e-11,
         "body velocity = T(t)X_a + X_b: max deviation = " + g(velocity) + " (tol 1e-11)");
  report("4", conservation <= 1e-10,
         "speed conservation: max |speed(t) - speed(0)| = " + g(conservation) + " (tol 1e-10)");
  report("5", collapse <= 1e-12,
         "lambda = 1 collapse: max Frobenius distance = " + g(collapse) + " (tol 1e-12)");
}

double great_circle_planarity(double lambda) {
  std::mt19937_64 rng(kSeed + 1);
  double worst = 0.0;
  for (int n : {1, 2}) {
    const CatalogEntry e = hopf(n);
    const ChargedSystem sys = weighted(e, lambda, 0.0);
    for (const auto& p : seeded_pairs(e, rng)) {
      const ClosedFormMotion m = build_motion(sys, p.xa, p.xb).with_model(e.model);
      const GreatCircleReport r = great_circle_check(m, -2.0, 2.0, kTimes);
      worst = std::max({worst, r.max_planarity, r.max_norm_error});
    }
  }
  return worst;
}

void special_geometry() {
  const double normal = great_circle_planarity(1.0);
  report("6a", normal <= 1e-9,
         "great circles on hopf(1), hopf(2) at lambda = 1, k = 0: max planarity = " + g(normal) +
             " (tol 1e-9)");
  const double round = great_circle_planarity(*hopf(1).round_ratio);
  std::printf("       info: same check at the round ratio lambda = %g: max planarity = %s\n",
              *hopf(1).round_ratio, g(round).c_str());

  const CatalogEntry s2 = kahler_s2();
  const ChargedSystem sys = make_system(s2);
  std::mt19937_64 rng(kSeed + 2);
  const std::vector<double> charges{0.5, 1.0, 2.0};
  double spread = 0.0;
  bool increasing = true;
  for (int i = 0; i < kPairs; ++i) {
    const MagneticCircleReport r = magnetic_circle_check(sys, *s2.model, random_unit(sys.ma(), rng), charges,
                                                         uniform_times(-2.0, 2.0, kTimes));
    spread = std::max(spread, r.max_spread);
    increasing = increasing && r.strictly_increasing;
  }
  report("6b", spread <= 1e-6 && increasing,
         "magnetic circles on kahler-s2: max curvature spread = " + g(spread) +
             " (tol 1e-6), strictly increasing in k: " + (increasing ? "yes" : "no"));
}

void mutation() {
  std::mt19937_64 rng(kSeed + 3);
  ResidualConfig cfg;
  cfg.t_samples = uniform_times(-2.0, 2.0, kTimes);
  double weakest = INFINITY;
  std::string weakest_name;
  bool ok = true;
  for (const auto& name : catalog_names()) {
    const CatalogEntry e = catalog_lookup(name);
    std::vector<double> weights = e.weights;
    if (weights.size() == 2) weights = {1.0, 2.0};
    const ChargedSystem sys = make_system(e, SystemOptions{weights, std::nullopt, 1.0, 1.0});
    const ClosedFormMotion m = build_motion(sys, random_unit(sys.ma(), rng), random_unit(sys.mb(), rng));
    const double clean = koszul_sweep(m, cfg).max_abs_residual;
    const double broken =
        koszul_sweep(m.with_perturbation(1e-2, random_unit(sys.ma(), rng)), cfg).max_abs_residual;
    const double ratio = clean > 0.0 ? broken / clean : INFINITY;
    ok = ok && ratio > 100.0;
    if (ratio < weakest) {
      weakest = ratio;
      weakest_name = name;
    }
  }
  report("7", ok,
         "mutation sensitivity on all " + std::to_string(catalog_names().size()) +
             " catalog spaces: smallest perturbed/clean ratio = " + g(weakest) + " (" + weakest_name +
             ", need > 100)");
}

void convergence() {
  const CatalogEntry e = hopf(1);
  const ChargedSystem sys = weighted(e, 2.0, 1.0);
  std::mt19937_64 rng(kSeed + 4);
  const ClosedFormMotion m = build_motion(sys, random_unit(sys.ma(), rng), random_unit(sys.mb(), rng));
  const auto probes = metric_orthonormal_basis(sys);
  double lo = INFINITY, hi = 0.0;
  for (double t : {-1.5, -0.7, 0.3, 1.1, 1.9}) {
    double coarse = 0.0, fine = 0.0;
    for (const auto& z : probes) {
      coarse = std::max(coarse, std::abs(koszul_terms(m, t, z, 2e-4).residual));
      fine = std::max(fine, std::abs(koszul_terms(m, t, z, 1e-4).residual));
    }
    lo = std::min(lo, coarse / fine);
    hi = std::max(hi, coarse / fine);
  }
  report("8", lo >= 3.5 && hi <= 4.5,
         "convergence order: residual ratio h = 2e-4 vs 1e-4 in [" + g(lo) + ", " + g(hi) +
             "] at 5 points (need within [3.5, 4.5])");
}

void structure() {
  double worst = 0.0;
  bool all = true;
  for (const auto& name : catalog_names()) {
    const ValidationReport r = catalog_lookup(name).validate();
    all = all && r.all_passed();
    worst = std::max(worst, r.worst_residual());
  }
  bool dims = twistor_su3().module_dims() == std::vector<std::size_t>{4, 2};
  for (int n = 1; n <= 3; ++n) {
    dims = dims && hopf(n).module_dims() == std::vector<std::size_t>{static_cast<std::size_t>(2 * n), 1};
  }
  report("9", all && worst <= 1e-12 && dims,
         "structural validation: all validators pass: " + std::string(all ? "yes" : "no") +
             ", worst residual = " + g(worst) + " (tol 1e-12), dimensions as expected: " +
             (dims ? "yes" : "no"));
}

std::string cli_output(std::vector<std::string> args) {
  args.insert(args.begin(), "homofiber");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return out.str();
}

void determinism() {
  bool identical = true;
  for (const auto& space : {"hopf1", "hopf2", "twistor-su3", "kahler-s2"}) {
    for (const auto& cmd : {"verify", "simulate"}) {
      const std::vector<std::string> args{cmd, "--space", space, "--k", "1", "--seed", "7"};
      const std::string a = cli_output(args);
      identical = identical && !a.empty() && a == cli_output(args);
    }
  }
  bool round_trip = true;
  for (const auto& name : catalog_names()) {
    const CatalogEntry e = catalog_lookup(name);
    const CatalogEntry back = load_custom(export_document(e));
    const auto a = e.validate().conditions();
    const auto b = back.validate().conditions();
    round_trip = round_trip && a.size() == b.size() && e.module_dims() == back.module_dims();
    for (std::size_t i = 0; round_trip && i < a.size(); ++i) {
      round_trip = a[i]->passed == b[i]->passed && a[i]->checked == b[i]->checked;
    }
  }
  report("10", identical && round_trip,
         std::string("determinism and round trip: byte-identical reports: ") + (identical ? "yes" : "no") +
             ", export/load preserves validation: " + (round_trip ? "yes" : "no"));
}

}  // namespace

int main() {
  solution_sweep();
  special_geometry();
  mutation();
  convergence();
  structure();
  determinism();
  std::printf("%d criterion line(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
