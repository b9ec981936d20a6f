#include "homofiber/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "homofiber/verification_oracle.hpp"
#include "json.hpp"

namespace homofiber::cli {

using Json = nlohmann::ordered_json;

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
  if (!cfg.out) {
    out << content;
    return;
  }
  std::ofstream file(*cfg.out, std::ios::binary);
  if (!file) throw DomainError("cannot write '" + *cfg.out + "'");
  file << content;
  if (!file) throw DomainError("write to '" + *cfg.out + "' failed");
}

std::string format_of(const RunConfig& cfg, const char* fallback) {
  const std::string f = cfg.format.value_or(fallback);
  if (f != "csv" && f != "json-tree") throw ParseError("--format must be csv or json-tree");
  return f;
}

ModulePair parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ParseError("--pair expects a,b");
  try {
    std::size_t used = 0;
    const long a = std::stol(text.substr(0, comma), &used);
    if (used != comma) throw ParseError("--pair expects integers");
    const std::string rest = text.substr(comma + 1);
    const long b = std::stol(rest, &used);
    if (used != rest.size()) throw ParseError("--pair expects integers");
    if (a < 1 || b < 0) throw ParseError("--pair indices are 1-based; b = 0 means m_b = 0");
    ModulePair p{static_cast<std::size_t>(a - 1), std::nullopt};
    if (b > 0) p.b = static_cast<std::size_t>(b - 1);
    return p;
  } catch (const std::logic_error&) {
    throw ParseError("--pair expects integers a,b");
  }
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw ParseError(std::string(what) + " must be finite");
}

void check_config(const RunConfig& cfg) {
  for (double l : cfg.lambdas) require_finite(l, "--lambda");
  for (double x : cfg.xa) require_finite(x, "--xa");
  for (double x : cfg.xb) require_finite(x, "--xb");
  require_finite(cfg.w_scale, "--W-scale");
  require_finite(cfg.t0, "--t0");
  require_finite(cfg.t1, "--t1");
  require_finite(cfg.fd_step, "--fd-step");
  require_finite(cfg.perturb, "--perturb");
  if (cfg.k) require_finite(*cfg.k, "--k");
  if (cfg.tol) require_finite(*cfg.tol, "--tol");
  if (cfg.fiber_ratio) require_finite(*cfg.fiber_ratio, "--fiber-ratio");
}

ChargedSystem system_for(const RunConfig& cfg, const CatalogEntry& entry) {
  SystemOptions opts;
  if (!cfg.lambdas.empty()) opts.weights = cfg.lambdas;
  if (cfg.pair) opts.pair = parse_pair(*cfg.pair);
  opts.w_scale = cfg.w_scale;
  opts.charge = cfg.k;
  opts.fiber_ratio = cfg.fiber_ratio;
  return make_system(entry, opts);
}

AlgebraElement random_unit(const Subspace& s, std::mt19937_64& rng) {
  if (s.empty()) return AlgebraElement::zero(s.ambient());
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> c(s.dim());
  for (double& x : c) x = normal(rng);
  const AlgebraElement v = s.combine(c);
  return v / norm_B(v);
}

AlgebraElement from_coefficients(const Subspace& s, const std::vector<double>& c,
                                 const char* what) {
  if (c.size() != s.dim()) {
    throw DomainError(std::string(what) + " needs " + std::to_string(s.dim()) +
                      " coefficients, got " + std::to_string(c.size()));
  }
  if (s.empty()) return AlgebraElement::zero(s.ambient());
  return s.combine(c);
}

struct Prepared {
  CatalogEntry entry;
  ClosedFormMotion motion;
};

Prepared prepare(const RunConfig& cfg) {
  check_config(cfg);
  CatalogEntry entry = resolve_space(cfg.space);
  const ChargedSystem sys = system_for(cfg, entry);
  std::mt19937_64 rng(cfg.seed);
  const AlgebraElement xa =
      cfg.xa.empty() ? random_unit(sys.ma(), rng) : from_coefficients(sys.ma(), cfg.xa, "--xa");
  const AlgebraElement xb =
      cfg.xb.empty() ? random_unit(sys.mb(), rng) : from_coefficients(sys.mb(), cfg.xb, "--xb");
  ClosedFormMotion motion = build_motion(sys, xa, xb).with_model(entry.model);
  if (cfg.perturb != 0.0) {
    if (sys.ma().empty()) throw DomainError("--perturb needs a nonzero m_a");
    motion = motion.with_perturbation(cfg.perturb, random_unit(sys.ma(), rng));
  }
  return {std::move(entry), std::move(motion)};
}

Json coefficients(const Subspace& s, const AlgebraElement& x) {
  Json out = Json::array();
  for (double c : s.coordinates(x)) out.push_back(c);
  return out;
}

Json pair_json(const ModulePair& p) { return Json::array({p.a + 1, p.b ? *p.b + 1 : 0}); }

Json condition_json(const ConditionResult& c) {
  return Json{{"name", c.name},
              {"checked", c.checked},
              {"passed", c.passed},
              {"worst_residual", c.worst_residual},
              {"detail", c.detail}};
}

}  // namespace

CatalogEntry resolve_space(const std::string& space) {
  const std::filesystem::path p(space);
  if (p.extension() == ".json" || space.find('/') != std::string::npos) {
    if (!std::filesystem::exists(p)) throw ParseError("space document '" + space + "' not found");
    return load_custom_file(space);
  }
  return catalog_lookup(space);
}

double default_tolerance(double fallback) {
  const char* env = std::getenv("HOMOFIBER_TOL");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !std::isfinite(v) || v <= 0.0) {
    throw ParseError(std::string("HOMOFIBER_TOL is not a positive number: ") + env);
  }
  return v;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  check_config(cfg);
  const CatalogEntry entry = resolve_space(cfg.space);
  const double tol = cfg.tol.value_or(default_tolerance(entry.tolerance));
  const ModulePair pair = cfg.pair ? parse_pair(*cfg.pair) : entry.pair;
  const ValidationReport report = validate(entry.split, pair, cfg.w_scale * entry.w, tol);

  std::string text;
  if (format_of(cfg, "json-tree") == "csv") {
    text = "condition,checked,passed,worst_residual,detail\n";
    for (const auto* c : report.conditions()) {
      text += c->name + "," + (c->checked ? "1" : "0") + "," + (c->passed ? "1" : "0") + "," +
              fmt_double(c->worst_residual) + ",\"" + c->detail + "\"\n";
    }
  } else {
    Json dims = Json::array();
    for (auto d : entry.module_dims()) dims.push_back(d);
    Json conds = Json::array();
    for (const auto* c : report.conditions()) conds.push_back(condition_json(*c));
    Json doc{{"space", entry.name},
             {"ambient_n", entry.ambient},
             {"dim_g", entry.split.g().dim()},
             {"dim_h", entry.split.h().dim()},
             {"module_dims", dims},
             {"pair", pair_json(pair)},
             {"tolerance", tol},
             {"conditions", conds},
             {"worst_residual", report.worst_residual()},
             {"passed", report.all_passed()}};
    text = doc.dump(2) + "\n";
  }
  emit(cfg, text, out);
  if (cfg.out) out << "validate " << (report.all_passed() ? "PASS" : "FAIL") << "\n";
  return report.all_passed() ? kPass : kFail;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Prepared prep = prepare(cfg);
  const auto samples = sample_trajectory(prep.motion, cfg.t0, cfg.t1, cfg.samples);
  const std::size_t n = prep.entry.ambient;
  const auto& model = prep.motion.model();

  std::string text;
  if (format_of(cfg, "csv") == "csv") {
    std::string header = "t";
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        const std::string id = std::to_string(r) + "_" + std::to_string(c);
        header += ",rep_" + id + "_re,rep_" + id + "_im";
      }
    }
    if (model) {
      const auto cols = static_cast<std::size_t>(model->base.cols());
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
          const std::string id = cols == 1 ? std::to_string(r) : std::to_string(r) + "_" + std::to_string(c);
          header += ",model_" + id + "_re,model_" + id + "_im";
        }
      }
    }
    text = header + ",speed\n";
    for (const auto& s : samples) {
      std::string row = fmt_double(s.t);
      const Matrix& a = s.representative.matrix();
      for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
          row += "," + fmt_double(a(r, c).real()) + "," + fmt_double(a(r, c).imag());
        }
      }
      if (s.model_point) {
        const Matrix& m = *s.model_point;
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
          for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row += "," + fmt_double(m(r, c).real()) + "," + fmt_double(m(r, c).imag());
          }
        }
      }
      text += row + "," + fmt_double(s.speed) + "\n";
    }
  } else {
    auto matrix = [](const Matrix& m) {
      Json rows = Json::array();
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(row);
      }
      return rows;
    };
    Json rows = Json::array();
    for (const auto& s : samples) {
      Json j{{"t", s.t}, {"representative", matrix(s.representative.matrix())}};
      if (s.model_point) j["model"] = matrix(*s.model_point);
      j["speed"] = s.speed;
      rows.push_back(j);
    }
    Json doc{{"space", prep.entry.name}, {"lambda", prep.motion.system().lambda()},
             {"k", prep.motion.system().charge()}, {"samples", rows}};
    text = doc.dump(2) + "\n";
  }
  emit(cfg, text, out);
  return kPass;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Prepared prep = prepare(cfg);
  const ClosedFormMotion& motion = prep.motion;
  const ChargedSystem& sys = motion.system();
  const double tol = cfg.tol.value_or(default_tolerance(kDefaultResidualTolerance));
  if (!(tol > 0.0)) throw ParseError("--tol must be positive");

  ResidualConfig rc;
  rc.fd_step = cfg.fd_step;
  rc.tolerance = tol;
  rc.t_samples = uniform_times(cfg.t0, cfg.t1, cfg.samples);
  const ResidualReport koszul = koszul_sweep(motion, rc);

  double algebraic = 0.0;
  double transport_module = 0.0;
  double velocity_residual = 0.0;
  const auto probes = metric_orthonormal_basis(sys);
  for (double t : rc.t_samples) {
    for (const auto& z : probes) algebraic = std::max(algebraic, algebraic_identity_check(motion, t, z));
    transport_module = std::max(transport_module, transport_module_residual(motion, t));
    velocity_residual = std::max(velocity_residual, body_velocity_residual(motion, t));
  }
  const ConservationReport cons = conservation_sweep(motion, cfg.t0, cfg.t1, cfg.samples);

  bool passed = koszul.passed(tol);
  auto check = [&passed](double value, double limit) {
    const bool ok = value <= limit;
    passed = passed && ok;
    return Json{{"max", value}, {"tolerance", limit}, {"passed", ok}};
  };

  Json special = Json::object();
  if (sys.lambda() == 1.0) {
    special["lambda_collapse"] = check(lambda_collapse_check(motion, rc.t_samples), kCollapseTolerance);
  }
  const auto& entry = prep.entry;
  if (entry.model && entry.model->kind == BasePointModel::Kind::Vector && sys.charge() == 0.0 &&
      entry.round_ratio && sys.lambda() == *entry.round_ratio) {
    const GreatCircleReport gc = great_circle_check(motion, cfg.t0, cfg.t1, cfg.samples);
    Json j = check(std::max(gc.max_norm_error, gc.max_planarity), kGreatCircleTolerance);
    j["max_norm_error"] = gc.max_norm_error;
    j["max_planarity"] = gc.max_planarity;
    special["great_circle"] = j;
  }
  const ReductiveSplit& split = sys.split();
  if (entry.model && entry.model->kind == BasePointModel::Kind::Orbit && split.ambient() == 2 &&
      split.g().dim() == 3 && split.module_count() == 1 && !sys.pair().b) {
    const std::vector<double> charges{0.5, 1.0, 2.0};
    const MagneticCircleReport mc =
        magnetic_circle_check(sys, *entry.model, motion.xa(), charges, rc.t_samples, cfg.fd_step);
    Json profiles = Json::array();
    for (const auto& p : mc.profiles) {
      profiles.push_back({{"k", p.charge}, {"mean_curvature", p.mean}, {"spread", p.spread}});
    }
    Json j = check(mc.max_spread, kCurvatureSpreadTolerance);
    j["strictly_increasing"] = mc.strictly_increasing;
    j["profiles"] = profiles;
    j["passed"] = j["passed"].get<bool>() && mc.strictly_increasing;
    passed = passed && mc.strictly_increasing;
    special["magnetic_circle"] = j;
  }

  const Json algebraic_j = check(algebraic, kAlgebraicTolerance);
  const Json module_j = check(transport_module, kTransportModuleTolerance);
  const Json velocity_j = check(velocity_residual, kBodyVelocityTolerance);
  Json conservation_j = check(cons.max_deviation, kConservationTolerance);
  conservation_j["initial_speed"] = cons.initial_speed;
  conservation_j["t_at_max"] = cons.t_at_max;

  const KoszulTerms& worst = koszul.entries.at(koszul.argmax);
  std::string text;
  if (format_of(cfg, "json-tree") == "csv") {
    text = "t,probe,t1,t2,t3,rhs,residual\n";
    for (const auto& e : koszul.entries) {
      text += fmt_double(e.t) + "," + std::to_string(e.probe) + "," + fmt_double(e.t1) + "," +
              fmt_double(e.t2) + "," + fmt_double(e.t3) + "," + fmt_double(e.rhs) + "," +
              fmt_double(e.residual) + "\n";
    }
  } else {
    Json entries = Json::array();
    for (const auto& e : koszul.entries) {
      entries.push_back({{"t", e.t}, {"probe", e.probe}, {"t1", e.t1}, {"t2", e.t2},
                         {"t3", e.t3}, {"rhs", e.rhs}, {"residual", e.residual}});
    }
    Json dims = Json::array();
    for (auto d : entry.module_dims()) dims.push_back(d);
    Json doc;
    doc["space"] = entry.name;
    doc["module_dims"] = dims;
    doc["pair"] = pair_json(sys.pair());
    doc["weights"] = sys.metric().weights();
    doc["lambda"] = sys.lambda();
    doc["k"] = sys.charge();
    doc["xa"] = coefficients(sys.ma(), motion.xa());
    doc["xb"] = coefficients(sys.mb(), motion.xb());
    doc["perturb"] = cfg.perturb;
    doc["config"] = {{"t0", cfg.t0}, {"t1", cfg.t1}, {"samples", cfg.samples},
                     {"fd_step", cfg.fd_step}, {"tolerance", tol}, {"seed", cfg.seed}};
    doc["koszul"] = {{"max_abs_residual", koszul.max_abs_residual},
                     {"argmax", {{"t", worst.t}, {"probe", worst.probe}}},
                     {"tolerance", tol},
                     {"passed", koszul.passed(tol)},
                     {"entries", entries}};
    doc["algebraic_identity"] = algebraic_j;
    doc["transport_module_invariance"] = module_j;
    doc["body_velocity"] = velocity_j;
    doc["conservation"] = conservation_j;
    doc["special"] = special;
    doc["passed"] = passed;
    text = doc.dump(2) + "\n";
  }
  emit(cfg, text, out);
  if (cfg.out) {
    out << "verify " << (passed ? "PASS" : "FAIL")
        << " max_koszul_residual=" << fmt_double(koszul.max_abs_residual) << "\n";
  }
  return passed ? kPass : kFail;
}

int cmd_catalog_list(std::ostream& out) {
  for (const auto& name : catalog_names()) {
    const CatalogEntry e = catalog_lookup(name);
    std::string dims;
    for (auto d : e.module_dims()) dims += (dims.empty() ? "" : ",") + std::to_string(d);
    const char* model = !e.model ? "none"
                        : e.model->kind == BasePointModel::Kind::Vector ? "vector"
                                                                        : "orbit";
    out << name << "\tn=" << e.ambient << "\tdims=(" << dims << ")\tpair="
        << e.pair.a + 1 << "," << (e.pair.b ? *e.pair.b + 1 : 0) << "\tmodel=" << model << "\t"
        << e.description << "\n";
  }
  return kPass;
}

int cmd_catalog_export(const std::string& name, const std::optional<std::string>& path,
                       std::ostream& out, std::ostream&) {
  RunConfig cfg;
  cfg.out = path;
  emit(cfg, export_document(catalog_lookup(name)), out);
  return kPass;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Charged-particle motion on reductive homogeneous spaces", "homofiber"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_space = [&cfg](CLI::App* sub) {
    sub->add_option("--space", cfg.space, "catalog name or path to a space document");
    sub->add_option("--pair", cfg.pair, "module pair a,b (1-based, b = 0 for m_b = 0)");
    sub->add_option("--W-scale", cfg.w_scale, "scalar multiple of the entry's W");
    sub->add_option("--tol", cfg.tol, "tolerance");
    sub->add_option("--out", cfg.out, "output file");
    sub->add_option("--format", cfg.format, "csv or json-tree");
  };
  auto add_motion = [&cfg](CLI::App* sub) {
    sub->add_option("--lambda", cfg.lambdas, "metric weight per module (repeat)")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    sub->add_option("--k", cfg.k, "charge constant");
    sub->add_option("--fiber-ratio", cfg.fiber_ratio, "lambda when m_b = 0");
    sub->add_option("--xa", cfg.xa, "X_a coefficients in the m_a basis")->delimiter(',');
    sub->add_option("--xb", cfg.xb, "X_b coefficients in the m_b basis")->delimiter(',');
    sub->add_option("--t0", cfg.t0);
    sub->add_option("--t1", cfg.t1);
    sub->add_option("--samples", cfg.samples);
    sub->add_option("--fd-step", cfg.fd_step);
    sub->add_option("--seed", cfg.seed);
    sub->add_option("--perturb", cfg.perturb, "perturb the second generator by eps N, N in m_a");
  };

  CLI::App* validate_cmd = app.add_subcommand("validate", "check the structural conditions");
  add_space(validate_cmd);
  CLI::App* simulate_cmd = app.add_subcommand("simulate", "sample the closed-form trajectory");
  add_space(simulate_cmd);
  add_motion(simulate_cmd);
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the residual checks");
  add_space(verify_cmd);
  add_motion(verify_cmd);

  CLI::App* catalog_cmd = app.add_subcommand("catalog", "list or export built-in spaces");
  catalog_cmd->require_subcommand(1);
  catalog_cmd->add_subcommand("list", "list built-in spaces");
  CLI::App* export_cmd = catalog_cmd->add_subcommand("export", "print a space document");
  std::string export_name;
  export_cmd->add_option("name", export_name)->required();
  export_cmd->add_option("--out", cfg.out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(cfg, out, err);
    if (*simulate_cmd) return cmd_simulate(cfg, out, err);
    if (*verify_cmd) return cmd_verify(cfg, out, err);
    if (catalog_cmd->got_subcommand("list")) return cmd_catalog_list(out);
    return cmd_catalog_export(export_name, cfg.out, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFail;
  }
}

}  // namespace homofiber::cli
