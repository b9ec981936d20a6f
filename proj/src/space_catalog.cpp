#include "homofiber/space_catalog.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace homofiber {

using Json = nlohmann::ordered_json;

namespace {

const Complex kI{0.0, 1.0};

Matrix unit_matrix(std::size_t n, std::size_t r, std::size_t c, Complex value) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = value;
  return m;
}

// E_rc − E_cr and i(E_rc + E_cr).
AlgebraElement real_root(std::size_t n, std::size_t r, std::size_t c) {
  return AlgebraElement::from_matrix(unit_matrix(n, r, c, 1.0) - unit_matrix(n, c, r, 1.0));
}

AlgebraElement imag_root(std::size_t n, std::size_t r, std::size_t c) {
  return AlgebraElement::from_matrix(unit_matrix(n, r, c, kI) + unit_matrix(n, c, r, kI));
}

AlgebraElement diag_i(const std::vector<double>& d) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) v(static_cast<Eigen::Index>(i)) = kI * d[i];
  return AlgebraElement::from_matrix(v.asDiagonal().toDenseMatrix());
}

// u(m) embedded in the top-left block of n×n matrices.
std::vector<AlgebraElement> unitary_block(std::size_t n, std::size_t m) {
  std::vector<AlgebraElement> out;
  for (std::size_t j = 0; j < m; ++j) out.push_back(AlgebraElement::from_matrix(unit_matrix(n, j, j, kI)));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t l = j + 1; l < m; ++l) {
      out.push_back(real_root(n, j, l));
      out.push_back(imag_root(n, j, l));
    }
  }
  return out;
}

void build_entry_split(CatalogEntry& e) {
  if (e.k_basis && e.module_bases) {
    throw ParseError("space document may give k_basis or module_bases, not both");
  }
  if (e.k_basis) {
    e.split = build_split(SubalgebraChain{e.ambient, e.g_basis, *e.k_basis, e.h_basis}, e.tolerance);
  } else if (e.module_bases) {
    e.split = build_custom_split(e.ambient, e.g_basis, e.h_basis, *e.module_bases, e.tolerance);
  } else {
    // Single module m = h^⊥ in g.
    const Subspace g = orthonormalize(e.ambient, e.g_basis);
    const Subspace h = orthonormalize(e.ambient, e.h_basis);
    e.split = build_custom_split(e.ambient, e.g_basis, e.h_basis, {complement(g, h).basis()},
                                 e.tolerance);
  }
}

}  // namespace

std::vector<std::size_t> CatalogEntry::module_dims() const {
  std::vector<std::size_t> d;
  for (const auto& m : split.modules()) d.push_back(m.dim());
  return d;
}

ValidationReport CatalogEntry::validate() const {
  return homofiber::validate(split, pair, w, tolerance);
}

ChargedSystem make_system(const CatalogEntry& entry, const SystemOptions& opts) {
  const double tol = opts.tolerance.value_or(entry.tolerance);
  return ChargedSystem(entry.split, DiagonalMetric(opts.weights.value_or(entry.weights)),
                       opts.pair.value_or(entry.pair), opts.w_scale * entry.w,
                       opts.charge.value_or(entry.charge), tol,
                       opts.fiber_ratio.value_or(entry.fiber_ratio));
}

std::vector<AlgebraElement> su2_basis() {
  Matrix a1(2, 2), a2(2, 2), a3(2, 2);
  a1 << 0.0, 1.0, -1.0, 0.0;
  a2 << 0.0, kI, kI, 0.0;
  a3 << kI, 0.0, 0.0, -kI;
  return {AlgebraElement::from_matrix(a1), AlgebraElement::from_matrix(a2),
          AlgebraElement::from_matrix(a3)};
}

CatalogEntry hopf(int n) {
  if (n < 1) throw DomainError("hopf(n) needs n >= 1, got " + std::to_string(n));
  const std::size_t size = static_cast<std::size_t>(n) + 1;
  CatalogEntry e;
  e.name = "hopf" + std::to_string(n);
  e.description = "S^" + std::to_string(2 * n + 1) + " = U(" + std::to_string(size) + ")/U(" +
                  std::to_string(n) + ") over CP^" + std::to_string(n);
  e.ambient = size;
  e.g_basis = unitary_block(size, size);
  e.h_basis = unitary_block(size, size - 1);
  e.k_basis = e.h_basis;
  e.k_basis->push_back(AlgebraElement::from_matrix(unit_matrix(size, size - 1, size - 1, kI)));
  build_entry_split(e);

  std::vector<double> w(size, 1.0);
  w.back() = 0.0;
  e.w = diag_i(w);
  e.weights = {1.0, 1.0};
  e.pair = {0, 1};
  e.round_ratio = 2.0;
  Eigen::VectorXcd v0 = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(size));
  v0(static_cast<Eigen::Index>(size - 1)) = 1.0;
  e.model = BasePointModel::vector(v0);
  return e;
}

CatalogEntry lie_group(LieGroupKind group, std::optional<std::vector<AlgebraElement>> subgroup_basis) {
  CatalogEntry e;
  e.ambient = 2;
  e.g_basis = su2_basis();
  if (group == LieGroupKind::SU2) {
    e.name = "lie-su2";
    e.description = "SU(2) as SU(2)/{e}, left-invariant metric B|m + lambda B|k";
    e.k_basis = subgroup_basis.value_or(std::vector<AlgebraElement>{e.g_basis[2]});
  } else {
    e.name = "lie-u2";
    e.description = "U(2) as U(2)/{e}, left-invariant metric B|m + lambda B|k";
    e.g_basis = unitary_block(2, 2);
    e.k_basis = subgroup_basis.value_or(
        std::vector<AlgebraElement>{e.g_basis[0], e.g_basis[1]});
  }
  build_entry_split(e);
  e.w = AlgebraElement::zero(2);
  e.weights = {1.0, 1.0};
  e.pair = {0, 1};
  return e;
}

CatalogEntry kahler_s2() {
  CatalogEntry e;
  e.name = "kahler-s2";
  e.description = "S^2 = SU(2)/U(1), single module, m_b = 0";
  e.ambient = 2;
  e.g_basis = su2_basis();
  e.h_basis = {e.g_basis[2]};
  e.module_bases = std::vector<std::vector<AlgebraElement>>{{e.g_basis[0], e.g_basis[1]}};
  build_entry_split(e);
  e.w = e.g_basis[2] / std::sqrt(2.0);
  e.weights = {1.0};
  e.pair = {0, std::nullopt};
  e.model = BasePointModel::orbit(e.g_basis[2].matrix());
  return e;
}

CatalogEntry twistor_su3() {
  CatalogEntry e;
  e.name = "twistor-su3";
  e.description = "SU(3)/T^2 over CP^2, fiber S^2";
  e.ambient = 3;
  const AlgebraElement t1 = diag_i({1.0, -1.0, 0.0});
  const AlgebraElement t2 = diag_i({1.0, 1.0, -2.0});
  e.h_basis = {t1, t2};
  e.g_basis = {t1, t2};
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t l = j + 1; l < 3; ++l) {
      e.g_basis.push_back(real_root(3, j, l));
      e.g_basis.push_back(imag_root(3, j, l));
    }
  }
  e.k_basis = std::vector<AlgebraElement>{t1, t2, real_root(3, 0, 1), imag_root(3, 0, 1)};
  build_entry_split(e);
  e.w = t2 / std::sqrt(6.0);
  e.weights = {1.0, 1.0};
  e.pair = {0, 1};
  e.model = BasePointModel::orbit(diag_i({1.0, 0.0, -1.0}).matrix());
  return e;
}

std::vector<std::string> catalog_names() {
  return {"hopf1", "hopf2", "hopf3", "lie-su2", "lie-u2", "kahler-s2", "twistor-su3"};
}

CatalogEntry catalog_lookup(std::string_view name) {
  if (name == "lie-su2") return lie_group(LieGroupKind::SU2);
  if (name == "lie-u2") return lie_group(LieGroupKind::U2);
  if (name == "kahler-s2") return kahler_s2();
  if (name == "twistor-su3") return twistor_su3();
  if (name.starts_with("hopf") && name.size() > 4) {
    const std::string digits(name.substr(4));
    if (digits.find_first_not_of("0123456789") == std::string::npos && digits.size() < 4) {
      return hopf(std::stoi(digits));
    }
  }
  throw DomainError("unknown catalog space '" + std::string(name) + "'");
}

// Space document.

namespace {

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json basis_json(const std::vector<AlgebraElement>& basis) {
  Json out = Json::array();
  for (const auto& b : basis) out.push_back(matrix_json(b.matrix()));
  return out;
}

const Json& field(const Json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("space document is missing '") + key + "'");
  return doc.at(key);
}

double number(const Json& j, const std::string& what) {
  if (!j.is_number()) throw ParseError(what + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(what + " must be finite");
  return v;
}

Complex complex_of(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) throw ParseError(what + " must be a [re, im] pair");
  return {number(j[0], what), number(j[1], what)};
}

Matrix matrix_of(const Json& j, std::size_t n, const std::string& what) {
  if (!j.is_array() || j.size() != n) {
    throw ParseError(what + " must have " + std::to_string(n) + " rows");
  }
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) {
      throw ParseError(what + " row " + std::to_string(r) + " must have " + std::to_string(n) +
                       " entries");
    }
    for (std::size_t c = 0; c < n; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_of(j[r][c], what);
    }
  }
  return m;
}

AlgebraElement algebra_of(const Json& j, std::size_t n, const std::string& what) {
  const Matrix m = matrix_of(j, n, what);
  AlgebraElement x = AlgebraElement::unchecked(m);
  if (!x.is_skew_hermitian(kUserTolerance)) throw ParseError(what + " is not skew-Hermitian");
  return x;
}

std::vector<AlgebraElement> basis_of(const Json& j, std::size_t n, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + " must be a list of matrices");
  std::vector<AlgebraElement> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(algebra_of(j[i], n, what + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

std::string export_document(const CatalogEntry& entry) {
  Json doc;
  doc["name"] = entry.name;
  doc["description"] = entry.description;
  doc["ambient_n"] = entry.ambient;
  doc["g_basis"] = basis_json(entry.g_basis);
  doc["h_basis"] = basis_json(entry.h_basis);
  if (entry.k_basis) doc["k_basis"] = basis_json(*entry.k_basis);
  if (entry.module_bases) {
    Json mods = Json::array();
    for (const auto& m : *entry.module_bases) mods.push_back(basis_json(m));
    doc["module_bases"] = std::move(mods);
  }
  doc["weights"] = entry.weights;
  doc["pair"] = Json::array({entry.pair.a + 1, entry.pair.b ? *entry.pair.b + 1 : 0});
  doc["W"] = matrix_json(entry.w.matrix());
  doc["k"] = entry.charge;
  doc["fiber_ratio"] = entry.fiber_ratio;
  if (entry.round_ratio) doc["round_ratio"] = *entry.round_ratio;
  if (entry.model) {
    Json model;
    if (entry.model->kind == BasePointModel::Kind::Vector) {
      model["kind"] = "vector";
      Json v = Json::array();
      for (Eigen::Index i = 0; i < entry.model->base.rows(); ++i) {
        v.push_back(complex_json(entry.model->base(i, 0)));
      }
      model["base"] = std::move(v);
    } else {
      model["kind"] = "orbit";
      model["base"] = matrix_json(entry.model->base);
    }
    doc["model"] = std::move(model);
  } else {
    doc["model"] = nullptr;
  }
  doc["tolerance"] = entry.tolerance;
  return doc.dump(2) + "\n";
}

CatalogEntry load_custom(std::string_view document) {
  Json doc;
  try {
    doc = Json::parse(document);
  } catch (const Json::exception& ex) {
    throw ParseError(std::string("space document is not valid JSON: ") + ex.what());
  }
  if (!doc.is_object()) throw ParseError("space document must be a JSON object");

  CatalogEntry e;
  try {
    e.name = doc.value("name", std::string("custom"));
    e.description = doc.value("description", std::string());
  } catch (const Json::exception&) {
    throw ParseError("name and description must be strings");
  }
  const Json& n_json = field(doc, "ambient_n");
  if (!n_json.is_number_unsigned() || n_json.get<std::size_t>() == 0) {
    throw ParseError("ambient_n must be a positive integer");
  }
  e.ambient = n_json.get<std::size_t>();
  const std::size_t n = e.ambient;
  e.g_basis = basis_of(field(doc, "g_basis"), n, "g_basis");
  e.h_basis = basis_of(field(doc, "h_basis"), n, "h_basis");
  if (doc.contains("k_basis")) e.k_basis = basis_of(doc["k_basis"], n, "k_basis");
  if (doc.contains("module_bases")) {
    const Json& mods = doc["module_bases"];
    if (!mods.is_array()) throw ParseError("module_bases must be a list of bases");
    std::vector<std::vector<AlgebraElement>> bases;
    for (std::size_t i = 0; i < mods.size(); ++i) {
      bases.push_back(basis_of(mods[i], n, "module_bases[" + std::to_string(i) + "]"));
    }
    e.module_bases = std::move(bases);
  }
  if (doc.contains("tolerance")) e.tolerance = number(doc["tolerance"], "tolerance");
  else e.tolerance = kUserTolerance;
  if (!(e.tolerance > 0.0)) throw ParseError("tolerance must be positive");

  build_entry_split(e);

  if (doc.contains("weights")) {
    const Json& ws = doc["weights"];
    if (!ws.is_array()) throw ParseError("weights must be a list of numbers");
    for (std::size_t i = 0; i < ws.size(); ++i) {
      e.weights.push_back(number(ws[i], "weights[" + std::to_string(i) + "]"));
    }
  } else {
    e.weights.assign(e.split.module_count(), 1.0);
  }

  if (doc.contains("pair")) {
    const Json& p = doc["pair"];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer()) {
      throw ParseError("pair must be [a, b] with 1-based integers (b = 0 for m_b = 0)");
    }
    const long a = p[0].get<long>();
    const long b = p[1].get<long>();
    if (a < 1 || b < 0) throw ParseError("pair indices are 1-based; b = 0 means m_b = 0");
    e.pair.a = static_cast<std::size_t>(a - 1);
    if (b > 0) e.pair.b = static_cast<std::size_t>(b - 1);
  } else {
    e.pair = {0, e.split.module_count() > 1 ? std::optional<std::size_t>(1) : std::nullopt};
  }
  if (e.pair.a >= e.split.module_count() || (e.pair.b && *e.pair.b >= e.split.module_count())) {
    throw ParseError("pair refers to a module that does not exist");
  }

  e.w = doc.contains("W") ? algebra_of(doc["W"], n, "W") : AlgebraElement::zero(n);
  if (doc.contains("k")) e.charge = number(doc["k"], "k");
  if (doc.contains("fiber_ratio")) e.fiber_ratio = number(doc["fiber_ratio"], "fiber_ratio");
  if (doc.contains("round_ratio")) e.round_ratio = number(doc["round_ratio"], "round_ratio");

  if (doc.contains("model") && !doc["model"].is_null()) {
    const Json& model = doc["model"];
    if (!model.is_object()) throw ParseError("model must be an object or null");
    const std::string kind = model.value("kind", std::string());
    const Json& base = field(model, "base");
    if (kind == "vector") {
      if (!base.is_array() || base.size() != n) {
        throw ParseError("vector model base must have " + std::to_string(n) + " entries");
      }
      Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i < n; ++i) {
        v(static_cast<Eigen::Index>(i)) = complex_of(base[i], "model base");
      }
      e.model = BasePointModel::vector(v);
    } else if (kind == "orbit") {
      e.model = BasePointModel::orbit(matrix_of(base, n, "model base"));
    } else {
      throw ParseError("model kind must be 'vector' or 'orbit'");
    }
  }
  return e;
}

CatalogEntry load_custom_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read space document '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_custom(buf.str());
}

}  // namespace homofiber
