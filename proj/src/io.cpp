#include "lckw/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace lckw {

namespace {

std::string at_index(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

Rational parse_scalar(const Json& v, const std::string& field) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError(field, std::string("bad rational: ") + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number_unsigned()) return Rational(v.get<unsigned long long>());
  if (v.is_number_float()) return Rational(v.get<double>());
  throw ParseError(field, "expected a rational string or a number");
}

std::size_t parse_index(const Json& v, const std::string& field, std::size_t dim) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) throw ParseError(field, "expected an integer index");
  const long long x = v.get<long long>();
  if (x < 1 || static_cast<std::size_t>(x) > dim) throw ParseError(field, "index out of range 1.." + std::to_string(dim));
  return static_cast<std::size_t>(x);
}

Vec<Rational> parse_vector(const Json& v, const std::string& field, std::size_t n) {
  if (!v.is_array() || v.size() != n) throw ParseError(field, "expected an array of length " + std::to_string(n));
  Vec<Rational> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = parse_scalar(v[i], at_index(field, i));
  return out;
}

Matrix<Rational> parse_matrix(const Json& v, const std::string& field, std::size_t n) {
  if (!v.is_array() || v.size() != n) throw ParseError(field, "expected " + std::to_string(n) + " rows");
  Matrix<Rational> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec<Rational> row = parse_vector(v[i], at_index(field, i), n);
    for (std::size_t j = 0; j < n; ++j) m(i, j) = row[j];
  }
  return m;
}

const Json& require(const Json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(key, "missing required field");
  return *it;
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  const std::size_t end = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
}

template <class S>
Matrix<S> cast_matrix(const Matrix<Rational>& m) {
  Matrix<S> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = from_rational<S>(m(i, j));
  return out;
}

template <class S>
Vec<S> cast_vector(const Vec<Rational>& v) {
  Vec<S> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = from_rational<S>(v[i]);
  return out;
}

void check_jacobi(const StructureFile& f, double tol) {
  const ValidationReport rep = validate_algebra(f.algebra(), tol);
  if (!rep.jacobi) throw ValidationError("jacobi", "structure constants violate the Jacobi identity");
}

}  // namespace

std::optional<std::string> StructureFile::expected_class() const {
  auto it = metadata.find("expected_class");
  if (it == metadata.end() || !it->is_string()) return std::nullopt;
  return it->get<std::string>();
}

LieAlgebra<Rational> StructureFile::algebra() const {
  LieAlgebra<Rational> alg(dim);
  for (const auto& b : brackets) alg.add_bracket_term(b.i - 1, b.j - 1, b.k - 1, b.coeff);
  return alg;
}

StructureFile parse_structure_file(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("line " + std::to_string(line_of(text, e.byte)), "malformed JSON");
  }
  if (!doc.is_object()) throw ParseError("<document>", "expected a JSON object");
  static const char* known[] = {"name", "dim", "mode", "brackets", "J", "g", "sasaki", "metadata"};
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (std::find(std::begin(known), std::end(known), it.key()) == std::end(known))
      throw ParseError(it.key(), "unknown field");

  StructureFile f;
  const Json& name = require(doc, "name");
  if (!name.is_string()) throw ParseError("name", "expected a string");
  f.name = name.get<std::string>();

  const Json& dim = require(doc, "dim");
  if (!dim.is_number_integer() || dim.get<long long>() < 1) throw ParseError("dim", "expected a positive integer");
  f.dim = dim.get<std::size_t>();

  if (auto it = doc.find("mode"); it != doc.end()) {
    if (!it->is_string()) throw ParseError("mode", "expected \"rational\" or \"float\"");
    try {
      f.mode = parse_mode(it->get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError("mode", e.what());
    }
  }

  if (auto it = doc.find("brackets"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("brackets", "expected an array");
    for (std::size_t n = 0; n < it->size(); ++n) {
      const Json& b = (*it)[n];
      const std::string field = at_index("brackets", n);
      if (!b.is_object()) throw ParseError(field, "expected an object {i, j, k, coeff}");
      for (const char* key : {"i", "j", "k", "coeff"})
        if (!b.contains(key)) throw ParseError(field + "." + key, "missing");
      StructureFile::Bracket br;
      br.i = parse_index(b["i"], field + ".i", f.dim);
      br.j = parse_index(b["j"], field + ".j", f.dim);
      br.k = parse_index(b["k"], field + ".k", f.dim);
      if (br.i >= br.j) throw ParseError(field, "bracket entries need i < j");
      br.coeff = parse_scalar(b["coeff"], field + ".coeff");
      f.brackets.push_back(br);
    }
  }

  if (auto it = doc.find("J"); it != doc.end()) f.J = parse_matrix(*it, "J", f.dim);
  f.g = parse_matrix(require(doc, "g"), "g", f.dim);

  if (auto it = doc.find("sasaki"); it != doc.end()) {
    if (!it->is_object()) throw ParseError("sasaki", "expected an object {eta, xi, Phi}");
    SasakiBlock s;
    s.eta = parse_vector(require(*it, "eta"), "sasaki.eta", f.dim);
    s.xi = parse_vector(require(*it, "xi"), "sasaki.xi", f.dim);
    s.Phi = parse_matrix(require(*it, "Phi"), "sasaki.Phi", f.dim);
    f.sasaki = std::move(s);
  }

  if (auto it = doc.find("metadata"); it != doc.end()) {
    if (!it->is_object()) throw ParseError("metadata", "expected an object");
    f.metadata = *it;
  }
  return f;
}

StructureFile load_structure_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_structure_file(ss.str());
}

Json to_json(const StructureFile& f) {
  Json doc;
  doc["name"] = f.name;
  doc["dim"] = f.dim;
  doc["mode"] = to_string(f.mode);
  auto sorted = f.brackets;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
  });
  Json br = Json::array();
  for (const auto& b : sorted) br.push_back({{"i", b.i}, {"j", b.j}, {"k", b.k}, {"coeff", format_rational(b.coeff)}});
  doc["brackets"] = std::move(br);
  if (f.J) doc["J"] = matrix_json(*f.J);
  doc["g"] = matrix_json(f.g);
  if (f.sasaki) doc["sasaki"] = {{"eta", vector_json(f.sasaki->eta)}, {"xi", vector_json(f.sasaki->xi)}, {"Phi", matrix_json(f.sasaki->Phi)}};
  doc["metadata"] = f.metadata;
  return doc;
}

namespace {

bool is_flat(const Json& j) {
  if (!j.is_structured()) return false;
  for (const auto& v : j)
    if (v.is_structured()) return false;
  return true;
}

void dump_into(std::string& out, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  const std::string inner(static_cast<std::size_t>(2 * depth + 2), ' ');
  if (!j.is_structured()) {
    // Print signed zeros as 0.0 so reports do not depend on rounding direction.
    if (j.is_number_float() && j.get<double>() == 0.0) {
      out += "0.0";
      return;
    }
    out += j.dump();
    return;
  }
  const bool obj = j.is_object();
  if (j.empty()) {
    out += obj ? "{}" : "[]";
    return;
  }
  const bool flat = is_flat(j);
  out += obj ? '{' : '[';
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) out += flat ? ", " : ",";
    first = false;
    if (!flat) out += "\n" + inner;
    if (obj) out += Json(it.key()).dump() + ": ";
    dump_into(out, *it, depth + 1);
  }
  if (!flat) out += "\n" + pad;
  out += obj ? '}' : ']';
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  dump_into(out, j, 0);
  out += "\n";
  return out;
}

std::string serialize(const StructureFile& f) { return dump_json(to_json(f)); }

namespace {

void fill_brackets(StructureFile& f, const LieAlgebra<Rational>& alg) {
  for (std::size_t i = 0; i < alg.dim(); ++i)
    for (std::size_t j = i + 1; j < alg.dim(); ++j)
      for (std::size_t k = 0; k < alg.dim(); ++k)
        if (alg.c(i, j, k) != 0) f.brackets.push_back({i + 1, j + 1, k + 1, alg.c(i, j, k)});
}

}  // namespace

StructureFile structure_file_from(const HermitianStructure<Rational>& h, std::string name, Json metadata) {
  StructureFile f;
  f.name = std::move(name);
  f.dim = h.dim();
  fill_brackets(f, h.algebra());
  f.J = h.J().matrix();
  f.g = h.g().m;
  f.metadata = std::move(metadata);
  return f;
}

StructureFile structure_file_from(const SasakiStructure<Rational>& s, std::string name, Json metadata) {
  StructureFile f;
  f.name = std::move(name);
  f.dim = s.dim();
  fill_brackets(f, s.alg);
  f.g = s.g_S.m;
  f.sasaki = SasakiBlock{s.eta.as_vector(), s.xi, s.Phi.m};
  f.metadata = std::move(metadata);
  return f;
}

template <class S>
HermitianStructure<S> to_hermitian(const StructureFile& f, double tol) {
  if (!f.J) throw ValidationError("almost-complex", "document has no complex structure J");
  check_jacobi(f, tol);
  HermitianStructure<S> h(f.algebra().template cast<S>(), ComplexStructure<S>(Endomorphism<S>(cast_matrix<S>(*f.J)), tol),
                          SymTensor<S>(cast_matrix<S>(f.g)), tol);
  if (nijenhuis_check(h.algebra(), h.J()) > (ScalarTraits<S>::exact ? 0.0 : tol))
    throw ValidationError("integrability", "Nijenhuis tensor of J does not vanish");
  return h;
}

template <class S>
SasakiStructure<S> to_sasaki(const StructureFile& f, double tol) {
  if (!f.sasaki) throw ValidationError("sasaki", "document has no sasaki block");
  if (f.dim % 2 == 0) throw ValidationError("sasaki", "Sasaki algebras have odd dimension");
  check_jacobi(f, tol);
  if (!is_positive_definite(f.g)) throw ValidationError("metric", "g is not positive definite");
  SasakiStructure<S> s;
  s.alg = f.algebra().template cast<S>();
  s.g_S = SymTensor<S>(cast_matrix<S>(f.g));
  s.eta = KForm<S>::one_form(cast_vector<S>(f.sasaki->eta));
  s.xi = cast_vector<S>(f.sasaki->xi);
  s.Phi = Endomorphism<S>(cast_matrix<S>(f.sasaki->Phi));
  const SasakiCheck chk = check_sasaki(s, tol);
  if (!chk.pass) throw ValidationError("sasaki", "contact metric axioms fail");
  return s;
}

template HermitianStructure<Rational> to_hermitian<Rational>(const StructureFile&, double);
template HermitianStructure<double> to_hermitian<double>(const StructureFile&, double);
template SasakiStructure<Rational> to_sasaki<Rational>(const StructureFile&, double);
template SasakiStructure<double> to_sasaki<double>(const StructureFile&, double);

}  // namespace lckw
