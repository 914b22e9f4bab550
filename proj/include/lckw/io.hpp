#pragma once

#include "lckw/hermitian.hpp"
#include "lckw/sasaki.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lckw {

using Json = nlohmann::ordered_json;

/// Malformed structure document. `field()` is a JSON-pointer-like path to the
/// offending entry, e.g. "brackets[2].i".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Contact data stored alongside an odd-dimensional algebra.
struct SasakiBlock {
  Vec<Rational> eta;
  Vec<Rational> xi;
  Matrix<Rational> Phi;
};

/// In-memory form of a structure file. Indices in `brackets` are 1-based as
/// on disk; coefficients are kept exact whatever the declared mode.
struct StructureFile {
  struct Bracket {
    std::size_t i = 0, j = 0, k = 0;
    Rational coeff;
  };

  std::string name;
  std::size_t dim = 0;
  ScalarMode mode = ScalarMode::Rational;
  std::vector<Bracket> brackets;
  /// Absent for pure Sasaki documents.
  std::optional<Matrix<Rational>> J;
  Matrix<Rational> g;
  std::optional<SasakiBlock> sasaki;
  /// Free-form object; "expected_class" is interpreted by the suite.
  Json metadata = Json::object();

  std::optional<std::string> expected_class() const;
  LieAlgebra<Rational> algebra() const;
};

StructureFile parse_structure_file(const std::string& text);
/// Reads and parses; I/O failures throw std::runtime_error.
StructureFile load_structure_file(const std::string& path);

/// Canonical document: fixed key order, rationals as "p" or "p/q" strings,
/// brackets sorted by (i, j, k), two-space indentation, trailing newline.
Json to_json(const StructureFile& f);
/// Two-space indented JSON with flat arrays and objects kept on one line.
std::string dump_json(const Json& j);
std::string serialize(const StructureFile& f);

StructureFile structure_file_from(const HermitianStructure<Rational>& h, std::string name, Json metadata = Json::object());
StructureFile structure_file_from(const SasakiStructure<Rational>& s, std::string name, Json metadata = Json::object());

/// Builds and validates the Hermitian structure: Jacobi, J² = -Id, g
/// symmetric positive definite, g(J·,J·) = g, integrability. Failures throw
/// ValidationError naming the invariant.
template <class S>
HermitianStructure<S> to_hermitian(const StructureFile& f, double tol = kFloatTolerance);

/// Builds the Sasaki structure from the sasaki block. Throws ValidationError
/// ("sasaki") if the block is missing or the contact metric axioms fail.
template <class S>
SasakiStructure<S> to_sasaki(const StructureFile& f, double tol = kFloatTolerance);

extern template HermitianStructure<Rational> to_hermitian<Rational>(const StructureFile&, double);
extern template HermitianStructure<double> to_hermitian<double>(const StructureFile&, double);
extern template SasakiStructure<Rational> to_sasaki<Rational>(const StructureFile&, double);
extern template SasakiStructure<double> to_sasaki<double>(const StructureFile&, double);

/// Scalar as JSON: exact rationals become "p/q" strings, doubles numbers.
inline Json scalar_json(const Rational& q) { return format_rational(q); }
inline Json scalar_json(double x) { return x; }

template <class S>
Json vector_json(const Vec<S>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(scalar_json(x));
  return a;
}

template <class S>
Json matrix_json(const Matrix<S>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(scalar_json(m(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace lckw
