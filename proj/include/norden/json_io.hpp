#pragma once

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "norden/lie.hpp"

namespace norden {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input schema:
//   {
//     "dim": 4,
//     "structure_constants": [{"i":1,"j":2,"k":1,"value":"1"}, ...],
//     "J": [["0","0","-1","0"], ...],
//     "g": [["1","0","0","0"], ...],
//     "mode": "rational" | "float"
//   }
// Indices are 1-based; J is given as a matrix whose column j is the image of
// the j-th frame field; omitted structure constants are zero (the loader does
// not antisymmetrize, both orientations of a bracket must be listed).

inline ScalarMode mode_of_document(const nlohmann::json& doc) {
  if (!doc.contains("mode")) return ScalarMode::Rational;
  const auto& m = doc.at("mode");
  if (!m.is_string()) throw ParseError("\"mode\" must be a string");
  std::string s = m.get<std::string>();
  if (s == "rational") return ScalarMode::Rational;
  if (s == "float") return ScalarMode::Float;
  throw ParseError("unknown mode: '" + s + "'");
}

inline std::optional<ScalarMode> mode_from_env() {
  const char* env = std::getenv("NORDEN_MODE");
  if (!env) return std::nullopt;
  std::string s(env);
  if (s == "rational") return ScalarMode::Rational;
  if (s == "float") return ScalarMode::Float;
  throw ParseError("NORDEN_MODE must be 'rational' or 'float'");
}

template <class T>
T parse_value(const nlohmann::json& v) {
  if (v.is_string()) return parse_scalar<T>(v.get<std::string>());
  if (v.is_number_integer())
    return NumTraits<T>::fraction(v.get<long>(), 1);
  if (v.is_number_float()) {
    if constexpr (NumTraits<T>::exact)
      throw ParseError(
          "rational mode requires exact values: write \"p/q\" strings "
          "instead of JSON floats");
    else
      return v.get<double>();
  }
  throw ParseError("expected a scalar value (string rational or number)");
}

template <class T>
Tensor<T> parse_square_matrix(const nlohmann::json& rows, int dim,
                              Valence valence, const char* what) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
    throw ParseError(std::string(what) + " must be a " + std::to_string(dim) +
                     "-row matrix");
  Tensor<T> out(dim, std::move(valence));
  for (int r = 0; r < dim; ++r) {
    const auto& row = rows.at(r);
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw ParseError(std::string(what) + " row " + std::to_string(r + 1) +
                       " must have " + std::to_string(dim) + " entries");
    for (int c = 0; c < dim; ++c) out(r, c) = parse_value<T>(row.at(c));
  }
  return out;
}

template <class T>
ManifoldSpec<T> spec_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("input must be a JSON object");
  if (!doc.contains("dim") || !doc.at("dim").is_number_integer())
    throw ParseError("missing integer \"dim\"");
  const int dim = doc.at("dim").get<int>();
  if (dim < 2 || dim % 2 != 0)
    throw ParseError("\"dim\" must be even and >= 2");

  LieAlgebra<T> algebra = LieAlgebra<T>::zero(dim);
  if (doc.contains("structure_constants")) {
    const auto& entries = doc.at("structure_constants");
    if (!entries.is_array())
      throw ParseError("\"structure_constants\" must be an array");
    for (const auto& e : entries) {
      if (!e.is_object() || !e.contains("i") || !e.contains("j") ||
          !e.contains("k") || !e.contains("value"))
        throw ParseError(
            "structure constant entries need \"i\",\"j\",\"k\",\"value\"");
      const int i = e.at("i").get<int>();
      const int j = e.at("j").get<int>();
      const int k = e.at("k").get<int>();
      if (i < 1 || i > dim || j < 1 || j > dim || k < 1 || k > dim)
        throw ParseError("structure constant index out of range (1-based)");
      algebra.c(i - 1, j - 1, k - 1) = parse_value<T>(e.at("value"));
    }
  }
  if (!doc.contains("J") || !doc.contains("g"))
    throw ParseError("missing \"J\" or \"g\" matrix");
  Tensor<T> j = parse_square_matrix<T>(doc.at("J"), dim,
                                       {Variance::Contra, Variance::Co}, "J");
  Tensor<T> g = parse_square_matrix<T>(doc.at("g"), dim, covariant(2), "g");
  return {std::move(algebra), std::move(j), std::move(g)};
}

struct LoadedDocument {
  nlohmann::json doc;
  ScalarMode mode;
  std::string raw;
};

inline LoadedDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  LoadedDocument out;
  out.raw = buf.str();
  try {
    out.doc = nlohmann::json::parse(out.raw);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("JSON parse error: ") + e.what());
  }
  ScalarMode mode = mode_of_document(out.doc);
  if (auto env = mode_from_env()) mode = *env;
  out.mode = mode;
  return out;
}

}  // namespace norden
