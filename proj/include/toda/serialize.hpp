#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "toda/laurent.hpp"
#include "toda/matrix.hpp"
#include "toda/phase_point.hpp"

namespace toda {

using Json = nlohmann::json;

// Rationals travel as strings "p/q", floats as JSON numbers.
inline Json scalar_to_json(const Rational& v) { return format_rational(v); }
inline Json scalar_to_json(double v) { return v; }

template <class T>
Json matrix_to_json(const Matrix<T>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(scalar_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class T>
Json point_to_json(const PhasePoint<T>& x) {
  Json z = Json::array(), q = Json::array();
  for (const auto& v : x.z()) z.push_back(scalar_to_json(v));
  for (const auto& v : x.Q()) q.push_back(scalar_to_json(v));
  return Json{{"n", x.n()}, {"z", z}, {"Q", q}};
}

template <class T>
Json values_to_json(const std::vector<T>& values) {
  Json a = Json::array();
  for (const auto& v : values) a.push_back(scalar_to_json(v));
  return a;
}

// {"n": n, "terms": [{"coef": "p/q", "z": [...], "Q": [...]}, ...]} in
// canonical term order.
Json poly_to_json(const LaurentPoly& p);
LaurentPoly poly_from_json(const Json& j);

using AnyPoint = std::variant<PhasePoint<Rational>, PhasePoint<double>>;
using AnyMatrix = std::variant<Matrix<Rational>, Matrix<double>>;

// The mode follows the JSON types: all strings -> rational, all numbers ->
// float. Mixed input raises ModeError; malformed input raises ParseError.
AnyPoint point_from_json(const Json& j);
AnyMatrix matrix_from_json(const Json& j);

// Reads inline JSON if the text starts with '{' or '[', otherwise a file.
Json load_json(const std::string& text_or_path);

// Float-only exponential; a rational matrix raises ModeError.
Matrix<double> mat_exp(const AnyMatrix& m, double t);

PhasePoint<double> as_float(const AnyPoint& x);

}  // namespace toda
