#include "toda/serialize.hpp"

#include <fstream>
#include <sstream>

#include "toda/linalg.hpp"

namespace toda {

namespace {

enum class Kind { rational, floating };

Kind kind_of(const Json& v) {
  if (v.is_string()) return Kind::rational;
  if (v.is_number()) return Kind::floating;
  throw ParseError("expected a rational string or a number, got " + v.dump());
}

// Common mode of a flat list of scalars.
Kind common_kind(const std::vector<const Json*>& values) {
  if (values.empty()) throw ParseError("empty scalar list");
  const Kind k = kind_of(*values.front());
  for (const Json* v : values)
    if (kind_of(*v) != k) throw ModeError("rational strings and float numbers are mixed");
  return k;
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw ParseError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

const Json& array_field(const Json& j, const char* name) {
  const Json& a = field(j, name);
  if (!a.is_array()) throw ParseError(std::string("field \"") + name + "\" must be an array");
  return a;
}

template <class T>
T read_scalar(const Json& v);

template <>
Rational read_scalar<Rational>(const Json& v) {
  return parse_rational(v.get<std::string>());
}

template <>
double read_scalar<double>(const Json& v) {
  return v.get<double>();
}

template <class T>
std::vector<T> read_list(const Json& a) {
  std::vector<T> out;
  for (const auto& v : a) out.push_back(read_scalar<T>(v));
  return out;
}

template <class T>
Matrix<T> read_matrix(const Json& rows) {
  const std::size_t d = rows.size();
  Matrix<T> m(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = read_scalar<T>(rows[i][j]);
  return m;
}

}  // namespace

Json poly_to_json(const LaurentPoly& p) {
  Json terms = Json::array();
  const std::size_t n = p.n();
  for (const auto& [e, c] : p.terms()) {
    Json z = Json::array(), q = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
      z.push_back(e[i]);
      q.push_back(e[n + i]);
    }
    terms.push_back(Json{{"coef", format_rational(c)}, {"z", z}, {"Q", q}});
  }
  return Json{{"n", n}, {"terms", terms}};
}

LaurentPoly poly_from_json(const Json& j) {
  const Json& nj = field(j, "n");
  if (!nj.is_number_unsigned()) throw ParseError("\"n\" must be a nonnegative integer");
  const auto n = nj.get<std::size_t>();
  LaurentPoly p = LaurentPoly::constant(n, 0);
  for (const auto& t : array_field(j, "terms")) {
    const Json& zj = array_field(t, "z");
    const Json& qj = array_field(t, "Q");
    if (zj.size() != n || qj.size() != n) throw IndexMismatch("term exponent length differs from n");
    const Json& cj = field(t, "coef");
    if (!cj.is_string()) throw ModeError("polynomial coefficients are rational strings");
    p = p + LaurentPoly::monomial(n, parse_rational(cj.get<std::string>()), zj.get<std::vector<int>>(),
                                  qj.get<std::vector<int>>());
  }
  return p;
}

AnyPoint point_from_json(const Json& j) {
  const Json& zj = array_field(j, "z");
  const Json& qj = array_field(j, "Q");
  if (j.contains("n")) {
    const Json& nj = j.at("n");
    if (!nj.is_number_unsigned()) throw ParseError("\"n\" must be a positive integer");
    const auto n = nj.get<std::size_t>();
    if (zj.size() != n || qj.size() != n) throw IndexMismatch("z and Q must both have length n");
  }
  std::vector<const Json*> all;
  for (const auto& v : zj) all.push_back(&v);
  for (const auto& v : qj) all.push_back(&v);
  if (common_kind(all) == Kind::rational)
    return PhasePoint<Rational>(read_list<Rational>(zj), read_list<Rational>(qj));
  return PhasePoint<double>(read_list<double>(zj), read_list<double>(qj));
}

AnyMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty array of rows");
  std::vector<const Json*> all;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != j.size()) throw ParseError("matrix must be square");
    for (const auto& v : row) all.push_back(&v);
  }
  if (common_kind(all) == Kind::rational) return read_matrix<Rational>(j);
  return read_matrix<double>(j);
}

Json load_json(const std::string& text_or_path) {
  const auto first = text_or_path.find_first_not_of(" \t\r\n");
  std::string text;
  if (first != std::string::npos && (text_or_path[first] == '{' || text_or_path[first] == '[')) {
    text = text_or_path;
  } else {
    std::ifstream in(text_or_path);
    if (!in) throw ParseError("cannot open " + text_or_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Matrix<double> mat_exp(const AnyMatrix& m, double t) {
  if (!std::holds_alternative<Matrix<double>>(m))
    throw ModeError("mat_exp is defined in float mode only");
  return mat_exp(std::get<Matrix<double>>(m), t);
}

PhasePoint<double> as_float(const AnyPoint& x) {
  if (const auto* r = std::get_if<PhasePoint<Rational>>(&x)) return to_double(*r);
  return std::get<PhasePoint<double>>(x);
}

}  // namespace toda
