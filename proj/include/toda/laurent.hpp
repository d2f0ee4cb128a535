#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "toda/errors.hpp"
#include "toda/scalar.hpp"

namespace toda {

enum class VarKind { z, Q };

// Variable z_{index+1} or Q_{index+1}; indices are 0-based.
struct Var {
  VarKind kind;
  std::size_t index;
};

// Exponent vector: z-block (any integer) followed by Q-block (nonnegative).
using Exponents = std::vector<int>;

// Graded lexicographic order, highest total degree first; within a degree,
// lexicographically larger exponent vectors (z-block first) come first.
struct GradedLexOrder {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

// Exact multivariate Laurent polynomial in z_1..z_n (integer exponents) and
// Q_1..Q_n (nonnegative exponents) with rational coefficients. No zero
// coefficient is ever stored, so equality is structural.
//
// Constants built without an index bound (n() == 0) combine with a
// polynomial of any n; two polynomials with different nonzero n do not.
class LaurentPoly {
 public:
  using TermMap = std::map<Exponents, Rational, GradedLexOrder>;

  LaurentPoly() = default;
  explicit LaurentPoly(const Rational& c);

  static LaurentPoly constant(std::size_t n, const Rational& c);
  static LaurentPoly variable(std::size_t n, Var v);
  static LaurentPoly monomial(std::size_t n, const Rational& coef, const std::vector<int>& z_exp,
                              const std::vector<int>& q_exp);

  std::size_t n() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  // Coefficient of the given exponent vector (zero when absent).
  Rational coefficient(const Exponents& e) const;

  bool is_monomial() const { return terms_.size() == 1; }
  // Inverse of a single term with no Q dependence; ModeError otherwise.
  LaurentPoly monomial_inverse() const;

  // Same polynomial seen with index bound n (only valid from n() == 0 or n).
  LaurentPoly with_index_bound(std::size_t n) const;

  // Substitutes Q_i = 0 for every i.
  LaurentPoly at_zero_q() const;

  std::string to_string() const;

  LaurentPoly operator-() const;
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const Rational& s, const LaurentPoly& a);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

 private:
  static std::size_t common_n(const LaurentPoly& a, const LaurentPoly& b);
  void add_term(const Exponents& e, const Rational& c);

  std::size_t n_ = 0;
  TermMap terms_;
};

LaurentPoly partial_derivative(const LaurentPoly& p, Var v);

namespace detail {

template <class T>
T integer_power(const T& x, int e) {
  using Tr = ScalarTraits<T>;
  if (e == 0) return Tr::one();
  T base = e > 0 ? x : Tr::reciprocal(x);
  unsigned k = static_cast<unsigned>(e > 0 ? e : -e);
  T acc = Tr::one();
  while (k) {
    if (k & 1u) acc = acc * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return acc;
}

}  // namespace detail

// Value of p at the given z and Q. ZeroBase when some z_i is zero;
// IndexMismatch when the variable count differs from p.n().
template <class T>
T evaluate(const LaurentPoly& p, std::span<const T> z, std::span<const T> q) {
  using Tr = ScalarTraits<T>;
  if (z.size() != q.size() || (p.n() != 0 && p.n() != z.size()))
    throw IndexMismatch("evaluate: point has " + std::to_string(z.size()) +
                        " variables, polynomial has " + std::to_string(p.n()));
  for (std::size_t i = 0; i < z.size(); ++i)
    if (Tr::is_zero(z[i])) throw ZeroBase("evaluate: z_" + std::to_string(i + 1) + " is zero");
  T total = Tr::zero();
  const std::size_t n = p.n();
  for (const auto& [e, c] : p.terms()) {
    T term = Tr::from_rational(c);
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] != 0) term = term * detail::integer_power(z[i], e[i]);
      if (e[n + i] != 0) term = term * detail::integer_power(q[i], e[n + i]);
    }
    total = total + term;
  }
  return total;
}

template <>
struct ScalarTraits<LaurentPoly> {
  static constexpr bool exact = true;
  static constexpr const char* name = "laurent";
  static LaurentPoly zero() { return LaurentPoly(); }
  static LaurentPoly one() { return LaurentPoly(Rational(1)); }
  static LaurentPoly from_rational(const Rational& q) { return LaurentPoly(q); }
  static LaurentPoly from_int(long k) { return LaurentPoly(Rational(k)); }
  static bool is_zero(const LaurentPoly& x) { return x.is_zero(); }
  static double magnitude(const LaurentPoly& x) { return x.is_zero() ? 0.0 : 1.0; }
  static bool pivot_vanishes(const LaurentPoly& p, double) { return p.is_zero(); }
  static bool near(const LaurentPoly& a, const LaurentPoly& b, double) { return a == b; }
  static LaurentPoly reciprocal(const LaurentPoly& x) { return x.monomial_inverse(); }
};

}  // namespace toda
