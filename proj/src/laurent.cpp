#include "toda/laurent.hpp"

#include <numeric>
#include <sstream>

namespace toda {

bool GradedLexOrder::operator()(const Exponents& a, const Exponents& b) const {
  const long da = std::accumulate(a.begin(), a.end(), 0L);
  const long db = std::accumulate(b.begin(), b.end(), 0L);
  if (da != db) return da > db;
  return a > b;
}

LaurentPoly::LaurentPoly(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace(Exponents{}, c);
}

LaurentPoly LaurentPoly::constant(std::size_t n, const Rational& c) {
  LaurentPoly p;
  p.n_ = n;
  if (sgn(c) != 0) p.terms_.emplace(Exponents(2 * n, 0), c);
  return p;
}

LaurentPoly LaurentPoly::variable(std::size_t n, Var v) {
  if (v.index >= n) throw UnknownVariable("variable index out of range");
  LaurentPoly p;
  p.n_ = n;
  Exponents e(2 * n, 0);
  e[(v.kind == VarKind::z ? 0 : n) + v.index] = 1;
  p.terms_.emplace(std::move(e), Rational(1));
  return p;
}

LaurentPoly LaurentPoly::monomial(std::size_t n, const Rational& coef,
                                  const std::vector<int>& z_exp,
                                  const std::vector<int>& q_exp) {
  if (z_exp.size() != n || q_exp.size() != n)
    throw IndexMismatch("monomial: exponent blocks must have length n");
  for (int e : q_exp)
    if (e < 0) throw IndexMismatch("monomial: Q exponents must be nonnegative");
  LaurentPoly p;
  p.n_ = n;
  if (sgn(coef) == 0) return p;
  Exponents e(z_exp);
  e.insert(e.end(), q_exp.begin(), q_exp.end());
  p.terms_.emplace(std::move(e), coef);
  return p;
}

Rational LaurentPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

LaurentPoly LaurentPoly::monomial_inverse() const {
  if (!is_monomial()) throw ModeError("only single-term Laurent polynomials are invertible");
  const auto& [e, c] = *terms_.begin();
  for (std::size_t i = n_; i < e.size(); ++i)
    if (e[i] != 0) throw ModeError("a term with a Q factor is not invertible");
  LaurentPoly p;
  p.n_ = n_;
  Exponents inv(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) inv[i] = -e[i];
  p.terms_.emplace(std::move(inv), Rational(1) / c);
  return p;
}

LaurentPoly LaurentPoly::with_index_bound(std::size_t n) const {
  if (n_ == n) return *this;
  if (n_ != 0) throw IndexMismatch("cannot change the index bound of a polynomial");
  LaurentPoly p;
  p.n_ = n;
  for (const auto& [e, c] : terms_) p.terms_.emplace(Exponents(2 * n, 0), c);
  return p;
}

LaurentPoly LaurentPoly::at_zero_q() const {
  LaurentPoly p;
  p.n_ = n_;
  for (const auto& [e, c] : terms_) {
    bool has_q = false;
    for (std::size_t i = n_; i < e.size(); ++i) has_q = has_q || e[i] != 0;
    if (!has_q) p.terms_.emplace(e, c);
  }
  return p;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << format_rational(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      const bool is_z = i < n_;
      os << " * " << (is_z ? 'z' : 'Q') << (is_z ? i + 1 : i - n_ + 1);
      if (e[i] != 1) os << '^' << e[i];
    }
  }
  return os.str();
}

std::size_t LaurentPoly::common_n(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.n_ == b.n_ || b.n_ == 0) return a.n_;
  if (a.n_ == 0) return b.n_;
  throw IndexMismatch("Laurent polynomials over different index bounds (" +
                      std::to_string(a.n_) + " vs " + std::to_string(b.n_) + ")");
}

void LaurentPoly::add_term(const Exponents& e, const Rational& c) {
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly p = *this;
  for (auto& [e, c] : p.terms_) c = -c;
  return p;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  const std::size_t n = LaurentPoly::common_n(a, b);
  LaurentPoly r = a.with_index_bound(n);
  const LaurentPoly bb = b.with_index_bound(n);
  for (const auto& [e, c] : bb.terms_) r.add_term(e, c);
  return r;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  const std::size_t n = LaurentPoly::common_n(a, b);
  const LaurentPoly aa = a.with_index_bound(n);
  const LaurentPoly bb = b.with_index_bound(n);
  LaurentPoly r;
  r.n_ = n;
  Exponents e(2 * n);
  for (const auto& [ea, ca] : aa.terms_)
    for (const auto& [eb, cb] : bb.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

LaurentPoly operator*(const Rational& s, const LaurentPoly& a) {
  if (sgn(s) == 0) return LaurentPoly::constant(a.n_, Rational(0));
  LaurentPoly r = a;
  for (auto& [e, c] : r.terms_) c *= s;
  return r;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (a.n_ == b.n_) return a.terms_ == b.terms_;
  if (a.n_ != 0 && b.n_ != 0) return false;
  const std::size_t n = a.n_ == 0 ? b.n_ : a.n_;
  return a.with_index_bound(n).terms_ == b.with_index_bound(n).terms_;
}

LaurentPoly partial_derivative(const LaurentPoly& p, Var v) {
  const std::size_t n = p.n();
  if (v.index >= n && n != 0)
    throw UnknownVariable("partial_derivative: no variable with index " +
                          std::to_string(v.index + 1));
  if (n == 0) return LaurentPoly();  // constants
  const std::size_t slot = (v.kind == VarKind::z ? 0 : n) + v.index;
  LaurentPoly r = LaurentPoly::constant(n, Rational(0));
  for (const auto& [e, c] : p.terms()) {
    if (e[slot] == 0) continue;
    std::vector<int> ze(e.begin(), e.begin() + n), qe(e.begin() + n, e.end());
    (v.kind == VarKind::z ? ze : qe)[v.index] -= 1;
    r = r + LaurentPoly::monomial(n, c * e[slot], ze, qe);
  }
  return r;
}

}  // namespace toda
