#include "cycform/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace cycform {

Exponent zero_exponent(int dim) { return Exponent(static_cast<std::size_t>(dim), 0); }

Exponent unit_exponent(int dim, int axis) {
  Exponent e = zero_exponent(dim);
  e.at(static_cast<std::size_t>(axis)) = 1;
  return e;
}

Exponent operator+(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) throw std::invalid_argument("exponent dimension mismatch");
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

bool is_zero_exponent(const Exponent& e) {
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rational derivative_factor(const Exponent& e, const Exponent& alpha) {
  Rational f(1);
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (alpha[i] > e[i]) return Rational(0);
    for (int k = 0; k < alpha[i]; ++k) f *= e[i] - k;
  }
  return f;
}

Polynomial Polynomial::constant(int dim, const Rational& c) {
  Polynomial p(dim);
  p.add_term(zero_exponent(dim), c);
  return p;
}

Polynomial Polynomial::variable(int dim, int axis) {
  Polynomial p(dim);
  p.add_term(unit_exponent(dim, axis), Rational(1));
  return p;
}

Polynomial Polynomial::monomial(const Exponent& e, const Rational& c) {
  Polynomial p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && is_zero_exponent(terms_.begin()->first));
}

Rational Polynomial::constant_term() const { return coefficient(zero_exponent(dim_)); }

Rational Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::total_degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    deg = std::max(deg, s);
  }
  return deg;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (static_cast<int>(e.size()) != dim_) throw std::invalid_argument("monomial dimension mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::derivative(int axis) const {
  Polynomial r(dim_);
  for (const auto& [e, c] : terms_) {
    if (e[static_cast<std::size_t>(axis)] == 0) continue;
    Exponent f = e;
    --f[static_cast<std::size_t>(axis)];
    r.add_term(f, c * e[static_cast<std::size_t>(axis)]);
  }
  return r;
}

Polynomial Polynomial::derivative(const Exponent& alpha) const {
  if (static_cast<int>(alpha.size()) != dim_) throw std::invalid_argument("derivative dimension mismatch");
  if (is_zero_exponent(alpha)) return *this;
  Polynomial r(dim_);
  for (const auto& [e, c] : terms_) {
    Rational f = derivative_factor(e, alpha);
    if (f == 0) continue;
    Exponent g = e;
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= alpha[i];
    r.add_term(g, c * f);
  }
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

void Polynomial::require_same_dim(const Polynomial& other) const {
  if (dim_ != other.dim_) throw std::invalid_argument("polynomial dimension mismatch");
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_dim(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_dim(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_dim(b);
  Polynomial r(a.dim_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) { return *this = *this * other; }

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

}  // namespace cycform
