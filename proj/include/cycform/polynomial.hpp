#pragma once

#include <compare>
#include <map>
#include <vector>

#include "cycform/rational.hpp"

namespace cycform {

/// Exponent vector of a monomial; length equals the ambient dimension.
using Exponent = std::vector<int>;

Exponent zero_exponent(int dim);
Exponent unit_exponent(int dim, int axis);
Exponent operator+(const Exponent& a, const Exponent& b);
bool is_zero_exponent(const Exponent& e);

/// Sparse multivariate polynomial over Q in a fixed number of variables.
/// This is the polynomial model of functions on the formal neighbourhood
/// of the origin in R^d. No zero coefficient is ever stored.
class Polynomial {
 public:
  using TermMap = std::map<Exponent, Rational>;

  Polynomial() = default;
  explicit Polynomial(int dim) : dim_(dim) {}

  static Polynomial constant(int dim, const Rational& c);
  static Polynomial variable(int dim, int axis);
  static Polynomial monomial(const Exponent& e, const Rational& c = Rational(1));

  int dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Exponent& e) const;
  int total_degree() const;

  void add_term(const Exponent& e, const Rational& c);

  Polynomial derivative(int axis) const;
  /// Iterated partial derivative d^alpha.
  Polynomial derivative(const Exponent& alpha) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

 private:
  void require_same_dim(const Polynomial& other) const;

  int dim_ = 0;
  TermMap terms_;
};

/// Falling-factorial coefficient of d^alpha applied to x^e: prod e_i!/(e_i-alpha_i)!.
/// Zero when some alpha_i exceeds e_i.
Rational derivative_factor(const Exponent& e, const Exponent& alpha);

}  // namespace cycform
