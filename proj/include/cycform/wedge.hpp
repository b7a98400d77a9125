#pragma once

#include <map>
#include <optional>
#include <vector>

#include "cycform/polynomial.hpp"

namespace cycform {

/// Strictly increasing list of coordinate directions.
using IndexSet = std::vector<int>;

/// Sorts `indices` in place and returns the permutation sign, or 0 when an
/// index repeats.
int sort_with_sign(std::vector<int>& indices);

/// Sign of the shuffle merging two sorted index sets, 0 when they intersect.
int merge_sign(const IndexSet& a, const IndexSet& b);
IndexSet merge(const IndexSet& a, const IndexSet& b);

enum class WedgeKind { polyvector, form };

/// Polynomial-coefficient element of the exterior algebra on d generators:
/// polyvector fields (generators d/dx_i) or differential forms (generators dx_i).
/// Terms are stored in sorted-index normal form.
template <WedgeKind Kind>
class WedgeField {
 public:
  using TermMap = std::map<IndexSet, Polynomial>;

  WedgeField() = default;
  explicit WedgeField(int dim) : dim_(dim) {}

  /// Coefficient times the wedge of the listed generators, in the given order.
  static WedgeField term(const Polynomial& coefficient, std::vector<int> indices);
  static WedgeField function(const Polynomial& f) { return term(f, {}); }
  static WedgeField generator(int dim, int axis) {
    return term(Polynomial::constant(dim, Rational(1)), {axis});
  }

  int dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Number of wedge factors if all terms share it.
  std::optional<int> factor_count() const;
  bool is_constant() const;

  /// Fully antisymmetric component in the listed (possibly unsorted) indices.
  Polynomial component(std::vector<int> indices) const;

  void add_term(std::vector<int> indices, const Polynomial& coefficient);

  WedgeField operator-() const;
  WedgeField& operator+=(const WedgeField& other);
  WedgeField& operator-=(const WedgeField& other);
  WedgeField& operator*=(const Rational& c);
  WedgeField& operator*=(const Polynomial& f);

  friend WedgeField operator+(WedgeField a, const WedgeField& b) { return a += b; }
  friend WedgeField operator-(WedgeField a, const WedgeField& b) { return a -= b; }
  friend WedgeField operator*(WedgeField a, const Rational& c) { return a *= c; }
  friend WedgeField operator*(const Rational& c, WedgeField a) { return a *= c; }
  friend WedgeField operator*(const Polynomial& f, WedgeField a) { return a *= f; }
  friend bool operator==(const WedgeField& a, const WedgeField& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

 private:
  int dim_ = 0;
  TermMap terms_;
};

using PolyVector = WedgeField<WedgeKind::polyvector>;
using DiffForm = WedgeField<WedgeKind::form>;

template <WedgeKind K>
WedgeField<K> wedge(const WedgeField<K>& a, const WedgeField<K>& b);

/// Grading of a homogeneous polyvector field: (number of factors) - 1.
int polyvector_degree(const PolyVector& gamma);
/// Grading of a homogeneous form: minus the form degree.
int form_degree(const DiffForm& omega);

/// Schouten-Nijenhuis bracket. With odd coordinates t_i standing for d/dx_i,
///   [P,Q] = sum_i (P <-d/dt_i)(d/dx_i Q) - (P <-d/dx_i)(d/dt_i-> Q),
/// which satisfies [xi, Q] = L_xi Q for vector fields and
/// [P, Q^R] = [P,Q]^R + (-1)^{|P|(|Q|+1)} Q^[P,R] in the shifted grading.
PolyVector schouten(const PolyVector& a, const PolyVector& b);

/// Lie derivative of a polyvector field along a vector field (coordinate formula).
PolyVector lie_derivative_polyvector(const PolyVector& xi, const PolyVector& gamma);

DiffForm de_rham(const DiffForm& omega);

/// Interior product. On a monomial, i(d_{i1}^...^d_{ik}) = i(d_{i1}) o ... o i(d_{ik});
/// a function acts by multiplication.
DiffForm contract(const PolyVector& gamma, const DiffForm& omega);

/// L_gamma = d i_gamma - (-1)^p i_gamma d on each p-vector component.
DiffForm lie_derivative(const PolyVector& gamma, const DiffForm& omega);

/// Pairing normalised by (dx_1^...^dx_k)[d_1^...^d_k] = 1; mismatched
/// degrees pair to zero.
Polynomial evaluate(const DiffForm& omega, const PolyVector& xi);

/// Derivative of a polynomial along a constant-coefficient vector field.
Polynomial directional_derivative(const PolyVector& constant_field, const Polynomial& f);

}  // namespace cycform
