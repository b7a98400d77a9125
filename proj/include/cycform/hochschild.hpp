#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cycform/polynomial.hpp"

namespace cycform {

/// Elementary tensor of monomials a_0 (x) a_1 (x) ... (x) a_n.
using Tensor = std::vector<Exponent>;

/// Normalized Hochschild chain: a Q-linear combination of monomial tensors,
/// with any tensor carrying a constant in a slot >= 1 identified with zero.
/// The chain degree of a_0 (x) ... (x) a_n is -n.
class HochschildChain {
 public:
  using TermMap = std::map<Tensor, Rational>;

  HochschildChain() = default;
  explicit HochschildChain(int dim) : dim_(dim) {}

  /// Multilinear expansion of a_0 (x) ... (x) a_n.
  static HochschildChain tensor(std::span<const Polynomial> slots);
  static HochschildChain tensor(std::initializer_list<Polynomial> slots);

  int dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Tensor& t, const Rational& c);
  /// Adds c * (prefix (x) p (x) suffix) expanded over the monomials of p.
  void add_with_slot(const Tensor& prefix, const Polynomial& p, const Tensor& suffix, const Rational& c);

  HochschildChain operator-() const;
  HochschildChain& operator+=(const HochschildChain& other);
  HochschildChain& operator-=(const HochschildChain& other);
  HochschildChain& operator*=(const Rational& c);
  friend HochschildChain operator+(HochschildChain a, const HochschildChain& b) { return a += b; }
  friend HochschildChain operator-(HochschildChain a, const HochschildChain& b) { return a -= b; }
  friend HochschildChain operator*(const Rational& c, HochschildChain a) { return a *= c; }
  friend bool operator==(const HochschildChain& a, const HochschildChain& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

 private:
  int dim_ = 0;
  TermMap terms_;
};

/// Hochschild boundary b.
HochschildChain boundary_b(const HochschildChain& c);
/// Connes' operator B with signs (-1)^{nj}.
HochschildChain connes_B(const HochschildChain& c);
/// a_0 (x) a_1 (x) ... (x) a_n -> a_0 (x) a_2 (x) ... (x) a_n (x) a_1.
HochschildChain shift_sigma(const HochschildChain& c, int power = 1);
/// a_0 (x) ... -> 1 (x) a_0 (x) ...
HochschildChain stab_s(const HochschildChain& c);

/// Polydifferential cochain: sum of terms p(x) * prod_k d^{alpha_k} a_k.
/// Arity and shifted degree (arity - 1) are kept apart.
class PolyDiffOperator {
 public:
  using Key = std::vector<Exponent>;  // one multi-index per argument
  using TermMap = std::map<Key, Polynomial>;

  PolyDiffOperator() = default;
  PolyDiffOperator(int dim, int arity) : dim_(dim), arity_(arity) {}

  /// m(a, b) = a b.
  static PolyDiffOperator multiplication(int dim);
  /// p * d^{alpha_1} a_1 ... d^{alpha_k} a_k.
  static PolyDiffOperator term(const Polynomial& prefactor, const Key& derivatives);

  int dim() const { return dim_; }
  int arity() const { return arity_; }
  int degree() const { return arity_ - 1; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Key& derivatives, const Polynomial& prefactor);

  Polynomial apply(std::span<const Polynomial> args) const;
  /// Application to monomial arguments.
  Polynomial apply_monomials(std::span<const Exponent> args) const;

  PolyDiffOperator operator-() const;
  PolyDiffOperator& operator+=(const PolyDiffOperator& other);
  PolyDiffOperator& operator-=(const PolyDiffOperator& other);
  PolyDiffOperator& operator*=(const Rational& c);
  friend PolyDiffOperator operator+(PolyDiffOperator a, const PolyDiffOperator& b) { return a += b; }
  friend PolyDiffOperator operator-(PolyDiffOperator a, const PolyDiffOperator& b) { return a -= b; }
  friend PolyDiffOperator operator*(const Rational& c, PolyDiffOperator a) { return a *= c; }
  friend bool operator==(const PolyDiffOperator& a, const PolyDiffOperator& b) {
    return a.dim_ == b.dim_ && a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

 private:
  int dim_ = 0;
  int arity_ = 0;
  TermMap terms_;
};

/// Largest cochain arity produced by d_H and the Gerstenhaber bracket.
inline constexpr int kDefaultMaxArity = 8;

PolyDiffOperator coboundary_dH(const PolyDiffOperator& psi, int max_arity = kDefaultMaxArity);
/// Gerstenhaber composition psi o phi with signs (-1)^{(n-1)(j-1)}, n = arity(phi).
PolyDiffOperator compose(const PolyDiffOperator& psi, const PolyDiffOperator& phi, int max_arity = kDefaultMaxArity);
PolyDiffOperator gerstenhaber(const PolyDiffOperator& psi, const PolyDiffOperator& phi,
                              int max_arity = kDefaultMaxArity);

/// Action of a cochain on chains: the wrap-around sum followed by the
/// interior sum. Vanishes when the arity exceeds the tensor length.
HochschildChain cochain_action(const PolyDiffOperator& D, const HochschildChain& c);

/// Chain with coefficients in Q[u], u of degree -2: component j is the u^j part.
class CyclicChain {
 public:
  using Components = std::map<int, HochschildChain>;

  CyclicChain() = default;
  explicit CyclicChain(int dim) : dim_(dim) {}
  static CyclicChain from_chain(const HochschildChain& c, int u_power = 0);

  int dim() const { return dim_; }
  const Components& components() const { return parts_; }
  HochschildChain component(int u_power) const;
  bool is_zero() const { return parts_.empty(); }

  void add(int u_power, const HochschildChain& c);
  friend bool operator==(const CyclicChain& a, const CyclicChain& b) {
    return a.dim_ == b.dim_ && a.parts_ == b.parts_;
  }

 private:
  int dim_ = 0;
  Components parts_;
};

/// How u acts on the coefficient module.
enum class UAction { polynomial, zero };

/// b + uB, extended u-linearly; with UAction::zero this is b.
CyclicChain cyclic_differential(const CyclicChain& c, UAction action = UAction::polynomial);

/// Chain text: terms separated by ';', each "[{coef}] p0 (x) p1 (x) ...".
HochschildChain parse_chain(std::string_view text, int dim);
std::string format(const HochschildChain& c);

}  // namespace cycform
