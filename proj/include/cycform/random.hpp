#pragma once

#include <cstdint>
#include <random>

#include "cycform/hochschild.hpp"
#include "cycform/polynomial.hpp"
#include "cycform/wedge.hpp"

namespace cycform {

/// Seeded generator of small random algebraic objects for identity checks.
/// The sequence depends only on the seed (no implementation-defined
/// distributions are used).
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi);
  /// Uniform double in [0, 1).
  double unit();
  /// Nonzero rational p/q with |p| <= 3, q in {1, 2}.
  Rational coefficient();

  Exponent exponent(int dim, int max_degree, bool nonconstant = false);
  Polynomial polynomial(int dim, int terms, int max_degree);
  /// Homogeneous polyvector field with `factors` wedge factors (possibly zero).
  PolyVector polyvector(int dim, int factors, int terms, int max_degree);
  PolyVector constant_vector_field(int dim);
  DiffForm form(int dim, int degree, int terms, int max_degree);
  /// Chain of monomial tensors of length n + 1, nonconstant in slots >= 1.
  HochschildChain chain(int dim, int n, int terms, int max_degree);
  /// Cochain whose terms differentiate every argument at least once when
  /// `normalized`, so it descends to normalized chains.
  PolyDiffOperator cochain(int dim, int arity, int terms, bool normalized);

 private:
  std::mt19937_64 engine_;
};

}  // namespace cycform
