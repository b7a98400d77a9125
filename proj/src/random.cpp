#include "cycform/random.hpp"

namespace cycform {

int RandomSource::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(engine_() % span);
}

double RandomSource::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

Rational RandomSource::coefficient() {
  int p = integer(1, 3) * (integer(0, 1) ? 1 : -1);
  return Rational(p) / Rational(integer(1, 2));
}

Exponent RandomSource::exponent(int dim, int max_degree, bool nonconstant) {
  for (;;) {
    Exponent e = zero_exponent(dim);
    int budget = integer(nonconstant ? 1 : 0, max_degree);
    for (int k = 0; k < budget; ++k) ++e[static_cast<std::size_t>(integer(0, dim - 1))];
    if (!nonconstant || !is_zero_exponent(e)) return e;
  }
}

Polynomial RandomSource::polynomial(int dim, int terms, int max_degree) {
  Polynomial p(dim);
  for (int t = 0; t < terms; ++t) p.add_term(exponent(dim, max_degree), coefficient());
  return p;
}

PolyVector RandomSource::polyvector(int dim, int factors, int terms, int max_degree) {
  PolyVector v(dim);
  if (factors > dim) return v;
  for (int t = 0; t < terms; ++t) {
    std::vector<int> idx;
    while (static_cast<int>(idx.size()) < factors) {
      int i = integer(0, dim - 1);
      bool seen = false;
      for (int j : idx) seen = seen || j == i;
      if (!seen) idx.push_back(i);
    }
    v += PolyVector::term(polynomial(dim, 1, max_degree), idx);
  }
  return v;
}

PolyVector RandomSource::constant_vector_field(int dim) {
  PolyVector v(dim);
  while (v.is_zero())
    for (int i = 0; i < dim; ++i)
      if (integer(0, 2)) v += PolyVector::term(Polynomial::constant(dim, coefficient()), {i});
  return v;
}

DiffForm RandomSource::form(int dim, int degree, int terms, int max_degree) {
  DiffForm w(dim);
  if (degree > dim) return w;
  for (int t = 0; t < terms; ++t) {
    std::vector<int> idx;
    while (static_cast<int>(idx.size()) < degree) {
      int i = integer(0, dim - 1);
      bool seen = false;
      for (int j : idx) seen = seen || j == i;
      if (!seen) idx.push_back(i);
    }
    w += DiffForm::term(polynomial(dim, 1, max_degree), idx);
  }
  return w;
}

HochschildChain RandomSource::chain(int dim, int n, int terms, int max_degree) {
  HochschildChain c(dim);
  for (int t = 0; t < terms; ++t) {
    Tensor tensor;
    for (int k = 0; k <= n; ++k) tensor.push_back(exponent(dim, max_degree, k > 0));
    c.add_term(tensor, coefficient());
  }
  return c;
}

PolyDiffOperator RandomSource::cochain(int dim, int arity, int terms, bool normalized) {
  PolyDiffOperator D(dim, arity);
  for (int t = 0; t < terms; ++t) {
    PolyDiffOperator::Key key;
    for (int k = 0; k < arity; ++k) key.push_back(exponent(dim, 2, normalized));
    D.add_term(key, polynomial(dim, 1, 2));
  }
  return D;
}

}  // namespace cycform
