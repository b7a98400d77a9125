#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cycform/configspace.hpp"
#include "cycform/graph.hpp"
#include "cycform/hochschild.hpp"
#include "cycform/wedge.hpp"
#include "cycform/weight_cache.hpp"

namespace cycform {

/// xi = xi_1 ^ ... ^ xi_p with constant vector fields xi_a, polyvector
/// fields gamma_1..gamma_k at the aerial vertices, and a chain.
struct MorphismInput {
  int dim = 0;
  std::vector<PolyVector> xi_factors;
  std::vector<PolyVector> gammas;
  HochschildChain chain;

  PolyVector xi() const;
  /// Throws std::invalid_argument unless every xi_a is a constant vector
  /// field and every gamma_j is homogeneous.
  void validate() const;
};

/// Kontsevich's rule for D_Gamma on one elementary tensor.
Polynomial evaluate_D(const ShoikhetGraph& g, const PolyVector& xi, const std::vector<PolyVector>& gammas,
                      const Tensor& slots);
Polynomial evaluate_D(const ShoikhetGraph& g, const PolyVector& xi, const std::vector<PolyVector>& gammas,
                      const HochschildChain& chain);

/// A Q-linear form in bare graph integrals: canonical encoding -> coefficient.
using LinearForm = std::map<std::string, Rational>;

struct Measurement {
  double value = 0.0;
  double sigma = 0.0;
};

/// Polynomial-valued combination sum_Gamma I(Gamma) P_Gamma of bare graph
/// integrals. Graphs are stored canonically and structural zeros dropped.
class WeightedSum {
 public:
  WeightedSum() = default;
  explicit WeightedSum(int dim) : dim_(dim) {}

  void add(const ShoikhetGraph& g, const Polynomial& p);
  WeightedSum& operator+=(const WeightedSum& other);
  WeightedSum& operator-=(const WeightedSum& other);
  friend WeightedSum operator-(WeightedSum a, const WeightedSum& b) { return a -= b; }

  int dim() const { return dim_; }
  const std::map<std::string, Polynomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of x^e as a linear form in the integrals.
  std::map<Exponent, LinearForm> monomial_forms() const;

  WeightedSum derivative(const PolyVector& constant_field) const;

  Polynomial evaluate_exact(const std::function<Rational(const ShoikhetGraph&)>& integral) const;

 private:
  int dim_ = 0;
  std::map<std::string, Polynomial> terms_;
};

/// Supplies bare integrals: structural zeros exactly, the rest through a
/// cache under a fixed integration spec.
class WeightProvider {
 public:
  WeightProvider(IntegrationSpec spec, WeightCache& cache) : spec_(std::move(spec)), cache_(&cache) {}
  Measurement integral(const ShoikhetGraph& g);
  const IntegrationSpec& spec() const { return spec_; }

 private:
  IntegrationSpec spec_;
  WeightCache* cache_;
};

Measurement evaluate(const LinearForm& form, WeightProvider& weights);
/// Per-monomial values; graphs are requested in encoding order.
std::map<Exponent, Measurement> evaluate(const WeightedSum& sum, WeightProvider& weights);

/// Exact bare integrals for graphs without non-central aerial vertices.
Rational exact_integral(const ShoikhetGraph& g);

struct MorphismLimits {
  int max_aerial = 1;
  int max_boundary = 4;
};

/// U(gamma; chain)[xi] = sum over canonical graphs of I(Gamma) D_Gamma.
WeightedSum taylor_component(const MorphismInput& input, const MorphismLimits& limits = {});
/// sum_a (-1)^{a+1} xi_a . U(gamma; chain)[xi without xi_a].
WeightedSum lhs_d_side(const MorphismInput& input, const MorphismLimits& limits = {});
/// U(gamma; B(chain))[xi].
WeightedSum rhs_B_side(const MorphismInput& input, const MorphismLimits& limits = {});
/// sum_Gamma w_{Gamma - e} D_Gamma with e the first central edge, summed
/// over canonical graphs as sum_i (-1)^{i+1} I(Gamma - e_i) D_Gamma.
WeightedSum middle_expression(const MorphismInput& input, const MorphismLimits& limits = {});

/// Both sides of the boundary-shift weight identity as forms in bare integrals,
/// scaled by the common star-factorial prefactor of Gamma.
std::pair<LinearForm, LinearForm> boundary_shift_forms(const ShoikhetGraph& g);

/// (1/n!) (a_0 da_1 ^ ... ^ da_n)[xi], computed through differential forms.
Polynomial hkr_evaluate(const HochschildChain& chain, const PolyVector& xi);

}  // namespace cycform
