#include "cycform/morphism.hpp"

#include <cmath>
#include <stdexcept>

namespace cycform {

PolyVector MorphismInput::xi() const {
  PolyVector x = PolyVector::function(Polynomial::constant(dim, Rational(1)));
  for (const auto& f : xi_factors) x = wedge(x, f);
  return x;
}

void MorphismInput::validate() const {
  for (const auto& f : xi_factors) {
    if (f.dim() != dim) throw std::invalid_argument("xi factor has the wrong dimension");
    if (f.factor_count() != 1 || !f.is_constant())
      throw std::invalid_argument("xi factors must be constant vector fields");
  }
  for (const auto& gamma : gammas) {
    if (gamma.dim() != dim) throw std::invalid_argument("polyvector field has the wrong dimension");
    if (!gamma.factor_count()) throw std::invalid_argument("polyvector fields must be homogeneous");
  }
  if (chain.dim() != dim) throw std::invalid_argument("chain has the wrong dimension");
}

namespace {

struct Edge {
  int source;
  Vertex target;
};

std::vector<Edge> wedge_order_edges(const ShoikhetGraph& g) {
  std::vector<Edge> edges;
  for (int v = 0; v <= g.aerial_count(); ++v)
    for (const Vertex& t : g.star(v)) edges.push_back({v, t});
  return edges;
}

}  // namespace

Polynomial evaluate_D(const ShoikhetGraph& g, const PolyVector& xi, const std::vector<PolyVector>& gammas,
                      const Tensor& slots) {
  const int d = xi.dim();
  if (static_cast<int>(gammas.size()) != g.aerial_count())
    throw std::invalid_argument("D_Gamma: one polyvector field per aerial vertex expected");
  if (static_cast<int>(slots.size()) != g.boundary_count())
    throw std::invalid_argument("D_Gamma: tensor length differs from the number of boundary vertices");
  if (auto c = xi.factor_count(); c && *c != static_cast<int>(g.central_star().size()) && !xi.is_zero())
    throw std::invalid_argument("D_Gamma: central degree differs from the wedge count of xi");
  for (int j = 1; j <= g.aerial_count(); ++j) {
    const auto& gamma = gammas[static_cast<std::size_t>(j - 1)];
    if (auto c = gamma.factor_count(); c && *c != static_cast<int>(g.star(j).size()) && !gamma.is_zero())
      throw std::invalid_argument("D_Gamma: out-degree differs from the wedge count at vertex " + std::to_string(j));
  }
  const std::vector<Edge> edges = wedge_order_edges(g);
  const std::size_t E = edges.size();
  std::vector<int> index(E, 0);
  Polynomial result(d);
  for (;;) {
    Polynomial term = Polynomial::constant(d, Rational(1));
    // Per-vertex outgoing index lists in star order and incoming multi-indices.
    std::vector<std::vector<int>> out(static_cast<std::size_t>(g.aerial_count() + 1));
    std::vector<Exponent> aerial_in(static_cast<std::size_t>(g.aerial_count() + 1), zero_exponent(d));
    std::vector<Exponent> boundary_in(slots.size(), zero_exponent(d));
    for (std::size_t e = 0; e < E; ++e) {
      out[static_cast<std::size_t>(edges[e].source)].push_back(index[e]);
      const Vertex& t = edges[e].target;
      auto& in = t.is_boundary() ? boundary_in[static_cast<std::size_t>(t.index)] : aerial_in[static_cast<std::size_t>(t.index)];
      ++in[static_cast<std::size_t>(index[e])];
    }
    Rational scalar(1);
    for (std::size_t k = 0; k < slots.size() && scalar != 0; ++k) scalar *= derivative_factor(slots[k], boundary_in[k]);
    if (scalar != 0) {
      term = xi.component(out[0]) * scalar;
      for (int j = 1; j <= g.aerial_count() && !term.is_zero(); ++j)
        term *= gammas[static_cast<std::size_t>(j - 1)]
                    .component(out[static_cast<std::size_t>(j)])
                    .derivative(aerial_in[static_cast<std::size_t>(j)]);
      if (!term.is_zero()) {
        Exponent shift = zero_exponent(d);
        for (std::size_t k = 0; k < slots.size(); ++k)
          for (int i = 0; i < d; ++i)
            shift[static_cast<std::size_t>(i)] += slots[k][static_cast<std::size_t>(i)] -
                                                  boundary_in[k][static_cast<std::size_t>(i)];
        result += term * Polynomial::monomial(shift);
      }
    }
    std::size_t e = 0;
    for (; e < E; ++e) {
      if (++index[e] < d) break;
      index[e] = 0;
    }
    if (e == E) break;
  }
  return result;
}

Polynomial evaluate_D(const ShoikhetGraph& g, const PolyVector& xi, const std::vector<PolyVector>& gammas,
                      const HochschildChain& chain) {
  Polynomial r(xi.dim());
  for (const auto& [t, c] : chain.terms()) r += evaluate_D(g, xi, gammas, t) * c;
  return r;
}

// ---------------------------------------------------------------------------

void WeightedSum::add(const ShoikhetGraph& g, const Polynomial& p) {
  if (p.is_zero()) return;
  if (p.dim() != dim_) throw std::invalid_argument("weighted sum dimension mismatch");
  auto [canonical, sign] = canonicalize(g);
  if (structurally_zero(canonical)) return;
  auto [it, inserted] = terms_.try_emplace(canonical.encode(), Polynomial(dim_));
  it->second += sign > 0 ? p : -p;
  if (it->second.is_zero()) terms_.erase(it);
}

WeightedSum& WeightedSum::operator+=(const WeightedSum& other) {
  for (const auto& [enc, p] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(enc, Polynomial(dim_));
    it->second += p;
    if (it->second.is_zero()) terms_.erase(it);
  }
  return *this;
}

WeightedSum& WeightedSum::operator-=(const WeightedSum& other) {
  for (const auto& [enc, p] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(enc, Polynomial(dim_));
    it->second -= p;
    if (it->second.is_zero()) terms_.erase(it);
  }
  return *this;
}

std::map<Exponent, LinearForm> WeightedSum::monomial_forms() const {
  std::map<Exponent, LinearForm> forms;
  for (const auto& [enc, p] : terms_)
    for (const auto& [e, c] : p.terms()) forms[e][enc] += c;
  return forms;
}

WeightedSum WeightedSum::derivative(const PolyVector& constant_field) const {
  WeightedSum r(dim_);
  for (const auto& [enc, p] : terms_) {
    Polynomial q = directional_derivative(constant_field, p);
    if (!q.is_zero()) r.terms_[enc] = q;
  }
  return r;
}

Polynomial WeightedSum::evaluate_exact(const std::function<Rational(const ShoikhetGraph&)>& integral) const {
  Polynomial r(dim_);
  for (const auto& [enc, p] : terms_) r += p * integral(ShoikhetGraph::decode(enc));
  return r;
}

Measurement WeightProvider::integral(const ShoikhetGraph& g) {
  if (structurally_zero(g, spec_.slice)) return {};
  WeightEstimate e = cache_->get_or_compute(g, spec_);
  return {e.integral(g), e.integral_stderr(g)};
}

Measurement evaluate(const LinearForm& form, WeightProvider& weights) {
  double value = 0.0, variance = 0.0;
  for (const auto& [enc, c] : form) {
    const ShoikhetGraph g = ShoikhetGraph::decode(enc);
    const Measurement m = weights.integral(g);
    const double coef = c.get_d();
    value += coef * m.value;
    variance += coef * coef * m.sigma * m.sigma;
  }
  return {value, std::sqrt(variance)};
}

std::map<Exponent, Measurement> evaluate(const WeightedSum& sum, WeightProvider& weights) {
  std::map<std::string, Measurement> integrals;
  for (const auto& [enc, p] : sum.terms()) integrals[enc] = weights.integral(ShoikhetGraph::decode(enc));
  std::map<Exponent, Measurement> out;
  for (const auto& [e, form] : sum.monomial_forms()) {
    double value = 0.0, variance = 0.0;
    for (const auto& [enc, c] : form) {
      const Measurement& m = integrals.at(enc);
      const double coef = c.get_d();
      value += coef * m.value;
      variance += coef * coef * m.sigma * m.sigma;
    }
    out[e] = {value, std::sqrt(variance)};
  }
  return out;
}

Rational exact_integral(const ShoikhetGraph& g) {
  if (auto r = closed_form_integral(g, Convention::coherent)) return *r;
  throw std::invalid_argument("no closed form for graph " + g.encode());
}

// ---------------------------------------------------------------------------

namespace {

std::map<int, HochschildChain> split_by_length(const HochschildChain& c) {
  std::map<int, HochschildChain> parts;
  for (const auto& [t, coef] : c.terms()) {
    auto [it, inserted] = parts.try_emplace(static_cast<int>(t.size()) - 1, HochschildChain(c.dim()));
    it->second.add_term(t, coef);
  }
  return parts;
}

std::vector<int> aerial_degrees(const MorphismInput& input) {
  std::vector<int> k;
  for (const auto& gamma : input.gammas) k.push_back(gamma.factor_count().value_or(0));
  return k;
}

void check_limits(const MorphismInput& input, int n, const MorphismLimits& limits) {
  if (static_cast<int>(input.gammas.size()) > limits.max_aerial)
    throw std::length_error("too many polyvector fields (limit " + std::to_string(limits.max_aerial) + ")");
  if (n > limits.max_boundary)
    throw std::length_error("chain too long (limit n = " + std::to_string(limits.max_boundary) + ")");
}

}  // namespace

WeightedSum taylor_component(const MorphismInput& input, const MorphismLimits& limits) {
  input.validate();
  WeightedSum sum(input.dim);
  const PolyVector xi = input.xi();
  const auto k = aerial_degrees(input);
  const int p = static_cast<int>(input.xi_factors.size());
  const int aerial = static_cast<int>(input.gammas.size());
  for (const auto& [n, part] : split_by_length(input.chain)) {
    check_limits(input, n, limits);
    for (const auto& g : enumerate_graphs(aerial, n, p, k)) {
      if (structurally_zero(g)) continue;
      sum.add(g, evaluate_D(g, xi, input.gammas, part));
    }
  }
  return sum;
}

WeightedSum lhs_d_side(const MorphismInput& input, const MorphismLimits& limits) {
  input.validate();
  WeightedSum sum(input.dim);
  for (std::size_t a = 0; a < input.xi_factors.size(); ++a) {
    MorphismInput reduced = input;
    reduced.xi_factors.erase(reduced.xi_factors.begin() + static_cast<std::ptrdiff_t>(a));
    WeightedSum term = taylor_component(reduced, limits).derivative(input.xi_factors[a]);
    if (a % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  return sum;
}

WeightedSum rhs_B_side(const MorphismInput& input, const MorphismLimits& limits) {
  MorphismInput shifted = input;
  shifted.chain = connes_B(input.chain);
  return taylor_component(shifted, limits);
}

WeightedSum middle_expression(const MorphismInput& input, const MorphismLimits& limits) {
  input.validate();
  WeightedSum sum(input.dim);
  const PolyVector xi = input.xi();
  const auto k = aerial_degrees(input);
  const int p = static_cast<int>(input.xi_factors.size());
  const int aerial = static_cast<int>(input.gammas.size());
  for (const auto& [n, part] : split_by_length(input.chain)) {
    check_limits(input, n, limits);
    for (const auto& g : enumerate_graphs(aerial, n, p, k)) {
      const Polynomial D = evaluate_D(g, xi, input.gammas, part);
      if (D.is_zero()) continue;
      for (int i = 1; i <= p; ++i) sum.add(delete_central_edge(g, i), i % 2 == 1 ? D : -D);
    }
  }
  return sum;
}

std::pair<LinearForm, LinearForm> boundary_shift_forms(const ShoikhetGraph& g) {
  if (g.boundary_last() < 1) throw std::invalid_argument("boundary shift needs at least two boundary vertices");
  if (g.has_edge_into(Vertex::boundary(0))) throw std::invalid_argument("boundary shift needs no edge into 0b");
  const int n = g.boundary_last() - 1;
  const Rational prefactor = Rational(1) / Rational(star_factorial(g));
  LinearForm lhs, rhs;
  auto add = [&](LinearForm& form, const ShoikhetGraph& h, int sign) {
    auto [canonical, s] = canonicalize(h);
    if (structurally_zero(canonical)) return;
    Rational& c = form[canonical.encode()];
    c += sign * s * prefactor;
    if (c == 0) form.erase(canonical.encode());
  };
  for (int i = 0; i <= n; ++i) add(lhs, shift_graph(g, -i), parity_sign(static_cast<long>(i) * n));
  const ShoikhetGraph sg = *stabilize_graph(g);
  for (int i = 1; i <= static_cast<int>(sg.central_star().size()); ++i)
    add(rhs, delete_central_edge(sg, i), parity_sign(i + 1));
  return {lhs, rhs};
}

Polynomial hkr_evaluate(const HochschildChain& chain, const PolyVector& xi) {
  Polynomial r(chain.dim());
  for (const auto& [t, c] : chain.terms()) {
    DiffForm form = DiffForm::function(Polynomial::monomial(t[0]));
    for (std::size_t k = 1; k < t.size(); ++k)
      form = wedge(form, de_rham(DiffForm::function(Polynomial::monomial(t[k]))));
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(t.size() - 1));
    r += evaluate(form, xi) * (c / Rational(f));
  }
  return r;
}

}  // namespace cycform
