#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "cycform/morphism.hpp"
#include "cycform/random.hpp"
#include "cycform/text.hpp"

using namespace cycform;

namespace {

Polynomial P(const char* s, int d) { return parse_polynomial(s, d); }
PolyVector V(const char* s, int d) { return parse_polyvector(s, d); }

// (1/n!) a_0 det[xi_a(a_b)] for constant vector fields, by the Leibniz formula.
Polynomial hkr_oracle(const std::vector<Polynomial>& a, const std::vector<PolyVector>& xi) {
  const int d = a[0].dim();
  const std::size_t n = a.size() - 1;
  REQUIRE(xi.size() == n);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Polynomial det(d);
  long fact = 1;
  for (std::size_t i = 2; i <= n; ++i) fact *= static_cast<long>(i);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    Polynomial term = Polynomial::constant(d, Rational(inversions % 2 ? -1 : 1));
    for (std::size_t r = 0; r < n; ++r) term *= directional_derivative(xi[r], a[1 + static_cast<std::size_t>(perm[r])]);
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return a[0] * det * (Rational(1) / Rational(fact));
}

MorphismInput input(int d, std::vector<const char*> xi, const char* chain) {
  MorphismInput in;
  in.dim = d;
  for (const char* x : xi) in.xi_factors.push_back(V(x, d));
  in.chain = parse_chain(chain, d);
  return in;
}

}  // namespace

TEST_CASE("D for the pure-central graph pairs xi with the differentials") {
  const int d = 2;
  const ShoikhetGraph g = ShoikhetGraph::decode("0,2;0>1b,0>2b");
  const Polynomial a0 = P("x*y", d), a1 = P("x^2 + y", d), a2 = P("y^2*x", d);
  const Polynomial want = a0 * (a1.derivative(0) * a2.derivative(1) - a1.derivative(1) * a2.derivative(0));
  const HochschildChain c = HochschildChain::tensor({a0, a1, a2});
  CHECK(evaluate_D(g, V("∂x^∂y", d), {}, c) == want);
  CHECK(evaluate_D(ShoikhetGraph::decode("0,2;0>2b,0>1b"), V("∂x^∂y", d), {}, c) == -want);
}

TEST_CASE("D with an aerial vertex follows the Kontsevich rule") {
  const int d = 2;
  const ShoikhetGraph g = ShoikhetGraph::decode("1,1;0>1|1>0b,1>1b");
  const PolyVector xi = V("∂x + 2 ∂y", d);
  const PolyVector gamma = V("x^2*y ∂x^∂y", d);
  const Polynomial a0 = P("x + y^2", d), a1 = P("x*y", d);
  // sum_i xi^i d_i gamma^{jk} d_j a0 d_k a1
  Polynomial want(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        want += xi.component({i}) * gamma.component({j, k}).derivative(i) * a0.derivative(j) * a1.derivative(k);
  CHECK(evaluate_D(g, xi, {gamma}, HochschildChain::tensor({a0, a1})) == want);
  CHECK_THROWS(evaluate_D(g, V("∂x^∂y", d), {gamma}, HochschildChain::tensor({a0, a1})));
  CHECK_THROWS(evaluate_D(g, xi, {gamma}, HochschildChain::tensor({a0, a1, a1})));
}

TEST_CASE("the m = 0 component is HKR") {
  RandomSource rs(31);
  for (int t = 0; t < 100; ++t) {
    const int d = rs.integer(1, 3);
    const int n = rs.integer(0, d);
    MorphismInput in;
    in.dim = d;
    std::vector<Polynomial> slots{rs.polynomial(d, 2, 2)};
    for (int k = 0; k < n; ++k) slots.push_back(rs.polynomial(d, 2, 3));
    for (int k = 0; k < n; ++k) in.xi_factors.push_back(rs.constant_vector_field(d));
    in.chain = HochschildChain::tensor(slots);
    const Polynomial oracle = hkr_oracle(slots, in.xi_factors);
    CHECK(hkr_evaluate(in.chain, in.xi()) == oracle);
    CHECK(taylor_component(in).evaluate_exact(exact_integral) == oracle);
  }
}

TEST_CASE("two-dimensional example: both sides equal one") {
  const MorphismInput in = input(2, {"∂x", "∂y"}, "x (x) y");
  const Polynomial lhs = lhs_d_side(in).evaluate_exact(exact_integral);
  const Polynomial rhs = rhs_B_side(in).evaluate_exact(exact_integral);
  CHECK(lhs == P("1", 2));
  CHECK(rhs == P("1", 2));
  CHECK(middle_expression(in).evaluate_exact(exact_integral) == P("1", 2));
}

TEST_CASE("three-dimensional exact example") {
  const MorphismInput in = input(3, {"∂x", "∂y + 2 ∂z", "∂z"}, "x*y (x) y^2*z (x) x*z; {3} z (x) x^2 (x) y");
  const Polynomial want = P("3/2*x*y^2*z + 3*x", 3);
  CHECK(lhs_d_side(in).evaluate_exact(exact_integral) == want);
  CHECK(rhs_B_side(in).evaluate_exact(exact_integral) == want);
  CHECK(middle_expression(in).evaluate_exact(exact_integral) == want);
}

TEST_CASE("weighted sums canonicalize and drop structural zeros") {
  WeightedSum s(2);
  s.add(ShoikhetGraph::decode("0,2;0>1b,0>2b"), P("x", 2));
  s.add(ShoikhetGraph::decode("0,2;0>2b,0>1b"), P("x", 2));
  CHECK(s.is_zero());
  s.add(ShoikhetGraph::decode("0,2;0>0b,0>1b"), P("x", 2));
  CHECK(s.is_zero());
  s.add(ShoikhetGraph::decode("0,2;0>2b,0>1b"), P("x + y", 2));
  REQUIRE(s.terms().size() == 1);
  CHECK(s.terms().begin()->first == "0,2;0>1b,0>2b");
  CHECK(s.terms().begin()->second == P("-x - y", 2));
  const auto forms = s.monomial_forms();
  CHECK(forms.size() == 2);
  CHECK(s.evaluate_exact(exact_integral) == P("-1/2*x - 1/2*y", 2));
  CHECK_THROWS(exact_integral(ShoikhetGraph::decode("1,1;0>1b|1>0b,1>1b")));
}

TEST_CASE("boundary-shift forms") {
  const auto [lhs, rhs] = boundary_shift_forms(ShoikhetGraph::decode("0,2;0>1b,0>2b"));
  // both sides reduce to the pure-central graphs on one fewer boundary vertex
  Rational l = 0, r = 0;
  for (const auto& [g, c] : lhs) l += c * exact_integral(ShoikhetGraph::decode(g));
  for (const auto& [g, c] : rhs) r += c * exact_integral(ShoikhetGraph::decode(g));
  CHECK(l == r);
  CHECK(l != 0);
  CHECK_THROWS(boundary_shift_forms(ShoikhetGraph::decode("1,2;0>1b,0>2b|1>0b,1>1b")));
  for (const char* enc : {"1,3;0>1,0>2b,0>3b|1>1b,1>2b", "1,3;0>1b,0>2b,0>3b|1>1b,1>2b"}) {
    const auto [a, b] = boundary_shift_forms(ShoikhetGraph::decode(enc));
    CHECK_FALSE(a.empty());
    CHECK_FALSE(b.empty());
  }
}

TEST_CASE("input validation") {
  MorphismInput in = input(2, {"x ∂x"}, "x");
  CHECK_THROWS_AS(in.validate(), std::invalid_argument);
  in = input(2, {"∂x"}, "x");
  in.gammas.push_back(V("∂x + ∂x^∂y", 2));
  CHECK_THROWS_AS(in.validate(), std::invalid_argument);
  MorphismInput big = input(2, {"∂x"}, "x (x) y (x) x (x) y (x) x (x) y");
  CHECK_THROWS_AS(taylor_component(big), std::length_error);
}
