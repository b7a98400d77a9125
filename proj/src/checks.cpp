#include "cycform/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "cycform/battery.hpp"
#include "cycform/conventions.hpp"
#include "cycform/hochschild.hpp"
#include "cycform/morphism.hpp"
#include "cycform/random.hpp"
#include "cycform/text.hpp"
#include "json.hpp"

namespace cycform {

namespace {

std::uint64_t check_seed(std::uint64_t seed, const std::string& name) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ seed;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

CheckResult exact_check(const std::string& name, int trials, std::uint64_t seed,
                        const std::function<bool(RandomSource&)>& body) {
  CheckResult r;
  r.name = name;
  r.exact = true;
  r.trials = trials;
  RandomSource rs(check_seed(seed, name));
  for (int t = 0; t < trials; ++t) {
    if (!body(rs)) {
      r.detail = "fails at trial " + std::to_string(t);
      return r;
    }
  }
  r.pass = true;
  return r;
}

CheckResult statistical(const std::string& name, double difference, double sigma, const SuiteOptions& opt,
                        std::string detail = {}) {
  CheckResult r;
  r.name = name;
  r.difference = difference;
  r.sigma = sigma;
  r.tolerance = statistical_tolerance(sigma, opt);
  r.pass = std::abs(difference) <= r.tolerance;
  r.detail = std::move(detail);
  return r;
}

IntegrationSpec spec_from(const SuiteOptions& opt, long samples, std::uint64_t seed) {
  IntegrationSpec s;
  s.samples = samples;
  s.seed = seed;
  s.threads = opt.threads;
  s.convention = opt.convention;
  s.sampler = opt.sampler;
  return s;
}

int pv_degree(const PolyVector& p) { return p.factor_count().value_or(0) - 1; }

bool graded_sign_odd(long a, long b) { return ((a * b) % 2) != 0; }

std::string fmt(double x) { return format_double(x); }

}  // namespace

double statistical_tolerance(double sigma, const SuiteOptions& opt) {
  double tol = opt.sigmas * sigma + 1e-12;
  if (opt.apply_floor) tol = std::max(tol, opt.floor);
  return tol;
}

std::vector<std::string> suite_names() { return {"algebra", "mixed", "weights", "lemma33", "theorem34"}; }

// ---------------------------------------------------------------------------

std::vector<CheckResult> algebra_checks(const SuiteOptions& opt) {
  const int T = opt.trials;
  const int D = std::clamp(opt.dim, 1, 3);
  std::vector<CheckResult> out;
  auto pv = [&](RandomSource& rs, int d) { return rs.polyvector(d, rs.integer(0, std::min(d, 3)), 2, 2); };

  out.push_back(exact_check("schouten/antisymmetry", T, opt.seed, [&](RandomSource& rs) {
    int d = rs.integer(1, D);
    PolyVector P = pv(rs, d), Q = pv(rs, d);
    PolyVector lhs = schouten(P, Q), rhs = schouten(Q, P);
    return graded_sign_odd(pv_degree(P), pv_degree(Q)) ? lhs == rhs : lhs == -rhs;
  }));
  out.push_back(exact_check("schouten/jacobi", T, opt.seed, [&](RandomSource& rs) {
    int d = rs.integer(1, D);
    PolyVector P = pv(rs, d), Q = pv(rs, d), R = pv(rs, d);
    PolyVector lhs = schouten(P, schouten(Q, R));
    PolyVector second = schouten(Q, schouten(P, R));
    PolyVector rhs = schouten(schouten(P, Q), R) + (graded_sign_odd(pv_degree(P), pv_degree(Q)) ? -second : second);
    return lhs == rhs;
  }));
  out.push_back(exact_check("schouten/leibniz", T, opt.seed, [&](RandomSource& rs) {
    int d = rs.integer(1, D);
    PolyVector P = pv(rs, d), Q = pv(rs, d), R = pv(rs, d);
    PolyVector second = wedge(Q, schouten(P, R));
    PolyVector rhs = wedge(schouten(P, Q), R) +
                     (graded_sign_odd(pv_degree(P), pv_degree(Q) + 1) ? -second : second);
    return schouten(P, wedge(Q, R)) == rhs;
  }));
  out.push_back(exact_check("schouten/vector-field-is-lie-derivative", T, opt.seed, [&](RandomSource& rs) {
    int d = rs.integer(1, D);
    PolyVector xi = rs.polyvector(d, 1, 2, 2), Q = pv(rs, d);
    PolyVector f = rs.polyvector(d, 0, 2, 2), g = rs.polyvector(d, 0, 2, 2);
    return schouten(xi, Q) == lie_derivative_polyvector(xi, Q) && schouten(f, g).is_zero();
  }));
  out.push_back(exact_check("forms/d-squared", T, opt.seed, [&](RandomSource& rs) {
    int d = rs.integer(1, D);
    DiffForm w = rs.form(d, rs.integer(0, d), 3, 3);
    return de_rham(de_rham(w)).is_zero();
  }));
  out.push_back(exact_check("forms/d-leibniz", T, opt.seed, [&](RandomSource& rs) {
    int d = rs.integer(1, D);
    int p = rs.integer(0, d);
    DiffForm a = rs.form(d, p, 2, 2), b = rs.form(d, rs.integer(0, d), 2, 2);
    DiffForm second = wedge(a, de_rham(b));
    return de_rham(wedge(a, b)) == wedge(de_rham(a), b) + (p % 2 ? -second : second);
  }));
  out.push_back(exact_check("forms/contraction-composition", T, opt.seed, [&](RandomSource& rs) {
    int d = rs.integer(1, D);
    PolyVector P = pv(rs, d), Q = pv(rs, d);
    DiffForm w = rs.form(d, rs.integer(0, d), 2, 2);
    return contract(wedge(P, Q), w) == contract(P, contract(Q, w));
  }));
  const Conventions conv = Conventions::load_default();
  out.push_back(exact_check("forms/evaluation-vs-contraction", T, opt.seed, [&](RandomSource& rs) {
    int d = rs.integer(1, D);
    int k = rs.integer(0, d);
    PolyVector xi = rs.polyvector(d, k, 2, 2);
    DiffForm w = rs.form(d, k, 2, 2);
    const Polynomial full = contract(xi, w).component({});
    const long s = conv.sign("evaluation_parity", static_cast<long>(k) * (k - 1) / 2);
    return evaluate(w, xi) == full * Rational(s);
  }));
  out.push_back(exact_check("forms/cartan-module-law", T, opt.seed, [&](RandomSource& rs) {
    int d = rs.integer(1, D);
    PolyVector P = pv(rs, d), Q = pv(rs, d);
    DiffForm w = rs.form(d, rs.integer(0, d), 2, 2);
    DiffForm second = lie_derivative(Q, lie_derivative(P, w));
    DiffForm lhs = lie_derivative(P, lie_derivative(Q, w)) -
                   (graded_sign_odd(pv_degree(P), pv_degree(Q)) ? -second : second);
    return lhs == lie_derivative(schouten(P, Q), w);
  }));
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> mixed_checks(const SuiteOptions& opt) {
  const int T = opt.trials;
  const int D = std::clamp(opt.dim, 1, 3);
  const int N = std::max(opt.max_chain, 1);
  const Conventions conv = Conventions::load_default();
  std::vector<CheckResult> out;
  auto chain = [&](RandomSource& rs, int d, int max_n) { return rs.chain(d, rs.integer(0, max_n), 3, 3); };

  out.push_back(exact_check("chains/b-squared", T, opt.seed, [&](RandomSource& rs) {
    int d = rs.integer(1, D);
    return boundary_b(boundary_b(chain(rs, d, N))).is_zero();
  }));
  out.push_back(exact_check("chains/B-squared", T, opt.seed, [&](RandomSource& rs) {
    int d = rs.integer(1, D);
    return connes_B(connes_B(chain(rs, d, N))).is_zero();
  }));
  out.push_back(exact_check("chains/bB-plus-Bb", T, opt.seed, [&](RandomSource& rs) {
    int d = rs.integer(1, D);
    HochschildChain c = chain(rs, d, N);
    return (boundary_b(connes_B(c)) + connes_B(boundary_b(c))).is_zero();
  }));
  out.push_back(exact_check("chains/B-from-sigma-and-s", T, opt.seed, [&](RandomSource& rs) {
    int d = rs.integer(1, D);
    int n = rs.integer(0, N);
    HochschildChain c = rs.chain(d, n, 3, 3);
    HochschildChain sum(d);
    HochschildChain sc = stab_s(c);
    for (int i = 0; i <= n; ++i) {
      HochschildChain term = shift_sigma(sc, i);
      if ((i * n) % 2) term = -term;
      sum += term;
    }
    return sum == connes_B(c);
  }));
  out.push_back(exact_check("chains/cyclic-differential-squared", T, opt.seed, [&](RandomSource& rs) {
    int d = rs.integer(1, D);
    CyclicChain c(d);
    c.add(0, chain(rs, d, N));
    c.add(1, chain(rs, d, N));
    return cyclic_differential(cyclic_differential(c)).is_zero() &&
           cyclic_differential(cyclic_differential(c, UAction::zero), UAction::zero).is_zero();
  }));
  out.push_back(exact_check("cochains/dH-squared", T, opt.seed, [&](RandomSource& rs) {
    int d = rs.integer(1, D);
    PolyDiffOperator P = rs.cochain(d, rs.integer(0, 3), 2, false);
    return coboundary_dH(coboundary_dH(P)).is_zero();
  }));
  out.push_back(exact_check("cochains/dH-is-bracket-with-m", T, opt.seed, [&](RandomSource& rs) {
    int d = rs.integer(1, D);
    PolyDiffOperator P = rs.cochain(d, rs.integer(0, 3), 2, false);
    return coboundary_dH(P) == gerstenhaber(PolyDiffOperator::multiplication(d), P);
  }));
  out.push_back(exact_check("cochains/gerstenhaber-antisymmetry", T, opt.seed, [&](RandomSource& rs) {
    int d = rs.integer(1, D);
    PolyDiffOperator P = rs.cochain(d, rs.integer(1, 3), 2, false);
    PolyDiffOperator Q = rs.cochain(d, rs.integer(1, 3), 2, false);
    PolyDiffOperator lhs = gerstenhaber(P, Q), rhs = gerstenhaber(Q, P);
    return graded_sign_odd(P.degree(), Q.degree()) ? lhs == rhs : lhs == -rhs;
  }));
  out.push_back(exact_check("cochains/gerstenhaber-jacobi", T, opt.seed, [&](RandomSource& rs) {
    int d = rs.integer(1, D);
    PolyDiffOperator P = rs.cochain(d, rs.integer(1, 2), 2, false);
    PolyDiffOperator Q = rs.cochain(d, rs.integer(1, 2), 2, false);
    PolyDiffOperator R = rs.cochain(d, rs.integer(1, 2), 2, false);
    PolyDiffOperator second = gerstenhaber(Q, gerstenhaber(P, R));
    PolyDiffOperator rhs = gerstenhaber(gerstenhaber(P, Q), R);
    rhs += graded_sign_odd(P.degree(), Q.degree()) ? -second : second;
    return gerstenhaber(P, gerstenhaber(Q, R)) == rhs;
  }));
  out.push_back(exact_check("action/multiplication-is-b", T, opt.seed, [&](RandomSource& rs) {
    int d = rs.integer(1, D);
    HochschildChain c = chain(rs, d, N);
    return cochain_action(PolyDiffOperator::multiplication(d), c) ==
           Rational(conv.integer("multiplication_action_sign")) * boundary_b(c);
  }));
  out.push_back(exact_check("action/module-law", T, opt.seed, [&](RandomSource& rs) {
    int d = rs.integer(1, D);
    HochschildChain c = chain(rs, d, std::min(N, 4));
    PolyDiffOperator P = rs.cochain(d, rs.integer(1, 3), 2, true);
    PolyDiffOperator Q = rs.cochain(d, rs.integer(1, 2), 2, true);
    HochschildChain second = cochain_action(Q, cochain_action(P, c));
    HochschildChain rhs = cochain_action(P, cochain_action(Q, c)) -
                          Rational(conv.sign("module_parity", static_cast<long>(P.degree()) * Q.degree())) * second;
    return cochain_action(gerstenhaber(P, Q), c) == rhs;
  }));
  out.push_back(exact_check("action/leibniz", T, opt.seed, [&](RandomSource& rs) {
    int d = rs.integer(1, D);
    HochschildChain c = chain(rs, d, std::min(N, 4));
    PolyDiffOperator P = rs.cochain(d, rs.integer(0, 3), 2, true);
    HochschildChain rhs = cochain_action(coboundary_dH(P), c) +
                          Rational(conv.sign("leibniz_parity", P.degree())) * cochain_action(P, boundary_b(c));
    return boundary_b(cochain_action(P, c)) == rhs;
  }));
  out.push_back(exact_check("action/B-graded-commutes", T, opt.seed, [&](RandomSource& rs) {
    int d = rs.integer(1, D);
    HochschildChain c = chain(rs, d, std::min(N, 4));
    PolyDiffOperator P = rs.cochain(d, rs.integer(0, 3), 2, true);
    return connes_B(cochain_action(P, c)) ==
           Rational(conv.sign("B_action_parity", P.degree())) * cochain_action(P, connes_B(c));
  }));
  return out;
}

// ---------------------------------------------------------------------------

CheckResult angle_cocycle_check(const SuiteOptions& opt, long triples, double tolerance) {
  RandomSource rs(check_seed(opt.seed, "angle-cocycle"));
  auto point = [&] {
    for (;;) {
      double r = std::sqrt(rs.unit()), phi = 2.0 * std::numbers::pi * rs.unit();
      if (r > 1e-6) return std::polar(r, phi);
    }
  };
  double worst = 0.0;
  for (long t = 0; t < triples; ++t) {
    Complex z = point(), w = point(), u = point();
    double x = angle_c(z, w) - angle_c(z, u) - angle_c(u, w);
    worst = std::max(worst, std::abs(x - std::round(x)));
  }
  CheckResult r;
  r.name = "angle/cocycle";
  r.exact = false;
  r.trials = triples;
  r.difference = worst;
  r.tolerance = tolerance;
  r.pass = worst <= tolerance;
  return r;
}

std::vector<CheckResult> pure_central_checks(const SuiteOptions& opt, WeightCache& cache) {
  std::vector<CheckResult> out;
  const IntegrationSpec spec = spec_from(opt, opt.samples, opt.seed);
  for (int m = 1; m <= 3; ++m) {
    std::vector<std::vector<Vertex>> stars(1);
    for (int k = 1; k <= m; ++k) stars[0].push_back(Vertex::boundary(k));
    const ShoikhetGraph g(0, m, stars);
    const WeightEstimate e = cache.get_or_compute(g, spec);
    const Rational exact = *closed_form_integral(g, opt.convention) / Rational(star_factorial(g));
    out.push_back(statistical("weights/pure-central/m=" + std::to_string(m), e.value - exact.get_d(), e.stderr_, opt,
                              "estimate=" + fmt(e.value) + " exact=" + to_string(exact)));
  }
  return out;
}

std::vector<std::pair<std::string, int>> slice_invariance_graphs() {
  return {{"0,2;0>1b,0>2b", 1},
          {"1,2;0>1b,0>2b|1>0b,1>1b", 1},
          {"1,2;0>1,0>2b|1>1b,1>2b", 2},
          {"1,3;0>1,0>1b,0>3b|1>2b,1>3b", 2},
          {"1,3;0>1b,0>2b,0>3b|1>1b,1>2b", 3}};
}

std::vector<CheckResult> slice_invariance_checks(const SuiteOptions& opt, WeightCache& cache) {
  std::vector<CheckResult> out;
  for (const auto& [enc, slice] : slice_invariance_graphs()) {
    const ShoikhetGraph g = ShoikhetGraph::decode(enc);
    IntegrationSpec base = spec_from(opt, opt.samples, opt.seed);
    IntegrationSpec sliced = base;
    sliced.slice = slice;
    const WeightEstimate a = cache.get_or_compute(g, base);
    const WeightEstimate b = cache.get_or_compute(g, sliced);
    SuiteOptions strict = opt;
    strict.apply_floor = false;
    out.push_back(statistical("weights/slice/" + enc + "@j=" + std::to_string(slice), a.value - b.value,
                              std::hypot(a.stderr_, b.stderr_), strict,
                              "C=" + fmt(a.value) + " C(j)=" + fmt(b.value)));
  }
  return out;
}

std::vector<std::string> boundary_shift_graphs() {
  return {"1,3;0>1,0>2b,0>3b|1>1b,1>2b", "1,3;0>1,0>1b,0>3b|1>2b,1>3b", "1,3;0>1b,0>2b,0>3b|1>1b,1>2b"};
}

std::vector<CheckResult> boundary_shift_checks(const SuiteOptions& opt, WeightCache& cache) {
  std::vector<CheckResult> out;
  WeightProvider weights(spec_from(opt, opt.samples, opt.seed), cache);
  SuiteOptions strict = opt;
  strict.apply_floor = false;
  for (const auto& enc : boundary_shift_graphs()) {
    const auto [lhs, rhs] = boundary_shift_forms(ShoikhetGraph::decode(enc));
    LinearForm diff = lhs;
    for (const auto& [g, c] : rhs) {
      diff[g] -= c;
      if (diff[g] == 0) diff.erase(g);
    }
    const Measurement l = evaluate(lhs, weights), r = evaluate(rhs, weights), d = evaluate(diff, weights);
    out.push_back(statistical("shift/" + enc, d.value, d.sigma, strict,
                              "lhs=" + fmt(l.value) + " rhs=" + fmt(r.value)));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> cyclic_exact_checks(const SuiteOptions& opt) {
  const int D = std::clamp(opt.dim, 1, 3);
  std::vector<CheckResult> out;
  auto input = [&](RandomSource& rs, bool minus_one) {
    MorphismInput in;
    in.dim = rs.integer(1, D);
    // xi has n + 1 factors in the identity and n for the HKR comparison; more
    // factors than dimensions would make xi vanish.
    const int n = rs.integer(0, std::min(3, minus_one ? in.dim : in.dim - 1));
    const int p = minus_one ? n : n + 1;
    for (int a = 0; a < p; ++a) in.xi_factors.push_back(rs.constant_vector_field(in.dim));
    in.chain = rs.chain(in.dim, n, 2, 3);
    return in;
  };
  const auto exact_integral = [&](const ShoikhetGraph& g) { return *closed_form_integral(g, opt.convention); };
  out.push_back(exact_check("cyclic/exact/d-U0-equals-U0-B", opt.trials, opt.seed, [&](RandomSource& rs) {
    MorphismInput in = input(rs, false);
    return lhs_d_side(in).evaluate_exact(exact_integral) == rhs_B_side(in).evaluate_exact(exact_integral);
  }));
  out.push_back(exact_check("cyclic/exact/middle-expression", opt.trials, opt.seed, [&](RandomSource& rs) {
    MorphismInput in = input(rs, false);
    const Polynomial m = middle_expression(in).evaluate_exact(exact_integral);
    return m == lhs_d_side(in).evaluate_exact(exact_integral) && m == rhs_B_side(in).evaluate_exact(exact_integral);
  }));
  out.push_back(exact_check("cyclic/exact/U0-is-HKR", opt.trials, opt.seed, [&](RandomSource& rs) {
    MorphismInput in = input(rs, true);
    return taylor_component(in).evaluate_exact(exact_integral) == hkr_evaluate(in.chain, in.xi());
  }));
  return out;
}

namespace {

CheckResult compare_sums(const std::string& name, const WeightedSum& a, const WeightedSum& b, WeightProvider& weights,
                         const SuiteOptions& opt) {
  const WeightedSum delta = a - b;
  const auto diff = evaluate(delta, weights);
  const auto forms = delta.monomial_forms();
  Exponent worst_exponent;
  CheckResult worst;
  worst.name = name;
  worst.pass = true;
  worst.tolerance = statistical_tolerance(0.0, opt);
  double worst_ratio = -1.0;
  std::string worst_monomial = "-";
  for (const auto& [e, m] : diff) {
    CheckResult r = statistical(name, m.value, m.sigma, opt);
    const double ratio = std::abs(r.difference) / r.tolerance;
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst = r;
      worst_monomial = format(Polynomial::monomial(e));
      worst_exponent = e;
    }
  }
  bool all = true;
  for (const auto& [e, m] : diff) all = all && std::abs(m.value) <= statistical_tolerance(m.sigma, opt);
  worst.pass = all;
  // Sum of |coefficient * integral| over the compared terms: the size of
  // what cancels.
  double scale = 0.0;
  if (!diff.empty())
    for (const auto& [enc, c] : forms.at(worst_exponent))
      scale += std::abs(c.get_d() * weights.integral(ShoikhetGraph::decode(enc)).value);
  worst.detail = "monomials=" + std::to_string(diff.size()) + " worst=" + worst_monomial + " scale=" + fmt(scale);
  return worst;
}

}  // namespace

std::vector<CheckResult> cyclic_numeric_checks(const SuiteOptions& opt, WeightCache& cache) {
  std::vector<CheckResult> out;
  SuiteOptions strict = opt;
  strict.apply_floor = false;
  for (const auto& c : load_battery(battery_path(opt.battery))) {
    WeightProvider weights(spec_from(opt, opt.battery_samples.value_or(c.samples), c.seed), cache);
    const WeightedSum lhs = lhs_d_side(c.input), rhs = rhs_B_side(c.input), mid = middle_expression(c.input);
    const std::string base = "cyclic/" + c.name + "/";
    out.push_back(compare_sums(base + "lhs-rhs", lhs, rhs, weights, strict));
    out.push_back(compare_sums(base + "rhs-middle", rhs, mid, weights, strict));
    out.push_back(compare_sums(base + "lhs-middle", lhs, mid, weights, strict));
  }
  return out;
}

// ---------------------------------------------------------------------------

RunReport run_suite(const std::string& suite, const SuiteOptions& opt, WeightCache& cache) {
  RunReport report;
  report.command = "check " + suite;
  report.seed = opt.seed;
  report.inputs = {{"dim", std::to_string(opt.dim)},
                   {"trials", std::to_string(opt.trials)},
                   {"seed", std::to_string(opt.seed)},
                   {"samples", std::to_string(opt.samples)},
                   {"sigmas", fmt(opt.sigmas)},
                   {"floor", opt.apply_floor ? fmt(opt.floor) : "off"},
                   {"convention", to_string(opt.convention)},
                   {"sampler", to_string(opt.sampler)}};
  auto append = [&](std::vector<CheckResult> v) { report.checks.insert(report.checks.end(), v.begin(), v.end()); };
  if (suite == "algebra") {
    append(algebra_checks(opt));
  } else if (suite == "mixed") {
    report.inputs.emplace_back("max_chain", std::to_string(opt.max_chain));
    append(mixed_checks(opt));
  } else if (suite == "weights") {
    report.checks.push_back(angle_cocycle_check(opt));
    append(pure_central_checks(opt, cache));
    append(slice_invariance_checks(opt, cache));
  } else if (suite == "lemma33") {
    append(boundary_shift_checks(opt, cache));
  } else if (suite == "theorem34") {
    report.inputs.emplace_back("battery", opt.battery);
    if (opt.battery_samples) report.inputs.emplace_back("battery_samples", std::to_string(*opt.battery_samples));
    append(cyclic_exact_checks(opt));
    if (opt.numeric) append(cyclic_numeric_checks(opt, cache));
  } else {
    throw std::invalid_argument("unknown suite '" + suite + "'");
  }
  return report;
}

bool RunReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string RunReport::to_text() const {
  std::string out = "cycform " + command + "\n";
  for (const auto& [k, v] : inputs) out += "  " + k + " = " + v + "\n";
  long passed = 0;
  for (const auto& c : checks) {
    passed += c.pass;
    out += c.pass ? "PASS  " : "FAIL  ";
    out += c.name;
    if (c.exact)
      out += "  [exact, " + std::to_string(c.trials) + " trials]";
    else
      out += "  diff=" + fmt(c.difference) + " sigma=" + fmt(c.sigma) + " tol=" + fmt(c.tolerance);
    if (!c.detail.empty()) out += "  " + c.detail;
    out += "\n";
  }
  if (cache) out += "cache hits=" + std::to_string(cache->hits) + " misses=" + std::to_string(cache->misses) + "\n";
  if (wall_seconds) out += "wall time " + fmt(*wall_seconds) + " s\n";
  out += std::string(all_pass() ? "ALL PASS" : "FAILED") + " (" + std::to_string(passed) + "/" +
         std::to_string(checks.size()) + ")\n";
  return out;
}

std::string RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["seed"] = seed;
  nlohmann::ordered_json in = nlohmann::ordered_json::object();
  for (const auto& [k, v] : inputs) in[k] = v;
  j["inputs"] = in;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["status"] = c.pass ? "pass" : "fail";
    e["exact"] = c.exact;
    if (c.exact) {
      e["trials"] = c.trials;
    } else {
      e["difference"] = c.difference;
      e["sigma"] = c.sigma;
      e["tolerance"] = c.tolerance;
    }
    e["detail"] = c.detail;
    arr.push_back(e);
  }
  j["checks"] = arr;
  if (cache) j["cache"] = {{"hits", cache->hits}, {"misses", cache->misses}};
  if (wall_seconds) j["wall_seconds"] = *wall_seconds;
  j["all_pass"] = all_pass();
  return j.dump(2) + "\n";
}

}  // namespace cycform
