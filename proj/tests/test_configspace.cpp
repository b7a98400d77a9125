#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "cycform/configspace.hpp"

using namespace cycform;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double frac_diff(double a, double b) {
  double d = a - b;
  return d - std::round(d);
}

// Hyperbolic angle at z from the geodesic towards 0 to the geodesic towards w,
// obtained by moving z to the origin with a disk automorphism.
double geometric_angle(Complex z, Complex w) {
  auto T = [&](Complex u) { return (u - z) / (1.0 - std::conj(z) * u); };
  double a = std::arg(T(w) / T(0.0)) / kTwoPi;
  return a - std::floor(a);
}

// Coordinates of a configuration in column order.
std::vector<double> coordinates(const Configuration& c, int slice) {
  std::vector<double> x;
  for (Complex z : c.interior) {
    x.push_back(z.real());
    x.push_back(z.imag());
  }
  for (std::size_t k = 0; k < c.boundary_angles.size(); ++k)
    if (static_cast<int>(k) != slice) x.push_back(c.boundary_angles[k]);
  return x;
}

Configuration from_coordinates(const std::vector<double>& x, int n, int m, int slice) {
  Configuration c;
  for (int i = 0; i < n; ++i) c.interior.emplace_back(x[2 * i], x[2 * i + 1]);
  c.boundary_angles.assign(static_cast<std::size_t>(m + 1), 0.0);
  int col = 2 * n;
  for (int k = 0; k <= m; ++k)
    if (k != slice) c.boundary_angles[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(col++)];
  return c;
}

std::vector<double> edge_angles(const ShoikhetGraph& g, const Configuration& c, double central_sign) {
  std::vector<double> a;
  const Complex z0 = c.position(Vertex::boundary(0));
  for (const Vertex& K : g.central_star()) a.push_back(central_sign * std::arg(c.position(K) / z0) / kTwoPi);
  for (int j = 1; j <= g.aerial_count(); ++j)
    for (const Vertex& L : g.star(j)) a.push_back(geometric_angle(c.interior[j - 1], c.position(L)));
  return a;
}

double determinant(std::vector<std::vector<double>> A) {
  const std::size_t n = A.size();
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    if (A[piv][col] == 0.0) return 0.0;
    if (piv != col) {
      std::swap(A[piv], A[col]);
      det = -det;
    }
    det *= A[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = A[r][col] / A[col][col];
      for (std::size_t k = col; k < n; ++k) A[r][k] -= f * A[col][k];
    }
  }
  return det;
}

// Central-difference Jacobian determinant of the edge angle functions, in
// coordinate order (the slice orientation is applied by the integrator).
double finite_difference_integrand(const ShoikhetGraph& g, const Configuration& c, int slice,
                                   double central_sign) {
  const int n = g.aerial_count(), m = g.boundary_last();
  const std::vector<double> x = coordinates(c, slice);
  const std::size_t size = x.size();
  const double h = 1e-6;
  std::vector<std::vector<double>> J(size, std::vector<double>(size));
  for (std::size_t col = 0; col < size; ++col) {
    std::vector<double> xp = x, xm = x;
    xp[col] += h;
    xm[col] -= h;
    const auto ap = edge_angles(g, from_coordinates(xp, n, m, slice), central_sign);
    const auto am = edge_angles(g, from_coordinates(xm, n, m, slice), central_sign);
    for (std::size_t row = 0; row < size; ++row) J[row][col] = frac_diff(ap[row], am[row]) / (2 * h);
  }
  return determinant(J);
}

IntegrationSpec mc(long samples, std::uint64_t seed = 42) {
  IntegrationSpec s;
  s.samples = samples;
  s.seed = seed;
  s.threads = 1;
  return s;
}

}  // namespace

TEST_CASE("angle functions against independent constructions") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const Complex z = std::polar(0.05 + 0.9 * u(rng), kTwoPi * u(rng));
    const Complex w = std::polar(0.05 + 0.9 * u(rng), kTwoPi * u(rng));
    const Complex b = std::polar(1.0, kTwoPi * u(rng));
    CHECK(std::abs(frac_diff(angle(z, b), geometric_angle(z, b))) < 1e-12);
    CHECK(std::abs(frac_diff(angle(z, w), geometric_angle(z, w))) < 1e-12);
    CHECK(std::abs(frac_diff(angle_c(z, w), -std::arg(z / w) / kTwoPi)) < 1e-12);
    CHECK(angle(z, w) >= 0.0);
    CHECK(angle(z, w) < 1.0);
  }
  CHECK(angle_c(Complex(0.3, 0.4), Complex(0.3, 0.4)) == 0.0);
  CHECK_THROWS(angle_c(0.0, 1.0));
  CHECK_THROWS(angle(0.0, 1.0));
}

TEST_CASE("integrand equals the finite-difference Jacobian determinant") {
  const std::vector<std::pair<const char*, int>> cases = {
      {"0,2;0>1b,0>2b", 0},         {"0,2;0>1b,0>2b", 1},         {"1,1;0>1b|1>0b,1>1b", 0},
      {"1,2;0>1,0>2b|1>1b,1>2b", 0}, {"1,2;0>1,0>2b|1>1b,1>2b", 2}, {"1,3;0>1b,0>2b,0>3b|1>1b,1>2b", 3},
      {"2,1;0>1|1>0b,1>2|2>1b,2>0b", 1}};
  for (const auto& [enc, slice] : cases) {
    const ShoikhetGraph g = ShoikhetGraph::decode(enc);
    IntegrationSpec spec = mc(10);
    spec.slice = slice;
    const std::uint64_t stream = sample_stream(g, spec);
    for (std::uint64_t i = 0; i < 20; ++i) {
      const Configuration c = sample_configuration(g, spec, stream, i, 0, nullptr);
      for (Convention conv : {Convention::coherent, Convention::literal}) {
        const auto v = integrand(g, c, slice, conv);
        REQUIRE(v.has_value());
        const double fd = finite_difference_integrand(g, c, slice, central_form_sign(conv));
        CHECK(*v == doctest::Approx(fd).epsilon(1e-4).scale(1.0));
      }
    }
  }
}

TEST_CASE("sampled configurations lie in the slice") {
  const ShoikhetGraph g = ShoikhetGraph::decode("1,3;0>1b,0>2b,0>3b|1>1b,1>2b");
  for (int slice = 0; slice <= 3; ++slice) {
    IntegrationSpec spec = mc(10);
    spec.slice = slice;
    for (std::uint64_t i = 0; i < 50; ++i) {
      double w = 0.0;
      const Configuration c = sample_configuration(g, spec, sample_stream(g, spec), i, 0, &w);
      CHECK(std::abs(c.interior[0]) < 1.0);
      CHECK(c.boundary_angles[static_cast<std::size_t>(slice)] == 0.0);
      // counterclockwise order slice+1, ..., m, 0, ..., slice-1
      double prev = 0.0;
      for (int k = 1; k <= 3; ++k) {
        const double a = c.boundary_angles[static_cast<std::size_t>((slice + k) % 4)];
        CHECK(a > prev);
        CHECK(a < kTwoPi);
        prev = a;
      }
      CHECK(w > 0.0);
    }
  }
}

TEST_CASE("closed forms for pure-central graphs") {
  CHECK(*closed_form_integral(ShoikhetGraph::decode("0,0;")) == 1);
  CHECK(*closed_form_integral(ShoikhetGraph::decode("0,1;0>1b")) == 1);
  CHECK(*closed_form_integral(ShoikhetGraph::decode("0,2;0>1b,0>2b")) == Rational(1, 2));
  CHECK(*closed_form_integral(ShoikhetGraph::decode("0,2;0>2b,0>1b")) == Rational(-1, 2));
  CHECK(*closed_form_integral(ShoikhetGraph::decode("0,3;0>2b,0>3b,0>1b")) == Rational(1, 6));
  CHECK(*closed_form_integral(ShoikhetGraph::decode("0,3;0>1b,0>2b,0>3b"), Convention::literal) == Rational(-1, 6));
  CHECK(*closed_form_integral(ShoikhetGraph::decode("0,2;0>0b,0>1b")) == 0);
  CHECK_FALSE(closed_form_integral(ShoikhetGraph::decode("1,1;0>1b|1>0b,1>1b")).has_value());
}

TEST_CASE("Monte Carlo reproduces the closed forms") {
  for (const char* enc : {"0,1;0>1b", "0,2;0>1b,0>2b", "0,2;0>2b,0>1b", "0,3;0>1b,0>3b,0>2b"}) {
    const ShoikhetGraph g = ShoikhetGraph::decode(enc);
    const double exact = closed_form_integral(g)->get_d() / static_cast<double>(star_factorial(g));
    const WeightEstimate e = compute_weight(g, mc(20000));
    CHECK(e.value == doctest::Approx(exact).epsilon(1e-12));
    for (int slice = 1; slice <= g.boundary_last(); ++slice) {
      IntegrationSpec s = mc(20000);
      s.slice = slice;
      CHECK(compute_weight(g, s).value == doctest::Approx(exact).epsilon(1e-12));
    }
  }
}

TEST_CASE("structural zeros") {
  CHECK(structurally_zero(ShoikhetGraph::decode("0,2;0>1b")));                      // too few edges
  CHECK(structurally_zero(ShoikhetGraph::decode("0,2;0>0b,0>1b")));                 // central edge into 0b
  CHECK(structurally_zero(ShoikhetGraph::decode("1,2;0>1,0>1|1>1b,1>2b")));          // parallel edges
  CHECK(structurally_zero(ShoikhetGraph::decode("1,2;0>1b,0>2b|1>1b,1>2b"), 2) == false);
  CHECK(structurally_zero(ShoikhetGraph::decode("1,2;0>1,0>1b|1>0b,1>1b")));         // nothing hits 2b
  CHECK_FALSE(structurally_zero(ShoikhetGraph::decode("1,2;0>1,0>1b|1>0b,1>1b"), 2));
  const WeightEstimate z = compute_weight(ShoikhetGraph::decode("0,2;0>0b,0>1b"), mc(1000));
  CHECK(z.value == 0.0);
  CHECK(z.stderr_ == 0.0);
}

TEST_CASE("literal convention flips the sign by the central degree") {
  for (const char* enc : {"1,2;0>1,0>2b|1>1b,1>2b", "1,3;0>1b,0>2b,0>3b|1>1b,1>2b", "1,2;0>1b,0>2b|1>0b,1>1b"}) {
    const ShoikhetGraph g = ShoikhetGraph::decode(enc);
    IntegrationSpec coh = mc(20000), lit = mc(20000);
    lit.convention = Convention::literal;
    const double sign = g.central_star().size() % 2 ? -1.0 : 1.0;
    const WeightEstimate a = compute_weight(g, coh), b = compute_weight(g, lit);
    CHECK(b.value == sign * a.value);
    CHECK(b.stderr_ == a.stderr_);
  }
}

TEST_CASE("results do not depend on the thread count") {
  const ShoikhetGraph g = ShoikhetGraph::decode("1,2;0>1,0>2b|1>1b,1>2b");
  IntegrationSpec s = mc(50000);
  s.block_size = 1000;
  const WeightEstimate one = compute_weight(g, s);
  for (int t : {2, 3, 7}) {
    s.threads = t;
    const WeightEstimate e = compute_weight(g, s);
    CHECK(e.value == one.value);
    CHECK(e.stderr_ == one.stderr_);
  }
}

TEST_CASE("standard error shrinks like one over root N") {
  const ShoikhetGraph g = ShoikhetGraph::decode("1,2;0>1b,0>2b|1>0b,1>2b");
  for (Sampler sampler : {Sampler::polar, Sampler::disk}) {
    IntegrationSpec a = mc(100000), b = mc(400000, 43);
    a.sampler = b.sampler = sampler;
    const double ratio = compute_weight(g, a).stderr_ / compute_weight(g, b).stderr_;
    CHECK(ratio > 2.0 / 1.5);
    CHECK(ratio < 2.0 * 1.5);
  }
}

TEST_CASE("samplers and quadrature agree") {
  const ShoikhetGraph g = ShoikhetGraph::decode("1,2;0>1b,0>2b|1>0b,1>2b");
  IntegrationSpec polar = mc(400000), disk = mc(400000);
  disk.sampler = Sampler::disk;
  const WeightEstimate a = compute_weight(g, polar), b = compute_weight(g, disk);
  CHECK(std::abs(a.value - b.value) < 4.0 * std::hypot(a.stderr_, b.stderr_));

  // dimension 3: vanishes by the reflection z -> conj(z), phi -> -phi
  const ShoikhetGraph h = ShoikhetGraph::decode("1,1;0>1b|1>0b,1>1b");
  IntegrationSpec q;
  q.method = Method::quadrature;
  q.quadrature_nodes = 32;
  const WeightEstimate e = compute_weight(h, q);
  CHECK(std::abs(e.value) < 1e-10);
  const WeightEstimate f = compute_weight(ShoikhetGraph::decode("0,3;0>1b,0>2b,0>3b"), q);
  CHECK(f.value == doctest::Approx(1.0 / 36.0).epsilon(1e-12));
  IntegrationSpec big = q;
  CHECK_THROWS(compute_weight(ShoikhetGraph::decode("1,2;0>1b,0>2b|1>0b,1>2b"), big));
  CHECK(q.method_tag() == "gl32:j0:coherent");
  CHECK(mc(10).method_tag() == "mc-polar:j0:coherent");
}
