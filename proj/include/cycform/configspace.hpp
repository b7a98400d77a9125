#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cycform/graph.hpp"
#include "cycform/rational.hpp"

namespace cycform {

using Complex = std::complex<double>;

/// theta_c(z, w) = -(1/2pi) arg(z/w) mod 1.
double angle_c(Complex z, Complex w);
/// theta(z, w) = (1/2pi) arg((z-w)(1-z conj(w)) conj(z)) mod 1.
double angle(Complex z, Complex w);

/// Sign of the central one-form. `literal` integrates -(1/2pi) d arg(z/w);
/// `coherent` flips it so that the boundary-shift weight identity and the
/// m = 0 HKR identification hold with the slice orientation (see
/// conventions.txt).
enum class Convention { coherent, literal };
enum class Method { monte_carlo, quadrature };
/// polar: r, phi uniform (density proportional to 1/r, cancels the central
/// singularity); disk: uniform area measure.
enum class Sampler { polar, disk };

double central_form_sign(Convention c);
std::string to_string(Convention c);
std::string to_string(Sampler s);
Convention parse_convention(const std::string& s);
Sampler parse_sampler(const std::string& s);

/// Point of C_Gamma^(j): aerial positions z_1..z_n and boundary angles
/// psi_0..psi_m, with psi_j = 0 on the slice.
struct Configuration {
  std::vector<Complex> interior;
  std::vector<double> boundary_angles;

  Complex position(const Vertex& v) const;
};

struct IntegrationSpec {
  Method method = Method::monte_carlo;
  long samples = 1'000'000;      // Monte Carlo sample count
  int quadrature_nodes = 48;     // Gauss-Legendre nodes per coordinate
  std::uint64_t seed = 42;
  int slice = 0;                 // integrate over C_Gamma^(slice)
  Convention convention = Convention::coherent;
  Sampler sampler = Sampler::polar;
  int threads = 0;               // 0: hardware concurrency
  long block_size = 4096;        // reduction granule; results never depend on threads

  /// Stable tag used in cache keys, e.g. "mc-polar:j0:coherent".
  std::string method_tag() const;
};

/// w_Gamma = prod 1/(#Star v)! * integral, with its standard error.
struct WeightEstimate {
  std::string graph;
  std::string method;
  long samples = 0;
  std::uint64_t seed = 0;
  double value = 0.0;
  double stderr_ = 0.0;
  long rejected = 0;
  bool exact = false;

  /// The bare integral of omega_Gamma; derived from `value` so cached and
  /// fresh estimates agree bit for bit.
  double integral(const ShoikhetGraph& g) const;
  double integral_stderr(const ShoikhetGraph& g) const;
};

/// Orientation of C_Gamma^(j) relative to the coordinate order
/// x_1, y_1, ..., x_n, y_n, psi_k (k != j ascending): (-1)^j.
int slice_orientation(int slice);

/// Column of each coordinate for the given slice; -1 for the fixed psi_j.
struct ColumnLayout {
  int aerial = 0;
  int boundary_last = 0;
  int slice = 0;
  int x_column(int vertex) const { return 2 * (vertex - 1); }
  int y_column(int vertex) const { return 2 * (vertex - 1) + 1; }
  int psi_column(int k) const;
  int size() const { return 2 * aerial + boundary_last; }
};

/// True when omega_Gamma vanishes identically on C_Gamma^(slice) for a
/// structural reason: form degree differs from the dimension, parallel
/// edges, a central edge into 0b, or a coordinate no edge depends on.
bool structurally_zero(const ShoikhetGraph& g, int slice = 0);

/// Jacobian of the edge angle functions (rows in wedge order, columns in
/// ColumnLayout order). Empty when a point collides with another.
std::optional<double> integrand(const ShoikhetGraph& g, const Configuration& c, int slice = 0,
                                Convention convention = Convention::coherent);

/// Exact integral for graphs without aerial vertices besides the centre:
/// sgn(star order) / m! when the central star is {1b..mb}, zero otherwise.
std::optional<Rational> closed_form_integral(const ShoikhetGraph& g, Convention convention = Convention::coherent);

/// Monte Carlo or quadrature estimate of w_Gamma.
WeightEstimate compute_weight(const ShoikhetGraph& g, const IntegrationSpec& spec);

/// Samples the configuration drawn for sample `index` on the given slice
/// (exposed for tests of the sampler).
Configuration sample_configuration(const ShoikhetGraph& g, const IntegrationSpec& spec, std::uint64_t stream,
                                   std::uint64_t index, int attempt, double* jacobian_weight);

/// Stream identifier of a graph under a spec: distinct graphs and slices get
/// independent random numbers.
std::uint64_t sample_stream(const ShoikhetGraph& g, const IntegrationSpec& spec);

}  // namespace cycform
