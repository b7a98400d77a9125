#include "cycform/configspace.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <mutex>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace cycform {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kCollision = 1e-12;
constexpr int kMaxAttempts = 64;

double wrap_unit(double t) {
  t -= std::floor(t);
  return t >= 1.0 ? 0.0 : t;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based uniform in (0,1): a pure function of its four keys.
double uniform(std::uint64_t stream, std::uint64_t index, std::uint64_t coordinate, std::uint64_t attempt) {
  std::uint64_t h = splitmix64(stream ^ splitmix64(index ^ splitmix64((coordinate << 8) ^ attempt)));
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t size) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

using Jacobian = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 16, 16>;

bool collides(const Configuration& c) {
  for (std::size_t i = 0; i < c.interior.size(); ++i) {
    const Complex z = c.interior[i];
    if (std::abs(z) < kCollision || std::abs(z) > 1.0 - kCollision) return true;
    for (std::size_t k = i + 1; k < c.interior.size(); ++k)
      if (std::abs(z - c.interior[k]) < kCollision) return true;
  }
  std::vector<double> angles = c.boundary_angles;
  std::sort(angles.begin(), angles.end());
  for (std::size_t i = 1; i < angles.size(); ++i)
    if (angles[i] - angles[i - 1] < kCollision) return true;
  if (!angles.empty() && kTwoPi - angles.back() + angles.front() < kCollision) return true;
  return false;
}

}  // namespace

double angle_c(Complex z, Complex w) {
  if (z == 0.0 || w == 0.0) throw std::domain_error("angle_c needs nonzero arguments");
  return wrap_unit(-std::arg(z / w) / kTwoPi);
}

double angle(Complex z, Complex w) {
  if (z == 0.0 || z == w) throw std::domain_error("angle needs z != 0 and z != w");
  return wrap_unit(std::arg((z - w) * (1.0 - z * std::conj(w)) * std::conj(z)) / kTwoPi);
}

double central_form_sign(Convention c) { return c == Convention::coherent ? 1.0 : -1.0; }

std::string to_string(Convention c) { return c == Convention::coherent ? "coherent" : "literal"; }
std::string to_string(Sampler s) { return s == Sampler::polar ? "polar" : "disk"; }

Convention parse_convention(const std::string& s) {
  if (s == "coherent") return Convention::coherent;
  if (s == "literal") return Convention::literal;
  throw std::invalid_argument("unknown convention '" + s + "'");
}

Sampler parse_sampler(const std::string& s) {
  if (s == "polar") return Sampler::polar;
  if (s == "disk") return Sampler::disk;
  throw std::invalid_argument("unknown sampler '" + s + "'");
}

Complex Configuration::position(const Vertex& v) const {
  if (v.is_boundary()) return std::polar(1.0, boundary_angles.at(static_cast<std::size_t>(v.index)));
  if (v.index == 0) return 0.0;
  return interior.at(static_cast<std::size_t>(v.index - 1));
}

std::string IntegrationSpec::method_tag() const {
  std::string head = method == Method::monte_carlo ? "mc-" + to_string(sampler)
                                                   : "gl" + std::to_string(quadrature_nodes);
  return head + ":j" + std::to_string(slice) + ":" + to_string(convention);
}

double WeightEstimate::integral(const ShoikhetGraph& g) const {
  return value * static_cast<double>(star_factorial(g));
}

double WeightEstimate::integral_stderr(const ShoikhetGraph& g) const {
  return stderr_ * static_cast<double>(star_factorial(g));
}

int slice_orientation(int slice) { return slice % 2 == 0 ? 1 : -1; }

int ColumnLayout::psi_column(int k) const {
  if (k == slice) return -1;
  return 2 * aerial + (k < slice ? k : k - 1);
}

bool structurally_zero(const ShoikhetGraph& g, int slice) {
  if (g.edge_count() != g.configuration_dimension()) return true;
  if (g.has_parallel_edges()) return true;
  const auto& central = g.central_star();
  if (std::find(central.begin(), central.end(), Vertex::boundary(0)) != central.end()) return true;
  for (int i = 1; i <= g.aerial_count(); ++i)
    if (g.star(i).empty() && !g.has_edge_into(Vertex::aerial(i))) return true;
  for (int k = 0; k <= g.boundary_last(); ++k) {
    if (k == slice) continue;
    bool used = g.has_edge_into(Vertex::boundary(k)) || (k == 0 && !g.central_star().empty());
    if (!used) return true;
  }
  return false;
}

std::optional<double> integrand(const ShoikhetGraph& g, const Configuration& c, int slice, Convention convention) {
  const ColumnLayout layout{g.aerial_count(), g.boundary_last(), slice};
  const int size = layout.size();
  if (g.edge_count() != size) throw std::invalid_argument("integrand: edge count differs from dimension");
  if (size > 16) throw std::length_error("integrand: configuration space too large");
  if (collides(c)) return std::nullopt;
  Jacobian J = Jacobian::Zero(size, size);
  const double central = central_form_sign(convention) / kTwoPi;
  const double one = 1.0 / kTwoPi;
  int row = 0;
  for (const Vertex& K : g.central_star()) {
    if (K.is_aerial()) {
      const Complex z = c.interior[static_cast<std::size_t>(K.index - 1)];
      const double r2 = std::norm(z);
      J(row, layout.x_column(K.index)) += central * -z.imag() / r2;
      J(row, layout.y_column(K.index)) += central * z.real() / r2;
    } else if (int col = layout.psi_column(K.index); col >= 0) {
      J(row, col) += central;
    }
    if (int col = layout.psi_column(0); col >= 0) J(row, col) -= central;
    ++row;
  }
  const Complex I(0.0, 1.0);
  for (int j = 1; j <= g.aerial_count(); ++j) {
    const Complex z = c.interior[static_cast<std::size_t>(j - 1)];
    for (const Vertex& L : g.star(j)) {
      const Complex w = c.position(L);
      const Complex A = 1.0 / (z - w);
      const Complex B = 1.0 / (1.0 - z * std::conj(w));
      const Complex zb_inv = 1.0 / std::conj(z);
      J(row, layout.x_column(j)) += one * (A - std::conj(w) * B + zb_inv).imag();
      J(row, layout.y_column(j)) += one * (I * A - I * std::conj(w) * B - I * zb_inv).imag();
      if (L.is_aerial()) {
        J(row, layout.x_column(L.index)) += one * (-A - z * B).imag();
        J(row, layout.y_column(L.index)) += one * (-I * A + I * z * B).imag();
      } else if (int col = layout.psi_column(L.index); col >= 0) {
        J(row, col) += one * (-I * w * A + I * z * std::conj(w) * B).imag();
      }
      ++row;
    }
  }
  if (size == 0) return 1.0;
  return J.partialPivLu().determinant();
}

std::optional<Rational> closed_form_integral(const ShoikhetGraph& g, Convention convention) {
  if (g.aerial_count() != 0) return std::nullopt;
  const int m = g.boundary_last();
  const auto& star = g.central_star();
  if (static_cast<int>(star.size()) != m || g.has_parallel_edges()) return Rational(0);
  std::vector<int> labels;
  for (const Vertex& v : star) {
    if (v.index == 0) return Rational(0);
    labels.push_back(v.index);
  }
  int sign = 1;
  for (std::size_t a = 0; a < labels.size(); ++a)
    for (std::size_t b = a + 1; b < labels.size(); ++b)
      if (labels[a] > labels[b]) sign = -sign;
  if (convention == Convention::literal && m % 2 != 0) sign = -sign;
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(m));
  return Rational(sign) / Rational(f);
}

std::uint64_t sample_stream(const ShoikhetGraph& g, const IntegrationSpec& spec) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = fnv1a(h, &spec.seed, sizeof spec.seed);
  const std::string enc = g.encode();
  h = fnv1a(h, enc.data(), enc.size());
  const std::int64_t slice = spec.slice;
  h = fnv1a(h, &slice, sizeof slice);
  return splitmix64(h);
}

Configuration sample_configuration(const ShoikhetGraph& g, const IntegrationSpec& spec, std::uint64_t stream,
                                   std::uint64_t index, int attempt, double* jacobian_weight) {
  const int n = g.aerial_count();
  const int m = g.boundary_last();
  Configuration c;
  double weight = 1.0;
  c.interior.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double u = uniform(stream, index, static_cast<std::uint64_t>(2 * i), static_cast<std::uint64_t>(attempt));
    const double v = uniform(stream, index, static_cast<std::uint64_t>(2 * i + 1), static_cast<std::uint64_t>(attempt));
    if (spec.sampler == Sampler::polar) {
      c.interior.push_back(std::polar(u, kTwoPi * v));
      weight *= kTwoPi * u;
    } else {
      c.interior.push_back(std::polar(std::sqrt(u), kTwoPi * v));
      weight *= std::numbers::pi;
    }
  }
  std::vector<double> t(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k)
    t[static_cast<std::size_t>(k)] =
        kTwoPi * uniform(stream, index, static_cast<std::uint64_t>(2 * n + k), static_cast<std::uint64_t>(attempt));
  std::sort(t.begin(), t.end());
  weight *= std::pow(kTwoPi, m) / factorial(m);
  c.boundary_angles.assign(static_cast<std::size_t>(m + 1), 0.0);
  // Counterclockwise from the pinned vertex: slice+1, ..., m, 0, ..., slice-1.
  for (int k = 0; k < m; ++k) {
    int label = (spec.slice + 1 + k) % (m + 1);
    c.boundary_angles[static_cast<std::size_t>(label)] = t[static_cast<std::size_t>(k)];
  }
  if (jacobian_weight) *jacobian_weight = weight;
  return c;
}

namespace {

struct BlockStats {
  long count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  long rejected = 0;

  void push(double x) {
    ++count;
    double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }
  void merge(const BlockStats& o) {
    if (o.count == 0) return;
    const long total = count + o.count;
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.count) / static_cast<double>(total);
    m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / static_cast<double>(total);
    count = total;
    rejected += o.rejected;
  }
};

WeightEstimate monte_carlo(const ShoikhetGraph& g, const IntegrationSpec& spec, WeightEstimate est) {
  if (spec.samples < 2) throw std::invalid_argument("Monte Carlo needs at least two samples");
  if (spec.block_size < 1) throw std::invalid_argument("block size must be positive");
  const std::uint64_t stream = sample_stream(g, spec);
  const long blocks = (spec.samples + spec.block_size - 1) / spec.block_size;
  std::vector<BlockStats> stats(static_cast<std::size_t>(blocks));
  std::atomic<long> next{0};
  auto worker = [&] {
    for (long b = next++; b < blocks; b = next++) {
      BlockStats s;
      const long begin = b * spec.block_size;
      const long end = std::min(spec.samples, begin + spec.block_size);
      for (long i = begin; i < end; ++i) {
        for (int attempt = 0;; ++attempt) {
          if (attempt == kMaxAttempts) throw std::runtime_error("sampler keeps hitting singular configurations");
          double w = 0.0;
          Configuration c = sample_configuration(g, spec, stream, static_cast<std::uint64_t>(i), attempt, &w);
          if (auto f = integrand(g, c, spec.slice, spec.convention)) {
            s.push(w * *f);
            break;
          }
          ++s.rejected;
        }
      }
      stats[static_cast<std::size_t>(b)] = s;
    }
  };
  unsigned threads = spec.threads > 0 ? static_cast<unsigned>(spec.threads) : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<long>(threads, blocks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        try {
          worker();
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = blocks;
        }
      });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }
  BlockStats total;
  for (const auto& s : stats) total.merge(s);
  const double prefactor = slice_orientation(spec.slice) / static_cast<double>(star_factorial(g));
  const double variance = total.m2 / static_cast<double>(total.count - 1);
  est.value = prefactor * total.mean;
  est.stderr_ = std::abs(prefactor) * std::sqrt(variance / static_cast<double>(total.count));
  est.samples = total.count;
  est.rejected = total.rejected;
  return est;
}

// Gauss-Legendre nodes and weights on (0,1).
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double p = std::legendre(static_cast<unsigned>(n), t);
      const double q = std::legendre(static_cast<unsigned>(n - 1), t);
      dp = n * (t * p - q) / (t * t - 1.0);
      const double step = p / dp;
      t -= step;
      if (std::abs(step) < 1e-15) break;
    }
    {
      const double p = std::legendre(static_cast<unsigned>(n), t);
      const double q = std::legendre(static_cast<unsigned>(n - 1), t);
      dp = n * (t * p - q) / (t * t - 1.0);
    }
    x[static_cast<std::size_t>(i)] = 0.5 * (1.0 - t);
    w[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - t * t) * dp * dp);  // halved for (0,1)
  }
  return {x, w};
}

double tensor_quadrature(const ShoikhetGraph& g, const IntegrationSpec& spec, int nodes, long* evaluations) {
  const int n = g.aerial_count();
  const int m = g.boundary_last();
  const int dim = 2 * n + m;
  auto [x, w] = gauss_legendre(nodes);
  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  double sum = 0.0;
  long count = 0;
  for (;;) {
    Configuration c;
    double weight = 1.0;
    for (int i = 0; i < n; ++i) {
      const double r = x[static_cast<std::size_t>(idx[static_cast<std::size_t>(2 * i)])];
      const double phi = kTwoPi * x[static_cast<std::size_t>(idx[static_cast<std::size_t>(2 * i + 1)])];
      c.interior.push_back(std::polar(r, phi));
      weight *= w[static_cast<std::size_t>(idx[static_cast<std::size_t>(2 * i)])] *
                w[static_cast<std::size_t>(idx[static_cast<std::size_t>(2 * i + 1)])] * kTwoPi * r;
    }
    // Ordered angles t_1 < ... < t_m through nested affine maps.
    c.boundary_angles.assign(static_cast<std::size_t>(m + 1), 0.0);
    double lower = 0.0;
    for (int k = 0; k < m; ++k) {
      const std::size_t q = static_cast<std::size_t>(idx[static_cast<std::size_t>(2 * n + k)]);
      const double span = kTwoPi - lower;
      const double t = lower + span * x[q];
      weight *= span * w[q];
      lower = t;
      c.boundary_angles[static_cast<std::size_t>((spec.slice + 1 + k) % (m + 1))] = t;
    }
    if (auto f = integrand(g, c, spec.slice, spec.convention)) sum += weight * *f;
    ++count;
    int d = 0;
    for (; d < dim; ++d) {
      if (++idx[static_cast<std::size_t>(d)] < nodes) break;
      idx[static_cast<std::size_t>(d)] = 0;
    }
    if (d == dim) break;
  }
  *evaluations = count;
  return sum;
}

WeightEstimate quadrature(const ShoikhetGraph& g, const IntegrationSpec& spec, WeightEstimate est) {
  if (g.configuration_dimension() > 3) throw std::invalid_argument("quadrature supports dimension <= 3");
  if (spec.quadrature_nodes < 4) throw std::invalid_argument("quadrature needs at least 4 nodes");
  long fine_count = 0, coarse_count = 0;
  const double fine = tensor_quadrature(g, spec, spec.quadrature_nodes, &fine_count);
  const double coarse = tensor_quadrature(g, spec, spec.quadrature_nodes / 2, &coarse_count);
  const double prefactor = slice_orientation(spec.slice) / static_cast<double>(star_factorial(g));
  est.value = prefactor * fine;
  est.stderr_ = std::abs(prefactor * (fine - coarse));
  est.samples = fine_count;
  return est;
}

}  // namespace

WeightEstimate compute_weight(const ShoikhetGraph& g, const IntegrationSpec& spec) {
  if (spec.slice < 0 || spec.slice > g.boundary_last()) throw std::invalid_argument("slice index out of range");
  WeightEstimate est;
  est.graph = g.encode();
  est.method = spec.method_tag();
  est.seed = spec.seed;
  if (structurally_zero(g, spec.slice)) {
    est.exact = true;
    return est;
  }
  if (spec.method == Method::quadrature) return quadrature(g, spec, est);
  return monte_carlo(g, spec, est);
}

}  // namespace cycform
