#include <chrono>
#include <iostream>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cycform/checks.hpp"
#include "cycform/configspace.hpp"
#include "cycform/graph.hpp"
#include "cycform/text.hpp"
#include "cycform/weight_cache.hpp"
#include "json.hpp"

using namespace cycform;

namespace {

enum Exit { ok = 0, check_failed = 1, usage = 2, bad_graph = 3, unsatisfiable = 4, cache_io = 5 };

struct UnsatisfiableDegrees : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string cache_path;
  std::uint64_t seed = 42;
  std::optional<long> samples;
  bool json = false;
  bool timing = false;
  int threads = 0;
  std::string convention = "coherent";
  std::string sampler = "polar";
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--cache", c.cache_path, "weight cache file (default: $CYCFORM_CACHE, else in-memory)");
  app->add_option("--seed", c.seed, "random seed");
  app->add_option("--samples", c.samples, "Monte Carlo samples per weight")->check(CLI::Range(2L, 1L << 40));
  app->add_flag("--json", c.json, "JSON output");
  app->add_flag("--timing", c.timing, "report wall time and cache statistics");
  app->add_option("--threads", c.threads, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  app->add_option("--convention", c.convention, "central form sign")->check(CLI::IsMember({"coherent", "literal"}));
  app->add_option("--sampler", c.sampler, "Monte Carlo sampler")->check(CLI::IsMember({"polar", "disk"}));
}

std::unique_ptr<WeightCache> open_cache(const Common& c) {
  if (!c.cache_path.empty()) return std::make_unique<WeightCache>(c.cache_path);
  if (auto p = WeightCache::default_path()) return std::make_unique<WeightCache>(*p);
  return std::make_unique<WeightCache>();
}

IntegrationSpec spec_from(const Common& c) {
  IntegrationSpec s;
  if (c.samples) s.samples = *c.samples;
  s.seed = c.seed;
  s.threads = c.threads;
  s.convention = parse_convention(c.convention);
  s.sampler = parse_sampler(c.sampler);
  return s;
}

struct Shape {
  int aerial = 0;
  int boundary = 0;
  int central = 0;
  std::vector<int> degrees;
};

void add_shape(CLI::App* app, Shape& s) {
  app->add_option("--aerial", s.aerial, "aerial vertices besides the centre")->check(CLI::Range(0, 4));
  app->add_option("--boundary", s.boundary, "index m of the last boundary vertex")->required()->check(CLI::Range(0, 8));
  app->add_option("--central-degree", s.central, "out-degree of the central vertex")->required()->check(CLI::Range(0, 12));
  app->add_option("--aerial-degrees", s.degrees, "out-degrees of aerial vertices 1..n")->delimiter(',');
}

std::vector<ShoikhetGraph> shaped_graphs(const Shape& s) {
  if (static_cast<int>(s.degrees.size()) != s.aerial)
    throw CLI::ValidationError("--aerial-degrees", "needs one degree per aerial vertex");
  const int edges = std::accumulate(s.degrees.begin(), s.degrees.end(), s.central);
  const int dimension = 2 * s.aerial + s.boundary;
  if (edges != dimension)
    throw UnsatisfiableDegrees("degrees sum to " + std::to_string(edges) + " edges but the configuration space has dimension " +
                               std::to_string(dimension));
  return enumerate_graphs(s.aerial, s.boundary, s.central, s.degrees);
}

int cmd_enumerate(const Shape& shape, bool nonzero, bool json) {
  const auto graphs = shaped_graphs(shape);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  long shown = 0;
  for (const auto& g : graphs) {
    const bool zero = structurally_zero(g);
    if (nonzero && zero) continue;
    ++shown;
    if (json)
      arr.push_back({{"graph", g.encode()}, {"structural_zero", zero}});
    else
      std::cout << g.encode() << (zero ? "\tzero" : "") << '\n';
  }
  if (json)
    std::cout << nlohmann::ordered_json{{"count", shown}, {"graphs", arr}}.dump(2) << '\n';
  else
    std::cout << "# " << shown << " graphs\n";
  return ok;
}

nlohmann::ordered_json estimate_json(const ShoikhetGraph& g, const WeightEstimate& e) {
  nlohmann::ordered_json j{{"graph", e.graph},   {"method", e.method}, {"samples", e.samples},
                           {"seed", e.seed},     {"weight", e.value},  {"stderr", e.stderr_},
                           {"integral", e.integral(g)}, {"exact", e.exact}};
  return j;
}

int cmd_weight(const Common& c, const std::string& encoding, int slice, const std::string& method, int nodes) {
  const ShoikhetGraph g = ShoikhetGraph::decode(encoding);
  IntegrationSpec spec = spec_from(c);
  spec.slice = slice;
  spec.quadrature_nodes = nodes;
  spec.method = method == "quadrature" ? Method::quadrature : Method::monte_carlo;
  auto cache = open_cache(c);
  const auto start = std::chrono::steady_clock::now();
  const WeightEstimate e = cache->get_or_compute(g, spec);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::optional<Rational> closed = closed_form_integral(g, spec.convention);
  if (c.json) {
    auto j = estimate_json(g, e);
    if (closed) j["closed_form_weight"] = to_string(*closed / Rational(star_factorial(g)));
    if (c.timing) {
      j["wall_seconds"] = wall;
      j["rejected"] = e.rejected;
    }
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "graph     " << e.graph << "\nmethod    " << e.method << "\nsamples   " << e.samples << "\nseed      "
              << e.seed << "\nweight    " << format_double(e.value) << " +- " << format_double(e.stderr_)
              << "\nintegral  " << format_double(e.integral(g)) << '\n';
    if (e.exact) std::cout << "exact     structural zero\n";
    if (closed) std::cout << "closed    " << to_string(*closed / Rational(star_factorial(g))) << '\n';
    if (c.timing) std::cout << "wall      " << format_double(wall) << " s\nrejected  " << e.rejected << '\n';
  }
  return ok;
}

int cmd_table(const Common& c, const Shape& shape) {
  const auto graphs = shaped_graphs(shape);
  const IntegrationSpec spec = spec_from(c);
  auto cache = open_cache(c);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& g : graphs) {
    if (structurally_zero(g)) continue;
    const WeightEstimate e = cache->get_or_compute(g, spec);
    if (c.json)
      arr.push_back(estimate_json(g, e));
    else
      std::cout << e.graph << '\t' << format_double(e.value) << '\t' << format_double(e.stderr_) << '\n';
  }
  if (c.json) {
    nlohmann::ordered_json j{{"method", spec.method_tag()}, {"samples", spec.samples}, {"seed", spec.seed}, {"rows", arr}};
    std::cout << j.dump(2) << '\n';
  }
  return ok;
}

int cmd_check(const Common& c, const std::string& suite, SuiteOptions opt, bool no_floor) {
  opt.seed = c.seed;
  if (c.samples) {
    opt.samples = *c.samples;
    opt.battery_samples = *c.samples;
  }
  opt.threads = c.threads;
  opt.convention = parse_convention(c.convention);
  opt.sampler = parse_sampler(c.sampler);
  opt.apply_floor = !no_floor;
  auto cache = open_cache(c);
  const auto start = std::chrono::steady_clock::now();
  RunReport report = run_suite(suite, opt, *cache);
  if (c.timing) {
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.cache = cache->stats();
  }
  std::cout << (c.json ? report.to_json() : report.to_text());
  return report.all_pass() ? ok : check_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cycform: graph weights and cyclic operator identities"};
  app.require_subcommand(1);

  Common common;
  Shape shape;

  auto* enumerate = app.add_subcommand("enumerate", "list graphs with given out-degrees");
  bool nonzero = false;
  add_shape(enumerate, shape);
  enumerate->add_flag("--nonzero", nonzero, "omit structurally vanishing graphs");
  enumerate->add_flag("--json", common.json, "JSON output");

  auto* weight = app.add_subcommand("weight", "estimate one graph weight");
  std::string encoding, method = "mc";
  int slice = 0, nodes = 48;
  weight->add_option("--graph", encoding, "graph encoding, e.g. 0,2;0>1b,0>2b")->required();
  weight->add_option("--slice", slice, "integrate over the slice psi_j = 0")->check(CLI::NonNegativeNumber);
  weight->add_option("--method", method, "mc or quadrature")->check(CLI::IsMember({"mc", "quadrature"}));
  weight->add_option("--nodes", nodes, "Gauss-Legendre nodes per coordinate")->check(CLI::Range(2, 512));
  add_common(weight, common);

  auto* table = app.add_subcommand("table", "weights of every nonvanishing graph of a shape");
  Shape table_shape;
  add_shape(table, table_shape);
  add_common(table, common);

  auto* check = app.add_subcommand("check", "run an identity suite");
  std::string suite;
  SuiteOptions opt;
  bool no_floor = false;
  check->add_option("suite", suite, "algebra | mixed | weights | lemma33 | theorem34")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  check->add_option("--dim", opt.dim, "largest dimension drawn")->check(CLI::Range(1, 3));
  check->add_option("--trials", opt.trials, "random trials per exact identity")->check(CLI::Range(1, 100000));
  check->add_option("--max-chain", opt.max_chain, "longest chain index n")->check(CLI::Range(0, 6));
  check->add_option("--battery", opt.battery, "battery manifest ('default' or a path)");
  check->add_option("--sigmas", opt.sigmas, "statistical tolerance in standard errors")->check(CLI::PositiveNumber);
  check->add_option("--floor", opt.floor, "absolute tolerance floor")->check(CLI::NonNegativeNumber);
  check->add_flag("--no-floor", no_floor, "use sigmas only");
  bool exact_only = false;
  check->add_flag("--exact-only", exact_only, "cyclic suite: skip the Monte Carlo battery");
  add_common(check, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (*enumerate) return cmd_enumerate(shape, nonzero, common.json);
    if (*weight) return cmd_weight(common, encoding, slice, method, nodes);
    if (*table) return cmd_table(common, table_shape);
    opt.numeric = !exact_only;
    return cmd_check(common, suite, opt, no_floor);
  } catch (const GraphFormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return bad_graph;
  } catch (const UnsatisfiableDegrees& e) {
    std::cerr << "error: unsatisfiable degree constraints: " << e.what() << '\n';
    return unsatisfiable;
  } catch (const CacheError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cache_io;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  }
}
