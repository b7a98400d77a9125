#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cycform/configspace.hpp"
#include "cycform/weight_cache.hpp"

namespace cycform {

struct CheckResult {
  std::string name;
  bool pass = false;
  bool exact = false;   // exact arithmetic identity (trials counted) vs. statistical comparison
  long trials = 0;
  double difference = 0.0;
  double sigma = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<CheckResult> checks;
  std::uint64_t seed = 0;
  // Volatile fields, reported only on request so reruns stay byte-identical.
  std::optional<double> wall_seconds;
  std::optional<WeightCache::Stats> cache;

  bool all_pass() const;
  std::string to_text() const;
  std::string to_json() const;
};

struct SuiteOptions {
  int dim = 3;                 // algebra, mixed and exact cyclic checks draw d in 1..dim
  int trials = 200;
  int max_chain = 5;           // longest chain a_0 (x) ... (x) a_n in the mixed suite
  std::uint64_t seed = 42;
  long samples = 1'000'000;    // Monte Carlo samples per weight
  std::optional<long> battery_samples;  // overrides the manifest
  double sigmas = 4.0;
  double floor = 5e-3;
  bool apply_floor = true;
  int threads = 0;
  Convention convention = Convention::coherent;
  Sampler sampler = Sampler::polar;
  std::string battery = "default";
  bool numeric = true;         // cyclic suite: run the Monte Carlo battery
};

/// Statistical tolerance: sigmas * sigma plus round-off, raised to the
/// floor when it applies.
double statistical_tolerance(double sigma, const SuiteOptions& opt);

std::vector<std::string> suite_names();
/// Runs one of: algebra, mixed, weights, lemma33, theorem34.
RunReport run_suite(const std::string& suite, const SuiteOptions& opt, WeightCache& cache);

// Individual groups, used by the suites and by the acceptance runner.
std::vector<CheckResult> algebra_checks(const SuiteOptions& opt);
std::vector<CheckResult> mixed_checks(const SuiteOptions& opt);
CheckResult angle_cocycle_check(const SuiteOptions& opt, long triples = 10'000, double tolerance = 1e-10);
std::vector<CheckResult> pure_central_checks(const SuiteOptions& opt, WeightCache& cache);
std::vector<CheckResult> slice_invariance_checks(const SuiteOptions& opt, WeightCache& cache);
std::vector<CheckResult> boundary_shift_checks(const SuiteOptions& opt, WeightCache& cache);
std::vector<CheckResult> cyclic_exact_checks(const SuiteOptions& opt);
std::vector<CheckResult> cyclic_numeric_checks(const SuiteOptions& opt, WeightCache& cache);

/// Graphs used by the slice-invariance and boundary-shift groups, with the slice
/// compared against C_Gamma for the former.
std::vector<std::pair<std::string, int>> slice_invariance_graphs();
std::vector<std::string> boundary_shift_graphs();

}  // namespace cycform
