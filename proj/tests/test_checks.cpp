#include "doctest.h"

#include "cycform/battery.hpp"
#include "cycform/checks.hpp"
#include "cycform/conventions.hpp"
#include "json.hpp"

using namespace cycform;

TEST_CASE("convention ledger matches the code") {
  const Conventions c = Conventions::load_default();
  CHECK(central_form_sign(Convention::coherent) == c.integer("central_form_sign"));
  CHECK(central_form_sign(Convention::literal) == c.integer("literal_central_form_sign"));
  for (int j = 0; j < 5; ++j) CHECK(slice_orientation(j) == c.sign("slice_orientation_parity", j));
  CHECK(c.text("rotation_generator") == "counterclockwise");
  CHECK(c.sign("module_parity", 3) == -1);
  CHECK(c.sign("module_parity", 4) == 1);
  CHECK_THROWS(c.text("no_such_key"));
}

TEST_CASE("battery manifest loads") {
  const auto cases = load_battery(battery_path("default"));
  REQUIRE(cases.size() >= 3);
  for (const auto& b : cases) {
    CHECK(b.input.dim == 2);
    CHECK(b.input.gammas.size() == 1);
    CHECK(b.samples == 2'000'000);
    CHECK_NOTHROW(b.input.validate());
  }
  CHECK_THROWS(load_battery("/nonexistent/battery.txt"));
}

TEST_CASE("tolerance rule") {
  SuiteOptions opt;
  CHECK(statistical_tolerance(1e-4, opt) == doctest::Approx(5e-3));
  CHECK(statistical_tolerance(1e-2, opt) == doctest::Approx(4e-2 + 1e-12));
  opt.apply_floor = false;
  CHECK(statistical_tolerance(1e-4, opt) == doctest::Approx(4e-4 + 1e-12));
  CHECK(statistical_tolerance(0.0, opt) == doctest::Approx(1e-12));
}

TEST_CASE("reports are reproducible and well formed") {
  SuiteOptions opt;
  opt.trials = 10;
  opt.samples = 4000;
  opt.battery_samples = 4000;
  for (const auto& suite : suite_names()) {
    WeightCache a, b;
    opt.threads = 1;
    const RunReport r1 = run_suite(suite, opt, a);
    opt.threads = 3;
    const RunReport r2 = run_suite(suite, opt, b);
    CHECK(r1.to_text() == r2.to_text());
    CHECK(r1.to_json() == r2.to_json());
    const auto j = nlohmann::json::parse(r1.to_json());
    CHECK(j.at("command") == "check " + suite);
    CHECK(j.at("checks").is_array());
    CHECK_FALSE(j.contains("wall_seconds"));
    CHECK_FALSE(j.contains("cache"));
    for (const auto& c : j.at("checks")) {
      CHECK(c.at("name").is_string());
      CHECK((c.at("status") == "pass" || c.at("status") == "fail"));
      if (!c.at("exact").get<bool>()) {
        CHECK(c.at("sigma").is_number());
        CHECK(c.at("tolerance").is_number());
      }
    }
  }
  WeightCache cache;
  CHECK_THROWS(run_suite("nonsense", opt, cache));
}

TEST_CASE("volatile fields appear only when set") {
  RunReport r;
  r.command = "check x";
  r.wall_seconds = 1.5;
  r.cache = WeightCache::Stats{2, 3};
  const auto j = nlohmann::json::parse(r.to_json());
  CHECK(j.at("wall_seconds") == 1.5);
  CHECK(j.at("cache").at("hits") == 2);
  CHECK(r.all_pass());
}

TEST_CASE("exact suites pass at small trial counts") {
  SuiteOptions opt;
  opt.trials = 25;
  for (const auto& c : algebra_checks(opt)) CHECK_MESSAGE(c.pass, c.name);
  for (const auto& c : mixed_checks(opt)) CHECK_MESSAGE(c.pass, c.name);
  for (const auto& c : cyclic_exact_checks(opt)) CHECK_MESSAGE(c.pass, c.name);
  CHECK(angle_cocycle_check(opt, 1000).pass);
}
