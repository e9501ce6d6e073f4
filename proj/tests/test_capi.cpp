#include <cmath>
#include <cstring>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "doctest.h"
#include "unruh/unruh.h"

namespace {

struct Ctx {
  unruh_context* p = nullptr;
  Ctx() { REQUIRE(unruh_context_create(&p) == UNRUH_OK); }
  ~Ctx() { unruh_context_destroy(p); }
};

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::string(unruh_version()) == "1.0.0");
  CHECK(std::string(unruh_status_string(UNRUH_OK)) == "ok");
  CHECK(std::string(unruh_status_string(UNRUH_ERR_DEGENERATE_CHANNEL)) == "degenerate_channel");
  CHECK(std::string(unruh_status_string(static_cast<unruh_status>(99))) == "unknown_status");
}

TEST_CASE("null arguments") {
  CHECK(unruh_context_create(nullptr) == UNRUH_ERR_NULL_ARGUMENT);
  CHECK(std::strlen(unruh_last_error()) > 0);
  CHECK(unruh_context_set_channel(nullptr, 0.0, 10.0) == UNRUH_ERR_NULL_ARGUMENT);
  CHECK(unruh_compute_observables(nullptr, nullptr) == UNRUH_ERR_NULL_ARGUMENT);
  Ctx ctx;
  CHECK(unruh_compute_observables(ctx.p, nullptr) == UNRUH_ERR_NULL_ARGUMENT);
  CHECK(unruh_sweep_run(ctx.p, UNRUH_AXIS_U, nullptr, 3, nullptr) == UNRUH_ERR_NULL_ARGUMENT);
  CHECK(unruh_thermal_weight_signal(1.0, nullptr) == UNRUH_ERR_NULL_ARGUMENT);
  CHECK(unruh_gaussian_bracket(1.0, 0.0, 10.0, nullptr) == UNRUH_ERR_NULL_ARGUMENT);
  unruh_context_destroy(nullptr);
  unruh_sweep_destroy(nullptr);
  unruh_curve_destroy(nullptr);
  CHECK(unruh_sweep_size(nullptr) == 0);
  CHECK(unruh_curve_size(nullptr) == 0);
}

TEST_CASE("context defaults, setters and clone") {
  Ctx ctx;
  unruh_context_values v{};
  REQUIRE(unruh_context_get(ctx.p, &v) == UNRUH_OK);
  CHECK(v.u == 0.0);
  CHECK(v.delta == 10.0);
  CHECK(v.beta == 1000.0);
  CHECK(v.k_cut == 0.1);
  CHECK(v.rel_tol == 1e-8);
  CHECK(v.max_subdivisions == 2000);

  CHECK(unruh_context_set_channel(ctx.p, -3.0, 4.0) == UNRUH_OK);
  CHECK(unruh_context_set_channel(ctx.p, 0.0, 0.5) == UNRUH_ERR_DOMAIN);
  CHECK(std::string(unruh_last_error()).find("delta") != std::string::npos);
  CHECK(unruh_context_set_cutoff(ctx.p, 1e-9) == UNRUH_ERR_DOMAIN);
  CHECK(unruh_context_set_quadrature(ctx.p, 0.0, 1e-12, 10, 4) == UNRUH_ERR_DOMAIN);
  REQUIRE(unruh_context_get(ctx.p, &v) == UNRUH_OK);
  CHECK(v.u == -3.0);
  CHECK(v.delta == 4.0);
  CHECK(v.k_cut == 0.1);

  unruh_context* copy = nullptr;
  REQUIRE(unruh_context_clone(ctx.p, &copy) == UNRUH_OK);
  CHECK(unruh_context_set_phase(copy, 1.0) == UNRUH_OK);
  unruh_context_values cv{};
  unruh_context_get(copy, &cv);
  unruh_context_get(ctx.p, &v);
  CHECK(cv.phi == 1.0);
  CHECK(v.phi == 0.0);
  CHECK(cv.u == -3.0);
  unruh_context_destroy(copy);
}

TEST_CASE("observables through the C boundary") {
  Ctx ctx;
  REQUIRE(unruh_context_set_channel(ctx.p, -100.0, 10.0) == UNRUH_OK);
  unruh_observables o{};
  REQUIRE(unruh_compute_observables(ctx.p, &o) == UNRUH_OK);
  CHECK(o.i_norm == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(o.v_bar == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(o.evaluations > 0);

  REQUIRE(unruh_context_set_channel(ctx.p, 400.0, 1.0) == UNRUH_OK);
  CHECK(unruh_compute_observables(ctx.p, &o) == UNRUH_ERR_DEGENERATE_CHANNEL);
}

TEST_CASE("sweep and curve handles") {
  Ctx ctx;
  const double us[] = {-100.0, 0.0, 5000.0};
  unruh_sweep* sweep = nullptr;
  REQUIRE(unruh_sweep_run(ctx.p, UNRUH_AXIS_U, us, 3, &sweep) == UNRUH_OK);
  REQUIRE(unruh_sweep_size(sweep) == 3);
  unruh_sweep_row row{};
  REQUIRE(unruh_sweep_get_row(sweep, 0, &row) == UNRUH_OK);
  CHECK(row.ok == 1);
  CHECK(row.u == -100.0);
  CHECK(std::string(row.note).empty());
  REQUIRE(unruh_sweep_get_row(sweep, 2, &row) == UNRUH_OK);
  CHECK(row.ok == 0);
  CHECK(std::strlen(row.note) > 0);
  CHECK(std::isnan(row.obs.i_norm));
  CHECK(unruh_sweep_get_row(sweep, 3, &row) == UNRUH_ERR_INDEX);
  unruh_sweep_destroy(sweep);

  CHECK(unruh_sweep_run(ctx.p, UNRUH_AXIS_U, us, 0, &sweep) == UNRUH_ERR_USAGE);
  CHECK(unruh_sweep_run(ctx.p, static_cast<unruh_axis>(7), us, 3, &sweep) == UNRUH_ERR_USAGE);

  const double grid[] = {0.01, 0.1, 1.0};
  unruh_curve* curve = nullptr;
  REQUIRE(unruh_scan_metric(ctx.p, UNRUH_METRIC_I_NORM, grid, 3, &curve) == UNRUH_OK);
  REQUIRE(unruh_curve_size(curve) == 3);
  unruh_curve_point a{}, b{};
  unruh_curve_get_point(curve, 0, &a);
  unruh_curve_get_point(curve, 2, &b);
  CHECK(a.metric > b.metric);
  CHECK(unruh_curve_get_point(curve, 9, &a) == UNRUH_ERR_INDEX);
  unruh_curve_destroy(curve);

  const double bad[] = {0.1, 0.01};
  CHECK(unruh_scan_metric(ctx.p, UNRUH_METRIC_I_NORM, bad, 2, &curve) == UNRUH_ERR_USAGE);
  CHECK(unruh_scan_metric(ctx.p, static_cast<unruh_metric>(9), grid, 3, &curve) == UNRUH_ERR_USAGE);
}

TEST_CASE("optimizer through the C boundary") {
  Ctx ctx;
  REQUIRE(unruh_context_set_channel(ctx.p, std::numbers::pi, 10.0) == UNRUH_OK);
  unruh_optimum opt{};
  unruh_curve* scan = nullptr;
  REQUIRE(unruh_find_optimal_cutoff(ctx.p, UNRUH_METRIC_SNR_GAIN, 0.01, 1.0, 1e-3, 0, &opt, &scan) == UNRUH_OK);
  CHECK(opt.converged == 1);
  CHECK(opt.status == UNRUH_OPT_CONVERGED);
  CHECK(opt.k_opt > 0.1);
  CHECK(opt.k_opt < 0.2);
  CHECK(unruh_curve_size(scan) == 40);
  unruh_curve_destroy(scan);

  CHECK(unruh_find_optimal_cutoff(ctx.p, UNRUH_METRIC_SNR_GAIN, 1.0, 0.01, 1e-3, 0, &opt, nullptr) == UNRUH_ERR_USAGE);
}

TEST_CASE("oracle through the C boundary") {
  unruh_oracle_config cfg{};
  unruh_oracle_config_default(&cfg);
  CHECK(cfg.k_so == 200.0);
  CHECK(cfg.grid_s % 2 == 1);
  Ctx ctx;
  unruh_oracle_result r{};
  REQUIRE(unruh_oracle_triple(ctx.p, &cfg, &r) == UNRUH_OK);
  unruh_observables o{};
  REQUIRE(unruh_compute_observables(ctx.p, &o) == UNRUH_OK);
  CHECK(r.lo_strength == doctest::Approx(o.i_norm).epsilon(1e-4));
  cfg.grid_s = 41;
  CHECK(unruh_oracle_triple(ctx.p, &cfg, &r) == UNRUH_ERR_RESOLUTION);
  cfg.grid_s = 40;
  CHECK(unruh_oracle_triple(ctx.p, &cfg, &r) == UNRUH_ERR_DOMAIN);
  double exact = 0.0;
  cfg.k_so = 50.0;
  cfg.grid_s = 4001;
  CHECK(unruh_oracle_exact_lo_strength(ctx.p, &cfg, &exact) == UNRUH_ERR_DOMAIN);
}

TEST_CASE("scalar kernels") {
  double t = 0.0, x = 0.0, out = 0.0;
  CHECK(unruh_rindler_to_minkowski(0.0, 0.0, 1.0, &t, &x) == UNRUH_OK);
  CHECK(x == 1.0);
  CHECK(unruh_rindler_to_minkowski(0.0, 0.0, 0.0, &t, &x) == UNRUH_ERR_DOMAIN);
  CHECK(unruh_rindler_to_minkowski(0.0, 900.0, 1.0, &t, &x) == UNRUH_ERR_RANGE);
  CHECK(unruh_thermal_weight_signal(0.0, &out) == UNRUH_ERR_DOMAIN);
  CHECK(unruh_mean_occupation(1.0, &out) == UNRUH_OK);
  CHECK(out == doctest::Approx(1.0 / std::expm1(2.0 * std::numbers::pi)));
  CHECK(unruh_gamma_sq_magnitude(0.0, &out) == UNRUH_OK);
  CHECK(out == 1.0);
  double terms[4] = {};
  CHECK(unruh_gaussian_bracket(0.15, std::numbers::pi, 10.0, terms) == UNRUH_OK);
  CHECK(terms[3] == doctest::Approx(2.1553367438887969).epsilon(1e-14));
  CHECK(unruh_gaussian_bracket(0.15, 0.0, 0.5, terms) == UNRUH_ERR_DOMAIN);
  CHECK(unruh_truncation_limit(0.0, 10.0, 1e-16, &out) == UNRUH_OK);
  CHECK(out >= 80.0);
  CHECK(unruh_asymptotic_lo_strength(1.0, &out) == UNRUH_ERR_DOMAIN);
  CHECK(unruh_asymptotic_variance(-50.0, &out) == UNRUH_OK);
  CHECK(out == 1.0);
}

TEST_CASE("last error is per thread") {
  CHECK(unruh_context_create(nullptr) == UNRUH_ERR_NULL_ARGUMENT);
  const std::string here = unruh_last_error();
  std::string there;
  std::thread th([&] {
    double out = 0.0;
    unruh_thermal_weight_signal(-1.0, &out);
    there = unruh_last_error();
  });
  th.join();
  CHECK(std::string(unruh_last_error()) == here);
  CHECK(there != here);
}
