#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "unruh/channel_math.hpp"
#include "unruh/error.hpp"
#include "unruh/quadrature.hpp"

using namespace unruh;
using std::numbers::pi;

namespace {

double variance_integrand(double k, const ChannelParams& p) {
  return thermal_weight_variance(k) * gaussian_bracket(k, p).total;
}

// 10^6-point log trapezoid plus Richardson of the variance integrand at
// u = pi, delta = 10 over [0.01, pi + 80]. Cross-checked to 1e-16 relative
// against a 30-digit reference.
constexpr double kFrozenVariance = 19.674806340970964;

}  // namespace

TEST_CASE("truncation_limit") {
  CHECK(truncation_limit(ChannelParams{.u = 0.0, .delta = 1.0}, 1e-16) >= kTruncationFloor);
  const ChannelParams p{.u = -50.0, .delta = 10.0};
  const double k_max = truncation_limit(p, 1e-16);
  CHECK(k_max >= 50.0 + kTruncationWidths * 10.0);
  CHECK(variance_integrand(k_max, p) < 1e-16);
  // Tighter tail tolerance never shrinks the range.
  CHECK(truncation_limit(p, 1e-30) >= k_max);
  CHECK_THROWS_AS(truncation_limit(p, 0.0), Error);
}

TEST_CASE("exact examples") {
  const QuadratureConfig cfg{};
  SUBCASE("constant") {
    const auto r = integrate_lower_edge(Integrand([](double) { return 1.0; }), 0.1, cfg, 10.0);
    CHECK(r.value == doctest::Approx(9.9).epsilon(1e-14));
    CHECK(r.truncation_k == 10.0);
    CHECK(r.evaluations > 0);
  }
  SUBCASE("1/k^2 with steep lower edge") {
    const double kc = 1e-5;
    const auto r = integrate_lower_edge(Integrand([](double k) { return 1.0 / (k * k); }), kc, cfg, 10.0);
    CHECK(r.value == doctest::Approx(1.0 / kc - 0.1).epsilon(1e-10));
    CHECK(r.error_estimate <= 1e-8 * r.value);
  }
  SUBCASE("1/k is logarithmic") {
    const auto r = integrate_lower_edge(Integrand([](double k) { return 1.0 / k; }), 1e-6, cfg, 100.0);
    CHECK(r.value == doctest::Approx(std::log(1e8)).epsilon(1e-10));
  }
  SUBCASE("pair integrand reproduces the scalar path") {
    const auto pair = integrate_lower_edge(
        PairIntegrand([](double k) { return std::array<double, 2>{std::exp(-k), 1.0 / (k * k)}; }), 0.01, cfg, 30.0);
    CHECK(pair.value[0] == doctest::Approx(std::exp(-0.01) - std::exp(-30.0)).epsilon(1e-12));
    CHECK(pair.value[1] == doctest::Approx(100.0 - 1.0 / 30.0).epsilon(1e-12));
  }
}

TEST_CASE("variance integrand against the frozen trapezoid oracle") {
  const ChannelParams p{.u = pi, .delta = 10.0};
  const auto r = integrate_lower_edge(Integrand([&](double k) { return variance_integrand(k, p); }), 0.01,
                                      QuadratureConfig{}, pi + 80.0);
  CHECK(r.value == doctest::Approx(kFrozenVariance).epsilon(1e-6));
  CHECK(std::abs(r.value - kFrozenVariance) <= 1e-8 * kFrozenVariance + r.error_estimate);
}

TEST_CASE("live trapezoid oracle over random channels") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  for (int i = 0; i < 6; ++i) {
    const double delta = 1.0 + 29.0 * frac(rng);
    const ChannelParams p{.u = -3.0 * delta + 4.0 * delta * frac(rng), .delta = delta};
    const double kc = std::pow(10.0, -4.0 + 3.0 * frac(rng));
    const double k_max = truncation_limit(p, 1e-16);
    auto f = [&](double k) { return variance_integrand(k, p); };
    const auto r = integrate_lower_edge(Integrand(f), kc, QuadratureConfig{}, k_max);
    const double ref = test::log_trapezoid_richardson(f, kc, k_max, 200001);
    CAPTURE(p.u);
    CAPTURE(delta);
    CAPTURE(kc);
    CHECK(r.value == doctest::Approx(ref).epsilon(1e-6));
  }
}

TEST_CASE("additivity over adjacent intervals") {
  const ChannelParams p{.u = 1.0, .delta = 4.0};
  auto f = Integrand([&](double k) { return variance_integrand(k, p); });
  const QuadratureConfig cfg{.rel_tol = 1e-11};
  const auto whole = integrate_lower_edge(f, 1e-3, cfg, 40.0);
  const auto left = integrate_lower_edge(f, 1e-3, cfg, 0.7);
  const auto right = integrate_lower_edge(f, 0.7, cfg, 40.0);
  CHECK(left.value + right.value == doctest::Approx(whole.value).epsilon(1e-9));
}

TEST_CASE("positivity and monotone refinement") {
  const ChannelParams p{.u = pi, .delta = 10.0};
  auto f = Integrand([&](double k) { return variance_integrand(k, p); });
  double previous_gap = INFINITY;
  for (double tol : {1e-4, 1e-6, 1e-8, 1e-10}) {
    const auto r = integrate_lower_edge(f, 0.01, QuadratureConfig{.rel_tol = tol, .abs_tol = 1e-300}, pi + 80.0);
    CHECK(r.value > 0.0);
    const double gap = std::abs(r.value - kFrozenVariance);
    // Refinement should not move away from the oracle beyond its own accuracy.
    CHECK(gap <= previous_gap + 1e-12 * kFrozenVariance);
    CHECK(gap <= std::max(tol * kFrozenVariance, 1e-12 * kFrozenVariance));
    previous_gap = gap;
  }
}

TEST_CASE("error paths") {
  const QuadratureConfig cfg{};
  SUBCASE("non-finite sample") {
    try {
      integrate_lower_edge(Integrand([](double k) { return k > 0.5 ? NAN : 1.0; }), 0.1, cfg, 1.0);
      FAIL("expected EvaluationError");
    } catch (const EvaluationError& e) {
      CHECK(e.code() == ErrorCode::evaluation);
      CHECK(e.abscissa() > 0.5);
    }
  }
  SUBCASE("panel budget exhausted") {
    const QuadratureConfig tight{.rel_tol = 1e-14, .abs_tol = 1e-300, .max_subdivisions = 4, .edge_panels = 2};
    try {
      integrate_lower_edge(Integrand([](double k) { return std::sin(200.0 * k); }), 0.1, tight, 50.0);
      FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
      CHECK(e.code() == ErrorCode::convergence);
      CHECK(std::isfinite(e.best_value()));
      CHECK(e.error_estimate() > 0.0);
    }
  }
  SUBCASE("bad limits and config") {
    auto one = Integrand([](double) { return 1.0; });
    CHECK_THROWS_AS(integrate_lower_edge(one, 0.0, cfg, 1.0), Error);
    CHECK_THROWS_AS(integrate_lower_edge(one, 2.0, cfg, 1.0), Error);
    CHECK_THROWS_AS(validate(QuadratureConfig{.rel_tol = 0.0}), Error);
    CHECK_THROWS_AS(validate(QuadratureConfig{.max_subdivisions = 0}), Error);
  }
}
