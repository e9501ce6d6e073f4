#include "unruh/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "unruh/error.hpp"

namespace unruh {

namespace {

// 15-point Kronrod nodes on [0, 1]; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

constexpr double kEps = std::numeric_limits<double>::epsilon();

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N>
struct Panel {
  double a = 0.0;
  double b = 0.0;
  Vec<N> value{};
  Vec<N> error{};
  bool splittable = true;
};

inline Vec<1> as_vec(double v) { return {v}; }
inline Vec<2> as_vec(const Vec<2>& v) { return v; }

template <std::size_t N, typename F>
Vec<N> sample(const F& f, double x) {
  const Vec<N> y = as_vec(f(x));
  for (double v : y) {
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os.precision(17);
      os << "integrand is not finite at k = " << x;
      throw EvaluationError(os.str(), x);
    }
  }
  return y;
}

// One Gauss-Kronrod 7/15 panel with the QUADPACK error heuristic.
template <std::size_t N, typename F>
Panel<N> gk15(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<Vec<N>, 15> fx;
  fx[7] = sample<N>(f, center);
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    fx[j] = sample<N>(f, center - dx);
    fx[14 - j] = sample<N>(f, center + dx);
  }

  Panel<N> p{a, b, {}, {}, true};
  for (std::size_t c = 0; c < N; ++c) {
    const double fc = fx[7][c];
    double resk = kKronrodWeights[7] * fc;
    double resg = kGaussWeights[3] * fc;
    double resabs = std::abs(resk);
    for (std::size_t j = 0; j < 7; ++j) {
      const double sum = fx[j][c] + fx[14 - j][c];
      resk += kKronrodWeights[j] * sum;
      resabs += kKronrodWeights[j] * (std::abs(fx[j][c]) + std::abs(fx[14 - j][c]));
      if (j % 2 == 1) resg += kGaussWeights[j / 2] * sum;
    }
    const double mean = 0.5 * resk;
    double resasc = kKronrodWeights[7] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 7; ++j) {
      resasc += kKronrodWeights[j] * (std::abs(fx[j][c] - mean) + std::abs(fx[14 - j][c] - mean));
    }
    resasc *= std::abs(half);
    resabs *= std::abs(half);

    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);

    p.value[c] = resk * half;
    p.error[c] = err;
  }
  p.splittable = (b - a) > 64.0 * kEps * std::max(std::abs(a), std::abs(b));
  return p;
}

std::vector<double> initial_breakpoints(double k_cut, double k_max, std::size_t edge_panels) {
  std::vector<double> pts{k_cut};
  double edge_hi = k_cut;
  if (edge_panels > 0) {
    edge_hi = std::min(10.0 * k_cut, k_max);
    const double ratio = std::log(edge_hi / k_cut);
    for (std::size_t i = 1; i < edge_panels; ++i) {
      pts.push_back(k_cut * std::exp(ratio * static_cast<double>(i) / static_cast<double>(edge_panels)));
    }
    pts.push_back(edge_hi);
  }
  if (edge_hi < k_max) {
    // Decade boundaries, then cap every panel at 1/16 of the total span so a
    // narrow Gaussian far from k_cut cannot hide between Kronrod nodes.
    std::vector<double> coarse{edge_hi};
    for (double x = 10.0 * edge_hi; x < k_max; x *= 10.0) coarse.push_back(x);
    coarse.push_back(k_max);
    const double max_width = (k_max - k_cut) / 16.0;
    for (std::size_t i = 1; i < coarse.size(); ++i) {
      const double lo = coarse[i - 1];
      const double hi = coarse[i];
      const auto pieces = static_cast<std::size_t>(std::ceil((hi - lo) / max_width));
      for (std::size_t j = 1; j < pieces; ++j) {
        pts.push_back(lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(pieces));
      }
      pts.push_back(hi);
    }
  }
  return pts;
}

template <std::size_t N, typename F>
PairQuadratureResult integrate_impl(const F& f, double k_cut, const QuadratureConfig& config, double k_max) {
  validate(config);
  if (!(k_cut > 0.0) || !std::isfinite(k_cut)) {
    throw Error(ErrorCode::domain, "integrate_lower_edge: k_cut must be finite and > 0");
  }
  if (!(k_max > k_cut) || !std::isfinite(k_max)) {
    throw Error(ErrorCode::domain, "integrate_lower_edge: k_max must be finite and > k_cut");
  }

  std::vector<double> pts = initial_breakpoints(k_cut, k_max, config.edge_panels);
  if (pts.size() - 1 > config.max_subdivisions) pts = {k_cut, k_max};

  std::vector<Panel<N>> panels;
  panels.reserve(std::max(config.max_subdivisions, pts.size()));
  for (std::size_t i = 1; i < pts.size(); ++i) panels.push_back(gk15<N>(f, pts[i - 1], pts[i]));

  Vec<N> total{};
  Vec<N> total_err{};
  auto accumulate = [&] {
    total.fill(0.0);
    total_err.fill(0.0);
    for (const auto& p : panels) {
      for (std::size_t c = 0; c < N; ++c) {
        total[c] += p.value[c];
        total_err[c] += p.error[c];
      }
    }
  };
  auto tolerance = [&](std::size_t c) { return std::max(config.abs_tol, config.rel_tol * std::abs(total[c])); };
  auto converged = [&] {
    for (std::size_t c = 0; c < N; ++c) {
      if (total_err[c] > tolerance(c)) return false;
    }
    return true;
  };

  accumulate();
  while (!converged()) {
    // Bisect the splittable panel carrying the largest share of any
    // component's tolerance.
    std::size_t worst = panels.size();
    double worst_key = 0.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      if (!panels[i].splittable) continue;
      double key = 0.0;
      for (std::size_t c = 0; c < N; ++c) key = std::max(key, panels[i].error[c] / tolerance(c));
      if (key > worst_key) {
        worst_key = key;
        worst = i;
      }
    }
    if (worst == panels.size() || panels.size() >= config.max_subdivisions) {
      std::size_t bad = 0;
      for (std::size_t c = 1; c < N; ++c) {
        if (total_err[c] / tolerance(c) > total_err[bad] / tolerance(bad)) bad = c;
      }
      std::ostringstream os;
      os.precision(6);
      os << "integrate_lower_edge: tolerance not met after " << panels.size() << " panels on [" << k_cut << ", "
         << k_max << "] (estimate " << total[bad] << " +/- " << total_err[bad] << ")";
      throw ConvergenceError(os.str(), total[bad], total_err[bad]);
    }
    const Panel<N> old = panels[worst];
    const double mid = 0.5 * (old.a + old.b);
    panels[worst] = gk15<N>(f, old.a, mid);
    panels.push_back(gk15<N>(f, mid, old.b));
    accumulate();
  }

  PairQuadratureResult out;
  for (std::size_t c = 0; c < N; ++c) {
    out.value[c] = total[c];
    out.error_estimate[c] = total_err[c];
  }
  out.evaluations = 15 * (panels.size() + (panels.size() - (pts.size() - 1)));
  out.truncation_k = k_max;
  return out;
}

}  // namespace

void validate(const QuadratureConfig& config) {
  if (!(config.rel_tol > 0.0) || !(config.abs_tol > 0.0) || config.max_subdivisions < 1) {
    throw Error(ErrorCode::domain, "quadrature config requires rel_tol > 0, abs_tol > 0, max_subdivisions >= 1");
  }
}

double truncation_limit(const ChannelParams& params, double tail_tol) {
  if (!(tail_tol > 0.0)) throw Error(ErrorCode::domain, "truncation_limit: tail_tol must be > 0");
  double k = std::max(std::abs(params.u) + kTruncationWidths * params.delta, kTruncationFloor);
  // Defaults already give e^{-128} for the leading Gaussian; only very small
  // tail_tol values reach the loop body.
  for (int i = 0; i < 1000; ++i) {
    if (gaussian_bracket(k, params).total * thermal_weight_variance(k) < tail_tol) break;
    k += params.delta;
  }
  return k;
}

QuadratureResult integrate_lower_edge(const Integrand& f, double k_cut, const QuadratureConfig& config,
                                      double k_max) {
  const auto r = integrate_impl<1>(f, k_cut, config, k_max);
  return {r.value[0], r.error_estimate[0], r.evaluations, r.truncation_k};
}

PairQuadratureResult integrate_lower_edge(const PairIntegrand& f, double k_cut, const QuadratureConfig& config,
                                          double k_max) {
  return integrate_impl<2>(f, k_cut, config, k_max);
}

}  // namespace unruh
