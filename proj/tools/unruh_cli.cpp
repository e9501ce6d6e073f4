// Command-line front end over the C API: point evaluation, sweeps, cutoff
// optimization, figure-data regeneration and oracle comparison.
//
// Exit status: 0 success, 1 numerical or I/O failure, 2 usage error.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "csv.hpp"
#include "handles.hpp"
#include "json.hpp"
#include "run_spec.hpp"

using nlohmann::json;
using namespace unruh_cli;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr double kOracleBar = 1e-4;
constexpr double kPi = std::numbers::pi;

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

json error_object(const std::string& code, int status, const std::string& message) {
  return {{"error", {{"code", code}, {"status", status}, {"message", message}}}};
}

unsigned thread_cap() {
  if (const char* env = std::getenv("UNRUH_THREADS")) {
    char* end = nullptr;
    const unsigned long n = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<unsigned>(n);
  }
  return 0;
}

// Input problems reported by the library count as usage errors.
Context configure(const RunSpec& spec) {
  Context ctx = make_context();
  const auto guard = [](unruh_status s) {
    if (s != UNRUH_OK) throw UsageError(unruh_last_error());
  };
  guard(unruh_context_set_channel(ctx.get(), spec.u, spec.delta));
  guard(unruh_context_set_amplitudes(ctx.get(), spec.alpha_re, spec.alpha_im, spec.beta));
  guard(unruh_context_set_phase(ctx.get(), spec.phi));
  guard(unruh_context_set_quadrature(ctx.get(), spec.rel_tol, spec.abs_tol, spec.max_subdivisions, spec.edge_panels));
  guard(unruh_context_set_threads(ctx.get(), thread_cap()));
  if (spec.command != Command::figure && !(spec.command == Command::sweep && spec.sweep_axis == "kcut")) {
    guard(unruh_context_set_cutoff(ctx.get(), spec.k_cut));
  }
  return ctx;
}

json inputs_json(const RunSpec& spec) {
  return {{"u", spec.u},         {"delta", spec.delta},     {"alpha", {spec.alpha_re, spec.alpha_im}},
          {"beta", spec.beta},   {"phi", spec.phi},         {"k_cut", spec.k_cut}};
}

json observables_json(const unruh_observables& o) {
  return {{"i_norm", o.i_norm}, {"x_bar", o.x_bar}, {"v_bar", o.v_bar}, {"snr_gain", o.snr_gain},
          {"v_c", o.v_c},       {"i_err", o.i_err}, {"v_err", o.v_err}};
}

void emit(const RunSpec& spec, const std::string& text) {
  if (spec.output_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(spec.output_path, std::ios::binary);
  if (!out) throw IoError("cannot open output file '" + spec.output_path + "'");
  out << text;
  if (!out.flush()) throw IoError("failed writing '" + spec.output_path + "'");
}

Sweep run_sweep(const unruh_context* ctx, unruh_axis axis, const std::vector<double>& values) {
  unruh_sweep* raw = nullptr;
  check(unruh_sweep_run(ctx, axis, values.data(), values.size(), &raw));
  return Sweep(raw);
}

std::vector<double> axis_values(double lo, double hi, std::size_t n, AxisScale scale) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(n - 1);
    v[i] = scale == AxisScale::log ? lo * std::exp(std::log(hi / lo) * f) : lo + (hi - lo) * f;
  }
  v.front() = lo;
  v.back() = hi;
  return v;
}

int cmd_point(const RunSpec& spec) {
  Context ctx = configure(spec);
  unruh_observables obs{};
  check(unruh_compute_observables(ctx.get(), &obs));
  if (spec.format == Format::csv) {
    std::vector<double> one{spec.u};
    Sweep sweep = run_sweep(ctx.get(), UNRUH_AXIS_U, one);
    std::ostringstream os;
    write_sweep_csv(os, sweep.get());
    emit(spec, os.str());
    return kExitOk;
  }
  json doc = observables_json(obs);
  doc["inputs"] = inputs_json(spec);
  doc["diagnostics"] = {{"evaluations", obs.evaluations},
                        {"truncation_k", obs.truncation_k},
                        {"rel_tol", spec.rel_tol},
                        {"abs_tol", spec.abs_tol},
                        {"max_subdivisions", spec.max_subdivisions},
                        {"edge_panels", spec.edge_panels}};
  emit(spec, doc.dump(2) + "\n");
  return kExitOk;
}

int cmd_sweep(const RunSpec& spec) {
  Context ctx = configure(spec);
  const auto values = axis_values(spec.axis_min, spec.axis_max, spec.axis_steps, spec.axis_scale);
  const unruh_axis axis = spec.sweep_axis == "u" ? UNRUH_AXIS_U : UNRUH_AXIS_KCUT;
  Sweep sweep = run_sweep(ctx.get(), axis, values);
  std::ostringstream os;
  if (spec.format == Format::json) {
    json rows = json::array();
    for (size_t i = 0; i < unruh_sweep_size(sweep.get()); ++i) {
      unruh_sweep_row r{};
      check(unruh_sweep_get_row(sweep.get(), i, &r));
      json row = observables_json(r.obs);
      row["u"] = r.u;
      row["delta"] = r.delta;
      row["k_cut"] = r.k_cut;
      row["note"] = r.note;
      rows.push_back(row);
    }
    os << json{{"rows", rows}}.dump(2) << "\n";
  } else {
    write_sweep_csv(os, sweep.get());
  }
  emit(spec, os.str());
  return kExitOk;
}

int cmd_optimize(const RunSpec& spec) {
  Context ctx = configure(spec);
  const unruh_metric metric = spec.metric == "snr" ? UNRUH_METRIC_SNR_GAIN : UNRUH_METRIC_CONDITIONAL_VARIANCE;
  unruh_optimum opt{};
  check(unruh_find_optimal_cutoff(ctx.get(), metric, spec.search_lo, spec.search_hi, spec.x_tol, spec.scan_points,
                                  &opt, nullptr));
  json doc = {{"metric", spec.metric == "snr" ? "snr_gain" : "conditional_variance"},
              {"k_opt", opt.k_opt},
              {"metric_at_opt", opt.metric_at_opt},
              {"error_at_opt", opt.error_at_opt},
              {"bracket", {opt.bracket_lo, opt.bracket_hi}},
              {"converged", opt.converged != 0},
              {"iterations", opt.iterations}};
  // Distance of the SNR optimum from the Unruh frequency 1/(2 pi).
  if (metric == UNRUH_METRIC_SNR_GAIN) doc["unruh_ratio"] = 2.0 * kPi * opt.k_opt;
  switch (opt.status) {
    case UNRUH_OPT_CONVERGED: doc["status"] = "converged"; break;
    case UNRUH_OPT_PLATEAU:
      doc["status"] = "plateau";
      doc["note"] = "flat plateau: metric constant within 10x its error over the search interval";
      break;
    case UNRUH_OPT_BOUNDARY:
      doc["status"] = "boundary";
      doc["note"] = "metric monotone over the search interval; boundary point returned";
      break;
  }
  doc["inputs"] = inputs_json(spec);
  doc["inputs"].erase("k_cut");
  doc["inputs"]["search"] = {spec.search_lo, spec.search_hi};
  doc["inputs"]["x_tol"] = spec.x_tol;
  emit(spec, doc.dump(2) + "\n");
  return kExitOk;
}

struct FigureCurves {
  unruh_axis axis;
  std::vector<double> axis_points;
  std::vector<double> fixed;  // k_cut values for u-sweeps, u values for k_cut sweeps
};

FigureCurves figure_layout(int id, double delta) {
  const auto u_axis = axis_values(-3.0 * delta, delta, 600, AxisScale::linear);
  const auto k_axis = axis_values(0.01, 1.0, 60, AxisScale::log);
  switch (id) {
    case 2: return {UNRUH_AXIS_U, u_axis, {1e-5, 1e-3, 0.1}};
    case 3: return {UNRUH_AXIS_U, u_axis, {0.01, 0.05, 0.1}};
    case 4: return {UNRUH_AXIS_KCUT, k_axis, {0.0, kPi, 2.0 * kPi}};
    case 5: return {UNRUH_AXIS_KCUT, k_axis, {0.5 * kPi, 1.5 * kPi, 2.5 * kPi}};
    default: return {UNRUH_AXIS_KCUT, k_axis, {0.0, 0.5 * kPi, kPi, 2.0 * kPi, 3.0 * kPi}};
  }
}

int cmd_figure(const RunSpec& spec) {
  namespace fs = std::filesystem;
  const fs::path dir = spec.output_path.empty() ? fs::path(".") : fs::path(spec.output_path);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

  const FigureCurves layout = figure_layout(spec.figure_id, spec.delta);
  json files = json::array();
  for (std::size_t c = 0; c < layout.fixed.size(); ++c) {
    RunSpec curve = spec;
    if (layout.axis == UNRUH_AXIS_U) {
      curve.k_cut = layout.fixed[c];
    } else {
      curve.u = layout.fixed[c];
    }
    curve.command = Command::sweep;
    curve.sweep_axis = layout.axis == UNRUH_AXIS_U ? "u" : "kcut";
    Context ctx = configure(curve);
    if (layout.axis == UNRUH_AXIS_U) check(unruh_context_set_cutoff(ctx.get(), curve.k_cut));
    Sweep sweep = run_sweep(ctx.get(), layout.axis, layout.axis_points);

    const fs::path file = dir / ("fig" + std::to_string(spec.figure_id) + "_curve" + std::to_string(c + 1) + ".csv");
    std::ofstream out(file, std::ios::binary);
    if (!out) throw IoError("cannot open output file '" + file.string() + "'");
    write_sweep_csv(out, sweep.get());
    if (!out.flush()) throw IoError("failed writing '" + file.string() + "'");
    files.push_back({{"path", file.string()},
                     {layout.axis == UNRUH_AXIS_U ? "k_cut" : "u", layout.fixed[c]},
                     {"rows", unruh_sweep_size(sweep.get())}});
  }
  std::cout << json{{"figure", spec.figure_id}, {"delta", spec.delta}, {"files", files}}.dump(2) << "\n";
  return kExitOk;
}

double rel_dev(double a, double b) { return std::abs(a - b) / std::abs(b); }

int cmd_oracle(const RunSpec& spec) {
  Context ctx = configure(spec);
  unruh_observables obs{};
  check(unruh_compute_observables(ctx.get(), &obs));

  unruh_oracle_config cfg{};
  unruh_oracle_config_default(&cfg);
  cfg.k_so = spec.k_so.front();
  cfg.grid_s = spec.grid_s;
  cfg.grid_d = spec.grid_d;
  cfg.window = spec.window;
  unruh_oracle_result triple{};
  check(unruh_oracle_triple(ctx.get(), &cfg, &triple));
  const double triple_v_bar = triple.variance / triple.lo_strength;

  json exact = json::array();
  for (double k_so : spec.k_so) {
    cfg.k_so = k_so;
    double value = 0.0;
    check(unruh_oracle_exact_lo_strength(ctx.get(), &cfg, &value));
    exact.push_back({{"k_so", k_so},
                     {"i_norm", value},
                     {"deviation_from_reduced", rel_dev(value, obs.i_norm)},
                     {"deviation_from_triple", rel_dev(value, triple.lo_strength)}});
  }
  const double dev_i = rel_dev(triple.lo_strength, obs.i_norm);
  const double dev_v = rel_dev(triple_v_bar, obs.v_bar);
  json doc = {{"reduced", {{"i_norm", obs.i_norm}, {"v_bar", obs.v_bar}, {"i_err", obs.i_err}, {"v_err", obs.v_err}}},
              {"triple",
               {{"k_so", spec.k_so.front()},
                {"i_norm", triple.lo_strength},
                {"v_bar", triple_v_bar},
                {"variance", triple.variance},
                {"relative_resolution", triple.relative_resolution}}},
              {"exact", exact},
              {"deviation", {{"reduced_vs_triple_i_norm", dev_i}, {"reduced_vs_triple_v_bar", dev_v}}},
              {"threshold", kOracleBar},
              {"pass", dev_i <= kOracleBar && dev_v <= kOracleBar},
              {"inputs", inputs_json(spec)},
              {"grid", {{"grid_s", spec.grid_s}, {"grid_d", spec.grid_d}, {"window", spec.window}}}};
  emit(spec, doc.dump(2) + "\n");
  return kExitOk;
}

void add_common(CLI::App* sub, Overrides& f, std::string& spec_file) {
  sub->add_option("--spec", spec_file, "JSON run-spec file; flags override its values");
  sub->add_option("--u", f.u, "emission offset k_so (t - x)");
  sub->add_option("--delta", f.delta, "packet sharpness k_so / sigma (>= 1)");
  sub->add_option("--alpha", f.alpha_re, "signal amplitude, real part");
  sub->add_option("--alpha-im", f.alpha_im, "signal amplitude, imaginary part");
  sub->add_option("--beta", f.beta, "local-oscillator amplitude");
  sub->add_option("--phi", f.phi, "quadrature phase [rad]");
  sub->add_option("--kcut", f.k_cut, "low-frequency cutoff omega_cut / a");
  sub->add_option("--rel-tol", f.rel_tol, "quadrature relative tolerance");
  sub->add_option("--abs-tol", f.abs_tol, "quadrature absolute tolerance");
  sub->add_option("--max-subdivisions", f.max_subdivisions, "quadrature panel budget");
  sub->add_option("--edge-panels", f.edge_panels, "log-spaced panels next to k_cut");
  sub->add_option("--out", f.output_path, "output file (directory for 'figure')");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Horizon-straddling homodyne channel: observables, sweeps and optimal detector cutoffs"};
  app.require_subcommand(1);

  Overrides flags;
  std::string spec_file;
  auto* point = app.add_subcommand("point", "evaluate all observables at one point (JSON)");
  auto* sweep = app.add_subcommand("sweep", "observables along u or k_cut (CSV)");
  auto* optimize = app.add_subcommand("optimize", "locate the optimal low-frequency cutoff (JSON)");
  auto* figure = app.add_subcommand("figure", "regenerate figure data as one CSV per curve");
  auto* oracle = app.add_subcommand("oracle", "compare the reduced integrals with brute-force oracles (JSON)");
  for (auto* sub : {point, sweep, optimize, figure, oracle}) add_common(sub, flags, spec_file);

  point->add_option("--format", flags.format, "json or csv");
  sweep->add_option("--format", flags.format, "csv or json");
  sweep->add_option("--axis", flags.sweep_axis, "u or kcut");
  sweep->add_option("--min", flags.axis_min, "axis start");
  sweep->add_option("--max", flags.axis_max, "axis end");
  sweep->add_option("--steps", flags.axis_steps, "number of axis points (>= 2)");
  sweep->add_option("--scale", flags.axis_scale, "linear or log");
  optimize->add_option("--metric", flags.metric, "snr or cv")->required();
  optimize->add_option("--lo", flags.search_lo, "search interval start");
  optimize->add_option("--hi", flags.search_hi, "search interval end");
  optimize->add_option("--xtol", flags.x_tol, "bracket width at convergence");
  optimize->add_option("--scan-points", flags.scan_points, "log-spaced bracketing scan size");
  figure->add_option("--id", flags.figure_id, "figure number 2..6")->required();
  oracle->add_option("--kso", flags.k_so, "carrier wave number(s); the first drives the triple oracle");
  oracle->add_option("--grid-s", flags.grid_s, "k_s abscissae (odd)");
  oracle->add_option("--grid-d", flags.grid_d, "k_d abscissae (odd)");
  oracle->add_option("--window", flags.window, "k_s half-width in units of sigma");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << error_object("usage_error", UNRUH_ERR_USAGE, e.what()).dump(2) << "\n";
    return kExitUsage;
  }

  RunSpec spec;
  if (point->parsed()) spec.command = Command::point;
  if (sweep->parsed()) {
    spec.command = Command::sweep;
    spec.format = Format::csv;
  }
  if (optimize->parsed()) spec.command = Command::optimize;
  if (figure->parsed()) spec.command = Command::figure;
  if (oracle->parsed()) spec.command = Command::oracle;

  try {
    if (!spec_file.empty()) {
      std::ifstream in(spec_file);
      if (!in) throw UsageError("cannot read run spec '" + spec_file + "'");
      json doc;
      try {
        doc = json::parse(in);
      } catch (const json::parse_error& e) {
        throw UsageError(std::string("run spec is not valid JSON: ") + e.what());
      }
      apply_json(spec, doc);
    }
    apply_overrides(spec, flags);
    validate(spec);

    switch (spec.command) {
      case Command::point: return cmd_point(spec);
      case Command::sweep: return cmd_sweep(spec);
      case Command::optimize: return cmd_optimize(spec);
      case Command::figure: return cmd_figure(spec);
      case Command::oracle: return cmd_oracle(spec);
    }
  } catch (const UsageError& e) {
    std::cout << error_object("usage_error", UNRUH_ERR_USAGE, e.what()).dump(2) << "\n";
    return kExitUsage;
  } catch (const ApiError& e) {
    std::cout << error_object(unruh_status_string(e.status()), e.status(), e.what()).dump(2) << "\n";
    return kExitFailure;
  } catch (const IoError& e) {
    std::cout << error_object("io_error", 0, e.what()).dump(2) << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
