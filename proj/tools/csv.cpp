#include "csv.hpp"

#include <cmath>
#include <cstdio>

#include "handles.hpp"

namespace unruh_cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_sweep_csv(std::ostream& out, const unruh_sweep* sweep) {
  out << kSweepHeader << '\n';
  const size_t n = unruh_sweep_size(sweep);
  for (size_t i = 0; i < n; ++i) {
    unruh_sweep_row row{};
    check(unruh_sweep_get_row(sweep, i, &row));
    const double values[] = {row.u,          row.delta,      row.k_cut,         row.obs.i_norm, row.obs.i_err,
                             row.obs.v_bar,  row.obs.v_err,  row.obs.snr_gain,  row.obs.v_c};
    for (double v : values) out << format_number(v) << ',';
    out << csv_field(row.note) << '\n';
  }
}

}  // namespace unruh_cli
