#ifndef UNRUH_TOOLS_CSV_HPP
#define UNRUH_TOOLS_CSV_HPP

#include <ostream>
#include <string>
#include <string_view>

#include "unruh/unruh.h"

namespace unruh_cli {

// Fixed sweep schema; `note` is empty unless the row failed.
inline constexpr std::string_view kSweepHeader = "u,delta,k_cut,i_norm,i_err,v_bar,v_err,snr_gain,v_c,note";

/// 17 significant digits; non-finite values print as nan/inf/-inf.
std::string format_number(double v);

/// RFC 4180 quoting when the field contains a comma, quote or newline.
std::string csv_field(std::string_view text);

void write_sweep_csv(std::ostream& out, const unruh_sweep* sweep);

}  // namespace unruh_cli

#endif
