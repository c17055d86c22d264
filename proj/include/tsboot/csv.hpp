#pragma once

#include "tsboot/time_series.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace tsboot {

/// One column per channel, optional header row (detected when the first row
/// does not parse as numbers). Blank lines are skipped. Throws Error(InputError).
[[nodiscard]] TimeSeries parse_csv(std::string_view text);
[[nodiscard]] TimeSeries read_csv(const std::string& path);

/// Writes a header row (channel names, or c0..c{d-1}) then 17-significant-digit rows.
void write_csv(std::ostream& out, const TimeSeries& series);

/// printf "%.17g" equivalent, locale independent.
[[nodiscard]] std::string format_real(double value);

}  // namespace tsboot
