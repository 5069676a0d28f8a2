#pragma once

#include <string>
#include <vector>

#include "superrad/timeseries.hpp"

namespace superrad {

/// CSV image of a trajectory: header `t_gamma, <channel>, ...`, one row per
/// grid point, 17 significant digits, ", " separators, LF line endings.
/// Complex channels split into `<label>_re, <label>_im` column pairs.  The
/// output is a pure function of the series, so identical series give byte
/// identical text.
std::string to_csv(const TimeSeries& series,
                   const std::string& time_label = "t_gamma");

/// Plain rectangular table, same formatting contract.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;  ///< each sized like columns
};
std::string to_csv(const Table& table);

/// Writes text to path, creating parent directories; throws
/// std::runtime_error when the file cannot be opened.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace superrad
