#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "jc/scan.hpp"

namespace jc {

/// %.17g rendering: enough digits that parse + re-emit is byte-stable.
std::string format_double(double v);

struct ScanTable {
    std::vector<std::string> metadata;  // emitted as "# ..." lines, verbatim
    std::vector<ScanRow> rows;
};

/// Header row plus one comma-separated row per grid point. The resummed
/// column stays empty when it was not computed.
void write_scan_csv(std::ostream& out, const ScanTable& table);
ScanTable read_scan_csv(std::istream& in);

/// Companion gnuplot script for a written scan CSV.
void write_plot_script(std::ostream& out, const std::string& csv_path);

}  // namespace jc
