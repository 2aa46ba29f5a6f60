#include "jc/csv.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "jc/errors.hpp"

namespace jc {

namespace {
const char* kHeader = "gt,purity_exact,purity_resummed,p_plus,abs_c,entropy,cs_gap,validity_flags";
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_scan_csv(std::ostream& out, const ScanTable& table) {
    for (const std::string& line : table.metadata) out << "# " << line << '\n';
    out << kHeader << '\n';
    for (const ScanRow& row : table.rows) {
        out << format_double(row.gt) << ',' << format_double(row.purity_exact) << ',';
        if (row.purity_resummed) out << format_double(*row.purity_resummed);
        out << ',' << format_double(row.p_plus) << ',' << format_double(row.abs_c)
            << ',' << format_double(row.entropy) << ',' << format_double(row.cs_gap)
            << ',' << row.validity_flags << '\n';
    }
}

ScanTable read_scan_csv(std::istream& in) {
    ScanTable table;
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::size_t start = line.size() > 1 && line[1] == ' ' ? 2 : 1;
            table.metadata.push_back(line.substr(start));
            continue;
        }
        if (!saw_header) {
            if (line != kHeader) throw ConfigError("unrecognized scan CSV header");
            saw_header = true;
            continue;
        }
        std::istringstream row_in(line);
        std::string field;
        ScanRow row;
        auto next = [&]() {
            if (!std::getline(row_in, field, ','))
                throw ConfigError("scan CSV row has too few fields");
            return field;
        };
        row.gt = std::stod(next());
        row.purity_exact = std::stod(next());
        next();
        row.purity_resummed =
            field.empty() ? std::optional<double>{} : std::optional<double>{std::stod(field)};
        row.p_plus = std::stod(next());
        row.abs_c = std::stod(next());
        row.entropy = std::stod(next());
        row.cs_gap = std::stod(next());
        row.validity_flags = static_cast<unsigned>(std::stoul(next()));
        table.rows.push_back(row);
    }
    if (!saw_header) throw ConfigError("scan CSV is missing its header row");
    return table;
}

void write_plot_script(std::ostream& out, const std::string& csv_path) {
    out << "set datafile separator ','\n"
        << "set key left bottom\n"
        << "set xlabel 'gt'\n"
        << "set ylabel 'Tr[rho_A^2]'\n"
        << "set yrange [0.45:1.05]\n"
        << "plot '" << csv_path << "' using 1:2 with lines title 'exact', \\\n"
        << "     '" << csv_path << "' using 1:3 with lines title 'resummed'\n";
}

}  // namespace jc
