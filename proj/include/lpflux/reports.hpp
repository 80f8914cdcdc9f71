#ifndef LPFLUX_REPORTS_HPP
#define LPFLUX_REPORTS_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace lpflux {

/// 17 significant digits: round-trip exact for 64-bit floats.
std::string format_double(double v);

struct CheckResult {
    std::string name;
    double measured = 0.0;
    double reference = 0.0;      // bound or expected value
    bool reference_is_bound = true;
    double tolerance = 0.0;
    bool pass = false;
};

void write_check_report_json(std::ostream& out, const std::string& suite, std::uint64_t seed,
                             std::span<const CheckResult> checks);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::initializer_list<std::string> cells) { rows.emplace_back(cells); }
};

void write_csv(std::ostream& out, const CsvTable& table);
void write_table_json(std::ostream& out, const CsvTable& table);

} // namespace lpflux

#endif
