#include "lpflux/reports.hpp"

#include <cstdint>
#include <cstdio>
#include <ostream>

namespace lpflux {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out.push_back('\\');
            out.push_back(c);
        } else if (c == '\n') {
            out += "\\n";
        } else {
            out.push_back(c);
        }
    }
    return out;
}

} // namespace

void write_check_report_json(std::ostream& out, const std::string& suite, std::uint64_t seed,
                             std::span<const CheckResult> checks) {
    bool all = true;
    for (const auto& c : checks) all = all && c.pass;
    out << "{\n  \"suite\": \"" << json_escape(suite) << "\",\n  \"seed\": " << seed
        << ",\n  \"pass\": " << (all ? "true" : "false") << ",\n  \"checks\": [\n";
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const auto& c = checks[i];
        out << "    {\"name\": \"" << json_escape(c.name) << "\", \"measured\": "
            << format_double(c.measured) << ", \""
            << (c.reference_is_bound ? "bound" : "expected") << "\": "
            << format_double(c.reference) << ", \"tolerance\": " << format_double(c.tolerance)
            << ", \"pass\": " << (c.pass ? "true" : "false") << "}"
            << (i + 1 < checks.size() ? "," : "") << "\n";
    }
    out << "  ]\n}\n";
}

void write_csv(std::ostream& out, const CsvTable& table) {
    for (std::size_t i = 0; i < table.header.size(); ++i)
        out << table.header[i] << (i + 1 < table.header.size() ? "," : "");
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? "," : "");
        out << "\n";
    }
}

void write_table_json(std::ostream& out, const CsvTable& table) {
    out << "[\n";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out << "  {";
        for (std::size_t i = 0; i < table.header.size(); ++i) {
            out << "\"" << json_escape(table.header[i]) << "\": " << table.rows[r][i];
            if (i + 1 < table.header.size()) out << ", ";
        }
        out << "}" << (r + 1 < table.rows.size() ? "," : "") << "\n";
    }
    out << "]\n";
}

} // namespace lpflux
