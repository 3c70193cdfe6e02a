#pragma once

// Fixed output formatting: scientific notation with 12 significant digits in
// both CSV and JSON, so identical runs produce identical bytes.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace rydpol::harness {

using Json = nlohmann::ordered_json;

inline std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11e", value);
    return buf;
}

/// JSON value carrying the same 12 digits as format_number; null if non-finite.
inline Json json_number(double value) {
    if (!std::isfinite(value)) return nullptr;
    return std::strtod(format_number(value).c_str(), nullptr);
}

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void header(const std::vector<std::string>& columns) { row(columns); }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

private:
    std::ostream& out_;
};

inline void write_json(std::ostream& out, const Json& doc) { out << doc.dump(2) << '\n'; }

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    return out;
}

} // namespace rydpol::harness
