#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gdamf::csv {

// Minimal comma-separated table: header row plus string cells. No quoting.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // column index by name, -1 if absent
    int column(const std::string& name) const;
};

// Throws std::runtime_error with file/line context on ragged rows.
Table read_csv(std::istream& in, const std::string& name_for_errors);
Table read_csv_file(const std::string& path);

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace gdamf::csv
