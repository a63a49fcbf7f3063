#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace catsim::csv {

struct Column {
    std::string name;
    std::vector<double> values;  // aligned with the time grid; NaN allowed
};

// Writes '#'-prefixed provenance lines (one per key=value pair, in the given
// order, preceded by a tool banner and a timestamp), then a column-name row
// "t,<names...>", then one row per sample with 12 significant digits.
void write(const std::string& path,
           const std::vector<std::pair<std::string, std::string>>& meta,
           const std::vector<double>& times, const std::vector<Column>& cols);

struct File {
    std::map<std::string, std::string> meta;
    std::vector<std::string> col_names;           // includes leading "t"
    std::vector<std::vector<double>> cols;        // column-wise data
};

File read(const std::string& path);

}  // namespace catsim::csv
