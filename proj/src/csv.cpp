#include "catsim/csv.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "catsim/errors.hpp"
#include "catsim/version.hpp"

namespace catsim::csv {

namespace {

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

void write(const std::string& path,
           const std::vector<std::pair<std::string, std::string>>& meta,
           const std::vector<double>& times, const std::vector<Column>& cols) {
    for (const Column& c : cols)
        if (c.values.size() != times.size())
            throw std::invalid_argument("csv: column '" + c.name +
                                        "' length differs from time grid");
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("csv: cannot open '" + path + "' for writing");

    out << "# catsim " << kVersion << "\n";
    out << "# generated: " << utc_timestamp() << "\n";
    for (const auto& [k, v] : meta) out << "# " << k << "=" << v << "\n";
    out << "t";
    for (const Column& c : cols) out << "," << c.name;
    out << "\n";
    for (std::size_t i = 0; i < times.size(); ++i) {
        out << format_value(times[i]);
        for (const Column& c : cols) out << "," << format_value(c.values[i]);
        out << "\n";
    }
    if (!out) throw IoError("csv: write to '" + path + "' failed");
}

File read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("csv: cannot open '" + path + "' for reading");
    File f;
    std::string line;
    bool have_header = false;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = line.substr(1);
            const std::size_t start = body.find_first_not_of(' ');
            if (start == std::string::npos) continue;
            body = body.substr(start);
            const std::size_t eq = body.find('=');
            if (eq != std::string::npos)
                f.meta[body.substr(0, eq)] = body.substr(eq + 1);
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        if (!have_header) {
            while (std::getline(ss, cell, ',')) f.col_names.push_back(cell);
            if (f.col_names.empty())
                throw IoError("csv: '" + path + "': empty column header");
            f.cols.resize(f.col_names.size());
            have_header = true;
            continue;
        }
        std::size_t col = 0;
        while (std::getline(ss, cell, ',')) {
            if (col >= f.cols.size())
                throw IoError("csv: '" + path + "': too many cells on line " +
                              std::to_string(lineno));
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str())
                throw IoError("csv: '" + path + "': bad number '" + cell +
                              "' on line " + std::to_string(lineno));
            f.cols[col++].push_back(v);
        }
        if (col != f.cols.size())
            throw IoError("csv: '" + path + "': short row on line " +
                          std::to_string(lineno));
    }
    if (!have_header)
        throw IoError("csv: '" + path + "': no column header found");
    return f;
}

}  // namespace catsim::csv
