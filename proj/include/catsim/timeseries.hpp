#pragma once

#include <map>
#include <string>
#include <vector>

namespace catsim {

// Ordered (t, value) samples with free-form metadata tags; the unit of
// exchange between simulation, analysis and the CLI.
struct TimeSeries {
    std::vector<double> times;
    std::vector<double> values;
    std::map<std::string, std::string> meta;

    std::size_t size() const { return times.size(); }

    // times strictly increasing, values finite, sizes matching
    void validate() const;
};

}  // namespace catsim
