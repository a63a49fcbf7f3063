#include "catsim/timeseries.hpp"

#include <cmath>
#include <stdexcept>

namespace catsim {

void TimeSeries::validate() const {
    if (times.size() != values.size())
        throw std::invalid_argument("timeseries: times/values size mismatch");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(values[i]))
            throw std::invalid_argument("timeseries: non-finite value at t = " +
                                        std::to_string(times[i]));
        if (i > 0 && !(times[i] > times[i - 1]))
            throw std::invalid_argument(
                "timeseries: times must be strictly increasing");
    }
}

}  // namespace catsim
