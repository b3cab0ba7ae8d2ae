#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ergolab {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Geometric checkpoint times n_k = ceil(ratio^k), deduplicated, closed by
// n_max. Limits as n -> infinity are studied at log-spaced times with O(log)
// memory per trace.
struct CheckpointSchedule {
    std::vector<std::uint64_t> times;

    static CheckpointSchedule geometric(std::uint64_t n_max, double ratio = 1.2) {
        if (ratio <= 1.0) throw error("checkpoint ratio must be > 1");
        CheckpointSchedule s;
        if (n_max == 0) return s;
        double v = 1.0;
        std::uint64_t last = 0;
        while (true) {
            auto n = static_cast<std::uint64_t>(std::ceil(v));
            if (n >= n_max) break;
            if (n > last) {
                s.times.push_back(n);
                last = n;
            }
            v *= ratio;
        }
        s.times.push_back(n_max);
        return s;
    }

    static CheckpointSchedule explicit_times(std::vector<std::uint64_t> t) {
        CheckpointSchedule s;
        s.times = std::move(t);
        for (std::size_t i = 0; i + 1 < s.times.size(); ++i)
            if (s.times[i] >= s.times[i + 1])
                throw error("checkpoint times must be strictly increasing");
        if (!s.times.empty() && s.times.front() < 1)
            throw error("first checkpoint must be >= 1");
        return s;
    }

    std::uint64_t n_max() const { return times.empty() ? 0 : times.back(); }
    std::size_t size() const { return times.size(); }
};

} // namespace ergolab
