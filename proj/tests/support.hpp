#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdint>
#include <cstring>
#include <random>

namespace rdweno::test {

/// Distance in units of the last place between two finite doubles.
inline std::int64_t ulp_distance(double a, double b) {
    if (a == b) return 0;
    auto ordered = [](double v) {
        std::int64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        return bits < 0 ? std::int64_t{INT64_MIN} - bits : bits;
    };
    const auto d = ordered(a) - ordered(b);
    return d < 0 ? -d : d;
}

/// Closeness within `ulps` units of the larger magnitude among the inputs and `scale`.
/// Sums of cancelling terms cannot be expected to agree better than that.
inline bool close_ulps(double a, double b, double scale, int ulps = 8) {
    const double unit = std::ldexp(std::numeric_limits<double>::epsilon(), std::ilogb(std::max({std::abs(a), std::abs(b), scale, 1e-300})));
    return std::abs(a - b) <= ulps * unit;
}

inline std::mt19937_64& rng() {
    static std::mt19937_64 engine(20240611);
    return engine;
}

}  // namespace rdweno::test
