#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace meshcurv {

/// 17 significant digits round-trip a 64-bit float exactly, which makes
/// determinism testable byte-wise. NaN is always spelled "nan".
inline std::string format_double17(double x) {
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace meshcurv
