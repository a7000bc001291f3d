#pragma once

#include <cstdio>
#include <cstdlib>

namespace exwb {

// Round to 12 significant digits — the precision every float is serialized
// with, so re-serializing a parsed report is byte-stable.
inline double round12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::strtod(buf, nullptr);
}

}  // namespace exwb
