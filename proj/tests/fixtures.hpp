#pragma once

#include "rydpol/harness/config.hpp"

namespace fixtures {

inline rydpol::MediumConfig paper_medium() {
    return rydpol::harness::build_medium(rydpol::harness::MediumParams::paper());
}

// Paper medium with the length set to a multiple of w and the default pulse
// duration recomputed for the new length.
inline rydpol::MediumConfig paper_medium_with_length(double length_over_w) {
    auto params = rydpol::harness::MediumParams::paper();
    params.L = length_over_w * params.w;
    return rydpol::harness::build_medium(params);
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace fixtures
