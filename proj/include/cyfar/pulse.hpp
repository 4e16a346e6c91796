// baseband UWB pulse shaping
#pragma once

#include "cyfar/iq.hpp"

namespace cyfar {

/// Low-pass Butterworth pulse description. `truncation_length` of zero
/// selects an automatic window (6 / bandwidth_3db).
struct PulseSpec {
    int filter_order = 8;
    double bandwidth_3db = 250e6;   // Hz, one-sided cutoff of the lowpass
    double truncation_length = 0.0; // seconds
};

/// Unit-energy discretized impulse response of the specified filter
/// (bilinear-transformed analog prototype, prewarped so the -3 dB point
/// lands exactly on bandwidth_3db). Throws if the truncation window
/// captures less than 99.9% of the impulse-response energy.
IQBuffer butterworth_pulse(const PulseSpec& spec, double sample_rate);

}  // namespace cyfar
