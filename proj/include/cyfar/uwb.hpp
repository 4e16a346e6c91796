// IEEE 802.15.4a-style impulse-radio frame synthesis (BPM + BPSK with
// scrambling and burst hopping)
#pragma once

#include <cstdint>
#include <vector>

#include "cyfar/iq.hpp"
#include "cyfar/pulse.hpp"
#include "cyfar/rng.hpp"

namespace cyfar {

struct UwbPhyConfig {
    int n_cpb = 2;       // chips per burst
    int n_burst = 8;     // bursts per symbol
    int n_hop = 2;       // hopping positions, power of two in {2,8,32}
    double t_c = 2e-9;   // chip interval, seconds
    PulseSpec pulse;
    double timing_offset_eps = 0.0;      // seconds
    std::uint16_t scrambler_seed = 0x7fff;

    double t_burst() const { return n_cpb * t_c; }
    double t_dsym() const { return n_burst * t_burst(); }
    double t_bpm() const { return t_dsym() / 2.0; }

    void validate() const;
};

/// Modulation streams for one frame; exposed so tests can pin every
/// stochastic input.
struct UwbSymbolStreams {
    std::vector<int> a;           // burst amplitudes, +/-1
    std::vector<int> b;           // BPM position bits, 0/1
    std::vector<int> chips;       // bipolar scrambling chips, n_cpb per symbol
    std::vector<int> hops;        // burst hop index per symbol
};

/// Draws a, b from the rng and chips/hops from the shared scrambler stream.
UwbSymbolStreams draw_uwb_streams(const UwbPhyConfig& cfg, std::size_t n_symbols,
                                  Rng& rng);

/// Deterministic frame renderer. Pulses are placed circularly on a buffer
/// of exactly n_symbols * T_dsym * fs samples; the timing offset is applied
/// as a circular (fractional) delay.
IQBuffer render_uwb_frame(const UwbPhyConfig& cfg, const UwbSymbolStreams& streams,
                          double sample_rate);

/// Random frame per the PHY model. Requires an integer number of samples
/// per chip.
IQBuffer gen_uwb_frame(const UwbPhyConfig& cfg, std::size_t n_symbols,
                       double sample_rate, Rng& rng);

}  // namespace cyfar
