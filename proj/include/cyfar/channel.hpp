// multipath channel draws and application
#pragma once

#include <vector>

#include "cyfar/iq.hpp"
#include "cyfar/rng.hpp"

namespace cyfar {

/// Sparse complex FIR channel; delays are integer samples, strictly
/// increasing and nonnegative.
struct ChannelRealization {
    struct Tap {
        int delay = 0;
        cplx gain{1.0, 0.0};
    };
    std::vector<Tap> taps;

    void validate() const;
};

enum class ChannelKind { uwb_multipath, rayleigh_exponential };

/// Exponential power-delay-profile model. Tap powers decay as
/// exp(-t_i / decay) and are normalized to unit expected total power.
struct ChannelParams {
    ChannelKind kind = ChannelKind::uwb_multipath;
    int n_taps = 30;
    double tap_spacing = 1e-9;  // seconds
    double decay = 5e-9;        // PDP decay time constant, seconds

    static ChannelParams uwb_default() { return {}; }
    static ChannelParams ofdm_default() {
        return {ChannelKind::rayleigh_exponential, 20, 1e-9, 5e-9};
    }
};

/// normalized expected tap powers of the profile (sums to 1)
std::vector<double> expected_tap_powers(const ChannelParams& params);

/// complex Gaussian taps with the configured profile, unit expected power
ChannelRealization draw_channel(const ChannelParams& params, double sample_rate,
                                Rng& rng);

/// linear convolution with the tap set, truncated to the input length
IQBuffer apply_channel(const IQBuffer& x, const ChannelRealization& ch);

}  // namespace cyfar
