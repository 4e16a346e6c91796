// scene composition at calibrated SNR / SIR / INR
#pragma once

#include <cstdint>
#include <optional>

#include "cyfar/channel.hpp"
#include "cyfar/noise.hpp"
#include "cyfar/ofdm.hpp"
#include "cyfar/uwb.hpp"

namespace cyfar {

struct UwbScenePart {
    UwbPhyConfig phy;
    std::optional<ChannelParams> channel;  // absent = ideal channel
    bool random_timing = true;             // eps ~ U[0, T_dsym) per draw
};

struct OfdmScenePart {
    OfdmConfig cfg;
    std::optional<ChannelParams> channel = ChannelParams::ofdm_default();
    bool random_timing = true;              // zeta ~ U[0, T_sym) per draw
    bool random_carrier = true;             // f_c' ~ U[-range, range] per draw
    double carrier_range = 240e6;           // Hz
};

struct SceneConfig {
    std::optional<UwbScenePart> uwb;
    std::optional<OfdmScenePart> interferer;
    NoiseModel noise;
    std::optional<double> snr_db;  // required when uwb present
    std::optional<double> sir_db;  // interferer power relative to UWB
    std::optional<double> inr_db;  // interferer power relative to noise (H0 scenes)
    double duration = 10e-6;       // seconds
    double sample_rate = 1e9;      // Hz

    void validate() const;
};

struct Scene {
    IQBuffer buffer;
    bool h1 = false;          // UWB present
    double noise_variance = 0.0;
};

/// Draws one scene. Post-channel components are rescaled against their
/// measured frame-average powers, so the configured ratios hold exactly
/// for the composed buffer.
Scene mix_scene(const SceneConfig& cfg, Rng& rng);

}  // namespace cyfar
