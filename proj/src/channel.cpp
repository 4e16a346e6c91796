#include "cyfar/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace cyfar {

void ChannelRealization::validate() const {
    if (taps.empty()) throw std::invalid_argument("channel: no taps");
    int prev = -1;
    for (const auto& t : taps) {
        if (t.delay < 0) throw std::invalid_argument("channel: negative tap delay");
        if (t.delay <= prev)
            throw std::invalid_argument("channel: delays must be strictly increasing");
        prev = t.delay;
    }
}

std::vector<double> expected_tap_powers(const ChannelParams& params) {
    if (params.n_taps < 1)
        throw std::invalid_argument("channel: tap count must be >= 1");
    if (!(params.decay > 0.0))
        throw std::invalid_argument("channel: decay constant must be > 0");
    std::vector<double> p(static_cast<std::size_t>(params.n_taps));
    double total = 0.0;
    for (int i = 0; i < params.n_taps; ++i) {
        p[i] = std::exp(-static_cast<double>(i) * params.tap_spacing / params.decay);
        total += p[i];
    }
    for (auto& v : p) v /= total;
    return p;
}

ChannelRealization draw_channel(const ChannelParams& params, double sample_rate,
                                Rng& rng) {
    const auto powers = expected_tap_powers(params);
    const double spacing_samples = params.tap_spacing * sample_rate;
    ChannelRealization ch;
    ch.taps.reserve(powers.size());
    int prev_delay = -1;
    for (std::size_t i = 0; i < powers.size(); ++i) {
        int delay = static_cast<int>(std::llround(static_cast<double>(i) * spacing_samples));
        if (delay <= prev_delay) delay = prev_delay + 1;  // grid coarser than spacing
        prev_delay = delay;
        ch.taps.push_back({delay, std::sqrt(powers[i]) * rng.cgauss()});
    }
    return ch;
}

IQBuffer apply_channel(const IQBuffer& x, const ChannelRealization& ch) {
    ch.validate();
    if (x.samples.empty()) throw std::invalid_argument("apply_channel: empty input");
    IQBuffer out;
    out.sample_rate = x.sample_rate;
    out.samples.assign(x.samples.size(), cplx(0.0, 0.0));
    const std::size_t n = x.samples.size();
    for (const auto& tap : ch.taps) {
        const std::size_t d = static_cast<std::size_t>(tap.delay);
        if (d >= n) continue;
        for (std::size_t i = d; i < n; ++i)
            out.samples[i] += tap.gain * x.samples[i - d];
    }
    return out;
}

}  // namespace cyfar
