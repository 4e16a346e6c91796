#include "cyfar/uwb.hpp"

#include <cmath>
#include <stdexcept>

#include "cyfar/fft_util.hpp"
#include "cyfar/scrambler.hpp"

namespace cyfar {

void UwbPhyConfig::validate() const {
    if (n_cpb < 1 || n_burst < 1)
        throw std::invalid_argument("UwbPhyConfig: counts must be >= 1");
    if (n_hop != 2 && n_hop != 8 && n_hop != 32)
        throw std::invalid_argument("UwbPhyConfig: n_hop must be in {2,8,32}");
    if (!(t_c > 0.0)) throw std::invalid_argument("UwbPhyConfig: t_c must be > 0");
    if (scrambler_seed == 0)
        throw std::invalid_argument("UwbPhyConfig: scrambler seed must be nonzero");
    if (n_hop > n_burst)
        throw std::invalid_argument("UwbPhyConfig: n_hop exceeds n_burst slots");
}

namespace {

int samples_per_chip(const UwbPhyConfig& cfg, double fs) {
    const double spc = fs * cfg.t_c;
    const double rounded = std::round(spc);
    if (rounded < 1.0 || std::abs(spc - rounded) > 1e-9 * spc)
        throw std::invalid_argument(
            "uwb: sample_rate * t_c must be an integer (chip-aligned grid)");
    return static_cast<int>(rounded);
}

}  // namespace

UwbSymbolStreams draw_uwb_streams(const UwbPhyConfig& cfg, std::size_t n_symbols,
                                  Rng& rng) {
    cfg.validate();
    if (n_symbols == 0)
        throw std::invalid_argument("uwb: n_symbols must be >= 1");
    const int m = [&] {
        int v = 0;
        for (int h = cfg.n_hop; h > 1; h >>= 1) ++v;
        return v;
    }();
    const std::size_t n_bits =
        n_symbols * static_cast<std::size_t>(cfg.n_cpb) +
        static_cast<std::size_t>(std::max(0, m - cfg.n_cpb));
    const auto bits = lfsr_bits(cfg.scrambler_seed, n_bits);

    UwbSymbolStreams s;
    s.a.resize(n_symbols);
    s.b.resize(n_symbols);
    s.chips.resize(n_symbols * static_cast<std::size_t>(cfg.n_cpb));
    s.hops.resize(n_symbols);
    for (std::size_t k = 0; k < n_symbols; ++k) {
        s.a[k] = rng.sign();
        s.b[k] = rng.bit();
        for (int n = 0; n < cfg.n_cpb; ++n) {
            const std::size_t idx = k * cfg.n_cpb + n;
            s.chips[idx] = bits[idx] ? -1 : +1;
        }
        s.hops[k] = hop_sequence(bits, k, cfg.n_cpb, cfg.n_hop);
    }
    return s;
}

IQBuffer render_uwb_frame(const UwbPhyConfig& cfg, const UwbSymbolStreams& streams,
                          double sample_rate) {
    cfg.validate();
    const std::size_t n_symbols = streams.a.size();
    if (n_symbols == 0 || streams.b.size() != n_symbols ||
        streams.hops.size() != n_symbols ||
        streams.chips.size() != n_symbols * static_cast<std::size_t>(cfg.n_cpb))
        throw std::invalid_argument("uwb: inconsistent stream lengths");

    const int spc = samples_per_chip(cfg, sample_rate);
    const std::size_t sps =
        static_cast<std::size_t>(cfg.n_burst) * cfg.n_cpb * spc;  // per symbol
    const std::size_t frame_len = n_symbols * sps;

    const IQBuffer pulse = butterworth_pulse(cfg.pulse, sample_rate);
    const std::size_t half_symbol = sps / 2;
    const std::size_t burst_step = static_cast<std::size_t>(cfg.n_cpb) * spc;

    IQBuffer out;
    out.sample_rate = sample_rate;
    out.samples.assign(frame_len, cplx(0.0, 0.0));

    for (std::size_t k = 0; k < n_symbols; ++k) {
        const std::size_t sym_base = k * sps +
                                     (streams.b[k] ? half_symbol : 0) +
                                     static_cast<std::size_t>(streams.hops[k]) * burst_step;
        const double amp = static_cast<double>(streams.a[k]);
        for (int n = 0; n < cfg.n_cpb; ++n) {
            const double w = amp * streams.chips[k * cfg.n_cpb + n];
            const std::size_t chip_base = sym_base + static_cast<std::size_t>(n) * spc;
            for (std::size_t i = 0; i < pulse.samples.size(); ++i) {
                const std::size_t pos = (chip_base + i) % frame_len;
                out.samples[pos] += w * pulse.samples[i].real();
            }
        }
    }

    if (cfg.timing_offset_eps != 0.0)
        circular_delay(out.samples, cfg.timing_offset_eps * sample_rate);
    return out;
}

IQBuffer gen_uwb_frame(const UwbPhyConfig& cfg, std::size_t n_symbols,
                       double sample_rate, Rng& rng) {
    const auto streams = draw_uwb_streams(cfg, n_symbols, rng);
    return render_uwb_frame(cfg, streams, sample_rate);
}

}  // namespace cyfar
