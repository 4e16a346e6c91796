#include <doctest.h>

#include <cmath>

#include "cyfar/uwb.hpp"

using namespace cyfar;

namespace {

UwbPhyConfig vi_config() {
    UwbPhyConfig cfg;
    cfg.n_cpb = 2;
    cfg.n_burst = 8;
    cfg.n_hop = 2;
    cfg.t_c = 2e-9;
    cfg.pulse = {8, 250e6, 0.0};
    return cfg;
}

}  // namespace

TEST_CASE("table relations: T_dsym = 32 ns for the reference parameters") {
    const auto cfg = vi_config();
    CHECK(cfg.t_burst() == doctest::Approx(4e-9));
    CHECK(cfg.t_dsym() == doctest::Approx(32e-9));
    CHECK(cfg.t_bpm() == doctest::Approx(16e-9));
}

TEST_CASE("config validation") {
    auto cfg = vi_config();
    cfg.n_hop = 3;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = vi_config();
    cfg.scrambler_seed = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("non-integer samples per chip is rejected") {
    auto cfg = vi_config();
    Rng rng(1);
    CHECK_THROWS_AS(gen_uwb_frame(cfg, 4, 0.75e9, rng), std::invalid_argument);
}

TEST_CASE("all-modulation-off frame is a deterministic pulse train") {
    auto cfg = vi_config();
    const double fs = 2e9;
    const std::size_t n_symbols = 4;
    UwbSymbolStreams s;
    s.a.assign(n_symbols, +1);
    s.b.assign(n_symbols, 0);
    s.chips.assign(n_symbols * cfg.n_cpb, +1);
    s.hops.assign(n_symbols, 0);
    const IQBuffer frame = render_uwb_frame(cfg, s, fs);

    const IQBuffer pulse = butterworth_pulse(cfg.pulse, fs);
    const int spc = static_cast<int>(std::lround(fs * cfg.t_c));
    const std::size_t sps = static_cast<std::size_t>(cfg.n_burst * cfg.n_cpb * spc);
    IQBuffer expect;
    expect.sample_rate = fs;
    expect.samples.assign(n_symbols * sps, cplx(0, 0));
    for (std::size_t k = 0; k < n_symbols; ++k)
        for (int n = 0; n < cfg.n_cpb; ++n)
            for (std::size_t i = 0; i < pulse.samples.size(); ++i)
                expect.samples[(k * sps + static_cast<std::size_t>(n * spc) + i) %
                               expect.samples.size()] += pulse.samples[i];
    REQUIRE(frame.samples.size() == expect.samples.size());
    for (std::size_t i = 0; i < frame.samples.size(); ++i)
        CHECK(frame.samples[i] == expect.samples[i]);
}

TEST_CASE("pulse positions follow the symbol index arithmetic exactly") {
    // exhaustive over (b, h) with alternating amplitude/chip signs,
    // compared bit-exactly against direct Eq.-6 style placement
    auto cfg = vi_config();
    const double fs = 2e9;
    const int spc = 4;
    const std::size_t sps = static_cast<std::size_t>(cfg.n_burst * cfg.n_cpb * spc);
    const IQBuffer pulse = butterworth_pulse(cfg.pulse, fs);
    const std::size_t n_symbols = 8;

    for (int b = 0; b <= 1; ++b) {
        for (int h = 0; h < cfg.n_hop; ++h) {
            UwbSymbolStreams s;
            s.a.resize(n_symbols);
            s.b.assign(n_symbols, b);
            s.chips.resize(n_symbols * cfg.n_cpb);
            s.hops.assign(n_symbols, h);
            for (std::size_t k = 0; k < n_symbols; ++k) s.a[k] = (k % 2) ? -1 : +1;
            for (std::size_t c = 0; c < s.chips.size(); ++c)
                s.chips[c] = (c % 3 == 0) ? -1 : +1;

            const IQBuffer frame = render_uwb_frame(cfg, s, fs);
            IQBuffer expect;
            expect.sample_rate = fs;
            expect.samples.assign(n_symbols * sps, cplx(0, 0));
            for (std::size_t k = 0; k < n_symbols; ++k)
                for (int n = 0; n < cfg.n_cpb; ++n) {
                    const std::size_t pos = k * sps +
                                            static_cast<std::size_t>(b) * (sps / 2) +
                                            static_cast<std::size_t>(h * cfg.n_cpb * spc) +
                                            static_cast<std::size_t>(n * spc);
                    const double w = s.a[k] * s.chips[k * cfg.n_cpb + n];
                    for (std::size_t i = 0; i < pulse.samples.size(); ++i)
                        expect.samples[(pos + i) % expect.samples.size()] +=
                            w * pulse.samples[i].real();
                }
            REQUIRE(frame.samples.size() == expect.samples.size());
            for (std::size_t i = 0; i < frame.samples.size(); ++i)
                REQUIRE(frame.samples[i] == expect.samples[i]);
        }
    }
}

TEST_CASE("frames are zero mean across realizations") {
    auto cfg = vi_config();
    const double fs = 2e9;
    const std::size_t n_symbols = 4;
    Rng rng(7);
    const std::size_t len = n_symbols * 64;
    std::vector<cplx> mean(len, cplx(0, 0));
    double power = 0.0;
    const int reps = 1000;
    for (int r = 0; r < reps; ++r) {
        const IQBuffer f = gen_uwb_frame(cfg, n_symbols, fs, rng);
        for (std::size_t i = 0; i < len; ++i) mean[i] += f.samples[i];
        power += f.mean_power();
    }
    power /= reps;
    double mean_power = 0.0;
    for (auto& m : mean) mean_power += std::norm(m / static_cast<double>(reps));
    mean_power /= static_cast<double>(len);
    CHECK(mean_power <= 0.01 * power);
}

TEST_CASE("timing offset is a circular shift: integer case is exact rotation") {
    auto cfg = vi_config();
    const double fs = 2e9;
    Rng rng1(42), rng2(42);
    const IQBuffer base = gen_uwb_frame(cfg, 4, fs, rng1);
    cfg.timing_offset_eps = 5.0 / fs;  // 5 samples
    const IQBuffer shifted = gen_uwb_frame(cfg, 4, fs, rng2);
    const std::size_t n = base.samples.size();
    for (std::size_t i = 0; i < n; ++i) {
        const cplx want = base.samples[(i + n - 5) % n];
        CHECK(std::abs(shifted.samples[i] - want) <= 1e-9);
    }
}
