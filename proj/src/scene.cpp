#include "cyfar/scene.hpp"

#include <cmath>
#include <stdexcept>

namespace cyfar {

void SceneConfig::validate() const {
    noise.validate();
    if (!(duration > 0.0) || !(sample_rate > 0.0))
        throw std::invalid_argument("SceneConfig: duration and sample_rate must be > 0");
    if (duration * sample_rate < 1.0)
        throw std::invalid_argument("SceneConfig: scene shorter than one sample");
    if (uwb && !snr_db)
        throw std::invalid_argument("SceneConfig: UWB component requires snr_db");
    if (snr_db && !uwb)
        throw std::invalid_argument("SceneConfig: snr_db given without a UWB component");
    if (sir_db && !interferer)
        throw std::invalid_argument("SceneConfig: sir_db given without an interferer");
    if (interferer) {
        if (uwb && !sir_db)
            throw std::invalid_argument("SceneConfig: interferer with UWB requires sir_db");
        if (!uwb && !inr_db)
            throw std::invalid_argument("SceneConfig: H0 interferer requires inr_db");
    }
    if (uwb) uwb->phy.validate();
    if (interferer) interferer->cfg.validate();
}

namespace {

double db_to_ratio(double db) { return std::pow(10.0, db / 10.0); }

void scale_to_power(IQBuffer& x, double target_power) {
    const double measured = x.mean_power();
    if (!(measured > 0.0))
        throw std::runtime_error("mix_scene: zero-power component cannot be scaled");
    x *= std::sqrt(target_power / measured);
}

void trim(IQBuffer& x, std::size_t k) {
    if (x.samples.size() < k)
        throw std::runtime_error("mix_scene: component shorter than scene");
    x.samples.resize(k);
}

}  // namespace

Scene mix_scene(const SceneConfig& cfg, Rng& rng) {
    cfg.validate();
    const std::size_t k =
        static_cast<std::size_t>(std::llround(cfg.duration * cfg.sample_rate));

    Scene scene;
    scene.noise_variance = cfg.noise.variance;
    scene.h1 = cfg.uwb.has_value();

    IQBuffer acc = gen_noise(cfg.noise, k, cfg.sample_rate, rng);
    double uwb_power = 0.0;

    if (cfg.uwb) {
        UwbPhyConfig phy = cfg.uwb->phy;
        if (cfg.uwb->random_timing)
            phy.timing_offset_eps = rng.uniform(0.0, phy.t_dsym());
        const double sps = phy.t_dsym() * cfg.sample_rate;
        const std::size_t n_sym =
            static_cast<std::size_t>(std::ceil(static_cast<double>(k) / sps));
        IQBuffer x = gen_uwb_frame(phy, n_sym, cfg.sample_rate, rng);
        if (cfg.uwb->channel) {
            const auto ch = draw_channel(*cfg.uwb->channel, cfg.sample_rate, rng);
            x = apply_channel(x, ch);
        }
        trim(x, k);
        uwb_power = cfg.noise.variance * db_to_ratio(*cfg.snr_db);
        scale_to_power(x, uwb_power);
        for (std::size_t i = 0; i < k; ++i) acc.samples[i] += x.samples[i];
    }

    if (cfg.interferer) {
        OfdmConfig ocfg = cfg.interferer->cfg;
        if (cfg.interferer->random_timing)
            ocfg.timing_offset_zeta = rng.uniform(0.0, ocfg.t_sym());
        if (cfg.interferer->random_carrier)
            ocfg.carrier_offset = rng.uniform(-cfg.interferer->carrier_range,
                                              cfg.interferer->carrier_range);
        const std::size_t n_sym = static_cast<std::size_t>(
            std::ceil(cfg.duration / ocfg.t_sym())) + 1;
        IQBuffer s = gen_ofdm_frame(ocfg, n_sym, cfg.sample_rate, rng);
        if (cfg.interferer->channel) {
            const auto ch = draw_channel(*cfg.interferer->channel, cfg.sample_rate, rng);
            s = apply_channel(s, ch);
        }
        trim(s, k);
        const double target = cfg.uwb ? uwb_power / db_to_ratio(*cfg.sir_db)
                                      : cfg.noise.variance * db_to_ratio(*cfg.inr_db);
        scale_to_power(s, target);
        for (std::size_t i = 0; i < k; ++i) acc.samples[i] += s.samples[i];
    }

    scene.buffer = std::move(acc);
    return scene;
}

}  // namespace cyfar
