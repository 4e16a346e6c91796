#include "cyfar/ofdm.hpp"

#include <cmath>
#include <stdexcept>

#include "cyfar/fft_util.hpp"

namespace cyfar {

void OfdmConfig::validate() const {
    if (n_c < 2) throw std::invalid_argument("OfdmConfig: n_c must be >= 2");
    if (n_used < 2 || n_used >= n_c)
        throw std::invalid_argument("OfdmConfig: require 2 <= n_used < n_c");
    if (n_used % 2 != 0)
        throw std::invalid_argument("OfdmConfig: n_used must be even");
    if (!(delta_f > 0.0))
        throw std::invalid_argument("OfdmConfig: delta_f must be > 0");
    if (!(cp_ratio_rho > 0.0))
        throw std::invalid_argument("OfdmConfig: cp ratio must be > 0");
}

namespace {

bool near_integer(double v, double& out) {
    out = std::round(v);
    return std::abs(v - out) <= 1e-9 * std::max(1.0, std::abs(v));
}

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

IQBuffer gen_ofdm_frame(const OfdmConfig& cfg, std::size_t n_symbols,
                        double sample_rate, Rng& rng) {
    cfg.validate();
    if (n_symbols == 0)
        throw std::invalid_argument("ofdm: n_symbols must be >= 1");
    if (!(sample_rate > cfg.n_c * cfg.delta_f))
        throw std::invalid_argument("ofdm: sample_rate must exceed n_c * delta_f");

    const double ts_fs = cfg.t_sym() * sample_rate;
    const double td_fs = cfg.t_d() * sample_rate;
    double ts_n = 0.0, td_n = 0.0;
    const bool on_grid = near_integer(ts_fs, ts_n) && near_integer(td_fs, td_n);

    const std::size_t frame_len =
        static_cast<std::size_t>(std::llround(n_symbols * cfg.t_sym() * sample_rate));
    IQBuffer out;
    out.sample_rate = sample_rate;
    out.samples.assign(frame_len, cplx(0.0, 0.0));

    const double zeta = cfg.timing_offset_zeta;
    const long l_min = static_cast<long>(std::floor(-zeta / cfg.t_sym()));
    const long l_max =
        static_cast<long>(std::floor((static_cast<double>(frame_len - 1) / sample_rate -
                                      zeta) / cfg.t_sym()));

    std::vector<cplx> data(static_cast<std::size_t>(cfg.n_used));
    std::vector<cplx> body;
    for (long l = l_min; l <= l_max; ++l) {
        for (auto& d : data)
            d = cplx(rng.sign() * kInvSqrt2, rng.sign() * kInvSqrt2);

        const double start = (l * cfg.t_sym() + zeta) * sample_rate;
        const long j0 = static_cast<long>(std::ceil(start - 1e-9));
        const long j1 = on_grid ? j0 + static_cast<long>(ts_n)
                                : static_cast<long>(std::ceil(start + ts_fs - 1e-9));

        if (on_grid) {
            // body[v] = sum_n d_n exp(j 2 pi n (v + theta) / Td_fs); the whole
            // symbol reads it modulo Td_fs, which realizes the cyclic prefix
            // by exact copy.
            const std::size_t nd = static_cast<std::size_t>(td_n);
            const double theta = static_cast<double>(j0) - start;
            body.assign(nd, cplx(0.0, 0.0));
            int di = 0;
            for (int n = -cfg.n_used / 2; n <= cfg.n_used / 2; ++n) {
                if (n == 0) continue;
                const double ph = 2.0 * M_PI * n * theta / td_n;
                const std::size_t bin =
                    static_cast<std::size_t>((n % static_cast<long>(nd) + static_cast<long>(nd)) %
                                             static_cast<long>(nd));
                body[bin] += data[di++] * std::polar(1.0, ph);
            }
            fft_inplace(body, +1);  // unnormalized, matches the plain sum
            for (long j = std::max(j0, 0L);
                 j < std::min<long>(j1, static_cast<long>(frame_len)); ++j) {
                const std::size_t v = static_cast<std::size_t>(j - j0) % nd;
                out.samples[static_cast<std::size_t>(j)] += body[v];
            }
        } else {
            for (long j = std::max(j0, 0L);
                 j < std::min<long>(j1, static_cast<long>(frame_len)); ++j) {
                const double u = static_cast<double>(j) / sample_rate - l * cfg.t_sym() - zeta;
                cplx acc(0.0, 0.0);
                int di = 0;
                for (int n = -cfg.n_used / 2; n <= cfg.n_used / 2; ++n) {
                    if (n == 0) continue;
                    acc += data[di++] * std::polar(1.0, 2.0 * M_PI * n * cfg.delta_f * u);
                }
                out.samples[static_cast<std::size_t>(j)] += acc;
            }
        }
    }

    if (cfg.carrier_offset != 0.0) {
        const double w = 2.0 * M_PI * cfg.carrier_offset / sample_rate;
        for (std::size_t j = 0; j < frame_len; ++j)
            out.samples[j] *= std::polar(1.0, w * static_cast<double>(j));
    }
    return out;
}

}  // namespace cyfar
