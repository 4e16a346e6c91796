#include "cyfar/pulse.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace cyfar {

namespace {

struct Biquad {
    // direct form I, a0 normalized to 1
    double b0, b1, b2, a1, a2;
};

// Bilinear transform of the analog prototype pole pair / single pole,
// prewarped cutoff wc = tan(pi*fc/fs).
std::vector<Biquad> design_butterworth(int order, double fc, double fs) {
    const double wc = std::tan(M_PI * fc / fs);
    std::vector<Biquad> sections;
    const int pairs = order / 2;
    for (int k = 0; k < pairs; ++k) {
        const double theta = M_PI * (2.0 * k + 1.0) / (2.0 * order) + M_PI / 2.0;
        const double re = std::cos(theta);  // Re of unit prototype pole, < 0
        const double b1s = -2.0 * re * wc;
        const double b0s = wc * wc;
        const double a0 = 1.0 + b1s + b0s;
        sections.push_back({b0s / a0, 2.0 * b0s / a0, b0s / a0,
                            2.0 * (b0s - 1.0) / a0, (1.0 - b1s + b0s) / a0});
    }
    if (order % 2 == 1) {
        const double a0 = 1.0 + wc;
        sections.push_back({wc / a0, wc / a0, 0.0, (wc - 1.0) / a0, 0.0});
    }
    return sections;
}

std::vector<double> impulse_response(const std::vector<Biquad>& sections,
                                     std::size_t n) {
    std::vector<double> x(n, 0.0);
    x[0] = 1.0;
    for (const auto& s : sections) {
        double w1 = 0.0, w2 = 0.0;  // transposed direct form II state
        for (std::size_t i = 0; i < n; ++i) {
            const double in = x[i];
            const double out = s.b0 * in + w1;
            w1 = s.b1 * in - s.a1 * out + w2;
            w2 = s.b2 * in - s.a2 * out;
            x[i] = out;
        }
    }
    return x;
}

}  // namespace

IQBuffer butterworth_pulse(const PulseSpec& spec, double sample_rate) {
    if (spec.filter_order < 1)
        throw std::invalid_argument("butterworth_pulse: order must be >= 1");
    if (!(spec.bandwidth_3db > 0.0))
        throw std::invalid_argument("butterworth_pulse: bandwidth must be > 0");
    if (sample_rate < 2.0 * spec.bandwidth_3db)
        throw std::invalid_argument(
            "butterworth_pulse: sample_rate must be >= 2x bandwidth");
    if (sample_rate == 2.0 * spec.bandwidth_3db)
        throw std::invalid_argument(
            "butterworth_pulse: cutoff at Nyquist is degenerate");

    const double trunc_s = spec.truncation_length > 0.0
                               ? spec.truncation_length
                               : 6.0 / spec.bandwidth_3db;
    const auto sections = design_butterworth(spec.filter_order,
                                             spec.bandwidth_3db, sample_rate);

    std::size_t n_trunc = static_cast<std::size_t>(std::llround(trunc_s * sample_rate));
    if (n_trunc < 2) n_trunc = 2;
    const std::size_t n_long = std::max<std::size_t>(8 * n_trunc, 4096);
    const auto h = impulse_response(sections, n_long);

    double e_total = 0.0, e_trunc = 0.0;
    for (std::size_t i = 0; i < n_long; ++i) {
        e_total += h[i] * h[i];
        if (i < n_trunc) e_trunc = e_total;
    }
    if (e_trunc < 0.999 * e_total)
        throw std::invalid_argument(
            "butterworth_pulse: truncation_length captures < 99.9% of energy");

    IQBuffer out;
    out.sample_rate = sample_rate;
    out.samples.resize(n_trunc);
    const double scale = 1.0 / std::sqrt(e_trunc);
    for (std::size_t i = 0; i < n_trunc; ++i) out.samples[i] = h[i] * scale;
    return out;
}

}  // namespace cyfar
