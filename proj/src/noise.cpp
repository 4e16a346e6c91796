#include "cyfar/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace cyfar {

void NoiseModel::validate() const {
    if (!(variance > 0.0))
        throw std::invalid_argument("NoiseModel: variance must be > 0");
    if (kind == Kind::colored && color_taps.empty())
        throw std::invalid_argument("NoiseModel: colored noise needs taps");
    if (uncertainty_delta_db < 0.0)
        throw std::invalid_argument("NoiseModel: uncertainty must be >= 0 dB");
}

IQBuffer gen_noise(const NoiseModel& model, std::size_t k, double sample_rate,
                   Rng& rng) {
    model.validate();
    if (k == 0) throw std::invalid_argument("gen_noise: k must be >= 1");
    IQBuffer out;
    out.sample_rate = sample_rate;
    const double amp = std::sqrt(model.variance);

    if (model.kind == NoiseModel::Kind::white_complex) {
        out.samples.resize(k);
        for (auto& v : out.samples) v = amp * rng.cgauss();
        return out;
    }

    const auto& h = model.color_taps;
    double gain2 = 0.0;
    for (double c : h) gain2 += c * c;
    const double scale = amp / std::sqrt(gain2);

    // prime with tap history so the output slice is stationary
    std::vector<cplx> white(k + h.size() - 1);
    for (auto& v : white) v = rng.cgauss();
    out.samples.assign(k, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        cplx acc(0.0, 0.0);
        for (std::size_t t = 0; t < h.size(); ++t) acc += h[t] * white[i + t];
        out.samples[i] = scale * acc;
    }
    return out;
}

}  // namespace cyfar
