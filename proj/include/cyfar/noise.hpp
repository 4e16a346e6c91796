// observation noise models
#pragma once

#include <vector>

#include "cyfar/iq.hpp"
#include "cyfar/rng.hpp"

namespace cyfar {

struct NoiseModel {
    enum class Kind { white_complex, colored };
    Kind kind = Kind::white_complex;
    double variance = 1.0;  // total noise power
    std::vector<double> color_taps{0.3, 1.0, 0.3};
    double uncertainty_delta_db = 0.0;  // energy-detector noise uncertainty

    void validate() const;
};

/// k samples of the configured noise. Colored noise is white complex
/// Gaussian pushed through the FIR color taps and rescaled by the filter's
/// design gain so the process variance equals `variance`.
IQBuffer gen_noise(const NoiseModel& model, std::size_t k, double sample_rate,
                   Rng& rng);

}  // namespace cyfar
