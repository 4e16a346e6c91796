// spectral smoothing windows for covariance estimation
#pragma once

#include <vector>

namespace cyfar {

struct SmoothingWindow {
    enum class Kind { kaiser, rectangular };
    Kind kind = Kind::kaiser;
    int length = 65;     // must be odd
    double beta = 1.0;   // Kaiser shape

    /// weights indexed s = -(L-1)/2 .. (L-1)/2, normalized so that
    /// (1/L) sum W(s) = 1
    std::vector<double> weights() const;

    int half_span() const { return (length - 1) / 2; }

    bool operator==(const SmoothingWindow&) const = default;
};

}  // namespace cyfar
