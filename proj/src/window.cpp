#include "cyfar/window.hpp"

#include <cmath>
#include <stdexcept>

namespace cyfar {

std::vector<double> SmoothingWindow::weights() const {
    if (length < 1 || length % 2 == 0)
        throw std::invalid_argument("SmoothingWindow: length must be odd and >= 1");
    std::vector<double> w(static_cast<std::size_t>(length), 1.0);
    if (kind == Kind::kaiser && length > 1) {
        const double denom = std::cyl_bessel_i(0.0, beta);
        const double half = (length - 1) / 2.0;
        for (int k = 0; k < length; ++k) {
            const double r = (static_cast<double>(k) - half) / half;
            w[static_cast<std::size_t>(k)] =
                std::cyl_bessel_i(0.0, beta * std::sqrt(1.0 - r * r)) / denom;
        }
    }
    double mean = 0.0;
    for (double v : w) mean += v;
    mean /= static_cast<double>(length);
    for (auto& v : w) v /= mean;
    return w;
}

}  // namespace cyfar
