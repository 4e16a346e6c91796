#include "cyfar/fft_util.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace cyfar {

namespace {

// FFTW planning is not thread-safe; execution on distinct buffers is.
std::mutex g_plan_mutex;

fftw_plan get_plan(std::size_t n, int sign) {
    static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto it = cache.find({n, sign});
    if (it != cache.end()) return it->second;
    std::vector<std::complex<double>> scratch(n);
    auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), ptr, ptr,
                                      sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw std::runtime_error("fftw: plan creation failed");
    cache.emplace(std::make_pair(n, sign), plan);
    return plan;
}

}  // namespace

void fft_inplace(std::vector<std::complex<double>>& buf, int sign) {
    if (buf.empty()) return;
    fftw_plan plan = get_plan(buf.size(), sign);
    auto* ptr = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_execute_dft(plan, ptr, ptr);
}

void circular_delay(std::vector<std::complex<double>>& x, double delay_samples) {
    const std::size_t n = x.size();
    if (n == 0 || delay_samples == 0.0) return;
    fft_inplace(x, -1);
    const double w = -2.0 * M_PI * delay_samples / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        // signed bin index keeps the phase ramp Hermitian for real inputs
        const double kk = (k <= n / 2) ? static_cast<double>(k)
                                       : static_cast<double>(k) - static_cast<double>(n);
        x[k] *= std::polar(1.0, w * kk);
    }
    fft_inplace(x, +1);
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : x) v *= scale;
}

}  // namespace cyfar
