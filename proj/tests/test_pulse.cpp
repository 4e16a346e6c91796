#include <doctest.h>

#include <cmath>
#include <complex>

#include "cyfar/pulse.hpp"

using namespace cyfar;

namespace {

// DTFT of the pulse at frequency f
cplx dtft(const IQBuffer& p, double f) {
    cplx acc(0.0, 0.0);
    for (std::size_t n = 0; n < p.samples.size(); ++n)
        acc += p.samples[n] *
               std::polar(1.0, -2.0 * M_PI * f / p.sample_rate * static_cast<double>(n));
    return acc;
}

}  // namespace

TEST_CASE("butterworth pulse has unit energy") {
    const IQBuffer p = butterworth_pulse({8, 500e6, 0.0}, 2e9);
    double e = 0.0;
    for (const auto& v : p.samples) e += std::norm(v);
    CHECK(std::abs(e - 1.0) <= 1e-9);
}

TEST_CASE("magnitude response hits -3 dB at the design bandwidth") {
    for (double bw : {500e6, 250e6}) {
        const IQBuffer p = butterworth_pulse({8, bw, 0.0}, 2e9);
        const double dc = std::abs(dtft(p, 0.0));
        const double edge = std::abs(dtft(p, bw));
        CHECK(std::abs(edge / dc - 1.0 / std::sqrt(2.0)) <= 0.02 / std::sqrt(2.0));
    }
}

TEST_CASE("order-8 500 MHz pulse at 2 GHz is at least 48 dB down at 1 GHz") {
    // analog prototype: |H| = 1/sqrt(1 + (f/fc)^16) = -48.16 dB at 2 fc
    const IQBuffer p = butterworth_pulse({8, 500e6, 0.0}, 2e9);
    const double dc = std::abs(dtft(p, 0.0));
    const double nyq = std::abs(dtft(p, 1e9));
    CHECK(20.0 * std::log10(nyq / dc) <= -48.0);
}

TEST_CASE("too-short truncation is a construction error") {
    CHECK_THROWS_AS(butterworth_pulse({8, 500e6, 1e-9}, 2e9), std::invalid_argument);
}

TEST_CASE("sample rate below 2x bandwidth is rejected") {
    CHECK_THROWS_AS(butterworth_pulse({8, 500e6, 0.0}, 900e6), std::invalid_argument);
}
