#include <doctest.h>

#include <cmath>

#include "cyfar/analytic.hpp"
#include "cyfar/rng.hpp"

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

cplx dirichlet_direct(double rho, int h) {
    cplx acc(0, 0);
    for (int n = 0; n < h; ++n) acc += std::polar(1.0, -2.0 * M_PI * rho * n);
    return acc;
}

}  // namespace

TEST_CASE("dirichlet_w closed form") {
    CHECK(dirichlet_w(0.0, 7) == cplx(7.0, 0.0));
    CHECK(std::abs(dirichlet_w(0.5, 2)) <= 1e-12);
    CHECK(std::abs(dirichlet_w(0.25, 2) - cplx(1.0, -1.0)) <= 1e-12);
}

TEST_CASE("dirichlet_w equals direct summation on random inputs") {
    Rng rng(77);
    for (int i = 0; i < 10000; ++i) {
        const double rho = rng.uniform(-3.0, 3.0);
        const int h = 1 + static_cast<int>(rng.uniform_int(64));
        const cplx a = dirichlet_w(rho, h);
        const cplx b = dirichlet_direct(rho, h);
        CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(b)));
    }
}

TEST_CASE("bpm factor selects even cycle indices") {
    CHECK(bpm_factor(0) == 1.0);
    CHECK(bpm_factor(3) == 0.0);
    CHECK(bpm_factor(-2) == 1.0);
}

TEST_CASE("hop factor values for the reference configuration") {
    const auto cfg = vi_config();
    CHECK(std::abs(hop_factor(0, cfg) - cplx(1.0, 0.0)) <= 1e-12);
    CHECK(std::abs(hop_factor(4, cfg)) <= 1e-12);  // (1/2) w(1/2, 2) = 0
    CHECK(std::abs(std::abs(hop_factor(8, cfg)) - 1.0) <= 1e-12);  // integer rho
}

TEST_CASE("pulse kernel at the origin is the pulse energy") {
    const IQBuffer p = butterworth_pulse({8, 250e6, 0.0}, 2e9);
    const cplx phi = pulse_caf_kernel(0.0, 0.0, p);
    CHECK(std::abs(phi.imag()) <= 1e-9);
    CHECK(phi.real() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("pulse kernel at alpha 0 is the pulse autocorrelation, Hermitian in tau") {
    const IQBuffer p = butterworth_pulse({8, 250e6, 0.0}, 2e9);
    for (int lag : {1, 3, 9}) {
        const double tau = lag / 2e9;
        const cplx fwd = pulse_caf_kernel(0.0, tau, p);
        const cplx bwd = pulse_caf_kernel(0.0, -tau, p);
        CHECK(std::abs(fwd - std::conj(bwd)) <= 1e-9);
        // direct autocorrelation oracle
        cplx want(0, 0);
        for (std::size_t n = 0; n + lag < p.samples.size(); ++n)
            want += std::conj(p.samples[n]) * p.samples[n + lag];
        CHECK(std::abs(fwd - want) <= 1e-6 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("pulse kernel vanishes beyond the pulse band") {
    const IQBuffer p = butterworth_pulse({8, 250e6, 0.0}, 2e9);
    const double base = std::abs(pulse_caf_kernel(0.0, 0.0, p));
    const double far = std::abs(pulse_caf_kernel(600e6, 0.0, p));
    CHECK(far <= 1e-3 * base);
}

TEST_CASE("pulse kernel rejects cyclic frequencies beyond the grid Nyquist") {
    const IQBuffer p = butterworth_pulse({8, 250e6, 0.0}, 2e9);
    CHECK_THROWS_AS(pulse_caf_kernel(1.5e9, 0.0, p), std::invalid_argument);
}

TEST_CASE("analytic CAF zero pattern follows the Dirichlet factor") {
    const auto cfg = vi_config();
    UwbCafModel model(cfg, 2e9);
    // w(2q/16, 8): zeros at even q not divisible by 8
    for (long q : {2L, 4L, 6L, 10L, 12L, 14L})
        CHECK(std::abs(model.value(q, 2e-9)) <= 1e-15);
    // local maxima of |w| at q = 8k; odd q survive
    for (long q : {1L, 3L, 5L, 7L, 8L})
        CHECK(std::abs(model.value(q, 2e-9)) > 1e-9);
    // between consecutive maxima (q=0 and q=8) exactly N_cpb*N_hop - 1 zeros
    int zeros = 0;
    for (long q = 1; q < 8; ++q) {
        const cplx w = dirichlet_w(2.0 * q / 16.0, 4);
        if (std::abs(w) <= 1e-12) ++zeros;
    }
    CHECK(zeros == cfg.n_cpb * cfg.n_hop - 1);
}

TEST_CASE("conjugate symmetry across the CF sign for the real clean signal") {
    const auto cfg = vi_config();
    UwbCafModel model(cfg, 2e9);
    for (long q : {1L, 3L, 5L, 7L, 8L}) {
        const cplx plus = model.value(q, 2e-9);
        const cplx minus = model.value(-q, 2e-9);
        CHECK(std::abs(plus - std::conj(minus)) <= 1e-12 * std::abs(plus));
    }
}

TEST_CASE("reference-parameter peak list with decreasing amplitude trend") {
    const auto cfg = vi_config();
    UwbCafModel model(cfg, 2e9);
    // CF values 2 q alpha_1 for q = 1,3,5,7 plus the 16 alpha_1 local max
    const double a16 = std::abs(model.value(8, 2e-9));
    std::vector<double> peaks;
    for (long q : {1L, 3L, 5L, 7L}) peaks.push_back(std::abs(model.value(q, 2e-9)));
    peaks.push_back(a16);
    for (std::size_t i = 1; i < peaks.size(); ++i) CHECK(peaks[i] <= peaks[i - 1]);
    // the q=8 local maximum sits at 500 MHz: nothing survives beyond it
    CHECK(model.cf_hz(8) == doctest::Approx(500e6));
    for (long q : {9L, 11L, 12L}) CHECK(std::abs(model.value(q, 2e-9)) <= 0.02 * a16);
}

TEST_CASE("local maximum across q at fixed tau sits at q = N_burst N_cpb / 2") {
    const auto cfg = vi_config();
    UwbCafModel model(cfg, 2e9);
    const double at_max = std::abs(model.value(8, 0.0));
    for (long q : {5L, 6L, 7L, 9L, 10L, 11L})
        CHECK(std::abs(model.value(q, 0.0)) <= at_max);
}

TEST_CASE("timing offset enters as the doubled-CF phase ramp") {
    auto cfg = vi_config();
    cfg.timing_offset_eps = 3.5e-9;
    UwbCafModel shifted(cfg, 2e9);
    cfg.timing_offset_eps = 0.0;
    UwbCafModel base(cfg, 2e9);
    for (long q : {1L, 3L, 8L}) {
        const double alpha_q = static_cast<double>(q) / cfg.t_dsym();
        const cplx want = base.value(q, 2e-9) *
                          std::polar(1.0, -4.0 * M_PI * alpha_q * 3.5e-9);
        CHECK(std::abs(shifted.value(q, 2e-9) - want) <= 1e-12);
    }
}
