#include <doctest.h>

#include <cmath>

#include "cyfar/analytic.hpp"
#include "cyfar/caf_estimator.hpp"
#include "cyfar/noise.hpp"
#include "cyfar/uwb.hpp"

using namespace cyfar;

namespace {

IQBuffer constant_buffer(std::size_t k, cplx value) {
    IQBuffer x;
    x.sample_rate = 1e9;
    x.samples.assign(k, value);
    return x;
}

IQBuffer tone(std::size_t k, double f0) {
    IQBuffer x;
    x.sample_rate = 1e9;
    x.samples.resize(k);
    for (std::size_t n = 0; n < k; ++n)
        x.samples[n] = std::polar(1.0, 2.0 * M_PI * f0 * static_cast<double>(n));
    return x;
}

UwbPhyConfig vi_config() {
    UwbPhyConfig cfg;
    cfg.n_cpb = 2;
    cfg.n_burst = 8;
    cfg.n_hop = 2;
    cfg.t_c = 2e-9;
    cfg.pulse = {8, 250e6, 0.0};
    return cfg;
}

}  // namespace

TEST_CASE("caf_estimate basics") {
    const IQBuffer ones = constant_buffer(100, {1.0, 0.0});
    CHECK(std::abs(caf_estimate(ones, 0.0, 0, false) - cplx(1, 0)) <= 1e-15);

    // complex tone, nonconjugate: summand is n-independent
    const double f0 = 0.031;
    const IQBuffer t = tone(1000, f0);
    for (int lag : {1, 5, 17}) {
        const cplx got = caf_estimate(t, 0.0, lag, false);
        const cplx want = std::polar((1000.0 - lag) / 1000.0, -2.0 * M_PI * f0 * lag);
        CHECK(std::abs(got - want) <= 1e-12);
    }

    // conjugate mode at cf = 2 f0 on the DFT grid collapses to 1
    const double f1 = 32.0 / 1000.0;
    const IQBuffer t2 = tone(1000, f1);
    CHECK(std::abs(caf_estimate(t2, 2.0 * f1, 0, true) - cplx(1, 0)) <= 1e-12);

    CHECK_THROWS_AS(caf_estimate(ones, 0.0, 100, false), std::invalid_argument);
}

TEST_CASE("caf_estimate at cf 0 lag 0 is the mean power exactly") {
    Rng rng(5);
    IQBuffer x;
    x.sample_rate = 1e9;
    x.samples.resize(4096);
    for (auto& v : x.samples) v = rng.cgauss();
    const cplx r = caf_estimate(x, 0.0, 0, false);
    CHECK(r.real() == doctest::Approx(x.mean_power()).epsilon(1e-12));
    CHECK(std::abs(r.imag()) <= 1e-12);
}

TEST_CASE("nonconjugate and conjugate estimates coincide for real signals") {
    auto cfg = vi_config();
    Rng rng(6);
    const IQBuffer x = gen_uwb_frame(cfg, 16, 2e9, rng);
    for (double cf : {0.015625, 0.046875}) {
        for (int lag : {2, 4}) {
            const cplx a = caf_estimate(x, cf, lag, false);
            const cplx b = caf_estimate(x, cf, lag, true);
            CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
        }
    }
}

TEST_CASE("scaling behavior of the estimator") {
    Rng rng(7);
    IQBuffer x;
    x.sample_rate = 1e9;
    x.samples.resize(2000);
    for (auto& v : x.samples) v = rng.cgauss();
    IQBuffer xs = x;
    const cplx a(1.3, -0.7);
    for (auto& v : xs.samples) v *= a;
    const double cf = 0.0137;
    const cplx base_n = caf_estimate(x, cf, 3, false);
    const cplx base_c = caf_estimate(x, cf, 3, true);
    CHECK(std::abs(caf_estimate(xs, cf, 3, false) - std::norm(a) * base_n) <=
          1e-12 * std::abs(base_n) * std::norm(a));
    CHECK(std::abs(caf_estimate(xs, cf, 3, true) - a * a * base_c) <=
          1e-12 * std::abs(base_c) * std::norm(a));
}

TEST_CASE("cyclic periodogram is K times the estimate") {
    const IQBuffer ones = constant_buffer(64, {1.0, 0.0});
    CHECK(std::abs(cyclic_periodogram(ones, 0, 0.0, false) - cplx(64, 0)) <= 1e-12);

    Rng rng(8);
    IQBuffer x;
    x.sample_rate = 1e9;
    x.samples.resize(512);
    for (auto& v : x.samples) v = rng.cgauss();
    for (int i = 0; i < 100; ++i) {
        const double cf = rng.uniform(-0.5, 0.5);
        const int lag = static_cast<int>(rng.uniform_int(8));
        const cplx f = cyclic_periodogram(x, lag, cf, false);
        const cplx r = caf_estimate(x, cf, lag, false);
        CHECK(std::abs(f - 512.0 * r) <= 1e-9 * std::max(1.0, std::abs(f)));
    }
}

TEST_CASE("white-noise periodogram second moment is flat") {
    Rng rng(9);
    const double expect = 4.0;  // sigma^4 with sigma^2 = 2
    NoiseModel m;
    m.variance = 2.0;
    double acc1 = 0.0, acc2 = 0.0;
    const int trials = 200;
    const std::size_t k = 10000;
    for (int t = 0; t < trials; ++t) {
        const IQBuffer x = gen_noise(m, k, 1e9, rng);
        acc1 += std::norm(cyclic_periodogram(x, 0, 0.123, false)) / static_cast<double>(k);
        acc2 += std::norm(cyclic_periodogram(x, 0, 0.321, false)) / static_cast<double>(k);
    }
    acc1 /= trials;
    acc2 /= trials;
    CHECK(std::abs(acc1 / expect - 1.0) <= 0.10);
    CHECK(std::abs(acc2 / expect - 1.0) <= 0.10);
}

TEST_CASE("degenerate window reduces the smoothed SCD to a periodogram product") {
    Rng rng(10);
    IQBuffer x;
    x.sample_rate = 1e9;
    x.samples.resize(1024);
    for (auto& v : x.samples) v = rng.cgauss();
    SmoothingWindow w{SmoothingWindow::Kind::rectangular, 1, 0.0};
    const double cf_a = 0.05, cf_b = -0.08;
    const cplx got = smoothed_scd(x, cf_a, 2, cf_b, 3, w, ScdMode::Q, false);
    const cplx want = cyclic_periodogram(x, 2, cf_a, false) *
                      cyclic_periodogram(x, 3, cf_b, false) / 1024.0;
    CHECK(std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want)));
}

TEST_CASE("Q-mode symmetry under argument swap") {
    Rng rng(11);
    IQBuffer x;
    x.sample_rate = 1e9;
    x.samples.resize(2048);
    for (auto& v : x.samples) v = rng.cgauss();
    SmoothingWindow w;  // kaiser 65
    const cplx ab = smoothed_scd(x, 0.0625, 2, -0.0625, 4, w, ScdMode::Q, false);
    const cplx ba = smoothed_scd(x, -0.0625, 4, 0.0625, 2, w, ScdMode::Q, false);
    CHECK(std::abs(ab - ba) <= 1e-10 * std::max(1.0, std::abs(ab)));
}

TEST_CASE("assembly layout and symmetry") {
    Rng rng(12);
    IQBuffer x;
    x.sample_rate = 1e9;
    x.samples.resize(4096);
    for (auto& v : x.samples) v = rng.cgauss();

    // J = 1: r has length 2, sigma is 2x2
    CfTlSet single;
    single.entries = {{0.0625, {2}}};
    SmoothingWindow w;
    const auto a1 = assemble_statistics(x, single, w);
    CHECK(a1.r.size() == 2);
    CHECK(a1.sigma.rows() == 2);

    // Omega_1: two CFs sharing two lags -> J = 4, r length 8, sigma 8x8
    CfTlSet omega1 = CfTlSet::cross({62.5e6, -62.5e6}, {2, 4}, 1e9, false);
    const auto a2 = assemble_statistics(x, omega1, w);
    CHECK(a2.r.size() == 8);
    CHECK(a2.sigma.rows() == 8);
    CHECK((a2.sigma - a2.sigma.transpose()).cwiseAbs().maxCoeff() <= 1e-10);

    // r layout: per CF, Re of both lags then Im of both lags
    const cplx r00 = caf_estimate(x, omega1.entries[0].cf, 2, false);
    const cplx r01 = caf_estimate(x, omega1.entries[0].cf, 4, false);
    CHECK(a2.r(0) == doctest::Approx(r00.real()));
    CHECK(a2.r(1) == doctest::Approx(r01.real()));
    CHECK(a2.r(2) == doctest::Approx(r00.imag()));
    CHECK(a2.r(3) == doctest::Approx(r01.imag()));

    // blocks match the standalone smoothed-SCD entries, including mirrored ones
    const auto ps = omega1.pairs();
    for (int pa : {0, 1, 2, 3}) {
        for (int pb : {0, 1, 2, 3}) {
            const auto& A = ps[static_cast<std::size_t>(pa)];
            const auto& B = ps[static_cast<std::size_t>(pb)];
            const cplx q = smoothed_scd(x, A.cf, A.lag, B.cf, B.lag, w, ScdMode::Q, false);
            const cplx p = smoothed_scd(x, A.cf, A.lag, B.cf, B.lag, w, ScdMode::P, false);
            const int na = 2, ra = a2.cf_offset[static_cast<std::size_t>(A.cf_index)] + A.lag_index;
            const int rb = a2.cf_offset[static_cast<std::size_t>(B.cf_index)] + B.lag_index;
            CHECK(a2.sigma(ra, rb) ==
                  doctest::Approx(0.5 * (q.real() + p.real())).epsilon(1e-9));
            CHECK(a2.sigma(ra, rb + na) ==
                  doctest::Approx(0.5 * (q.imag() - p.imag())).epsilon(1e-9));
            CHECK(a2.sigma(ra + na, rb) ==
                  doctest::Approx(0.5 * (q.imag() + p.imag())).epsilon(1e-9));
            CHECK(a2.sigma(ra + na, rb + na) ==
                  doctest::Approx(0.5 * (p.real() - q.real())).epsilon(1e-9));
        }
    }
}

TEST_CASE("estimator converges to the analytic value on clean frames") {
    // moderate size here; the full 50-seed K=2e5 check runs in acceptance
    auto cfg = vi_config();
    const double fs = 2e9;
    UwbCafModel model(cfg, fs);
    Rng rng(13);
    const std::size_t n_symbols = 1024;  // K = 65536
    const IQBuffer x = gen_uwb_frame(cfg, n_symbols, fs, rng);

    const double alpha = model.cf_hz(1);  // 2 alpha_1 = 62.5 MHz
    const cplx est = caf_estimate(x, alpha / fs, 4, false);
    const cplx want = model.estimator_convention(1, 4 / fs);
    CHECK(std::abs(est - want) <= 0.15 * std::abs(want));
}

TEST_CASE("estimated CAF at an analytic zero is pure estimation noise") {
    auto cfg = vi_config();
    const double fs = 2e9;
    Rng rng(14);
    // q = 2 (CF 4 alpha_1) is a zero of the Dirichlet factor
    const double cf = 4.0 * 31.25e6 / fs;
    cplx mean(0, 0);
    double mean_sq = 0.0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
        const IQBuffer x = gen_uwb_frame(cfg, 64, fs, rng);
        const cplx v = caf_estimate(x, cf, 4, false);
        mean += v;
        mean_sq += std::norm(v);
    }
    mean /= static_cast<double>(trials);
    mean_sq /= trials;
    const double std_err = std::sqrt(mean_sq / trials);
    CHECK(std::abs(mean) <= 3.0 * std_err);
}
