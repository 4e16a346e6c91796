#include "cyfar/analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cyfar/fft_util.hpp"

namespace cyfar {

cplx dirichlet_w(double rho, int h) {
    if (h < 1) throw std::invalid_argument("dirichlet_w: h must be >= 1");
    const double nearest = std::round(rho);
    if (std::abs(rho - nearest) < 1e-12) return {static_cast<double>(h), 0.0};
    const double num = std::sin(M_PI * rho * h);
    const double den = std::sin(M_PI * rho);
    return (num / den) * std::polar(1.0, -M_PI * rho * (h - 1));
}

double bpm_factor(long q) { return (q % 2 == 0) ? 1.0 : 0.0; }

cplx hop_factor(long q, const UwbPhyConfig& cfg) {
    return dirichlet_w(static_cast<double>(q) / cfg.n_burst, cfg.n_hop) /
           static_cast<double>(cfg.n_hop);
}

namespace {

// full (untruncated) convolution of the pulse with the channel taps
std::vector<cplx> convolve_taps(const std::vector<cplx>& p,
                                const ChannelRealization& ch) {
    ch.validate();
    const int max_delay = ch.taps.back().delay;
    std::vector<cplx> out(p.size() + static_cast<std::size_t>(max_delay), cplx(0.0, 0.0));
    for (const auto& tap : ch.taps)
        for (std::size_t i = 0; i < p.size(); ++i)
            out[static_cast<std::size_t>(tap.delay) + i] += tap.gain * p[i];
    return out;
}

cplx kernel_impl(double alpha, double tau, const std::vector<cplx>& ptilde,
                 double fs) {
    const double a = alpha / fs;
    if (std::abs(a) > 0.5)
        throw std::invalid_argument("pulse_caf_kernel: alpha beyond Nyquist of pulse grid");
    const double tau_samples = tau * fs;

    std::size_t nfft = 8 * ptilde.size();  // pad x8 controls quadrature error
    if (nfft % 2 != 0) ++nfft;

    std::vector<cplx> spec(nfft, cplx(0.0, 0.0));
    std::vector<cplx> spec_shift(nfft, cplx(0.0, 0.0));
    for (std::size_t n = 0; n < ptilde.size(); ++n) {
        spec[n] = ptilde[n];
        spec_shift[n] = ptilde[n] * std::polar(1.0, -2.0 * M_PI * a * static_cast<double>(n));
    }
    fft_inplace(spec, -1);        // P(nu_k)
    fft_inplace(spec_shift, -1);  // P(nu_k + a)

    cplx acc(0.0, 0.0);
    const std::size_t half = nfft / 2;
    for (std::size_t k = 0; k < nfft; ++k) {
        const double nu = (k < half ? static_cast<double>(k)
                                    : static_cast<double>(k) - static_cast<double>(nfft)) /
                          static_cast<double>(nfft);
        acc += spec_shift[k] * std::conj(spec[k]) *
               std::polar(1.0, 2.0 * M_PI * tau_samples * (nu + a / 2.0));
    }
    return acc / static_cast<double>(nfft);
}

}  // namespace

cplx pulse_caf_kernel(double alpha, double tau, const IQBuffer& pulse,
                      const ChannelRealization* channel) {
    if (pulse.samples.empty())
        throw std::invalid_argument("pulse_caf_kernel: empty pulse");
    std::vector<cplx> ptilde = pulse.samples;
    if (channel) ptilde = convolve_taps(ptilde, *channel);
    return kernel_impl(alpha, tau, ptilde, pulse.sample_rate);
}

UwbCafModel::UwbCafModel(const UwbPhyConfig& cfg, double sample_rate,
                         const ChannelRealization* channel)
    : cfg_(cfg), fs_(sample_rate) {
    cfg_.validate();
    ptilde_ = butterworth_pulse(cfg_.pulse, fs_);
    if (channel) {
        ptilde_.samples = convolve_taps(ptilde_.samples, *channel);
    }
}

cplx UwbCafModel::value(long q, double tau) const {
    const double sym_samples = cfg_.t_dsym() * fs_;
    const double a1 = 1.0 / sym_samples;  // fundamental CF, cycles/sample
    const double alpha_q_hz = static_cast<double>(q) / cfg_.t_dsym();

    const double rho = 2.0 * static_cast<double>(q) /
                       (static_cast<double>(cfg_.n_burst) * cfg_.n_cpb);
    const cplx w = dirichlet_w(rho, cfg_.n_hop * cfg_.n_cpb);
    const cplx phi = kernel_impl(2.0 * alpha_q_hz, tau, ptilde_.samples, fs_);
    const cplx eps_phase =
        std::polar(1.0, -4.0 * M_PI * alpha_q_hz * cfg_.timing_offset_eps);
    return (a1 / static_cast<double>(cfg_.n_hop)) * w * phi * eps_phase;
}

cplx UwbCafModel::estimator_convention(long q, double tau) const {
    const double alpha_hz = 2.0 * static_cast<double>(q) / cfg_.t_dsym();
    return value(q, tau) * std::polar(1.0, M_PI * (alpha_hz / fs_) * (tau * fs_));
}

cplx analytic_caf(const CafQuery& query) {
    UwbCafModel model(query.cfg, query.sample_rate, query.channel);
    return model.value(query.q, query.tau);
}

cplx analytic_caf_estimator_convention(const CafQuery& query) {
    UwbCafModel model(query.cfg, query.sample_rate, query.channel);
    return model.estimator_convention(query.q, query.tau);
}

}  // namespace cyfar
