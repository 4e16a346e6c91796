// closed-form cyclic autocorrelation of the impulse-radio signal
#pragma once

#include <complex>
#include <optional>

#include "cyfar/channel.hpp"
#include "cyfar/iq.hpp"
#include "cyfar/uwb.hpp"

namespace cyfar {

/// Dirichlet phasor sum w(rho, H) = sum_{n=0}^{H-1} exp(-j 2 pi rho n),
/// evaluated by the sinc-ratio closed form with the removable singularity
/// handled at integer rho.
cplx dirichlet_w(double rho, int h);

/// BPM spectral factor (1 + (-1)^q) / 2: 1 for even q, 0 for odd q.
double bpm_factor(long q);

/// burst-hopping factor (1/N_hop) w(q / N_burst, N_hop)
cplx hop_factor(long q, const UwbPhyConfig& cfg);

/// Pulse-shape kernel phi_p(alpha, tau): frequency-domain overlap integral
/// of the (optionally channel-convolved) pulse spectrum, discretized on the
/// zero-padded DFT grid of the pulse. alpha in Hz, tau in seconds; the
/// pulse buffer supplies the sample grid. Throws when |alpha| exceeds the
/// Nyquist range of that grid. Normalized so phi_p(0,0) equals the discrete
/// pulse energy.
cplx pulse_caf_kernel(double alpha, double tau, const IQBuffer& pulse,
                      const ChannelRealization* channel = nullptr);

struct CafQuery {
    long q = 0;            // cycle index; the cyclic frequency is 2q/T_dsym
    double tau = 0.0;      // lag, seconds
    UwbPhyConfig cfg;
    double sample_rate = 2e9;  // grid for the pulse kernel and comparisons
    const ChannelRealization* channel = nullptr;
};

/// Evaluates the closed-form CAF of one frame model,
///   R(2 a_q, tau) = (a_1 / N_hop) w(2q/(N_burst N_cpb), N_hop N_cpb)
///                   phi_p(2 a_q, tau) exp(-j 4 pi a_q eps),
/// in the symmetric-lag convention, with a_q = q / T_dsym. Values are in
/// the discrete normalization of the sampled frame (directly comparable to
/// estimator outputs after the convention phase alignment).
cplx analytic_caf(const CafQuery& query);

/// analytic value mapped to the asymmetric-lag estimator convention
/// (multiplied by exp(+j pi alpha tau), alpha = 2q/T_dsym)
cplx analytic_caf_estimator_convention(const CafQuery& query);

/// Precomputes the pulse (and channel-convolved spectrum) once for sweeps
/// over many (q, tau) queries of a fixed configuration.
class UwbCafModel {
  public:
    UwbCafModel(const UwbPhyConfig& cfg, double sample_rate,
                const ChannelRealization* channel = nullptr);

    cplx value(long q, double tau) const;
    cplx estimator_convention(long q, double tau) const;
    /// CF in Hz for cycle index q (after doubling): 2q / T_dsym
    double cf_hz(long q) const { return 2.0 * static_cast<double>(q) / cfg_.t_dsym(); }
    const IQBuffer& effective_pulse() const { return ptilde_; }

  private:
    UwbPhyConfig cfg_;
    double fs_;
    IQBuffer ptilde_;  // pulse, convolved with the channel when present
};

}  // namespace cyfar
