// cyclic-prefix OFDM interferer synthesis (WiMAX-style parameters)
#pragma once

#include "cyfar/iq.hpp"
#include "cyfar/rng.hpp"

namespace cyfar {

struct OfdmConfig {
    int n_c = 256;                  // subcarrier count
    int n_used = 200;               // data subcarriers (even, < n_c)
    double delta_f = 78.125e3;      // Hz
    double cp_ratio_rho = 0.25;
    double timing_offset_zeta = 0.0;  // seconds
    double carrier_offset = 0.0;      // Hz

    double t_d() const { return 1.0 / delta_f; }
    double t_cp() const { return cp_ratio_rho * t_d(); }
    double t_sym() const { return (1.0 + cp_ratio_rho) * t_d(); }

    void validate() const;
};

/// QPSK-modulated cyclic-prefix frame of n_symbols symbols. Subcarrier 0 is
/// excluded; data symbols are drawn equiprobably from {±1/√2 ± j/√2}. When
/// the symbol and data-block lengths land on the sample grid, the cyclic
/// prefix is produced by exact copy, so samples T_d apart inside a symbol
/// compare equal bitwise on the clean (zero carrier offset) frame.
IQBuffer gen_ofdm_frame(const OfdmConfig& cfg, std::size_t n_symbols,
                        double sample_rate, Rng& rng);

}  // namespace cyfar
