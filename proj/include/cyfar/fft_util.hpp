// thin FFTW wrapper: forward/inverse transforms and circular fractional delay
#pragma once

#include <complex>
#include <vector>

namespace cyfar {

/// in-place DFT, sign = -1 forward, +1 inverse (unscaled)
void fft_inplace(std::vector<std::complex<double>>& buf, int sign);

/// Circularly delays x by `delay_samples` (possibly fractional) via a
/// frequency-domain phase ramp. Exact for the bandlimited periodic
/// interpretation of the buffer.
void circular_delay(std::vector<std::complex<double>>& x, double delay_samples);

}  // namespace cyfar
