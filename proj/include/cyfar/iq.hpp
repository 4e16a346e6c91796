// complex baseband sample buffers and the CYIQ1 file format
#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace cyfar {

using cplx = std::complex<double>;

/// Uniformly sampled complex baseband sequence.
struct IQBuffer {
    double sample_rate = 0.0;  // Hz
    std::vector<cplx> samples;

    std::size_t size() const { return samples.size(); }

    /// mean of |x[n]|^2
    double mean_power() const;

    /// throws std::invalid_argument on empty buffer, non-positive rate,
    /// or non-finite samples
    void validate() const;
};

IQBuffer& operator*=(IQBuffer& x, double gain);

/// Writes the CYIQ1 container: magic "CYIQ\x01\0\0\0", f64 LE sample rate,
/// u64 LE sample count, then interleaved f32 LE I/Q pairs.
void write_cyiq(const std::string& path, const IQBuffer& x);

/// Reads a CYIQ1 file; rejects bad magic and truncated payloads.
IQBuffer read_cyiq(const std::string& path);

}  // namespace cyfar
