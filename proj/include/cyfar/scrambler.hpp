// PRBS scrambler and burst hopping codes for the UWB PHY
#pragma once

#include <cstdint>
#include <vector>

namespace cyfar {

/// 15-stage Fibonacci LFSR implementing c_n = c_{n-14} XOR c_{n-15}
/// (maximal length, period 2^15 - 1). The seed holds the register
/// contents; an all-zero state is rejected.
class Lfsr15 {
  public:
    static constexpr int kPeriod = 32767;

    explicit Lfsr15(std::uint16_t seed);

    /// next register output bit in {0,1}
    int next_bit();

    /// next chip in {+1,-1}; bit 0 maps to +1, bit 1 to -1
    int next_chip() { return next_bit() ? -1 : +1; }

  private:
    std::uint32_t state_;
};

/// `count` bipolar scrambling chips from the given register seed
std::vector<int> lfsr_scramble(std::uint16_t seed, std::size_t count);

/// raw register bits, used for hopping-code extraction
std::vector<std::uint8_t> lfsr_bits(std::uint16_t seed, std::size_t count);

/// Burst hop index for symbol k: sum_{i=0..m-1} 2^i * bit[i + k*n_cpb],
/// m = log2(n_hop). Operates on register bits, not bipolar chips.
int hop_sequence(const std::vector<std::uint8_t>& bits, std::size_t k,
                 int n_cpb, int n_hop);

}  // namespace cyfar
