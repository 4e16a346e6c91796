#include "cyfar/scrambler.hpp"

#include <bit>
#include <stdexcept>

namespace cyfar {

Lfsr15::Lfsr15(std::uint16_t seed) : state_(seed & 0x7fffu) {
    if (state_ == 0)
        throw std::invalid_argument("Lfsr15: all-zero seed is absorbing");
}

int Lfsr15::next_bit() {
    // state bit i holds c_{n-1-i}
    const int out = static_cast<int>((state_ >> 13) ^ (state_ >> 14)) & 1;
    state_ = ((state_ << 1) | static_cast<std::uint32_t>(out)) & 0x7fffu;
    return out;
}

std::vector<int> lfsr_scramble(std::uint16_t seed, std::size_t count) {
    if (count == 0) throw std::invalid_argument("lfsr_scramble: count must be >= 1");
    Lfsr15 reg(seed);
    std::vector<int> chips(count);
    for (auto& c : chips) c = reg.next_chip();
    return chips;
}

std::vector<std::uint8_t> lfsr_bits(std::uint16_t seed, std::size_t count) {
    if (count == 0) throw std::invalid_argument("lfsr_bits: count must be >= 1");
    Lfsr15 reg(seed);
    std::vector<std::uint8_t> bits(count);
    for (auto& b : bits) b = static_cast<std::uint8_t>(reg.next_bit());
    return bits;
}

int hop_sequence(const std::vector<std::uint8_t>& bits, std::size_t k,
                 int n_cpb, int n_hop) {
    if (n_hop < 1 || !std::has_single_bit(static_cast<unsigned>(n_hop)))
        throw std::invalid_argument("hop_sequence: n_hop must be a power of two");
    const int m = std::countr_zero(static_cast<unsigned>(n_hop));
    const std::size_t base = k * static_cast<std::size_t>(n_cpb);
    if (base + static_cast<std::size_t>(m) > bits.size())
        throw std::invalid_argument("hop_sequence: bit stream too short");
    int h = 0;
    for (int i = 0; i < m; ++i) h |= static_cast<int>(bits[base + i]) << i;
    return h;
}

}  // namespace cyfar
