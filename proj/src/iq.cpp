#include "cyfar/iq.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "CYIQ1 I/O assumes a little-endian host");

namespace cyfar {

double IQBuffer::mean_power() const {
    double acc = 0.0;
    for (const auto& v : samples) acc += std::norm(v);
    return samples.empty() ? 0.0 : acc / static_cast<double>(samples.size());
}

void IQBuffer::validate() const {
    if (samples.empty()) throw std::invalid_argument("IQBuffer: empty buffer");
    if (!(sample_rate > 0.0))
        throw std::invalid_argument("IQBuffer: sample_rate must be > 0");
    for (const auto& v : samples)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("IQBuffer: non-finite sample");
}

IQBuffer& operator*=(IQBuffer& x, double gain) {
    for (auto& v : x.samples) v *= gain;
    return x;
}

namespace {

constexpr unsigned char kMagic[8] = {'C', 'Y', 'I', 'Q', 0x01, 0x00, 0x00, 0x00};

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};

}  // namespace

void write_cyiq(const std::string& path, const IQBuffer& x) {
    x.validate();
    std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "wb"));
    if (!f) throw std::runtime_error("cyiq: cannot open for writing: " + path);
    if (std::fwrite(kMagic, 1, 8, f.get()) != 8)
        throw std::runtime_error("cyiq: short write: " + path);
    const double rate = x.sample_rate;
    const std::uint64_t count = x.samples.size();
    std::fwrite(&rate, sizeof rate, 1, f.get());
    std::fwrite(&count, sizeof count, 1, f.get());
    std::vector<float> interleaved(2 * x.samples.size());
    for (std::size_t i = 0; i < x.samples.size(); ++i) {
        interleaved[2 * i] = static_cast<float>(x.samples[i].real());
        interleaved[2 * i + 1] = static_cast<float>(x.samples[i].imag());
    }
    if (std::fwrite(interleaved.data(), sizeof(float), interleaved.size(), f.get()) !=
        interleaved.size())
        throw std::runtime_error("cyiq: short write: " + path);
}

IQBuffer read_cyiq(const std::string& path) {
    std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "rb"));
    if (!f) throw std::runtime_error("cyiq: cannot open: " + path);
    unsigned char magic[8];
    if (std::fread(magic, 1, 8, f.get()) != 8 || std::memcmp(magic, kMagic, 8) != 0)
        throw std::runtime_error("cyiq: bad magic: " + path);
    double rate = 0.0;
    std::uint64_t count = 0;
    if (std::fread(&rate, sizeof rate, 1, f.get()) != 1 ||
        std::fread(&count, sizeof count, 1, f.get()) != 1)
        throw std::runtime_error("cyiq: truncated header: " + path);
    IQBuffer out;
    out.sample_rate = rate;
    std::vector<float> interleaved(2 * count);
    if (count > 0 &&
        std::fread(interleaved.data(), sizeof(float), interleaved.size(), f.get()) !=
            interleaved.size())
        throw std::runtime_error("cyiq: truncated payload: " + path);
    out.samples.resize(count);
    for (std::uint64_t i = 0; i < count; ++i)
        out.samples[i] = {interleaved[2 * i], interleaved[2 * i + 1]};
    out.validate();
    return out;
}

}  // namespace cyfar
