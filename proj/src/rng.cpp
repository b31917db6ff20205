#include "hypervort/rng.hpp"

#include <cmath>

namespace hypervort {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = std::uint64_t(a) * std::uint64_t(b);
    hi = std::uint32_t(p >> 32);
    lo = std::uint32_t(p);
}

inline std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                                  std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Map a 64-bit word to (0,1]; never returns 0 so log() is safe.
inline double to_unit(std::uint64_t x) {
    return (double((x >> 11) + 1)) * 0x1.0p-53;
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id, StreamPurpose purpose) {
    std::uint64_t s = master_seed;
    std::uint64_t h = splitmix64(s);
    s ^= stream_id * 0xD1B54A32D192ED03ull;
    h ^= splitmix64(s);
    s ^= std::uint64_t(purpose) * 0x8CB92BA72F3D8DD7ull;
    h ^= splitmix64(s);
    key_ = {std::uint32_t(h), std::uint32_t(h >> 32)};
}

std::array<std::uint32_t, 4> RngStream::block(std::uint64_t ctr_hi, std::uint64_t ctr_lo) const {
    return philox4x32_10({std::uint32_t(ctr_lo), std::uint32_t(ctr_lo >> 32),
                          std::uint32_t(ctr_hi), std::uint32_t(ctr_hi >> 32)},
                         key_);
}

std::pair<double, double> RngStream::uniform_pair(std::uint64_t ctr_hi,
                                                  std::uint64_t ctr_lo) const {
    const auto b = block(ctr_hi, ctr_lo);
    const std::uint64_t w0 = (std::uint64_t(b[0]) << 32) | b[1];
    const std::uint64_t w1 = (std::uint64_t(b[2]) << 32) | b[3];
    return {to_unit(w0), to_unit(w1)};
}

std::pair<double, double> RngStream::normal_pair(std::uint64_t ctr_hi,
                                                 std::uint64_t ctr_lo) const {
    const auto [u1, u2] = uniform_pair(ctr_hi, ctr_lo);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * M_PI * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

std::pair<double, double> RngStream::normal_pair_mode(std::uint32_t mode_code, std::uint32_t slot,
                                                      std::uint64_t step) const {
    const std::uint64_t hi = (std::uint64_t(mode_code) << 32) | slot;
    return normal_pair(hi, step);
}

double SequentialRng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const auto [z0, z1] = stream_.normal_pair(0xFFFFFFFF00000000ull, counter_++);
    spare_ = z1;
    has_spare_ = true;
    return z0;
}

}  // namespace hypervort
