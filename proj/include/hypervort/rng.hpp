#ifndef HYPERVORT_RNG_HPP
#define HYPERVORT_RNG_HPP

#include <array>
#include <cstdint>
#include <utility>

namespace hypervort {

// Stream purposes. Distinct purposes give statistically independent draws
// even for the same (seed, path) pair.
enum class StreamPurpose : std::uint32_t {
    Init = 1,
    Noise = 2,
    Scan = 3,
    Factorization = 4,
    Probe = 5,
};

/// Counter-based random stream (Philox4x32-10). A stream is addressed by
/// (master seed, stream id, purpose); individual draws are addressed by a
/// 128-bit counter, so the same draw can be reproduced from anywhere in the
/// program with no shared state. Copies are cheap and independent threads
/// may use the same stream object concurrently through the counter API.
class RngStream {
  public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id, StreamPurpose purpose);

    // Raw 128-bit block at the given counter.
    std::array<std::uint32_t, 4> block(std::uint64_t ctr_hi, std::uint64_t ctr_lo) const;

    // Two uniforms in (0,1), two standard normals (Box-Muller), at a counter.
    std::pair<double, double> uniform_pair(std::uint64_t ctr_hi, std::uint64_t ctr_lo) const;
    std::pair<double, double> normal_pair(std::uint64_t ctr_hi, std::uint64_t ctr_lo) const;

    // Normal pair addressed by (mode, slot, step): the addressing scheme used
    // for per-mode Wiener increments and initial data.
    std::pair<double, double> normal_pair_mode(std::uint32_t mode_code, std::uint32_t slot,
                                               std::uint64_t step) const;

  private:
    std::array<std::uint32_t, 2> key_;
};

/// Sequential adapter over an RngStream for code that wants a plain
/// draw-after-draw interface. Not shareable across threads.
class SequentialRng {
  public:
    explicit SequentialRng(RngStream stream) : stream_(stream) {}

    double normal();

  private:
    RngStream stream_;
    std::uint64_t counter_ = 0;
    double spare_ = 0;
    bool has_spare_ = false;
};

}  // namespace hypervort

#endif
