#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace aoimfg {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11 constants).
// Pure function of (key, counter): any (seed, stream) pair addresses an
// independent, reproducible random sequence, which is what makes parallel
// replications bit-identical regardless of scheduling.
struct Philox4x32 {
    static constexpr uint32_t kMult0 = 0xD2511F53u;
    static constexpr uint32_t kMult1 = 0xCD9E8D57u;
    static constexpr uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr uint32_t kWeyl1 = 0xBB67AE85u;

    static std::array<uint32_t, 4> block(std::array<uint32_t, 4> ctr,
                                         std::array<uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            uint64_t p0 = static_cast<uint64_t>(kMult0) * ctr[0];
            uint64_t p1 = static_cast<uint64_t>(kMult1) * ctr[2];
            uint32_t hi0 = static_cast<uint32_t>(p0 >> 32);
            uint32_t lo0 = static_cast<uint32_t>(p0);
            uint32_t hi1 = static_cast<uint32_t>(p1 >> 32);
            uint32_t lo1 = static_cast<uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        return ctr;
    }
};

// Stream-addressed RNG: stream r of seed s yields the block sequence
// Philox(key = s, counter = (i_lo, i_hi, r_lo, r_hi)) for i = 0, 1, ...
// Draws consume two 32-bit words per 64-bit output, buffered per block.
class CounterRng {
  public:
    CounterRng(uint64_t seed, uint64_t stream)
        : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)},
          stream_lo_(static_cast<uint32_t>(stream)),
          stream_hi_(static_cast<uint32_t>(stream >> 32)) {}

    uint64_t next_u64() {
        if (have_ == 0) refill();
        --have_;
        uint64_t out = buf_[1 - have_];
        return out;
    }

    // Uniform on (0, 1]: 53 mantissa bits, never zero, so -log stays finite.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Exponential with the given rate via inversion. Hand-rolled because the
    // standard library's distributions are implementation-defined and would
    // break cross-platform reproducibility of seeds.
    double exponential(double rate) { return -std::log(uniform01()) / rate; }

    bool bernoulli(double p) { return uniform01() <= p; }

  private:
    void refill() {
        std::array<uint32_t, 4> ctr{static_cast<uint32_t>(block_index_),
                                    static_cast<uint32_t>(block_index_ >> 32),
                                    stream_lo_, stream_hi_};
        std::array<uint32_t, 4> out = Philox4x32::block(ctr, key_);
        buf_[0] = (static_cast<uint64_t>(out[1]) << 32) | out[0];
        buf_[1] = (static_cast<uint64_t>(out[3]) << 32) | out[2];
        ++block_index_;
        have_ = 2;
    }

    std::array<uint32_t, 2> key_;
    uint32_t stream_lo_;
    uint32_t stream_hi_;
    uint64_t block_index_ = 0;
    uint64_t buf_[2] = {0, 0};
    int have_ = 0;
};

}  // namespace aoimfg
