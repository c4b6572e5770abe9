// Counter-based random streams (Philox4x32-10).
//
// Every Monte Carlo trial gets its own substream keyed by (master seed,
// stream id), so a run is reproducible bit-for-bit no matter how trials are
// scheduled across threads.  Within a substream, draws are generated from a
// 64-bit block counter; nothing is shared between substreams.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace wedge {

namespace philox {

// One 4x32 block of the Philox-4x32-10 bijection (Salmon et al., SC'11).
inline std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                          std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t M0 = 0xD2511F53u;
    constexpr std::uint32_t M1 = 0xCD9E8D57u;
    constexpr std::uint32_t W0 = 0x9E3779B9u;
    constexpr std::uint32_t W1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += W0;
            key[1] += W1;
        }
        const std::uint64_t p0 = static_cast<std::uint64_t>(M0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(M1) * ctr[2];
        const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

} // namespace philox

// A single independent random substream.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed),
               static_cast<std::uint32_t>(seed >> 32)},
          stream_lo_(static_cast<std::uint32_t>(stream)),
          stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

    std::uint32_t next_u32() {
        if (word_ == 4) {
            buf_ = philox::block({static_cast<std::uint32_t>(block_),
                                  static_cast<std::uint32_t>(block_ >> 32),
                                  stream_lo_, stream_hi_},
                                 key_);
            ++block_;
            word_ = 0;
        }
        return buf_[word_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    // Uniform on (0, 1]; never returns 0, so log() is always safe.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
    }

    // Uniform on [a, b).
    double uniform(double a, double b) {
        return a + (b - a) * (static_cast<double>(next_u64() >> 11) * 0x1p-53);
    }

    // Standard normal via Box-Muller; one transform yields two values.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::array<std::uint32_t, 2> key_;
    std::uint32_t stream_lo_;
    std::uint32_t stream_hi_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int word_ = 4;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Stream ids for per-trial substreams.  Retries of a failed trial move to a
// fresh substream instead of reusing the exhausted one.
inline std::uint64_t trial_stream(std::uint64_t trial, unsigned attempt = 0) {
    return trial | (static_cast<std::uint64_t>(attempt) << 48);
}

} // namespace wedge
