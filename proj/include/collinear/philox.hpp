#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace collinear {

/** Philox4x32-10 counter-based generator (Salmon et al., SC'11).
 *
 * A pure function of (counter, key): the same inputs give the same 128-bit
 * block on every platform, which is what makes independent substreams
 * reproducible under any parallel schedule.
 */
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr Counter block(Counter ctr, Key key) noexcept {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const auto lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const auto lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

/** Standard normal deviates from one Philox substream.
 *
 * Key = 64-bit seed, counter = (block index, substream id). Each block gives
 * two 52-bit uniforms in (0, 1) and, through Box-Muller, two normals.
 */
class NormalStream {
public:
    NormalStream(std::uint64_t seed, std::uint64_t substream) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          substream_(substream) {}

    double next() noexcept {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const auto out = Philox4x32::block(
            {static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
             static_cast<std::uint32_t>(substream_), static_cast<std::uint32_t>(substream_ >> 32)},
            key_);
        ++block_;
        const double u1 = to_unit((std::uint64_t{out[1]} << 32) | out[0]);
        const double u2 = to_unit((std::uint64_t{out[3]} << 32) | out[2]);
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Uniform in the open interval (0, 1) from the top 52 bits; both ends are exact doubles.
    static constexpr double to_unit(std::uint64_t bits) noexcept {
        return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
    }

private:
    Philox4x32::Key key_;
    std::uint64_t substream_;
    std::uint64_t block_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace collinear
