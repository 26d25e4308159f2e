#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>

namespace fineq::sampling {

/// Philox4x32-10 counter-based generator (Salmon et al.).
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) noexcept {
    constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
    constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = std::uint64_t{M0} * ctr[0];
        const std::uint64_t p1 = std::uint64_t{M1} * ctr[2];
        ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
               static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
        key[0] += W0;
        key[1] += W1;
    }
    return ctr;
}

/// Standard normals addressed by (seed, path, step): the stream for a given
/// address never depends on how many other paths or steps were drawn.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

    /// Fills `out` with the normals of (path, step).
    void fill(std::uint64_t path, std::uint32_t step, std::span<double> out) const noexcept {
        std::uint32_t block = 0;
        std::size_t i = 0;
        while (i < out.size()) {
            const auto r = philox4x32({step, block++, static_cast<std::uint32_t>(path),
                                       static_cast<std::uint32_t>(path >> 32)},
                                      key_);
            // Two 53-bit uniforms in (0, 1], then Box-Muller.
            const double u1 = to_unit(r[0], r[1]);
            const double u2 = to_unit(r[2], r[3]);
            const double rad = std::sqrt(-2.0 * std::log(u1));
            const double ang = 2.0 * std::numbers::pi * u2;
            out[i++] = rad * std::cos(ang);
            if (i < out.size()) out[i++] = rad * std::sin(ang);
        }
    }

private:
    static double to_unit(std::uint32_t hi, std::uint32_t lo) noexcept {
        const std::uint64_t bits = ((std::uint64_t{hi} << 32) | lo) >> 11;
        return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
    }

    std::array<std::uint32_t, 2> key_;
};

}  // namespace fineq::sampling
