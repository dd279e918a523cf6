#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace irsim {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
// The 128-bit counter is split into a 64-bit block index (words 0..1)
// and a 64-bit stream id (words 2..3); the key carries the master seed.
// Streams with distinct (key, stream id) are independent, which makes
// per-trial substreams reproducible regardless of scheduling.
class Philox4x32 {
public:
    Philox4x32(std::uint64_t key, std::uint64_t stream_id)
        : ctr_{0u, 0u, static_cast<std::uint32_t>(stream_id),
               static_cast<std::uint32_t>(stream_id >> 32)},
          key_{static_cast<std::uint32_t>(key),
               static_cast<std::uint32_t>(key >> 32)} {}

    std::array<std::uint32_t, 4> next_block() {
        std::uint32_t x0 = ctr_[0], x1 = ctr_[1], x2 = ctr_[2], x3 = ctr_[3];
        std::uint32_t k0 = key_[0], k1 = key_[1];
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * x0;
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * x2;
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            x0 = hi1 ^ x1 ^ k0;
            x1 = lo1;
            x2 = hi0 ^ x3 ^ k1;
            x3 = lo0;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        if (++ctr_[0] == 0u) ++ctr_[1];
        return {x0, x1, x2, x3};
    }

private:
    std::array<std::uint32_t, 4> ctr_;
    std::array<std::uint32_t, 2> key_;
};

// One substream of draws, identified by (master_seed, stream_index).
// All higher-level sampling (uniforms, phases, Gaussians) is defined in
// terms of the 64-bit word sequence of the underlying Philox stream, so
// a given stream always yields the same values on every platform.
class SeedStream {
public:
    SeedStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : eng_(master_seed, stream_index) {}

    std::uint64_t next_u64() {
        if (have_half_) {
            have_half_ = false;
            return (std::uint64_t{buf_[3]} << 32) | buf_[2];
        }
        buf_ = eng_.next_block();
        have_half_ = true;
        return (std::uint64_t{buf_[1]} << 32) | buf_[0];
    }

    // Uniform on [0, 1), 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe as a logarithm argument.
    double next_unit_open() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Uniform phase on [0, 2*pi).
    double next_phase() { return 6.283185307179586476925286766559 * next_unit(); }

    // Unit-modulus phasor with uniform phase (Marsaglia disk rejection;
    // the double angle of a uniform direction is again uniform).
    std::complex<double> next_unit_phasor() {
        for (;;) {
            const double u = 2.0 * next_unit() - 1.0;
            const double v = 2.0 * next_unit() - 1.0;
            const double s = u * u + v * v;
            if (s > 0.0 && s < 1.0) {
                return {(u * u - v * v) / s, 2.0 * u * v / s};
            }
        }
    }

    // Standard normal via the polar method; draws come in pairs.
    double next_gaussian() {
        if (have_gauss_) {
            have_gauss_ = false;
            return cached_gauss_;
        }
        double a, b;
        next_gaussian_pair(a, b);
        cached_gauss_ = b;
        have_gauss_ = true;
        return a;
    }

    void next_gaussian_pair(double& a, double& b) {
        for (;;) {
            const double u = 2.0 * next_unit() - 1.0;
            const double v = 2.0 * next_unit() - 1.0;
            const double s = u * u + v * v;
            if (s > 0.0 && s < 1.0) {
                const double m = std::sqrt(-2.0 * std::log(s) / s);
                a = u * m;
                b = v * m;
                return;
            }
        }
    }

    // Circularly symmetric complex Gaussian CN(0, variance): independent
    // real and imaginary parts, each with variance/2.
    std::complex<double> next_cgaussian(double variance) {
        double a, b;
        next_gaussian_pair(a, b);
        const double scale = std::sqrt(0.5 * variance);
        return {scale * a, scale * b};
    }

private:
    Philox4x32 eng_;
    std::array<std::uint32_t, 4> buf_{};
    bool have_half_ = false;
    bool have_gauss_ = false;
    double cached_gauss_ = 0.0;
};

} // namespace irsim
