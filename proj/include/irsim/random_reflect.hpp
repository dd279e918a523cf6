#pragma once

#include <complex>
#include <span>
#include <vector>

#include "irsim/rng.hpp"
#include "irsim/sysmodel.hpp"

namespace irsim {

// One reflecting slot's phase shifts theta_n in [0, 2*pi).
struct ReflectPattern {
    std::vector<double> phases;
};

ReflectPattern random_pattern(int n_elements, SeedStream& stream);

// Effective per-slot gains X_q = g + h^T Theta_q f of one user.
struct SlotGains {
    std::vector<std::complex<double>> x;
};

// g_k + sum_n h_{k,n} e^{j theta_n} f_n.
// Throws std::invalid_argument on a dimension mismatch.
std::complex<double> effective_gain(const ChannelRealization& realization,
                                    const ReflectPattern& pattern, int user);

SlotGains slot_gains(const ChannelRealization& realization,
                     std::span<const ReflectPattern> patterns, int user);

// 1/Q - alpha/L. Throws InfeasiblePrelogError when nonpositive.
double prelog_factor(int q_slots, int train_per_channel, int frame_len);

// Achievable rate of one coherence interval:
//   (1/Q - alpha/L) * sum_q log2(1 + gamma |X_q|^2)   [bps/Hz]
double interval_rate(const ChannelRealization& realization,
                     std::span<const ReflectPattern> patterns, int user,
                     const SystemParams& params);

// High-SNR surrogate that drops the "+1" inside the logarithm.
double interval_rate_high_snr(const ChannelRealization& realization,
                              std::span<const ReflectPattern> patterns, int user,
                              const SystemParams& params);

// Outage uses a strict inequality; a rate exactly at the target is not
// an outage.
inline bool outage_indicator(double rate, double rate_target) {
    return rate < rate_target;
}

namespace detail {

// Shared dot product: sum_n cascaded_n * phasor_n. Both the public
// pattern-based API and the Monte Carlo kernels reduce to this.
inline std::complex<double>
reflected_sum(std::span<const std::complex<double>> cascaded,
              std::span<const std::complex<double>> phasors) {
    double re = 0.0, im = 0.0;
    const std::size_t n = cascaded.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double a = cascaded[i].real(), b = cascaded[i].imag();
        const double c = phasors[i].real(), d = phasors[i].imag();
        re += a * c - b * d;
        im += a * d + b * c;
    }
    return {re, im};
}

} // namespace detail

} // namespace irsim
