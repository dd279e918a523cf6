#include "irsim/random_reflect.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "irsim/errors.hpp"

namespace irsim {

ReflectPattern random_pattern(int n_elements, SeedStream& stream) {
    if (n_elements < 0)
        throw std::invalid_argument("random_pattern: n_elements must be >= 0");
    ReflectPattern p;
    p.phases.resize(n_elements);
    for (int n = 0; n < n_elements; ++n) p.phases[n] = stream.next_phase();
    return p;
}

std::complex<double> effective_gain(const ChannelRealization& realization,
                                    const ReflectPattern& pattern, int user) {
    if (user < 0 || user >= realization.n_users)
        throw std::invalid_argument("effective_gain: user index out of range");
    if (static_cast<int>(pattern.phases.size()) != realization.n_elements)
        throw std::invalid_argument(
            "effective_gain: pattern has " + std::to_string(pattern.phases.size()) +
            " phases but the realization has " +
            std::to_string(realization.n_elements) + " elements");

    const auto row = realization.h_row(user);
    std::complex<double> sum = realization.g[user];
    for (int n = 0; n < realization.n_elements; ++n) {
        sum += row[n] * std::polar(1.0, pattern.phases[n]) * realization.f[n];
    }
    return sum;
}

SlotGains slot_gains(const ChannelRealization& realization,
                     std::span<const ReflectPattern> patterns, int user) {
    SlotGains gains;
    gains.x.reserve(patterns.size());
    for (const ReflectPattern& p : patterns)
        gains.x.push_back(effective_gain(realization, p, user));
    return gains;
}

double prelog_factor(int q_slots, int train_per_channel, int frame_len) {
    if (q_slots < 1) throw std::invalid_argument("prelog_factor: Q must be >= 1");
    const double prelog = 1.0 / q_slots -
                          static_cast<double>(train_per_channel) / frame_len;
    if (!(prelog > 0.0)) {
        throw InfeasiblePrelogError(
            "prelog 1/Q - alpha/L is nonpositive for Q=" + std::to_string(q_slots) +
            ", alpha=" + std::to_string(train_per_channel) +
            ", L=" + std::to_string(frame_len));
    }
    return prelog;
}

namespace {

template <bool KeepOne>
double rate_impl(const ChannelRealization& realization,
                 std::span<const ReflectPattern> patterns, int user,
                 const SystemParams& params) {
    const int q_slots = static_cast<int>(patterns.size());
    const double prelog =
        prelog_factor(q_slots, params.train_per_channel, params.frame_len);
    const double gamma = derived_stats(params).gamma;
    double bits = 0.0;
    for (const ReflectPattern& p : patterns) {
        const double snr = gamma * std::norm(effective_gain(realization, p, user));
        bits += KeepOne ? std::log2(1.0 + snr) : std::log2(snr);
    }
    return prelog * bits;
}

} // namespace

double interval_rate(const ChannelRealization& realization,
                     std::span<const ReflectPattern> patterns, int user,
                     const SystemParams& params) {
    return rate_impl<true>(realization, patterns, user, params);
}

double interval_rate_high_snr(const ChannelRealization& realization,
                              std::span<const ReflectPattern> patterns, int user,
                              const SystemParams& params) {
    return rate_impl<false>(realization, patterns, user, params);
}

} // namespace irsim
