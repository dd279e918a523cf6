#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "irsim/sysmodel.hpp"

namespace irsim {

struct OutageEstimate {
    double probability = 0.0;
    long long trials = 0;
    double ci_halfwidth = 0.0; // 95% normal-approximation half-width
};

struct MulticastOutage {
    std::vector<OutageEstimate> per_user;
    OutageEstimate worst; // max over users of the per-user outage frequency
};

struct McOptions {
    int workers = 0;              // 0: hardware concurrency
    long long block_size = 8192;  // trials per scheduling block
};

// Exact outage estimate per Eq.-(3) semantics: per trial one fresh channel
// realization and Q fresh uniform patterns, rate with the "+1" kept,
// strict rate < tau indicator. Deterministic in (master_seed, trials,
// params, Q) regardless of worker count. For K > 1 returns the worst-case
// (max-over-users) estimate. Throws before sampling if Q is infeasible.
OutageEstimate estimate_outage_random(const SystemParams& params, int q_slots,
                                      long long trials, std::uint64_t master_seed,
                                      const McOptions& options = {});

MulticastOutage estimate_outage_random_multiuser(const SystemParams& params,
                                                 int q_slots, long long trials,
                                                 std::uint64_t master_seed,
                                                 const McOptions& options = {});

// High-SNR surrogate estimator (drops the "+1" inside the logarithm);
// shares the draw sequence with estimate_outage_random so the two are
// comparable trial by trial.
OutageEstimate estimate_outage_random_high_snr(const SystemParams& params,
                                               int q_slots, long long trials,
                                               std::uint64_t master_seed,
                                               const McOptions& options = {});

// Worst-case outage at several transmit powers from shared per-trial
// draws. The random draws do not depend on the transmit power, so entry i
// is bit-identical to estimate_outage_random with tx_power_dbm =
// powers_dbm[i] and the same seed; sharing just avoids resampling the
// channels per grid point.
std::vector<OutageEstimate> estimate_outage_random_power_sweep(
    const SystemParams& params, int q_slots, std::span<const double> powers_dbm,
    long long trials, std::uint64_t master_seed, const McOptions& options = {});

struct RateHistogram {
    std::vector<double> edges;     // bins + 1, strictly increasing
    std::vector<long long> counts; // bins
    long long total = 0;
    double mean = 0.0;
    double variance = 0.0; // unbiased sample variance
};

// Empirical distribution of the typical user's achievable rate.
RateHistogram empirical_rate_pdf(const SystemParams& params, int q_slots,
                                 long long trials, int bins,
                                 std::uint64_t master_seed,
                                 const McOptions& options = {});

struct SlotCorrelation {
    double rho_real = 0.0; // real part of the complex sample correlation
    double rho_imag = 0.0; // diagnostic; ~0 by symmetry
    long long pairs = 0;
};

// Sample Pearson correlation between the effective gains of two slots of
// the same coherence interval, across intervals (Lemma-1 validation).
SlotCorrelation sample_slot_correlation(const SystemParams& params, long long pairs,
                                        std::uint64_t master_seed,
                                        const McOptions& options = {});

namespace detail {

OutageEstimate make_outage_estimate(long long outage_count, long long trials);

} // namespace detail

} // namespace irsim
