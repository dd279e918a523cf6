#include "irsim/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "irsim/parallel.hpp"
#include "irsim/random_reflect.hpp"

namespace irsim {

namespace detail {

OutageEstimate make_outage_estimate(long long outage_count, long long trials) {
    OutageEstimate est;
    est.trials = trials;
    est.probability = static_cast<double>(outage_count) / static_cast<double>(trials);
    est.ci_halfwidth =
        1.96 * std::sqrt(est.probability * (1.0 - est.probability) /
                         static_cast<double>(trials));
    if (outage_count == 0) {
        // Zero observed outages still leave residual uncertainty.
        est.ci_halfwidth = std::max(est.ci_halfwidth, 1.96 / static_cast<double>(trials));
    }
    return est;
}

} // namespace detail

namespace {

// Per-worker scratch for the trial kernel.
struct TrialScratch {
    ChannelRealization realization;
    std::vector<std::complex<double>> cascaded; // K x N: h_{k,n} f_n
    std::vector<std::complex<double>> phasors;  // N, one slot's e^{j theta}
    std::vector<double> gain2;                  // K x Q: |X_{k,q}|^2
};

// Draws one trial (fresh channels, Q fresh patterns) and fills the
// per-user per-slot effective gain powers. The phasors of a slot are
// shared by all users, matching the common reflection pattern.
void sample_trial_gains(const SystemParams& params, int q_slots, SeedStream& stream,
                        TrialScratch& ws) {
    const int K = params.n_users;
    const int N = params.n_elements;
    sample_realization_into(params, stream, ws.realization);
    ws.cascaded.resize(static_cast<std::size_t>(K) * N);
    ws.phasors.resize(N);
    ws.gain2.resize(static_cast<std::size_t>(K) * q_slots);

    for (int k = 0; k < K; ++k) {
        const auto row = ws.realization.h_row(k);
        std::complex<double>* casc = ws.cascaded.data() + static_cast<std::size_t>(k) * N;
        for (int n = 0; n < N; ++n) casc[n] = row[n] * ws.realization.f[n];
    }
    for (int q = 0; q < q_slots; ++q) {
        for (int n = 0; n < N; ++n) ws.phasors[n] = stream.next_unit_phasor();
        for (int k = 0; k < K; ++k) {
            const std::complex<double> x =
                ws.realization.g[k] +
                detail::reflected_sum(
                    {ws.cascaded.data() + static_cast<std::size_t>(k) * N,
                     static_cast<std::size_t>(N)},
                    ws.phasors);
            ws.gain2[static_cast<std::size_t>(k) * q_slots + q] = std::norm(x);
        }
    }
}

struct CountBlock {
    std::vector<long long> counts; // K x P outage counts
};

// Core estimator: outage counts per (user, transmit power) under either
// the exact rate or the high-SNR surrogate.
std::vector<long long> outage_counts(const SystemParams& params, int q_slots,
                                     std::span<const double> powers_dbm,
                                     long long trials, std::uint64_t master_seed,
                                     const McOptions& options, bool high_snr_rate) {
    params.validate();
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const double prelog =
        prelog_factor(q_slots, params.train_per_channel, params.frame_len);
    const int K = params.n_users;
    const int P = static_cast<int>(powers_dbm.size());
    const double noise_w = dbm_to_watt(params.noise_power_dbm);
    std::vector<double> gammas(P);
    for (int p = 0; p < P; ++p) gammas[p] = dbm_to_watt(powers_dbm[p]) / noise_w;
    const double tau = params.rate_target;

    auto blocks = detail::run_blocks<CountBlock>(
        trials, options.block_size, options.workers,
        [&](CountBlock& acc, long long lo, long long hi) {
            acc.counts.assign(static_cast<std::size_t>(K) * P, 0);
            TrialScratch ws;
            for (long long trial = lo; trial < hi; ++trial) {
                SeedStream stream(master_seed, static_cast<std::uint64_t>(trial));
                sample_trial_gains(params, q_slots, stream, ws);
                for (int k = 0; k < K; ++k) {
                    const double* g2 = ws.gain2.data() +
                                       static_cast<std::size_t>(k) * q_slots;
                    for (int p = 0; p < P; ++p) {
                        double bits = 0.0;
                        for (int q = 0; q < q_slots; ++q) {
                            const double snr = gammas[p] * g2[q];
                            bits += high_snr_rate ? std::log2(snr)
                                                  : std::log2(1.0 + snr);
                        }
                        if (outage_indicator(prelog * bits, tau))
                            ++acc.counts[static_cast<std::size_t>(k) * P + p];
                    }
                }
            }
        });

    std::vector<long long> total(static_cast<std::size_t>(K) * P, 0);
    for (const CountBlock& b : blocks)
        for (std::size_t i = 0; i < total.size(); ++i) total[i] += b.counts[i];
    return total;
}

MulticastOutage estimate_from_counts(std::span<const long long> counts, int K,
                                     long long trials) {
    MulticastOutage out;
    long long worst = 0;
    out.per_user.reserve(K);
    for (int k = 0; k < K; ++k) {
        out.per_user.push_back(detail::make_outage_estimate(counts[k], trials));
        worst = std::max(worst, counts[k]);
    }
    out.worst = detail::make_outage_estimate(worst, trials);
    return out;
}

} // namespace

MulticastOutage estimate_outage_random_multiuser(const SystemParams& params,
                                                 int q_slots, long long trials,
                                                 std::uint64_t master_seed,
                                                 const McOptions& options) {
    const double power = params.tx_power_dbm;
    const auto counts = outage_counts(params, q_slots, {&power, 1}, trials,
                                      master_seed, options, false);
    // counts are laid out K x 1
    return estimate_from_counts(counts, params.n_users, trials);
}

OutageEstimate estimate_outage_random(const SystemParams& params, int q_slots,
                                      long long trials, std::uint64_t master_seed,
                                      const McOptions& options) {
    return estimate_outage_random_multiuser(params, q_slots, trials, master_seed,
                                            options)
        .worst;
}

OutageEstimate estimate_outage_random_high_snr(const SystemParams& params,
                                               int q_slots, long long trials,
                                               std::uint64_t master_seed,
                                               const McOptions& options) {
    const double power = params.tx_power_dbm;
    const auto counts = outage_counts(params, q_slots, {&power, 1}, trials,
                                      master_seed, options, true);
    return estimate_from_counts(counts, params.n_users, trials).worst;
}

std::vector<OutageEstimate> estimate_outage_random_power_sweep(
    const SystemParams& params, int q_slots, std::span<const double> powers_dbm,
    long long trials, std::uint64_t master_seed, const McOptions& options) {
    if (powers_dbm.empty()) return {};
    const auto counts =
        outage_counts(params, q_slots, powers_dbm, trials, master_seed, options, false);
    const int K = params.n_users;
    const int P = static_cast<int>(powers_dbm.size());
    std::vector<OutageEstimate> out;
    out.reserve(P);
    for (int p = 0; p < P; ++p) {
        long long worst = 0;
        for (int k = 0; k < K; ++k)
            worst = std::max(worst, counts[static_cast<std::size_t>(k) * P + p]);
        out.push_back(detail::make_outage_estimate(worst, trials));
    }
    return out;
}

RateHistogram empirical_rate_pdf(const SystemParams& params, int q_slots,
                                 long long trials, int bins,
                                 std::uint64_t master_seed, const McOptions& options) {
    params.validate();
    if (trials < 2) throw std::invalid_argument("empirical_rate_pdf: trials must be >= 2");
    if (bins < 2) throw std::invalid_argument("empirical_rate_pdf: bins must be >= 2");
    const double prelog =
        prelog_factor(q_slots, params.train_per_channel, params.frame_len);
    const double gamma = derived_stats(params).gamma;

    std::vector<double> rates(static_cast<std::size_t>(trials));
    struct Empty {};
    detail::run_blocks<Empty>(
        trials, options.block_size, options.workers,
        [&](Empty&, long long lo, long long hi) {
            TrialScratch ws;
            for (long long trial = lo; trial < hi; ++trial) {
                SeedStream stream(master_seed, static_cast<std::uint64_t>(trial));
                sample_trial_gains(params, q_slots, stream, ws);
                double bits = 0.0;
                for (int q = 0; q < q_slots; ++q)
                    bits += std::log2(1.0 + gamma * ws.gain2[q]);
                rates[static_cast<std::size_t>(trial)] = prelog * bits;
            }
        });

    RateHistogram hist;
    hist.total = trials;
    auto [mn_it, mx_it] = std::minmax_element(rates.begin(), rates.end());
    double lo = *mn_it, hi = *mx_it;
    if (!(hi > lo)) { // degenerate: all samples equal
        lo -= 0.5;
        hi += 0.5;
    }
    hist.edges.resize(bins + 1);
    for (int b = 0; b <= bins; ++b)
        hist.edges[b] = lo + (hi - lo) * static_cast<double>(b) / bins;
    hist.edges[bins] = hi;
    hist.counts.assign(bins, 0);
    for (double r : rates) {
        int b = static_cast<int>((r - lo) / (hi - lo) * bins);
        b = std::clamp(b, 0, bins - 1);
        ++hist.counts[b];
    }

    detail::KahanSum sum;
    for (double r : rates) sum.add(r);
    hist.mean = sum.sum / static_cast<double>(trials);
    detail::KahanSum sq;
    for (double r : rates) sq.add((r - hist.mean) * (r - hist.mean));
    hist.variance = sq.sum / static_cast<double>(trials - 1);
    return hist;
}

SlotCorrelation sample_slot_correlation(const SystemParams& params, long long pairs,
                                        std::uint64_t master_seed,
                                        const McOptions& options) {
    params.validate();
    if (pairs < 1000)
        throw std::invalid_argument("sample_slot_correlation: pairs must be >= 1000");

    struct CorrBlock {
        detail::KahanSum x1_re, x1_im, x2_re, x2_im; // sums of X1, X2
        detail::KahanSum cross_re, cross_im;         // sum of X1 * conj(X2)
        detail::KahanSum abs1, abs2;                 // sums of |X1|^2, |X2|^2
    };
    auto cblocks = detail::run_blocks<CorrBlock>(
        pairs, options.block_size, options.workers,
        [&](CorrBlock& acc, long long lo, long long hi) {
            const int N = params.n_elements;
            ChannelRealization realization;
            std::vector<std::complex<double>> cascaded(N);
            std::vector<std::complex<double>> phasors(N);
            for (long long trial = lo; trial < hi; ++trial) {
                SeedStream stream(master_seed, static_cast<std::uint64_t>(trial));
                sample_realization_into(params, stream, realization);
                const auto row = realization.h_row(0);
                for (int n = 0; n < N; ++n) cascaded[n] = row[n] * realization.f[n];
                std::complex<double> x[2];
                for (int slot = 0; slot < 2; ++slot) {
                    for (int n = 0; n < N; ++n) phasors[n] = stream.next_unit_phasor();
                    x[slot] = realization.g[0] +
                              detail::reflected_sum(cascaded, phasors);
                }
                acc.x1_re.add(x[0].real());
                acc.x1_im.add(x[0].imag());
                acc.x2_re.add(x[1].real());
                acc.x2_im.add(x[1].imag());
                const std::complex<double> cross = x[0] * std::conj(x[1]);
                acc.cross_re.add(cross.real());
                acc.cross_im.add(cross.imag());
                acc.abs1.add(std::norm(x[0]));
                acc.abs2.add(std::norm(x[1]));
            }
        });

    double sx1r = 0, sx1i = 0, sx2r = 0, sx2i = 0, scr = 0, sci = 0, sa1 = 0, sa2 = 0;
    for (const CorrBlock& b : cblocks) {
        sx1r += b.x1_re.sum;
        sx1i += b.x1_im.sum;
        sx2r += b.x2_re.sum;
        sx2i += b.x2_im.sum;
        scr += b.cross_re.sum;
        sci += b.cross_im.sum;
        sa1 += b.abs1.sum;
        sa2 += b.abs2.sum;
    }
    const double n = static_cast<double>(pairs);
    const std::complex<double> m1{sx1r / n, sx1i / n};
    const std::complex<double> m2{sx2r / n, sx2i / n};
    const std::complex<double> cov =
        std::complex<double>{scr / n, sci / n} - m1 * std::conj(m2);
    const double var1 = sa1 / n - std::norm(m1);
    const double var2 = sa2 / n - std::norm(m2);
    SlotCorrelation out;
    out.pairs = pairs;
    const double denom = std::sqrt(var1 * var2);
    if (denom > 0.0) {
        out.rho_real = (cov / denom).real();
        out.rho_imag = (cov / denom).imag();
    } else {
        out.rho_real = 1.0; // both slots degenerate to the same constant
        out.rho_imag = 0.0;
    }
    return out;
}

} // namespace irsim
