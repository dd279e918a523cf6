#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "irsim/monte_carlo.hpp"
#include "irsim/sysmodel.hpp"

namespace irsim {

// Cascaded channels with M adjacent IRS elements tied to one phase:
// c_{k,m} = sum over the m-th contiguous block of h_{k,n} f_n.
struct GroupedChannels {
    int n_users = 0;
    int n_groups = 0;   // Nbar = N / M
    int group_size = 1; // M
    std::vector<std::complex<double>> g; // K direct gains
    std::vector<std::complex<double>> c; // K x Nbar, row-major

    std::span<const std::complex<double>> c_row(int user) const {
        return {c.data() + static_cast<std::size_t>(user) * n_groups,
                static_cast<std::size_t>(n_groups)};
    }
};

// Throws std::invalid_argument unless group_size divides n_elements.
GroupedChannels group_channels(const ChannelRealization& realization, int group_size);

// |g_k + sum_m c_{k,m} e^{j theta_m}|^2.
double beam_gain(const GroupedChannels& gc, std::span<const double> phases, int user);
double min_beam_gain(const GroupedChannels& gc, std::span<const double> phases);

// Per-user phase-aligned cap (|g_k| + sum_m |c_{k,m}|)^2; no common
// beamformer can exceed it.
double genie_gain(const GroupedChannels& gc, int user);
double min_genie_gain(const GroupedChannels& gc);

struct BeamformOptions {
    int restarts = 20;
    int grid_points = 256; // dense 1-D grid per coordinate
    int max_passes = 200;  // cyclic passes per restart
    double rel_tol = 1e-6; // stop when a full pass improves less than this
};

struct BeamformResult {
    std::vector<double> phases; // Nbar, in [0, 2*pi)
    double min_gain = 0.0;      // min_k beam_gain at `phases`
    int passes = 0;             // cyclic passes summed over restarts
    int restarts_used = 0;
};

// Max-min unit-modulus passive beamforming by cyclic phase coordinate
// ascent: each 1-D subproblem (every user's gain is a sinusoid in the
// coordinate phase) is scanned on a dense grid and refined by golden
// section; an annealed softmin smooths the objective while candidate
// moves are only accepted when the true min-gain does not decrease, so
// the reported objective is nondecreasing within a restart. Restart 0
// phase-aligns to the weakest direct user (exactly optimal at K = 1),
// the rest start from uniform random phases.
BeamformResult optimize_maxmin(const GroupedChannels& gc,
                               const BeamformOptions& options, SeedStream& stream,
                               std::vector<double>* pass_trace = nullptr);

// 1 - alpha*(Nbar+1)/L. Throws InfeasiblePrelogError when nonpositive
// (training leaves no room for data).
double csi_prelog(int n_groups, int train_per_channel, int frame_len);

// (1 - alpha(Nbar+1)/L) * log2(1 + gamma * beam_gain_k).
double csi_interval_rate(const GroupedChannels& gc, const BeamformResult& beam,
                         int user, const SystemParams& params);

struct CsiOutage {
    std::vector<OutageEstimate> per_user;
    OutageEstimate worst;
};

// Monte Carlo outage of the CSI-based scheme: per trial sample channels,
// group, optimize, then record each user's outage indicator. Worst case
// is the max over users of the per-user frequency.
CsiOutage estimate_outage_csi(const SystemParams& params, int group_size,
                              long long trials, const BeamformOptions& beam_options,
                              std::uint64_t master_seed,
                              const McOptions& options = {});

// Outage lower bound for any feasible beamformer: frequency of
// { prelog * log2(1 + gamma * min_k genie_gain_k) < tau }. Shares the
// channel draws of estimate_outage_csi at an equal master seed.
OutageEstimate genie_outage_lower_bound(const SystemParams& params, int group_size,
                                        long long trials, std::uint64_t master_seed,
                                        const McOptions& options = {});

} // namespace irsim
