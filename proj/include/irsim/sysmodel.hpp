#pragma once

#include <complex>
#include <span>
#include <vector>

#include "irsim/rng.hpp"

namespace irsim {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

double distance_m(const Vec3& a, const Vec3& b);

// dB/dBm conversions are centralized here; everything downstream works in
// linear scale (watts for powers).
double db_to_linear(double db);
double linear_to_db(double linear);
double dbm_to_watt(double dbm);

enum class UserPlacement {
    TypicalBelowIrs, // all users co-located at the point right below the IRS
    CircleAroundIrs, // evenly spaced on a horizontal circle centered at the IRS
};

enum class FPhasePolicy {
    Steering,          // deterministic linear-array phases n*pi*sin(angle)
    RandomPerInterval, // fresh uniform phases each coherence interval
};

struct GeometryParams {
    Vec3 bs_pos_m{0.0, 0.0, 2.0};
    Vec3 irs_pos_m{100.0, 0.0, 2.0};
    double user_height_m = 1.0;
    double circle_radius_m = 5.0;
    UserPlacement placement = UserPlacement::TypicalBelowIrs;
};

struct PathLossParams {
    double ref_loss_db = -30.0;   // sigma_0^2 at the reference distance
    double ref_distance_m = 1.0;  // d_0
    double exp_direct = 3.5;      // BS-user exponent
    double exp_bs_irs = 2.0;      // BS-IRS exponent
    double exp_irs_user = 2.5;    // IRS-user exponent
};

struct SystemParams {
    double tx_power_dbm = 20.0;
    double noise_power_dbm = -90.0;
    int n_elements = 300;      // N
    int n_users = 1;           // K
    int frame_len = 1000;      // L, symbols per coherence interval
    int train_per_channel = 20; // alpha, training symbols per channel estimate
    double rate_target = 6.0;  // tau, bps/Hz
    int q_max = 8;
    GeometryParams geometry;
    PathLossParams pathloss;
    FPhasePolicy f_phase_policy = FPhasePolicy::Steering;
    double f_steering_angle_rad = 0.0;

    // Throws std::invalid_argument naming the first violated invariant.
    void validate() const;
};

// sigma^2 = sigma_0^2 * (d/d_0)^{-exponent}, in linear power.
// Throws std::domain_error for nonpositive distance.
double path_loss(double distance_m, double exponent, double ref_loss_db,
                 double ref_distance_m = 1.0);

struct DerivedStats {
    double sigma_g2; // direct BS-user variance
    double sigma_h2; // per-element IRS-user variance
    double sigma_f2; // squared BS-IRS amplitude
    double gamma;    // P / sigma_z^2, linear
    double lambda;   // sigma_g2 + N * sigma_h2 * sigma_f2
};

struct UserLinkStats {
    double sigma_g2;
    double sigma_h2;
};

Vec3 user_position(const SystemParams& params, int user);
UserLinkStats user_link_stats(const SystemParams& params, int user);

// Stats for user 0 (the typical user in TypicalBelowIrs placement).
DerivedStats derived_stats(const SystemParams& params);

// Per-user lambda = sigma_g2_k + N * sigma_h2_k * sigma_f2.
double user_lambda(const SystemParams& params, int user);

// One coherence interval's channel draws for all K users.
struct ChannelRealization {
    int n_users = 0;
    int n_elements = 0;
    std::vector<std::complex<double>> g; // K direct gains
    std::vector<std::complex<double>> h; // K x N IRS-user gains, row-major
    std::vector<std::complex<double>> f; // N BS-IRS gains, |f_n| = sigma_f

    std::span<const std::complex<double>> h_row(int user) const {
        return {h.data() + static_cast<std::size_t>(user) * n_elements,
                static_cast<std::size_t>(n_elements)};
    }
};

ChannelRealization sample_realization(const SystemParams& params, SeedStream& stream);

// Buffer-reusing variant for tight Monte Carlo loops.
void sample_realization_into(const SystemParams& params, SeedStream& stream,
                             ChannelRealization& out);

} // namespace irsim
