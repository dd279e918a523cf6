#include "irsim/sysmodel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace irsim {

double distance_m(const Vec3& a, const Vec3& b) {
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double path_loss(double distance, double exponent, double ref_loss_db,
                 double ref_distance) {
    if (!(distance > 0.0)) {
        throw std::domain_error("path_loss: distance must be positive, got " +
                                std::to_string(distance));
    }
    if (!(ref_distance > 0.0)) {
        throw std::domain_error("path_loss: reference distance must be positive");
    }
    return db_to_linear(ref_loss_db) * std::pow(distance / ref_distance, -exponent);
}

void SystemParams::validate() const {
    if (n_elements < 0) throw std::invalid_argument("n_elements must be >= 0");
    if (n_users < 1) throw std::invalid_argument("n_users must be >= 1");
    if (frame_len < 1) throw std::invalid_argument("frame_len must be >= 1");
    if (train_per_channel < 1)
        throw std::invalid_argument("train_per_channel must be >= 1");
    if (q_max < 1) throw std::invalid_argument("q_max must be >= 1");
    if (!(rate_target >= 0.0))
        throw std::invalid_argument("rate_target must be >= 0");
    if (frame_len <= train_per_channel * q_max) {
        throw std::invalid_argument(
            "frame_len must exceed train_per_channel * q_max (" +
            std::to_string(frame_len) + " <= " +
            std::to_string(train_per_channel * q_max) +
            "): the prelog would be nonpositive at Q = q_max");
    }
    if (!(pathloss.ref_distance_m > 0.0))
        throw std::invalid_argument("pathloss.ref_distance_m must be positive");
    if (!(geometry.user_height_m >= 0.0))
        throw std::invalid_argument("geometry.user_height_m must be >= 0");
    if (geometry.placement == UserPlacement::CircleAroundIrs &&
        !(geometry.circle_radius_m > 0.0)) {
        throw std::invalid_argument("geometry.circle_radius_m must be positive");
    }
    const double d_f = distance_m(geometry.bs_pos_m, geometry.irs_pos_m);
    if (!(d_f > 0.0))
        throw std::invalid_argument("BS and IRS positions must not coincide");
    for (int k = 0; k < n_users; ++k) {
        const Vec3 u = user_position(*this, k);
        if (!(distance_m(geometry.bs_pos_m, u) > 0.0))
            throw std::invalid_argument("user " + std::to_string(k) +
                                        " coincides with the BS");
        if (!(distance_m(geometry.irs_pos_m, u) > 0.0))
            throw std::invalid_argument("user " + std::to_string(k) +
                                        " coincides with the IRS");
    }
    if (!(dbm_to_watt(tx_power_dbm) > 0.0) || !(dbm_to_watt(noise_power_dbm) > 0.0))
        throw std::invalid_argument("powers must convert to positive watts");
}

Vec3 user_position(const SystemParams& params, int user) {
    const GeometryParams& geo = params.geometry;
    if (geo.placement == UserPlacement::TypicalBelowIrs) {
        return {geo.irs_pos_m.x, geo.irs_pos_m.y, geo.user_height_m};
    }
    const double angle =
        2.0 * std::numbers::pi * static_cast<double>(user) / params.n_users;
    return {geo.irs_pos_m.x + geo.circle_radius_m * std::cos(angle),
            geo.irs_pos_m.y + geo.circle_radius_m * std::sin(angle),
            geo.user_height_m};
}

UserLinkStats user_link_stats(const SystemParams& params, int user) {
    const Vec3 pos = user_position(params, user);
    const PathLossParams& pl = params.pathloss;
    const double d_g = distance_m(params.geometry.bs_pos_m, pos);
    const double d_h = distance_m(params.geometry.irs_pos_m, pos);
    return {path_loss(d_g, pl.exp_direct, pl.ref_loss_db, pl.ref_distance_m),
            path_loss(d_h, pl.exp_irs_user, pl.ref_loss_db, pl.ref_distance_m)};
}

DerivedStats derived_stats(const SystemParams& params) {
    const PathLossParams& pl = params.pathloss;
    const double d_f = distance_m(params.geometry.bs_pos_m, params.geometry.irs_pos_m);
    const double sigma_f2 =
        path_loss(d_f, pl.exp_bs_irs, pl.ref_loss_db, pl.ref_distance_m);
    const UserLinkStats u = user_link_stats(params, 0);
    const double gamma =
        dbm_to_watt(params.tx_power_dbm) / dbm_to_watt(params.noise_power_dbm);
    const double lambda = u.sigma_g2 + params.n_elements * u.sigma_h2 * sigma_f2;
    return {u.sigma_g2, u.sigma_h2, sigma_f2, gamma, lambda};
}

double user_lambda(const SystemParams& params, int user) {
    const DerivedStats ds = derived_stats(params);
    const UserLinkStats u = user_link_stats(params, user);
    return u.sigma_g2 + params.n_elements * u.sigma_h2 * ds.sigma_f2;
}

ChannelRealization sample_realization(const SystemParams& params, SeedStream& stream) {
    ChannelRealization out;
    sample_realization_into(params, stream, out);
    return out;
}

void sample_realization_into(const SystemParams& params, SeedStream& stream,
                             ChannelRealization& out) {
    const int K = params.n_users;
    const int N = params.n_elements;
    out.n_users = K;
    out.n_elements = N;
    out.g.resize(K);
    out.h.resize(static_cast<std::size_t>(K) * N);
    out.f.resize(N);

    const DerivedStats ds = derived_stats(params);
    const double sigma_f = std::sqrt(ds.sigma_f2);

    // Draw order is part of the stream contract: g per user, then h rows,
    // then f when its policy is random.
    for (int k = 0; k < K; ++k) {
        const UserLinkStats u = user_link_stats(params, k);
        out.g[k] = u.sigma_g2 > 0.0 ? stream.next_cgaussian(u.sigma_g2)
                                    : std::complex<double>{0.0, 0.0};
        std::complex<double>* row = out.h.data() + static_cast<std::size_t>(k) * N;
        if (u.sigma_h2 > 0.0) {
            for (int n = 0; n < N; ++n) row[n] = stream.next_cgaussian(u.sigma_h2);
        } else {
            for (int n = 0; n < N; ++n) row[n] = {0.0, 0.0};
        }
    }
    if (params.f_phase_policy == FPhasePolicy::Steering) {
        const double step = std::numbers::pi * std::sin(params.f_steering_angle_rad);
        for (int n = 0; n < N; ++n) out.f[n] = std::polar(sigma_f, n * step);
    } else {
        for (int n = 0; n < N; ++n) out.f[n] = sigma_f * stream.next_unit_phasor();
    }
}

} // namespace irsim
