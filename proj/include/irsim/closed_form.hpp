#pragma once

#include <utility>
#include <vector>

#include "irsim/sysmodel.hpp"

namespace irsim {

// Pearson correlation between the effective gains of two reflecting slots:
//   rho = sigma_g^2 / (sigma_g^2 + N sigma_h^2 sigma_f^2).
// Throws std::domain_error for negative inputs or a zero denominator.
double pearson_correlation(double sigma_g2, double sigma_h2, double sigma_f2,
                           int n_elements);

// High-SNR outage threshold on prod_q |X_q|^2:
//   v* = 2^{tau / (1/Q - alpha/L)} / gamma^Q.
double outage_threshold(double rate_target, int q_slots, int train_per_channel,
                        int frame_len, double gamma);

// ln v*, evaluated without forming gamma^Q (which over/underflows at Q = 8).
double ln_outage_threshold(double rate_target, int q_slots, int train_per_channel,
                           int frame_len, double gamma);

// V = product of `order` i.i.d. exponentials, each with the given mean.
struct ProductExpDist {
    int order;
    double mean;
};

// Controls for the characteristic-function inversion behind the CDF.
struct InversionSettings {
    double truncation = 200.0; // quadrature cut-off on |omega|
    int nodes = 4096;          // trapezoidal nodes over (0, truncation]
    double abs_tol = 1e-7;     // absolute tolerance on the CDF value
    int max_refinements = 1;   // extra doublings when estimates disagree

    void validate() const;
};

// CDF of V at v. Works in the log domain: with W = sum_q ln(E_q/mean),
// each term's characteristic function is Gamma(1+i*omega), so F_V(v) =
// F_W(ln(v/mean^Q)) is recovered by contour inversion of Gamma(1+s)^Q.
// An exponential tilt (contour shifted to the saddle point) keeps the
// deep tails relatively accurate; the untilted Gil-Pelaez form covers the
// central region. Throws std::domain_error for v < 0 and NumericalError
// if the quadrature refinements fail to agree within abs_tol.
double product_exp_cdf(double v, const ProductExpDist& dist,
                       const InversionSettings& settings = {});

// Same CDF with the argument given as ln(v); use when v itself would
// underflow.
double product_exp_cdf_ln(double ln_v, const ProductExpDist& dist,
                          const InversionSettings& settings = {});

// Closed-form approximate outage probability of the random passive
// beamforming scheme at Q reflecting slots (high-SNR approximation:
// the "+1" inside the logarithm is dropped by construction).
double approx_outage(const SystemParams& params, int q_slots,
                     const InversionSettings& settings = {});

struct OptimalQ {
    int q_star = 0;
    // (Q, approximate outage) over the feasible set, ascending in Q.
    std::vector<std::pair<int, double>> outage_by_q;
};

// Exhaustive search of approx_outage over {1..q_max}; ties break toward
// the smallest Q.
OptimalQ optimal_q(const SystemParams& params,
                   const InversionSettings& settings = {});

} // namespace irsim
