#include "irsim/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "irsim/errors.hpp"
#include "irsim/log_gamma.hpp"
#include "irsim/random_reflect.hpp"

namespace irsim {

double pearson_correlation(double sigma_g2, double sigma_h2, double sigma_f2,
                           int n_elements) {
    if (sigma_g2 < 0.0 || sigma_h2 < 0.0 || sigma_f2 < 0.0 || n_elements < 0)
        throw std::domain_error("pearson_correlation: negative input");
    const double denom = sigma_g2 + n_elements * sigma_h2 * sigma_f2;
    if (!(denom > 0.0))
        throw std::domain_error("pearson_correlation: zero variance denominator");
    return sigma_g2 / denom;
}

double ln_outage_threshold(double rate_target, int q_slots, int train_per_channel,
                           int frame_len, double gamma) {
    if (!(gamma > 0.0)) throw std::domain_error("outage_threshold: gamma must be > 0");
    if (!(rate_target >= 0.0))
        throw std::domain_error("outage_threshold: rate target must be >= 0");
    const double prelog = prelog_factor(q_slots, train_per_channel, frame_len);
    return rate_target * std::numbers::ln2 / prelog - q_slots * std::log(gamma);
}

double outage_threshold(double rate_target, int q_slots, int train_per_channel,
                        int frame_len, double gamma) {
    return std::exp(
        ln_outage_threshold(rate_target, q_slots, train_per_channel, frame_len, gamma));
}

void InversionSettings::validate() const {
    if (!(abs_tol > 0.0))
        throw std::invalid_argument("InversionSettings: abs_tol must be > 0");
    if (nodes < 64) throw std::invalid_argument("InversionSettings: nodes must be >= 64");
    if (!(truncation > 0.0))
        throw std::invalid_argument("InversionSettings: truncation must be > 0");
    if (max_refinements < 0)
        throw std::invalid_argument("InversionSettings: max_refinements must be >= 0");
}

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;

// Chernoff exponent k(c) = Q*lnGamma(1+c) - c*w; convex on (-1, inf).
double chernoff_exponent(double c, int order, double w) {
    return order * log_gamma_real(1.0 + c) - c * w;
}

// Location of the minimum of the Chernoff exponent (the saddle point).
double find_saddle(int order, double w) {
    const double lo = -1.0 + 1e-9;
    double hi = 1.0;
    while (hi < 1e8 &&
           chernoff_exponent(hi + 1.0, order, w) < chernoff_exponent(hi, order, w)) {
        hi = (hi + 1.0) * 2.0;
    }
    hi += 1.0;
    // Golden-section shrink; the exponent is smooth, so modest precision on
    // the saddle location is plenty.
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double c1 = b - kInvPhi * (b - a);
    double c2 = a + kInvPhi * (b - a);
    double f1 = chernoff_exponent(c1, order, w);
    double f2 = chernoff_exponent(c2, order, w);
    for (int it = 0; it < 300 && (b - a) > 1e-10 * (1.0 + std::abs(a)); ++it) {
        if (f1 < f2) {
            b = c2; c2 = c1; f2 = f1;
            c1 = b - kInvPhi * (b - a);
            f1 = chernoff_exponent(c1, order, w);
        } else {
            a = c1; c1 = c2; f1 = f2;
            c2 = a + kInvPhi * (b - a);
            f2 = chernoff_exponent(c2, order, w);
        }
    }
    return 0.5 * (a + b);
}

// Trapezoid over (0, omega_max] of the untilted Gil-Pelaez integrand
// Im[Gamma(1+i*omega)^Q e^{-i*omega*w}]/omega; the omega -> 0 limit is
// -(w + Q*EulerGamma). Returns F(w) = 1/2 - integral/pi.
double centered_estimate(int order, double w, double omega_max, int nodes) {
    const double h = omega_max / nodes;
    double sum = 0.5 * (-(w + order * kEulerGamma));
    for (int j = 1; j <= nodes; ++j) {
        const double omega = j * h;
        const std::complex<double> ln_val =
            double(order) * log_gamma(std::complex<double>(1.0, omega)) -
            std::complex<double>(0.0, omega * w);
        double weight = (j == nodes) ? 0.5 : 1.0;
        sum += weight * std::exp(ln_val).imag() / omega;
    }
    return 0.5 - sum * h / std::numbers::pi;
}

// Trapezoid of the tilted integrand along Re(z) = c:
//   T = (e^{k}/pi) * Int_0^Om Re[exp(Q lnGamma(1+c+i u) - (c+i u) w - k)/(c+i u)] du
// with k = k(c) so the integrand is O(1). For c < 0 the contour identity
// gives F = -T; for c > 0 it gives the upper tail, F = 1 - T.
double tilted_estimate(int order, double w, double c, double omega_max, double h) {
    const double k = chernoff_exponent(c, order, w);
    const long long n = std::max<long long>(64, llround(std::ceil(omega_max / h)));
    const double step = omega_max / static_cast<double>(n);
    double sum = 0.5 / c;
    for (long long j = 1; j <= n; ++j) {
        const double u = j * step;
        const std::complex<double> z{c, u};
        const std::complex<double> ln_val =
            double(order) * log_gamma(1.0 + z) - z * w - k;
        const double weight = (j == n) ? 0.5 : 1.0;
        sum += weight * (std::exp(ln_val) / z).real();
    }
    const double tail = std::exp(k) * sum * step / std::numbers::pi;
    return c < 0.0 ? -tail : 1.0 - tail;
}

// F_W(w) for W = sum of `order` i.i.d. standard log-exponentials.
double log_sum_exp_cdf(int order, double w, const InversionSettings& settings) {
    settings.validate();
    if (order < 1)
        throw std::invalid_argument("product_exp_cdf: order must be >= 1");
    if (std::isnan(w)) throw std::domain_error("product_exp_cdf: NaN argument");
    // Upper tail bound P(W > w) <= e^{-w}: beyond w = 40 the CDF rounds to 1.
    if (w >= 40.0) return 1.0;
    if (w <= -1.0e4) return 0.0;

    const double saddle = find_saddle(order, w);
    const bool tilt_left = saddle <= -0.25;
    const bool tilt_right = saddle >= 0.25;

    double estimate = 0.0, previous = 0.0;
    bool converged = false;
    double omega_max = settings.truncation;
    int nodes = settings.nodes;
    // Base evaluation plus doublings: one comparison is always available,
    // and up to max_refinements extra levels resolve a disagreement.
    for (int level = 0; level <= 1 + settings.max_refinements; ++level) {
        previous = estimate;
        if (tilt_left || tilt_right) {
            // Keep several nodes per unit of the analyticity strip width set
            // by the poles at z = 0 and z = -1.
            const double strip = std::min(std::abs(saddle), 1.0 + saddle);
            const double h = std::min(omega_max / nodes, strip / 8.0);
            estimate = tilted_estimate(order, w, saddle, omega_max, h);
        } else {
            estimate = centered_estimate(order, w, omega_max, nodes);
        }
        if (level > 0 && std::abs(estimate - previous) <= settings.abs_tol) {
            converged = true;
            break;
        }
        omega_max *= 2.0;
        nodes *= 2;
    }
    if (!converged) {
        throw NumericalError(
            "product_exp_cdf: quadrature did not converge to abs_tol=" +
            std::to_string(settings.abs_tol) + " at w=" + std::to_string(w) +
            ", Q=" + std::to_string(order));
    }
    return std::clamp(estimate, 0.0, 1.0);
}

} // namespace

double product_exp_cdf_ln(double ln_v, const ProductExpDist& dist,
                          const InversionSettings& settings) {
    if (!(dist.mean > 0.0))
        throw std::invalid_argument("ProductExpDist: mean must be > 0");
    if (dist.order < 1)
        throw std::invalid_argument("ProductExpDist: order must be >= 1");
    if (ln_v == -std::numeric_limits<double>::infinity()) return 0.0;
    const double w = ln_v - dist.order * std::log(dist.mean);
    return log_sum_exp_cdf(dist.order, w, settings);
}

double product_exp_cdf(double v, const ProductExpDist& dist,
                       const InversionSettings& settings) {
    if (std::isnan(v) || v < 0.0)
        throw std::domain_error("product_exp_cdf: v must be >= 0");
    if (v == 0.0) return 0.0;
    return product_exp_cdf_ln(std::log(v), dist, settings);
}

double approx_outage(const SystemParams& params, int q_slots,
                     const InversionSettings& settings) {
    params.validate();
    if (q_slots < 1 || q_slots > params.q_max)
        throw std::invalid_argument("approx_outage: Q out of {1..q_max}");
    const DerivedStats ds = derived_stats(params);
    const double ln_vstar = ln_outage_threshold(
        params.rate_target, q_slots, params.train_per_channel, params.frame_len,
        ds.gamma);
    return product_exp_cdf_ln(ln_vstar, {q_slots, ds.lambda}, settings);
}

OptimalQ optimal_q(const SystemParams& params, const InversionSettings& settings) {
    params.validate();
    OptimalQ result;
    double best = std::numeric_limits<double>::infinity();
    for (int q = 1; q <= params.q_max; ++q) {
        if (static_cast<long long>(q) * params.train_per_channel >= params.frame_len)
            continue; // nonpositive prelog, infeasible
        const double p = approx_outage(params, q, settings);
        result.outage_by_q.emplace_back(q, p);
        if (p < best) {
            best = p;
            result.q_star = q;
        }
    }
    if (result.outage_by_q.empty())
        throw InfeasiblePrelogError("optimal_q: no feasible Q in {1..q_max}");
    return result;
}

} // namespace irsim
