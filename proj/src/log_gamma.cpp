#include "irsim/log_gamma.hpp"

#include <cmath>
#include <stdexcept>

namespace irsim {

namespace {

// Lanczos g = 7, n = 9 coefficient set.
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};
constexpr double kG = 7.0;
constexpr double kHalfLogTwoPi = 0.91893853320467274178; // log(2*pi)/2

std::complex<double> lanczos_core(std::complex<double> z) {
    // Valid and accurate for Re(z) >= 1.5.
    const std::complex<double> zm1 = z - 1.0;
    std::complex<double> acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (zm1 + static_cast<double>(i));
    const std::complex<double> t = zm1 + kG + 0.5;
    return kHalfLogTwoPi + (zm1 + 0.5) * std::log(t) - t + std::log(acc);
}

} // namespace

std::complex<double> log_gamma(std::complex<double> z) {
    if (!(z.real() > 0.0)) {
        throw std::domain_error("log_gamma: Re(z) must be positive");
    }
    std::complex<double> shift{0.0, 0.0};
    while (z.real() < 1.5) {
        shift += std::log(z);
        z += 1.0;
    }
    return lanczos_core(z) - shift;
}

double log_gamma_real(double x) { return log_gamma(std::complex<double>(x, 0.0)).real(); }

} // namespace irsim
