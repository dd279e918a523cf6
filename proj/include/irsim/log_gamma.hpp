#pragma once

#include <complex>

namespace irsim {

// Principal-branch log-gamma for Re(z) > 0, Lanczos approximation (g = 7,
// 9 coefficients). Arguments with Re(z) < 1.5 are lifted through the
// recurrence lgamma(z) = lgamma(z+1) - log(z), which keeps the formula in
// its accurate region without the reflection formula's overflow at large
// |Im z|. Branch offsets of 2*pi*i are harmless for the use here
// (exponentiation by integer powers).
std::complex<double> log_gamma(std::complex<double> z);

// Real positive arguments, same implementation.
double log_gamma_real(double x);

} // namespace irsim
