#pragma once

namespace slowsde {

// Scaled complementary error function erfc(x) * exp(x^2) for x >= 0. Direct
// evaluation below the erfc underflow wall, asymptotic series beyond it; the
// crossover keeps both branches inside the representable range.
double erfcx(double x);

// log of the integral of exp(-x^2 / alpha) over [a, b], 0 <= a < b. Stays in
// the log domain so windows far in the Gaussian tail (values like 1e-200 and
// below) keep full relative precision.
double log_gauss_window(double a, double b, double alpha);

}  // namespace slowsde
