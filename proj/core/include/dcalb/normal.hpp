#pragma once

namespace dcalb {

/// Standard normal CDF.
double normal_cdf(double x) noexcept;

/// Standard normal quantile. Rational approximation (Acklam) polished by one
/// Halley step against erfc; absolute error below 1e-13 on (0, 1).
/// Throws Error{InvalidProbability} unless 0 < p < 1.
double normal_quantile(double p);

// log(exp(a) + exp(b)) without overflow.
double log_add_exp(double a, double b) noexcept;

// log(exp(x) - 1) for x > 0, stable for both tiny and huge x.
double log_expm1(double x) noexcept;

}  // namespace dcalb
