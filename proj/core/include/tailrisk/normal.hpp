#pragma once

namespace tailrisk {

// Standard normal CDF.
double normal_cdf(double z);

// Standard normal quantile, p in (0,1). Rational approximation refined by one
// Halley step; absolute error well below 1e-9 over the full open interval.
double normal_quantile(double p);

}  // namespace tailrisk
