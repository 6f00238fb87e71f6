#pragma once

namespace wcud {

// Standard normal CDF via the complementary error function.
double norm_cdf(double x);

// Standard normal quantile, Wichura's AS241 (PPND16), relative accuracy
// about 1e-16. Throws std::domain_error unless 0 < p < 1.
double inv_norm_cdf(double p);

// Inverse-CDF draw from N(mu, 1) truncated to [0, inf) when positive is
// true, else to (-inf, 0]. Uses the complementary tail when the truncation
// point is far in the tail of N(mu, 1). Throws std::domain_error unless
// 0 < u < 1.
double trunc_norm_inverse(double mu, bool positive, double u);

}  // namespace wcud
