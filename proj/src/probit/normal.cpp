#include "wcud/normal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace wcud {

namespace {

template <std::size_t N>
double horner(const double (&c)[N], double x) {
    double acc = c[N - 1];
    for (std::size_t i = N - 1; i-- > 0;) acc = acc * x + c[i];
    return acc;
}

// AS241 coefficients, lowest order first.
constexpr double kCentralNum[] = {
    3.3871328727963666080e0,  1.3314166789178437745e+2, 1.9715909503065514427e+3,
    1.3731693765509461125e+4, 4.5921953931549871457e+4, 6.7265770927008700853e+4,
    3.3430575583588128105e+4, 2.5090809287301226727e+3};
constexpr double kCentralDen[] = {
    1.0,                      4.2313330701600911252e+1, 6.8718700749205790830e+2,
    5.3941960214247511077e+3, 2.1213794301586595867e+4, 3.9307895800092710610e+4,
    2.8729085735721942674e+4, 5.2264952788528545610e+3};
constexpr double kNearNum[] = {
    1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
    3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
    2.27238449892691845833e-2, 7.74545014278341407640e-4};
constexpr double kNearDen[] = {
    1.0,                      2.05319162663775882187e0, 1.67638483018380384940e0,
    6.89767334985100004550e-1, 1.48103976427480074590e-1, 1.51986665636164571966e-2,
    5.47593808499534494600e-4, 1.05075007164441684324e-9};
constexpr double kFarNum[] = {
    6.65790464350110377720e0,  5.46378491116411436990e0,  1.78482653991729133580e0,
    2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
    2.71155556874348757815e-5, 2.01033439929228813265e-7};
constexpr double kFarDen[] = {
    1.0,                      5.99832206555887937690e-1, 1.36929880922735805310e-1,
    1.48753612908506148525e-2, 7.86869131145613259100e-4, 1.84631831751005468180e-5,
    1.42151175831644588870e-7, 2.04426310338993978564e-15};

// Quantile from the smaller tail probability; `lower` selects the sign.
double tail_quantile(double tail, bool lower) {
    double r = std::sqrt(-std::log(tail));
    double x;
    if (r <= 5.0) {
        r -= 1.6;
        x = horner(kNearNum, r) / horner(kNearDen, r);
    } else {
        r -= 5.0;
        x = horner(kFarNum, r) / horner(kFarDen, r);
    }
    return lower ? -x : x;
}

// Draw for the [0, inf) side.
double upper_truncated(double mu, double u) {
    if (mu >= 0.0) {
        const double p = norm_cdf(-mu) + u * norm_cdf(mu);
        return std::max(0.0, mu + inv_norm_cdf(std::min(p, std::nextafter(1.0, 0.0))));
    }
    const double tail = (1.0 - u) * norm_cdf(mu);
    if (tail < std::numeric_limits<double>::min()) {
        // Far tail: the excess over 0 is exponential with rate |mu|.
        return -std::log1p(-u) / -mu;
    }
    return std::max(0.0, mu - inv_norm_cdf(tail));
}

}  // namespace

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double inv_norm_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("inv_norm_cdf: p must lie in (0,1)");
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * horner(kCentralNum, r) / horner(kCentralDen, r);
    }
    return q < 0.0 ? tail_quantile(p, true) : tail_quantile(1.0 - p, false);
}

double trunc_norm_inverse(double mu, bool positive, double u) {
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error("trunc_norm_inverse: u must lie in (0,1)");
    if (!std::isfinite(mu)) throw std::domain_error("trunc_norm_inverse: mu must be finite");
    if (positive) return upper_truncated(mu, u);
    return -upper_truncated(-mu, 1.0 - u);
}

}  // namespace wcud
