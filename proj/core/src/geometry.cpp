#include "spherepack/geometry.hpp"

#include "spherepack/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

namespace spherepack {

namespace {

constexpr int kMaxSeriesTerms = 20000;

void check(int d, double r, double R) {
    if (d < 1) throw DomainError("alpha2: dimension must be positive");
    if (!std::isfinite(r) || r < 0.0) throw DomainError("alpha2: distance must be finite and non-negative");
    if (!std::isfinite(R) || !(R > 0.0)) throw DomainError("alpha2: radius must be positive");
}

double log_prefactor(int d) {
    return std::log(2.0) + std::lgamma(1.0 + 0.5 * d) - 0.5 * std::log(std::numbers::pi) -
           std::lgamma(0.5 * (d + 1));
}

}  // namespace

double alpha2_integral(int d, double r, double R) {
    check(d, r, R);
    const double x = r / (2.0 * R);
    if (x >= 1.0) return 0.0;
    if (x == 0.0) return 1.0;
    const double lc = log_prefactor(d);
    auto f = [&](double theta) {
        const double s = std::sin(theta);
        return s > 0.0 ? std::exp(lc + d * std::log(s)) : 0.0;
    };
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, 0.0, std::acos(x), 15, 1e-12);
    return std::min(1.0, std::max(0.0, v));
}

Alpha2Series alpha2_series(int d, double r, double R) {
    check(d, r, R);
    const double x = r / (2.0 * R);
    if (x >= 1.0) return {0.0, 0, 0.0, false};
    const double c = std::exp(log_prefactor(d));
    const double x2 = x * x;
    double b = -1.0;  // coefficient of x^{2n-1}/(2n-1)
    double p = x;     // x^{2n-1}
    double sum = 1.0 - c * x;
    for (int n = 2; n <= kMaxSeriesTerms; ++n) {
        b *= -(d - 2.0 * n + 3.0) / (2.0 * n - 2.0);
        if (b == 0.0) return {sum, n - 1, 0.0, false};
        p *= x2;
        const double term = c * b * p / (2.0 * n - 1.0);
        sum += term;
        const double tail = std::abs(term) * x2 / (1.0 - x2);
        if (std::abs(term) < 1e-14 && tail < 1e-12) return {sum, n, tail, false};
    }
    return {alpha2_integral(d, r, R), kMaxSeriesTerms, INFINITY, true};
}

double alpha2_asymptotic(int d) {
    if (d < 10) throw DomainError("alpha2_asymptotic: requires d >= 10");
    return std::sqrt(6.0 / std::numbers::pi) * std::pow(0.75, 0.5 * d) / std::sqrt(static_cast<double>(d));
}

double beta2(int d, double r, double R) {
    check(d, r, R);
    if (r >= 2.0 * R) return 2.0;
    return 2.0 - alpha2_integral(d, r, R);
}

}  // namespace spherepack
