#include "spherepack/variance.hpp"

#include "spherepack/errors.hpp"
#include "spherepack/geometry.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

namespace spherepack {

namespace {

constexpr double kViolationTolerance = 1e-12;

double expected_count(int d, double phi, double R) {
    if (phi == 0.0) return 0.0;
    return std::exp(std::log(phi) + d * std::log(2.0 * R));
}

}  // namespace

double number_variance(const RadialModel& model, const PackingDensity& density, double R) {
    model.validate();
    if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("number_variance: R must be positive");
    const int d = density.d;
    const double phi = density.phi;
    if (phi == 0.0) return 0.0;
    const double x = expected_count(d, phi, R);

    // rho s1(r) = phi d 2^d r^{d-1}; h = -1 on [0, sigma).
    const double upper = std::min(model.sigma, 2.0 * R);
    const double log_pref = std::log(phi) + std::log(static_cast<double>(d)) + d * std::log(2.0);
    auto g = [&](double r) {
        if (r <= 0.0) return d == 1 ? std::exp(log_pref) : 0.0;
        return std::exp(log_pref + (d - 1) * std::log(r)) * alpha2_integral(d, r, R);
    };
    // r = upper (1 - u^2) smooths the (1 - r/2R)^{(d+1)/2} endpoint when upper = 2R.
    auto f = [&](double u) { return 2.0 * upper * u * g(upper * (1.0 - u * u)); };
    const double integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, 1.0, 15, 1e-12);
    double bracket = 1.0 - integral;
    if (model.Z > 0.0) bracket += model.Z * alpha2_integral(d, 1.0, R);
    return x * bracket;
}

double variance_lower_bound(int d, double phi, double R) {
    if (d < 1) throw DomainError("variance_lower_bound: dimension must be positive");
    if (!(R > 0.0)) throw DomainError("variance_lower_bound: R must be positive");
    if (!(phi >= 0.0)) throw DomainError("variance_lower_bound: phi must be non-negative");
    const double x = expected_count(d, phi, R);
    return x * (1.0 - x);
}

double yamada_threshold_radius(int d, double phi) {
    if (d < 1 || !(phi > 0.0)) throw DomainError("yamada_threshold_radius: needs d >= 1 and phi > 0");
    return 0.5 * std::exp(-std::log(phi) / d);
}

VarianceCheck yamada_check(const RadialModel& model, const PackingDensity& density, double R_max, int n_grid) {
    model.validate();
    if (n_grid < 2) throw DomainError("yamada_check: need at least 2 grid points");
    const int d = density.d;
    const double phi = density.phi;
    VarianceCheck out;
    out.R0 = yamada_threshold_radius(d, phi);
    if (!(R_max > out.R0)) throw DomainError("yamada_check: R_max must exceed R0");

    std::vector<double> grid;
    const double lo = out.R0 * (1.0 + 1e-6);
    const double ratio = std::pow(R_max / lo, 1.0 / (n_grid - 1));
    for (int i = 0; i < n_grid; ++i) grid.push_back(i == n_grid - 1 ? R_max : lo * std::pow(ratio, i));

    // Expected count m + 1/2 puts theta at its worst case.
    const int extra_cap = 10 * n_grid;
    for (int m = 1, added = 0; added < extra_cap; ++m, ++added) {
        const double R = 0.5 * std::exp((std::log(m + 0.5) - std::log(phi)) / d);
        if (R > R_max) break;
        if (R > out.R0) grid.push_back(R);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    for (double R : grid) {
        const double s2 = number_variance(model, density, R);
        const double x = expected_count(d, phi, R);
        const double theta = x - std::floor(x);
        const double bound = theta * (1.0 - theta);
        const bool bad = s2 < bound - kViolationTolerance;
        out.R.push_back(R);
        out.sigma2.push_back(s2);
        out.yamada_bound.push_back(bound);
        out.violated.push_back(bad);
        if (bad) out.violations.push_back(R);
    }
    return out;
}

}  // namespace spherepack
