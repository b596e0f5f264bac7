#include "spherepack/asymptotics.hpp"

#include "spherepack/errors.hpp"
#include "spherepack/specialfn.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <numbers>

namespace spherepack {

namespace {

constexpr double kPi = std::numbers::pi;

void require_large(int d, const char* who) {
    if (d < 20) throw DomainError(std::string(who) + ": requires d >= 20");
}

double q1_poly(double x) {
    const double e = std::exp(x);
    return x * e + e * e - 5.0 * e + 4.0;
}

AsymptoticConstants compute() {
    AsymptoticConstants c{};
    const double a1 = kZeroA1;
    const double a2 = kZeroA2;
    c.a1 = a1;
    c.a2 = a2;
    c.a3 = kZeroA3;

    std::uintmax_t iters = 200;
    const auto root = boost::math::tools::toms748_solve(
        q1_poly, 0.5, 1.5, boost::math::tools::eps_tolerance<double>(), iters);
    if (iters >= 200) throw ConvergenceError("solve_constants: q1 root did not converge", root.first, root.second);
    const double q1 = 0.5 * (root.first + root.second);
    c.q1 = q1;
    c.q1_residual = std::abs(q1_poly(q1));

    const double e1 = std::exp(q1);
    const double e2 = e1 * e1;
    const double e3 = e2 * e1;
    c.q2 = a1 * (8.0 * e1 - 2.0 * q1 * e1 - 10.0 * e2 + 4.0 + e3 + 4.0 * q1 * e2) /
           (3.0 * e1 * (2.0 * q1 * e1 - 2.0 * q1 + 12.0 + 3.0 * e2 - 13.0 * e1));
    c.Q1 = 2.0 * (q1 - 1.0) / (e1 - 2.0);

    const double t = std::pow(2.0 * a1, 1.5) / 3.0;
    const double f1 = std::sin(t) + std::cos(t);
    const double f2 = std::sin(t) - std::cos(t);
    const double r2 = std::sqrt(2.0);
    const double a32 = std::pow(a1, 1.5);
    const double p14 = std::pow(2.0, 0.25);
    const double sp = std::sqrt(kPi);

    c.C11 = -p14 * (r2 * f1 + 8.0 * a32 * f2) / (8.0 * sp);
    c.C12 = 5.0 * p14 * (4.0 * r2 * a32 * f1 - 7.0 * f2) / (384.0 * sp);
    c.C13 = -385.0 * p14 * (13.0 * r2 * f1 + 8.0 * a32 * f2) / (221184.0 * sp);
    c.C1 = c.C11 / std::pow(a1, 1.25);
    c.C1_refined = c.C1 + c.C12 / std::pow(a1, 2.75) + c.C13 / std::pow(a1, 4.25);

    const double a12 = a1 * a1;
    const double a14 = a12 * a12;
    c.C2 = (std::pow(2.0, 0.75) *
                (1152.0 * a14 * a12 - 3840.0 * a14 * a2 - 180.0 * a12 * a1 + 600.0 * a1 * a2 - 225.0) * f1 +
            p14 * (3072.0 * std::pow(a1, 4.5) - 200.0 * a32) * f2) /
           (3840.0 * sp * std::pow(a1, 3.25));

    auto d1_of = [&](double C1) { return C1 * (2.0 - e1) / (2.0 * e1); };
    auto d2_of = [&](double C1) {
        return C1 * (a1 * (2.0 * e1 + 6.0 * q1 / e1 - 7.0) + 3.0 * c.q2 * (q1 - 1.0)) / (3.0 * (2.0 - e1)) +
               c.C2 * d1_of(C1) / C1;
    };
    c.D1 = d1_of(c.C1_refined);
    c.D2 = d2_of(c.C1_refined);
    c.D1_dominant = d1_of(c.C1);
    c.D2_dominant = d2_of(c.C1);

    c.E1 = a2 - 0.5 * a12;
    c.E2 = -c.Q1 * a1 + (a14 - 4.0 * a12 * a2 + 4.0 * a2 * a2) / 8.0;

    c.phi_exponent = 0.5 * (3.0 - std::numbers::log2e);
    c.kiss_exponent = 0.5 * (std::numbers::log2e - 1.0);
    return c;
}

}  // namespace

const AsymptoticConstants& solve_constants() {
    static const AsymptoticConstants constants = compute();
    return constants;
}

double sigma_star_asymptotic(int d) {
    require_large(d, "sigma_star_asymptotic");
    const auto& c = solve_constants();
    const double nu = 0.5 * d;
    return 1.0 + c.q1 / nu + c.q2 / std::pow(nu, 5.0 / 3.0);
}

double kmin_asymptotic(int d) {
    require_large(d, "kmin_asymptotic");
    const auto& c = solve_constants();
    const double nu = 0.5 * d;
    const double cb = std::cbrt(nu);
    return nu + c.a1 * cb + c.Q1 + c.a2 / cb;
}

double kmin_linearized(int d, double sigma, double beta_ratio) {
    if (d < 2) throw DomainError("kmin_linearized: requires d >= 2");
    const double nu = 0.5 * d;
    const double x0 = first_zero(nu);
    const double y0 = first_zero(nu + 1.0);
    return x0 - d * (y0 - sigma * x0) / (beta_ratio * std::pow(sigma, nu - 1.0) * x0 - d * sigma);
}

DeltaTerms delta_nu_terms(int d, C1Estimate c1) {
    require_large(d, "delta_nu_terms");
    const auto& c = solve_constants();
    const double nu = 0.5 * d;
    const double cb = std::cbrt(nu);
    DeltaTerms t{};
    t.delta = c.D1_for(c1) / (cb * cb) + c.D2_for(c1) / (cb * cb * cb * cb);
    t.kmin_over_nu_pow = std::exp(c.a1 * cb + c.Q1) * (1.0 + c.E1 / cb + c.E2 / (cb * cb));
    t.sigma_pow = std::exp(2.0 * c.q1) *
                  (1.0 + 2.0 * c.q2 / (cb * cb) - c.q1 * c.q1 / nu + 2.0 * c.q2 * c.q2 / (cb * cb * cb * cb));
    return t;
}

DeltaTerms delta_nu_exact(int d, double sigma, double k) {
    if (d < 2) throw DomainError("delta_nu_exact: requires d >= 2");
    if (!(sigma >= 1.0) || !(k > 0.0)) throw DomainError("delta_nu_exact: requires sigma >= 1 and k > 0");
    const double nu = 0.5 * d;
    DeltaTerms t{};
    t.delta = bessel_j(nu, k * sigma) / std::pow(sigma, nu) - k * bessel_j(nu - 1.0, k) / d;
    t.kmin_over_nu_pow = std::exp(nu * std::log(k / nu));
    t.sigma_pow = std::exp(2.0 * nu * std::log(sigma));
    return t;
}

double phi_from_zero_condition(int d, double sigma, double k) {
    const DeltaTerms t = delta_nu_exact(d, sigma, k);
    if (!(t.delta > 0.0)) throw DomainError("phi_from_zero_condition: Delta must be positive");
    const double nu = 0.5 * d;
    return std::exp(nu * std::log(k) - 3.0 * nu * std::log(2.0) - std::lgamma(1.0 + nu) -
                    2.0 * nu * std::log(sigma) - std::log(t.delta));
}

PhiStarAsymptotic phi_star_asymptotic(int d, C1Estimate full_terms) {
    require_large(d, "phi_star_asymptotic");
    const auto& c = solve_constants();
    const double nu = 0.5 * d;
    const double log2e = std::numbers::log2e;
    const double D1 = c.D1_for(full_terms);
    const double D2 = c.D2_for(full_terms);
    const double expo = (3.0 - log2e) * nu - log2e * c.a1 * std::cbrt(nu) + (2.0 * c.q1 - c.Q1) * log2e;
    const double bracket = std::pow(nu, 1.0 / 6.0) + c.E1 / std::pow(nu, 1.0 / 6.0) +
                           (c.E2 - 2.0 * c.q2 - D2 / D1) / std::sqrt(nu);
    PhiStarAsymptotic r{};
    r.full = std::exp2(-expo) * bracket * std::sqrt(2.0 / kPi) / (2.0 * D1);
    r.coefficient = 1.0 / (std::pow(2.0, 2.0 / 3.0) * c.D1 * std::sqrt(kPi));
    r.dominant = r.coefficient * std::pow(static_cast<double>(d), 1.0 / 6.0) * std::exp2(-c.phi_exponent * d);
    return r;
}

KissingAsymptotic kissing_asymptotic(int d) {
    require_large(d, "kissing_asymptotic");
    const auto& c = solve_constants();
    KissingAsymptotic k{};
    k.coefficient = std::cbrt(2.0) * std::exp(2.0 * c.q1) / (c.D1 * std::sqrt(kPi));
    k.dominant = k.coefficient * std::pow(static_cast<double>(d), 1.0 / 6.0) * std::exp2(c.kiss_exponent * d);
    const double sigma = sigma_star_asymptotic(d);
    k.full = std::exp(d * std::log(2.0 * sigma) + std::log(phi_star_asymptotic(d).full)) - 1.0;
    return k;
}

double beta_ratio_asymptotic(int d) {
    require_large(d, "beta_ratio_asymptotic");
    const auto& c = solve_constants();
    const double nu = 0.5 * d;
    return 1.0 + 2.0 / (3.0 * nu) - 2.0 * c.C2 / (3.0 * c.C1 * std::pow(nu, 5.0 / 3.0));
}

HalfDifferences c_expansions(double nu) {
    if (!(nu >= 20.0)) throw DomainError("c_expansions: requires nu >= 20");
    const auto& c = solve_constants();
    const double base = c.C1 / std::pow(nu, 2.0 / 3.0) + c.C2 / std::pow(nu, 4.0 / 3.0);
    const double corr = 2.0 * c.C1 / (3.0 * std::pow(nu, 5.0 / 3.0));
    return {base, base - corr, base + corr};
}

HalfDifferences c_exact(double nu) {
    if (!(nu >= 2.0)) throw DomainError("c_exact: requires nu >= 2");
    const double x0 = first_zero(nu);
    const double y0 = first_zero(nu + 1.0);
    const double z0 = first_zero(nu - 1.0);
    return {0.5 * (bessel_j(nu - 1.0, x0) - bessel_j(nu + 1.0, x0)),
            0.5 * (bessel_j(nu, y0) - bessel_j(nu + 2.0, y0)),
            0.5 * (bessel_j(nu - 2.0, z0) - bessel_j(nu, z0))};
}

double beta_ratio_exact(int d) {
    const HalfDifferences h = c_exact(0.5 * d);
    return h.at_x0 / h.at_y0;
}

}  // namespace spherepack
