#include "spherepack/specialfn.hpp"

#include "spherepack/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace spherepack {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRescale = 1e250;
const double kLogRescale = std::log(kRescale);

void check_args(double nu, double x) {
    if (!std::isfinite(nu) || !std::isfinite(x))
        throw DomainError("bessel: non-finite argument");
    if (x < 0.0)
        throw DomainError("bessel: negative argument");
    if (nu <= -1.0)
        throw DomainError("bessel: order must exceed -1");
}

bool in_series_region(double nu, double x) { return 0.25 * x * x <= nu + 1.0; }

// Lambda_nu as its power series; terms decrease monotonically in the series region.
double lambda_series(double nu, double x) {
    const double q = -0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int m = 1; m < 1000; ++m) {
        term *= q / (m * (nu + m));
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

SignedLog make_log(double v) {
    if (v == 0.0) return {-INFINITY, 0};
    return {std::log(std::abs(v)), v > 0 ? 1 : -1};
}

SignedLog series_log(double nu, double x) {
    const SignedLog lam = make_log(lambda_series(nu, x));
    return {lam.log_abs + nu * std::log(0.5 * x) - std::lgamma(nu + 1.0), lam.sign};
}

// Downward recurrence from order alpha+top to alpha+bottom. Returns f at
// order alpha+keep relative to f at alpha+bottom, in log form. When
// `neumann` is set, also accumulates sum c_k f_{2k} for the normalisation
// (x/2)^alpha = sum_k c_k J_{alpha+2k}.
struct MillerResult {
    double log_keep;  // log|f_keep| in final units
    int sign_keep;
    double f_bottom;  // f at the bottom order, final units
    double norm;      // Neumann sum, final units
};

MillerResult miller(double alpha, double x, int top, int bottom, int keep, bool neumann) {
    std::vector<double> c;
    if (neumann) {
        c.resize(static_cast<std::size_t>(top / 2 + 1));
        c[0] = std::tgamma(alpha + 1.0);
        double g = c[0];
        for (std::size_t k = 1; k < c.size(); ++k) {
            if (k > 1) g *= (alpha + static_cast<double>(k) - 1.0) / static_cast<double>(k);
            c[k] = (alpha + 2.0 * static_cast<double>(k)) * g;
        }
    }
    double f_up = 0.0;
    double f = 1.0;
    double norm = 0.0;
    double saved = 0.0;
    bool have_saved = false;
    int rescales = 0;
    for (int n = top; ; --n) {
        if (neumann && n % 2 == 0) norm += c[static_cast<std::size_t>(n / 2)] * f;
        if (n == keep) {
            saved = f;
            have_saved = true;
        }
        if (n == bottom) break;
        const double f_down = 2.0 * (alpha + n) / x * f - f_up;
        f_up = f;
        f = f_down;
        if (std::abs(f) > kRescale) {
            f /= kRescale;
            f_up /= kRescale;
            norm /= kRescale;
            if (have_saved) ++rescales;
        }
    }
    const SignedLog s = make_log(saved);
    return {s.log_abs - rescales * kLogRescale, s.sign, f, norm};
}

SignedLog miller_neumann_log(double nu, double x) {
    const int n0 = static_cast<int>(std::floor(nu));
    const double alpha = nu - n0;
    const int top = std::max(n0, static_cast<int>(std::ceil(x))) + 20 +
                    static_cast<int>(std::ceil(10.0 * std::cbrt(x)));
    const MillerResult m = miller(alpha, x, top, 0, n0, true);
    return {m.log_keep + alpha * std::log(0.5 * x) - std::log(m.norm), m.sign_keep};
}

double hankel_j(double mu, double x) {
    const double m4 = 4.0 * mu * mu;
    double p = 1.0;
    double q = 0.0;
    double t = 1.0;
    double prev = INFINITY;
    for (int k = 1; k < 80; ++k) {
        const double odd = 2.0 * k - 1.0;
        t *= (m4 - odd * odd) / (8.0 * k * x);
        const double a = std::abs(t);
        if (a >= prev) break;
        prev = a;
        const int j = k / 2;
        const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) p += sgn * t;
        else q += sgn * t;
        if (a < 1e-17) break;
    }
    const double w = x - (0.5 * mu + 0.25) * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(w) - q * std::sin(w));
}

SignedLog large_x_log(double nu, double x) {
    const int n0 = static_cast<int>(std::floor(nu));
    const double alpha = nu - n0;
    double jm1 = hankel_j(alpha, x);
    if (n0 == 0) return make_log(jm1);
    double j = hankel_j(alpha + 1.0, x);
    const int m = static_cast<int>(std::floor(x - alpha));
    const int target = std::min(n0, m);
    for (int n = 1; n < target; ++n) {
        const double next = 2.0 * (alpha + n) / x * j - jm1;
        jm1 = j;
        j = next;
    }
    if (n0 <= m) return make_log(j);
    // Orders above x: forward recurrence is unstable, take ratios from Miller.
    const int top = n0 + 20 + static_cast<int>(std::ceil(10.0 * std::cbrt(x)));
    const MillerResult r = miller(alpha, x, top, m, n0, false);
    const SignedLog base = make_log(j);
    const SignedLog fb = make_log(r.f_bottom);
    return {base.log_abs + r.log_keep - fb.log_abs, base.sign * r.sign_keep * fb.sign};
}

SignedLog nonnegative_order_log(double nu, double x) {
    if (in_series_region(nu, x)) return series_log(nu, x);
    if (x < 25.0) return miller_neumann_log(nu, x);
    return large_x_log(nu, x);
}

}  // namespace

double SignedLog::value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

SignedLog bessel_j_log(double nu, double x) {
    check_args(nu, x);
    if (x == 0.0) return nu == 0.0 ? SignedLog{0.0, 1} : SignedLog{-INFINITY, 0};
    if (nu >= 0.0) return nonnegative_order_log(nu, x);
    if (in_series_region(nu, x)) return series_log(nu, x);
    const double a = nonnegative_order_log(nu + 1.0, x).value();
    const double b = nonnegative_order_log(nu + 2.0, x).value();
    return make_log(2.0 * (nu + 1.0) / x * a - b);
}

double bessel_j(double nu, double x) { return bessel_j_log(nu, x).value(); }

double normalized_bessel_j(double nu, double x) {
    check_args(nu, x);
    if (x == 0.0) return 1.0;
    if (in_series_region(nu, x)) return lambda_series(nu, x);
    const SignedLog j = bessel_j_log(nu, x);
    if (j.sign == 0) return 0.0;
    return j.sign * std::exp(std::lgamma(nu + 1.0) + nu * std::log(2.0 / x) + j.log_abs);
}

double first_zero(double nu) {
    if (!std::isfinite(nu) || nu <= -1.0)
        throw DomainError("first_zero: order must be finite and exceed -1");
    double lo = std::max(nu, 1e-3);
    const double h = 0.25 * std::max(1.0, std::cbrt(std::abs(nu)));
    double hi = lo;
    int steps = 0;
    while (bessel_j(nu, hi) > 0.0) {
        lo = hi;
        hi += h;
        if (++steps > 2000) throw ConvergenceError("first_zero: no sign change found", lo, hi);
    }
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (bessel_j(nu, mid) > 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

double zero_asymptotic(double nu, ZeroOf which) {
    if (!(nu >= 10.0)) throw DomainError("zero_asymptotic: order must be at least 10");
    const double c = std::cbrt(nu);
    const double base = nu + kZeroA1 * c + kZeroA2 / c + kZeroA3 / nu;
    const double shift = kZeroA1 / (3.0 * c * c) - kZeroA2 / (3.0 * c * c * c * c);
    switch (which) {
    case ZeroOf::Nu: return base;
    case ZeroOf::NuPlusOne: return base + 1.0 + shift;
    case ZeroOf::NuMinusOne: return base - 1.0 - shift;
    }
    return base;
}

ZeroTriple first_zeros(double nu) {
    return {first_zero(nu), first_zero(nu + 1.0), first_zero(nu - 1.0)};
}

double watson_j(double nu, double x) {
    if (!(x > nu) || nu < 0.0) throw DomainError("watson_j: requires x > nu >= 0");
    const double s = std::sqrt(x * x - nu * nu);
    const double amp = std::sqrt(2.0 / (kPi * s));
    const double w = s - nu * std::acos(nu / x);
    return amp * std::cos(w - 0.25 * kPi);
}

double watson_error_band(double nu, double x) {
    if (!(x > nu) || nu < 0.0) throw DomainError("watson_error_band: requires x > nu >= 0");
    const double s2 = x * x - nu * nu;
    const double amp = std::sqrt(2.0 / (kPi * std::sqrt(s2)));
    return amp * (3.0 * x * x + 2.0 * nu * nu) / (12.0 * s2);
}

double log_sphere_volume(int d, double R) {
    if (d < 1) throw DomainError("sphere_volume: dimension must be positive");
    if (!(R >= 0.0)) throw DomainError("sphere_volume: radius must be non-negative");
    return 0.5 * d * std::log(kPi) + d * std::log(R) - std::lgamma(1.0 + 0.5 * d);
}

double sphere_volume(int d, double R) {
    if (R == 0.0 && d >= 1) return 0.0;
    return std::exp(log_sphere_volume(d, R));
}

double sphere_surface(int d, double r) {
    if (d < 1) throw DomainError("sphere_surface: dimension must be positive");
    if (!(r >= 0.0)) throw DomainError("sphere_surface: radius must be non-negative");
    if (d == 1) return 2.0;
    if (r == 0.0) return 0.0;
    return std::exp(std::log(2.0) + 0.5 * d * std::log(kPi) + (d - 1) * std::log(r) -
                    std::lgamma(0.5 * d));
}

}  // namespace spherepack
