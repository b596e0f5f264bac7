#pragma once

namespace spherepack {

// Bessel function of the first kind. Orders in (-1, 0) are accepted so that
// J_{nu-1} is available for d = 1.
double bessel_j(double nu, double x);

// log|J_nu(x)| and its sign; avoids underflow for large orders.
struct SignedLog {
    double log_abs;
    int sign;  // -1, 0 or +1; value = sign * exp(log_abs)
    double value() const;
};
SignedLog bessel_j_log(double nu, double x);

// Lambda_nu(x) = Gamma(nu+1) (2/x)^nu J_nu(x), equal to 1 at x = 0.
double normalized_bessel_j(double nu, double x);

// First positive zero of J_nu, to 1e-12.
double first_zero(double nu);

enum class ZeroOf { Nu, NuPlusOne, NuMinusOne };

// Large-order expansion of the first zero of J_nu, J_{nu+1} or J_{nu-1}.
double zero_asymptotic(double nu, ZeroOf which);

struct ZeroTriple {
    double x0;  // J_nu
    double y0;  // J_{nu+1}
    double z0;  // J_{nu-1}
};
ZeroTriple first_zeros(double nu);

// Watson's dominant term for x > nu, and A_nu(x) times its big-O error term.
double watson_j(double nu, double x);
double watson_error_band(double nu, double x);

// Volume of a d-ball of radius R and surface area of a sphere of radius r.
double sphere_volume(int d, double R);
double log_sphere_volume(int d, double R);
double sphere_surface(int d, double r);

// Airy-type constants used by the large-order zero expansion.
inline constexpr double kZeroA1 = 1.8557571;
inline constexpr double kZeroA2 = 1.033150;
inline constexpr double kZeroA3 = -0.003971;

}  // namespace spherepack
