#pragma once

namespace spherepack {

// Which estimate of C1 feeds a derived quantity: the dominant Watson term,
// or the three-term expansion in powers of 1/a1.
enum class C1Estimate { Dominant, Refined };

struct AsymptoticConstants {
    double a1, a2, a3;
    double q1, q2, Q1;
    double C1, C2;               // dominant-term estimates
    double C11, C12, C13;        // coefficients of the refined expansion
    double C1_refined;           // C11/a1^{5/4} + C12/a1^{11/4} + C13/a1^{17/4}
    double D1, D2;               // from the refined C1
    double D1_dominant, D2_dominant;
    double E1, E2;
    double phi_exponent;   // (3 - log2 e)/2
    double kiss_exponent;  // (log2 e - 1)/2
    double q1_residual;    // |q e^q + e^{2q} - 5 e^q + 4| at q = q1

    double D1_for(C1Estimate e) const { return e == C1Estimate::Refined ? D1 : D1_dominant; }
    double D2_for(C1Estimate e) const { return e == C1Estimate::Refined ? D2 : D2_dominant; }
    double C1_for(C1Estimate e) const { return e == C1Estimate::Refined ? C1_refined : C1; }
};

// Computed once; q1 by root finding on [0.5, 1.5].
const AsymptoticConstants& solve_constants();

double sigma_star_asymptotic(int d);
double kmin_asymptotic(int d);

// k_min from linearising the Bessel functions about their first zeros, with
// exact zeros and the given sigma and beta1/beta2.
double kmin_linearized(int d, double sigma, double beta_ratio);

struct DeltaTerms {
    double delta;             // Delta_nu(k_min)
    double kmin_over_nu_pow;  // (k_min/nu)^nu
    double sigma_pow;         // sigma*^{2 nu}
};
DeltaTerms delta_nu_terms(int d, C1Estimate c1 = C1Estimate::Dominant);

// The same three quantities evaluated directly at a given (sigma, k).
DeltaTerms delta_nu_exact(int d, double sigma, double k);

// phi from the zero condition at (sigma, k): k^nu / (2^{3nu} Gamma(1+nu) sigma^{2nu} Delta).
double phi_from_zero_condition(int d, double sigma, double k);

struct PhiStarAsymptotic {
    double full;         // three-term expansion
    double dominant;     // coefficient d^{1/6} 2^{-phi_exponent d}
    double coefficient;  // 1/(2^{2/3} D1 sqrt(pi)), refined D1
};
PhiStarAsymptotic phi_star_asymptotic(int d, C1Estimate full_terms = C1Estimate::Dominant);

struct KissingAsymptotic {
    double dominant;     // coefficient d^{1/6} 2^{kiss_exponent d}
    double full;         // (2 sigma*)^d phi* - 1 from the full expansions
    double coefficient;  // 2^{1/3} e^{2 q1} / (D1 sqrt(pi)), refined D1
};
KissingAsymptotic kissing_asymptotic(int d);

double beta_ratio_asymptotic(int d);

struct HalfDifferences {
    double at_x0;  // (J_{nu-1} - J_{nu+1})/2 at the first zero of J_nu
    double at_y0;  // (J_nu - J_{nu+2})/2 at the first zero of J_{nu+1}
    double at_z0;  // (J_{nu-2} - J_nu)/2 at the first zero of J_{nu-1}
};
HalfDifferences c_expansions(double nu);
HalfDifferences c_exact(double nu);

// beta1/beta2 from exact zeros and Bessel values.
double beta_ratio_exact(int d);

}  // namespace spherepack
