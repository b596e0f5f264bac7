#pragma once

#include <string>
#include <vector>

namespace spherepack {

enum class ModelKind { Step, StepDelta, StepDeltaGap };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);  // "step", "delta", "gap"

// Test pair-correlation function: Theta(r - sigma) plus a shell of weight Z at r = 1.
struct RadialModel {
    ModelKind kind = ModelKind::Step;
    double sigma = 1.0;
    double Z = 0.0;

    static RadialModel step();
    static RadialModel delta(double Z);
    static RadialModel gap(double sigma, double Z);

    void validate() const;
};

struct PackingDensity {
    int d = 1;
    double phi = 0.0;
    double rho = 0.0;  // phi / v1(1/2)

    static PackingDensity from_phi(int d, double phi);
};

struct G2Value {
    double continuous;
    double delta_weight;  // coefficient of delta(r - 1)
};
G2Value g2_eval(const RadialModel& model, const PackingDensity& density, double r);

double structure_factor_step(int d, double phi, double k);
double structure_factor_delta(int d, double phi, double Z, double k);
double structure_factor_gap(int d, double phi, double sigma, double Z, double k);
double structure_factor(const RadialModel& model, const PackingDensity& density, double k);

// dS/dk of the general gap form; the step and delta models are special cases.
double structure_factor_derivative(int d, double phi, double sigma, double Z, double k);

// Quadrature of the radial Fourier transform of h = g2 - 1. The continuous
// part of h has support [0, sigma]; the delta shell is added analytically.
double structure_factor_numeric(const RadialModel& model, const PackingDensity& density, double k,
                                double r_max);

// c in S(k) = S(0) + c k^2 + O(k^4).
double small_k_quadratic_coefficient(const RadialModel& model, const PackingDensity& density);

// Z making S(0) = 0 for the gap model.
double hyperuniform_Z(int d, double phi, double sigma);

// 2 (x0(d/2) + 10 (d/2)^{1/3} + 20), covering several oscillations past the first zero.
double default_k_max(int d);

struct StructureFactorCurve {
    RadialModel model;
    PackingDensity density;
    std::vector<double> k;
    std::vector<double> S;
    double S0 = 1.0;
};

StructureFactorCurve sample_structure_factor(const RadialModel& model, const PackingDensity& density,
                                             double k_max, int samples);

}  // namespace spherepack
