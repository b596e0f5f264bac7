#pragma once

#include "spherepack/models.hpp"

#include <vector>

namespace spherepack {

// Number variance in a spherical window of radius R.
double number_variance(const RadialModel& model, const PackingDensity& density, double R);

// x (1 - x) with x = 2^d phi R^d; exact for R <= 1/2.
double variance_lower_bound(int d, double phi, double R);

// Radius where the expected count reaches one; Yamada's condition only
// constrains larger windows.
double yamada_threshold_radius(int d, double phi);

struct VarianceCheck {
    double R0 = 0.0;
    std::vector<double> R;
    std::vector<double> sigma2;
    std::vector<double> yamada_bound;  // theta (1 - theta)
    std::vector<bool> violated;
    std::vector<double> violations;
};

// Evaluates sigma^2(R) >= theta (1 - theta) on a geometric grid over (R0, R_max]
// merged with the radii where the expected count is a half-integer.
VarianceCheck yamada_check(const RadialModel& model, const PackingDensity& density, double R_max, int n_grid);

}  // namespace spherepack
