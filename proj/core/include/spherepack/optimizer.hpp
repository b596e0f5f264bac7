#pragma once

#include "spherepack/models.hpp"

#include <optional>
#include <vector>

namespace spherepack {

struct Minimum {
    double k;
    double S;
};

struct MinimaScan {
    std::vector<Minimum> minima;  // ascending k
    bool deepest_near_edge = false;  // deepest minimum within 2% of k_max

    // Deepest minimum, or nullopt if there is none.
    std::optional<Minimum> deepest() const;
};

// Local minima of S on (0, k_max], located from sign changes of dS/dk on a
// uniform grid and refined by bisection to |dk| <= 1e-10.
MinimaScan find_minima(int d, double phi, double sigma, double Z, double k_max, int grid = 2048);

struct TerminalDensityRecord {
    int d = 0;
    ModelKind kind = ModelKind::Step;
    double sigma_star = 1.0;
    double Z_star = 0.0;
    double phi_star = 0.0;
    double k_min = 0.0;  // binding wavenumber (0 when the origin binds)
    double ratio = 0.0;  // 2^{d+1} phi* / (d+2)
    double min_S_residual = 0.0;  // |S(k_min)|
    double min_S_grid = 0.0;      // smallest S seen on the verification grid
    bool first_minimum_deepest = true;
    std::vector<Minimum> minima;
};

TerminalDensityRecord terminal_step(int d);
TerminalDensityRecord terminal_delta(int d);

struct GapOptions {
    int k_grid = 2048;
    int sigma_scan = 40;
    double sigma_tol = 1e-9;
};

// Largest admissible phi for the gap model at fixed sigma (with Z chosen for
// hyperuniformity), and the wavenumber where S touches zero.
struct GapPoint {
    double sigma;
    double W;  // (2 sigma)^d phi = Z + 1
    double log_phi;
    double k_touch;  // 0 if the small-k constraint binds
};
GapPoint gap_max_phi(int d, double sigma, int k_grid = 2048);

TerminalDensityRecord terminal_gap(int d, const GapOptions& options = {});

// 2^{d+1} phi / (d+2), computed in log space.
double improvement_ratio(int d, double phi);

struct ClassicalBounds {
    int d;
    double minkowski;
    double ball;
    double greedy;
    double blichfeldt;
    double rogers;
    double kabatiansky_levenshtein;
};
ClassicalBounds classical_bounds(int d);

// Density of the densest known packing for the dimensions discussed alongside
// the gap-model results (56, 60, 64).
std::optional<double> densest_known_density(int d);

}  // namespace spherepack
