#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace spherepack {

// Packing fraction of the ghost-RSA process at time t (unit arrival intensity).
double phi_of_t(int d, double t);

// Pair correlation of the ghost-RSA process at time t, and its t -> infinity limit.
double g2_matern(int d, double r, double t);
double g2_matern_limit(int d, double r);

struct ContactExcess {
    int d;
    double excess;  // g2(1+; infinity) - 1
};
std::vector<ContactExcess> decorrelation_profile(int d_max);

using Point = std::array<double, 3>;

struct Arrival {
    double t;
    Point x;
};

// Poisson arrivals in [0,L)^d x [0,T), generated slab by slab in unit time so
// that runs with the same seed and larger T extend smaller-T runs.
std::vector<Arrival> generate_arrivals(int d, double L, double T, std::uint64_t seed);

// Ghost-RSA acceptance: i is kept iff no arrival with an earlier time lies
// within periodic distance 1. Independent of the order of `arrivals`.
std::vector<char> ghost_rsa_accept(const std::vector<Arrival>& arrivals, int d, double L);

double min_periodic_distance(const std::vector<Point>& points, int d, double L);

// Pair-distance histogram on [r_min, r_max) accumulated over one or more runs.
struct PairHistogram {
    int d = 1;
    double r_min = 0.999;
    double r_max = 3.0;
    std::vector<std::uint64_t> counts;
    double pair_norm = 0.0;  // sum over runs of N (N - 1) / (2 V)
    double volume_sum = 0.0; // sum over runs of V
    int runs = 0;

    PairHistogram() = default;
    PairHistogram(int d, int bins, double r_min, double r_max);

    int bins() const { return static_cast<int>(counts.size()); }
    double width() const { return (r_max - r_min) / bins(); }
    double center(int i) const { return r_min + (i + 0.5) * width(); }
    double shell(int i) const;  // v1(r_{i+1}) - v1(r_i)

    void accumulate(const std::vector<Point>& points, double L);
    void merge(const PairHistogram& other);

    std::vector<double> estimate() const;
    std::vector<double> standard_error() const;
};

struct GoodnessOfFit {
    double statistic;
    int dof;
    double p_value;
    bool pass;  // p >= 1 - confidence
};

// Pearson chi-square of pooled bin counts against rho^2 V/2 * integral of g2 s1
// over each bin, with bins merged until each expects at least `min_expected`.
GoodnessOfFit chi_square_gof(const PairHistogram& hist, const std::function<double(double)>& g2, double rho,
                             double confidence = 0.95, double min_expected = 5.0);

struct MaternConfig {
    int d = 1;
    double box_length = 20.0;
    double time_horizon = 10.0;
    int kappa = 1;
    std::uint64_t seed = 1;
    int bins = 50;
    bool saturate = false;  // kappa = 0 only
    double r_max = 3.0;

    void validate() const;
};

struct MaternResult {
    MaternConfig config;
    std::vector<Point> centers;
    std::size_t arrivals = 0;
    std::size_t ghost_count = 0;  // rejected arrivals
    double phi_hat = 0.0;
    std::optional<double> phi_analytic;
    bool saturated = false;
    PairHistogram histogram;
    std::vector<double> g2_analytic;  // at bin centres, kappa = 1 only
};

MaternResult simulate(const MaternConfig& config);

}  // namespace spherepack
