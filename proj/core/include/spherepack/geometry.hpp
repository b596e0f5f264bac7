#pragma once

namespace spherepack {

// Scaled intersection volume of two d-balls of radius R whose centres are r apart.
double alpha2_integral(int d, double r, double R);

struct Alpha2Series {
    double value;
    int terms;
    double tail_bound;  // geometric estimate of the neglected tail
    bool fell_back;     // series too slow; value came from the integral
};
Alpha2Series alpha2_series(int d, double r, double R);

// Large-d approximation of alpha_2(R; R), i.e. half-overlapping balls.
double alpha2_asymptotic(int d);

// Scaled union volume, 2 for disjoint balls.
double beta2(int d, double r, double R);

}  // namespace spherepack
