#include "spherepack/errors.hpp"
#include "spherepack/models.hpp"
#include "spherepack/optimizer.hpp"
#include "spherepack/specialfn.hpp"

#include <doctest.h>

#include <cmath>

using namespace spherepack;

namespace {

struct Case {
    RadialModel model;
    PackingDensity density;
};

// Terminal parameters for the three models plus one generic gap point.
std::vector<Case> oracle_cases(int d) {
    std::vector<Case> out;
    out.push_back({RadialModel::step(), PackingDensity::from_phi(d, std::ldexp(1.0, -d))});
    out.push_back({RadialModel::delta(0.5 * d), PackingDensity::from_phi(d, std::ldexp(d + 2.0, -(d + 1)))});
    const double phi = 0.3 * std::ldexp(1.0, -d) * (d + 2);
    out.push_back({RadialModel::gap(1.3, hyperuniform_Z(d, phi, 1.3)), PackingDensity::from_phi(d, phi)});
    if (d >= 2) {
        const auto rec = terminal_gap(d);
        out.push_back({RadialModel::gap(rec.sigma_star, rec.Z_star), PackingDensity::from_phi(d, rec.phi_star)});
    }
    return out;
}

}  // namespace

TEST_SUITE("models") {

TEST_CASE("model names round-trip") {
    for (auto k : {ModelKind::Step, ModelKind::StepDelta, ModelKind::StepDeltaGap})
        CHECK(model_kind_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(model_kind_from_string("lattice"), DomainError);
}

TEST_CASE("pair correlation fields") {
    const auto dens = PackingDensity::from_phi(3, 5.0 / 16.0);
    CHECK(dens.rho == doctest::Approx(5.0 / 16.0 / sphere_volume(3, 0.5)).epsilon(1e-15));
    const auto step = g2_eval(RadialModel::step(), dens, 0.5);
    CHECK(step.continuous == 0.0);
    CHECK(step.delta_weight == 0.0);
    const auto delta = g2_eval(RadialModel::delta(1.5), dens, 1.5);
    CHECK(delta.continuous == 1.0);
    CHECK(delta.delta_weight == doctest::Approx(1.5 / (sphere_surface(3, 1.0) * dens.rho)).epsilon(1e-15));
    const auto gap = g2_eval(RadialModel::gap(1.2, 2.0), dens, 1.1);
    CHECK(gap.continuous == 0.0);
    CHECK(gap.delta_weight > 0.0);
}

TEST_CASE("closed forms and reductions") {
    for (double k : {0.0, 1e-6, 0.3, 2.0, 9.5, 40.0}) {
        const double sinc = k == 0.0 ? 1.0 : std::sin(k) / k;
        CHECK(structure_factor_step(1, 0.37, k) == doctest::Approx(1.0 - 2 * 0.37 * sinc).epsilon(1e-13));
        for (int d : {1, 3, 8, 40}) {
            CHECK(structure_factor_step(d, 0.0, k) == 1.0);
            CHECK(structure_factor_delta(d, 0.01, 0.0, k) == structure_factor_step(d, 0.01, k));
            CHECK(structure_factor_gap(d, 0.01, 1.0, 0.7, k) == structure_factor_delta(d, 0.01, 0.7, k));
        }
    }
    CHECK(std::abs(structure_factor_step(1, 0.5, 1e-8)) < 1e-15);
    for (int d : {1, 2, 3, 10, 24}) {
        const double phi = 0.6 * std::ldexp(1.0, -d);
        const double Z = std::ldexp(phi, d) * d / (d + 2.0);
        CHECK(structure_factor_delta(d, phi, Z, 0.0) == doctest::Approx(1.0 - std::ldexp(phi, d + 1) / (d + 2)).epsilon(1e-14));
    }
    CHECK(std::abs(structure_factor_delta(3, 5.0 / 16.0, 1.5, 0.0)) < 1e-15);
    // Published three-dimensional optimum, rounded to seven digits.
    CHECK(std::abs(structure_factor_gap(3, 0.5758254, 1.246997, 7.932582, 0.0)) < 2e-5);
}

TEST_CASE("radial quadrature agrees with the closed forms") {
    double worst = 0.0;
    for (int d : {1, 2, 3, 5, 8}) {
        const double k_hi = std::max(4.0 * 0.5 * d, 4.0);
        for (const auto& c : oracle_cases(d)) {
            for (int i = 0; i < 200; ++i) {
                const double k = 0.01 + (k_hi - 0.01) * i / 199.0;
                const double exact = structure_factor(c.model, c.density, k);
                const double quad = structure_factor_numeric(c.model, c.density, k, 50.0 * c.model.sigma);
                worst = std::max(worst, std::abs(exact - quad));
                CAPTURE(d);
                CAPTURE(to_string(c.model.kind));
                CAPTURE(k);
                REQUIRE(std::abs(exact - quad) <= 1e-6);
            }
        }
    }
    MESSAGE("worst quadrature discrepancy: " << worst);
    const auto step3 = PackingDensity::from_phi(3, 0.1);
    CHECK(structure_factor_numeric(RadialModel::step(), step3, 5.0, 50.0) ==
          doctest::Approx(structure_factor_step(3, 0.1, 5.0)).epsilon(1e-6));
    const auto d2 = PackingDensity::from_phi(2, 0.5);
    CHECK(std::abs(structure_factor_numeric(RadialModel::delta(1.0), d2, 0.01, 50.0) -
                   structure_factor_delta(2, 0.5, 1.0, 0.01)) <= 1e-6);
    // d = 5 at the published optimum: the quadrature reproduces the zero at the deepest minimum.
    const auto scan = find_minima(5, 0.3048322, 1.186929, 21.97918, default_k_max(5));
    REQUIRE(scan.deepest());
    const auto d5 = PackingDensity::from_phi(5, 0.3048322);
    CHECK(std::abs(structure_factor_numeric(RadialModel::gap(1.186929, 21.97918), d5, scan.deepest()->k, 60.0)) <= 1e-5);
    CHECK_THROWS_AS(structure_factor_numeric(RadialModel::step(), d5, 1.0, 10.0), DomainError);
}

TEST_CASE("hyperuniform gap model vanishes quadratically at the origin") {
    for (int d : {2, 3, 5, 8, 12}) {
        const auto rec = terminal_gap(d);
        const auto model = RadialModel::gap(rec.sigma_star, rec.Z_star);
        const auto dens = PackingDensity::from_phi(d, rec.phi_star);
        CHECK(std::abs(structure_factor(model, dens, 0.0)) < 1e-12);
        auto f = [&](double h) { return structure_factor(model, dens, h) / (h * h); };
        const double h = 0.02;
        const double rich = (4.0 * f(0.5 * h) - f(h)) / 3.0;
        const double c = small_k_quadratic_coefficient(model, dens);
        CAPTURE(d);
        CHECK(std::abs(rich - c) <= 1e-8 * std::max(1.0, std::abs(c)) + 1e-7);
        CHECK(c > 0.0);
    }
}

TEST_CASE("quadratic coefficient matches the Maclaurin forms") {
    for (int d : {1, 2, 3, 7, 20}) {
        const double phi = 0.4 * std::ldexp(1.0, -d);
        const auto dens = PackingDensity::from_phi(d, phi);
        const double w = std::ldexp(phi, d);
        CHECK(small_k_quadratic_coefficient(RadialModel::step(), dens) == doctest::Approx(w / (2.0 * (d + 2))).epsilon(1e-14));
        CHECK(small_k_quadratic_coefficient(RadialModel::delta(0.9), dens) ==
              doctest::Approx(w / (2.0 * (d + 2)) - 0.9 / (2.0 * d)).epsilon(1e-14));
        // Finite-difference check of S(0) + c k^2.
        const auto model = RadialModel::gap(1.1, 0.3);
        const double s0 = structure_factor(model, dens, 0.0);
        auto f = [&](double h) { return (structure_factor(model, dens, h) - s0) / (h * h); };
        const double rich = (4.0 * f(0.01) - f(0.02)) / 3.0;
        CHECK(std::abs(rich - small_k_quadratic_coefficient(model, dens)) < 1e-8);
    }
}

TEST_CASE("derivative matches finite differences") {
    for (int d : {1, 4, 24}) {
        const double phi = 0.5 * std::ldexp(1.0, -d), sigma = 1.07, Z = 0.8;
        for (double k : {0.5, 3.0, 11.0}) {
            const double h = 1e-4;
            const double fd = (structure_factor_gap(d, phi, sigma, Z, k + h) - structure_factor_gap(d, phi, sigma, Z, k - h)) / (2 * h);
            CHECK(structure_factor_derivative(d, phi, sigma, Z, k) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("curve sampling") {
    const auto dens = PackingDensity::from_phi(1, 0.5);
    const auto c = sample_structure_factor(RadialModel::step(), dens, 10.0, 11);
    REQUIRE(c.k.size() == 11);
    CHECK(c.k.front() == 0.0);
    CHECK(c.k.back() == 10.0);
    CHECK(std::abs(c.S0) <= 1e-15);
    for (std::size_t i = 1; i < c.k.size(); ++i) CHECK(c.S[i] == doctest::Approx(1.0 - std::sin(c.k[i]) / c.k[i]).epsilon(1e-13));
    CHECK_THROWS_AS(sample_structure_factor(RadialModel::step(), dens, 10.0, 0), DomainError);
    CHECK(default_k_max(200) > first_zero(100.0));
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(RadialModel::gap(0.9, 1.0).validate(), DomainError);
    CHECK_THROWS_AS(RadialModel::delta(-1.0).validate(), DomainError);
    CHECK_THROWS_AS(PackingDensity::from_phi(3, 1.5), DomainError);
    CHECK_THROWS_AS(PackingDensity::from_phi(0, 0.1), DomainError);
    CHECK_THROWS_AS(structure_factor_step(3, 0.1, -1.0), DomainError);
    CHECK_THROWS_AS(g2_eval(RadialModel::step(), PackingDensity::from_phi(3, 0.1), -0.1), DomainError);
}

}
