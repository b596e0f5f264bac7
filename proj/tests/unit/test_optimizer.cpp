#include "spherepack/errors.hpp"
#include "spherepack/models.hpp"
#include "spherepack/optimizer.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace spherepack;

TEST_SUITE("optimizer") {

TEST_CASE("step and delta closed forms") {
    CHECK(terminal_step(1).phi_star == 0.5);
    CHECK(terminal_step(3).phi_star == 0.125);
    CHECK(terminal_step(10).phi_star == 0.0009765625);
    CHECK(terminal_delta(1).phi_star == 0.75);
    CHECK(terminal_delta(1).Z_star == 0.5);
    CHECK(terminal_delta(3).phi_star == 5.0 / 16.0);
    CHECK(terminal_delta(3).Z_star == 1.5);
    CHECK(terminal_delta(24).phi_star == 26.0 / std::ldexp(1.0, 25));
    for (int d = 1; d <= 64; ++d) {
        const auto s = terminal_step(d);
        const auto t = terminal_delta(d);
        CHECK(s.phi_star == std::ldexp(1.0, -d));
        CHECK(t.phi_star == (d + 2.0) / std::ldexp(1.0, d + 1));
        CHECK(t.Z_star == 0.5 * d);
        CHECK(s.k_min == 0.0);
        CHECK(s.min_S_grid >= -1e-9);
        CHECK(t.min_S_grid >= -1e-9);
        CHECK(t.ratio == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("low-dimensional gap optima") {
    const auto r2 = terminal_gap(2);
    CHECK(r2.sigma_star == doctest::Approx(1.2946).epsilon(5e-5));
    CHECK(r2.Z_star == doctest::Approx(4.0148).epsilon(1e-4));
    CHECK(r2.phi_star == doctest::Approx(0.74803).epsilon(1e-5));
    const auto r3 = terminal_gap(3);
    CHECK(r3.sigma_star == doctest::Approx(1.246997).epsilon(1e-6));
    CHECK(r3.phi_star == doctest::Approx(0.5758254).epsilon(1e-6));
    CHECK(r3.Z_star == doctest::Approx(7.932582).epsilon(1e-5));
    const auto r24 = terminal_gap(24);
    CHECK(r24.phi_star == doctest::Approx(8.245251e-05).epsilon(1e-6));
    CHECK(r24.Z_star == doctest::Approx(5473.546).epsilon(1e-4));
    CHECK(terminal_gap(12).first_minimum_deepest);
}

TEST_CASE("d = 200 optimum") {
    const auto r = terminal_gap(200);
    CHECK(r.sigma_star == doctest::Approx(1.008510).epsilon(1e-6));
    CHECK(r.phi_star == doctest::Approx(5.667098e-44).epsilon(1e-4));
    CHECK(r.Z_star == doctest::Approx(4.959086e17).epsilon(1e-4));
    CHECK(std::abs(r.k_min - 108.4395) <= 1e-3);
    CHECK(r.min_S_residual <= 1e-7);
}

TEST_CASE("record invariants and local optimality") {
    for (int d : {2, 3, 4, 5, 6, 7, 8, 12, 24, 36, 56, 100}) {
        const auto r = terminal_gap(d);
        CAPTURE(d);
        CHECK(std::abs(structure_factor_gap(d, r.phi_star, r.sigma_star, r.Z_star, 0.0)) <= 1e-12 * (1.0 + r.Z_star));
        CHECK(r.min_S_grid >= -1e-9);
        CHECK(r.min_S_residual <= 1e-7);
        CHECK(r.ratio == doctest::Approx(std::ldexp(r.phi_star, d + 1) / (d + 2)).epsilon(1e-13));
        CHECK(r.Z_star == doctest::Approx(std::pow(2.0 * r.sigma_star, d) * r.phi_star - 1.0).epsilon(1e-12));
        for (double ds : {-0.002, 0.002}) CHECK(gap_max_phi(d, r.sigma_star + ds).log_phi <= std::log(r.phi_star));
    }
}

TEST_CASE("gap beats delta beats step, below Blichfeldt, for 3 <= d <= 200") {
    for (int d = 3; d <= 200; ++d) {
        const auto g = terminal_gap(d);
        CAPTURE(d);
        REQUIRE(g.phi_star > terminal_delta(d).phi_star);
        REQUIRE(terminal_delta(d).phi_star > terminal_step(d).phi_star);
        REQUIRE(g.phi_star < classical_bounds(d).blichfeldt);
        REQUIRE(g.min_S_grid >= -1e-9);
    }
}

TEST_CASE("minima scan") {
    CHECK(find_minima(5, 0.0, 1.0, 0.0, 50.0).minima.empty());
    CHECK_FALSE(find_minima(5, 0.0, 1.0, 0.0, 50.0).deepest());
    const auto scan = find_minima(3, 0.125, 1.0, 0.0, 30.0);
    REQUIRE_FALSE(scan.minima.empty());
    for (const auto& m : scan.minima) {
        CHECK(std::abs(structure_factor_derivative(3, 0.125, 1.0, 0.0, m.k)) < 1e-8);
        CHECK(m.S > 0.0);
    }
    CHECK_THROWS_AS(find_minima(3, 0.1, 1.0, 0.0, 30.0, 4), DomainError);
}

TEST_CASE("classical bounds") {
    CHECK(classical_bounds(2).minkowski == doctest::Approx(std::numbers::pi * std::numbers::pi / 12.0).epsilon(1e-14));
    CHECK(classical_bounds(3).greedy == 0.125);
    CHECK(densest_known_density(56).value() == 2.327670e-11);
    CHECK(densest_known_density(60).value() == 2.966747e-13);
    CHECK(densest_known_density(64).value() == 1.326615e-12);
    CHECK_FALSE(densest_known_density(57));
    for (int d : {2, 10, 100, 1000}) {
        const auto b = classical_bounds(d);
        CHECK(b.minkowski <= b.blichfeldt);
        CHECK(b.greedy <= b.minkowski);
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(terminal_gap(1), DomainError);
    CHECK_THROWS_AS(terminal_gap(301), DomainError);
    CHECK_THROWS_AS(terminal_step(0), DomainError);
    CHECK_THROWS_AS(classical_bounds(1), DomainError);
    CHECK_THROWS_AS(gap_max_phi(5, 0.9), DomainError);
}

}
