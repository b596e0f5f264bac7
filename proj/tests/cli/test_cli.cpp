#include "spherepack_cli/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using spherepack::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

std::vector<double> fields(const std::string& line) {
    std::vector<double> v;
    std::istringstream in(line);
    for (std::string f; std::getline(in, f, ',');) v.push_back(f.empty() ? NAN : std::stod(f));
    return v;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("dimension lists") {
    using spherepack::cli::parse_dims;
    CHECK(parse_dims("3,4,5") == std::vector<int>{3, 4, 5});
    CHECK(parse_dims("3..6") == std::vector<int>{3, 4, 5, 6});
    CHECK(parse_dims("3..4,24") == std::vector<int>{3, 4, 24});
    CHECK_THROWS(parse_dims("5..3"));
    CHECK_THROWS(parse_dims("a"));
    CHECK_THROWS(parse_dims("3,,4"));
    CHECK_THROWS(parse_dims("0"));
    CHECK(spherepack::cli::format_number(0.5758254) == "5.758254e-01");
}

TEST_CASE("table") {
    const auto r = invoke({"table", "--dims", "3,4,5", "--model", "gap", "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 4);
    CHECK(l[0] == "d,sigma_star,Z_star,phi_star,ratio,k_min");
    const double expected[3][4] = {{1.246997, 7.932582, 0.5758254, 1.842641},
                                   {1.212589, 13.71016, 0.4252472, 2.267985},
                                   {1.186929, 21.97918, 0.3048322, 2.787037}};
    for (int i = 0; i < 3; ++i) {
        const auto f = fields(l[static_cast<std::size_t>(i + 1)]);
        CHECK(f[0] == 3 + i);
        for (int j = 0; j < 4; ++j) CHECK(f[static_cast<std::size_t>(j + 1)] == doctest::Approx(expected[i][j]).epsilon(1e-5));
    }
    const auto step = invoke({"table", "--dims", "3", "--model", "step"});
    CHECK(lines(step.out)[1] == "3,1.000000e+00,0.000000e+00,1.250000e-01,4.000000e-01,0.000000e+00");
    CHECK(invoke({"table", "--dims", "1", "--model", "gap"}).code == 2);
    CHECK(invoke({"table", "--dims", "3", "--model", "lattice"}).code == 2);
    CHECK(invoke({"table", "--dims", "x"}).code == 2);
}

TEST_CASE("parallel table keeps input order and output bytes") {
    const auto a = invoke({"table", "--dims", "8,3,24,5", "--threads", "1"});
    const auto b = invoke({"--threads", "4", "table", "--dims", "8,3,24,5"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto l = lines(a.out);
    CHECK(l[1].rfind("8,", 0) == 0);
    CHECK(l[3].rfind("24,", 0) == 0);
}

TEST_CASE("structure factor curves") {
    const auto r = invoke({"sk", "--model", "step", "--d", "1", "--phi", "0.5", "--kmax", "20", "--samples", "41"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    CHECK(l[0] == "k,S");
    REQUIRE(l.size() == 42);
    for (std::size_t i = 2; i < l.size(); ++i) {
        const auto f = fields(l[i]);
        CHECK(f[1] == doctest::Approx(1.0 - std::sin(f[0]) / f[0]).epsilon(1e-6));
    }
    const auto t = invoke({"--format", "json", "sk", "--model", "gap", "--d", "12", "--terminal"});
    REQUIRE(t.code == 0);
    const auto j = nlohmann::json::parse(t.out);
    CHECK(std::abs(j["S0"].get<double>()) < 1e-9);
    for (const auto& s : j["S"]) CHECK(s.get<double>() >= -1e-6);
    CHECK(invoke({"sk", "--model", "step", "--d", "1", "--phi", "0.5", "--samples", "0"}).code == 2);
    CHECK(invoke({"sk", "--model", "gap", "--d", "3", "--phi", "0.2"}).code == 2);
}

TEST_CASE("asymptotics report") {
    const auto r = invoke({"asymptotics", "--d", "200"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    CHECK(l[0] == "quantity,asymptotic,numeric,relative_error");
    CHECK(l[1].rfind("q1,9.0763589326e-01", 0) == 0);
    CHECK(r.out.find("phi_star,5.6267269984e-44,5.6670993936e-44") != std::string::npos);
    CHECK(invoke({"asymptotics", "--d", "10"}).code == 2);
    const auto quick = invoke({"asymptotics", "--d", "1000", "--no-numeric"});
    CHECK(quick.code == 0);
}

TEST_CASE("yamada") {
    const auto r = invoke({"yamada", "--model", "delta", "--d", "1"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    CHECK(l[0] == "R,sigma2,yamada_bound,violated");
    bool any = false;
    for (std::size_t i = 1; i < l.size(); ++i) any = any || l[i].ends_with(",1");
    CHECK(any);
    const auto clean = invoke({"--format", "json", "yamada", "--model", "step", "--d", "3", "--phi", "0.125"});
    REQUIRE(clean.code == 0);
    CHECK(nlohmann::json::parse(clean.out)["violation_count"] == 0);
    CHECK(invoke({"yamada", "--model", "step", "--d", "3", "--phi", "1.5"}).code == 2);
}

TEST_CASE("matern") {
    const auto r = invoke({"--format", "json", "--seed", "1", "matern", "--d", "2", "--T", "50", "--L", "40", "--kappa", "1"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["phi_hat"].get<double>() == doctest::Approx(0.25).epsilon(0.05));
    CHECK(j["min_distance"].get<double>() >= 1.0);
    const auto sat = invoke({"--format", "json", "matern", "--d", "1", "--L", "200", "--kappa", "0", "--saturate", "--runs", "20", "--threads", "4"});
    REQUIRE(sat.code == 0);
    CHECK(std::abs(nlohmann::json::parse(sat.out)["phi_hat"].get<double>() - 0.7476) <= 0.01);
    const auto csv = invoke({"matern", "--d", "1", "--L", "30"});
    REQUIRE(csv.code == 0);
    CHECK(lines(csv.out)[0] == "r,g2_hat,stderr,g2_analytic");
    CHECK(lines(csv.out).size() == 51);
    CHECK(invoke({"matern", "--L", "2"}).code == 2);
    CHECK(invoke({"matern", "--kappa", "1", "--saturate"}).code == 2);
}

TEST_CASE("centers dump and --out") {
    const auto dir = std::filesystem::temp_directory_path() / "spherepack_cli_test";
    std::filesystem::create_directories(dir);
    const auto centers = (dir / "centers.csv").string();
    const auto out = (dir / "hist.csv").string();
    const auto r = invoke({"--out", out, "matern", "--d", "3", "--L", "8", "--centers", centers});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream c(centers), h(out);
    std::string head;
    std::getline(c, head);
    CHECK(head == "x1,x2,x3");
    std::getline(h, head);
    CHECK(head == "r,g2_hat,stderr,g2_analytic");
    CHECK(invoke({"--out", (dir / "missing" / "x.csv").string(), "table", "--dims", "3", "--model", "step"}).code == 2);
    std::filesystem::remove_all(dir);
}

TEST_CASE("classical") {
    const auto r = invoke({"classical", "--dims", "56,60,64", "--terminal"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    CHECK(l[0] == "d,minkowski,ball,greedy,blichfeldt,rogers,kabatiansky_levenshtein,densest_known,phi_star");
    CHECK(l[1].find(",2.327670e-11,") != std::string::npos);
    CHECK(l[2].find(",2.966747e-13,") != std::string::npos);
    CHECK(fields(l[2])[8] == doctest::Approx(1.674130e-12).epsilon(1e-5));
    CHECK(fields(l[3])[8] == doctest::Approx(2.221414e-13).epsilon(1e-5));
    CHECK(invoke({"classical", "--dims", "1"}).code == 2);
}

TEST_CASE("usage and determinism") {
    CHECK(invoke({"--help"}).code == 0);
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"--format", "xml", "table", "--dims", "3"}).code == 2);
    const std::vector<std::string> cmd = {"--seed", "9", "--format", "json", "matern", "--d", "2", "--L", "12", "--runs", "3", "--threads", "3"};
    CHECK(invoke(cmd).out == invoke(cmd).out);
    CHECK(invoke({"--seed", "9", "matern", "--L", "20"}).out != invoke({"--seed", "10", "matern", "--L", "20"}).out);
}

}
