#include "spherepack/optimizer.hpp"

#include "spherepack/errors.hpp"
#include "spherepack/specialfn.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace spherepack {

namespace {

constexpr double kNegativeTolerance = 1e-9;

double refine_root(int d, double phi, double sigma, double Z, double lo, double hi) {
    double flo = structure_factor_derivative(d, phi, sigma, Z, lo);
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = structure_factor_derivative(d, phi, sigma, Z, mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

void check_dimension(int d, int lo, int hi, const char* who) {
    if (d < lo || d > hi)
        throw DomainError(std::string(who) + ": dimension " + std::to_string(d) + " outside [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

// Grid minimum of S. For the gap model S(0) = 1 + Z - W vanishes by
// construction, and evaluating it from phi only measures rounding of W.
double grid_min_S(int d, double phi, double sigma, double Z, double k_max, int grid,
                  const std::vector<Minimum>& minima, bool include_origin) {
    double m = include_origin ? structure_factor_gap(d, phi, sigma, Z, 0.0) : INFINITY;
    for (int i = 1; i <= grid; ++i)
        m = std::min(m, structure_factor_gap(d, phi, sigma, Z, k_max * i / grid));
    for (const auto& mn : minima) m = std::min(m, mn.S);
    return m;
}

void fill_diagnostics(TerminalDensityRecord& rec, int grid) {
    const double k_max = default_k_max(rec.d);
    const MinimaScan scan = find_minima(rec.d, rec.phi_star, rec.sigma_star, rec.Z_star, k_max, grid);
    rec.minima = scan.minima;
    rec.min_S_grid = grid_min_S(rec.d, rec.phi_star, rec.sigma_star, rec.Z_star, k_max, grid, scan.minima,
                                rec.kind != ModelKind::StepDeltaGap);
    if (const auto deep = scan.deepest(); deep && !scan.minima.empty())
        rec.first_minimum_deepest = scan.minima.front().k == deep->k;
    rec.ratio = improvement_ratio(rec.d, rec.phi_star);
}

}  // namespace

std::optional<Minimum> MinimaScan::deepest() const {
    if (minima.empty()) return std::nullopt;
    return *std::min_element(minima.begin(), minima.end(),
                             [](const Minimum& a, const Minimum& b) { return a.S < b.S; });
}

MinimaScan find_minima(int d, double phi, double sigma, double Z, double k_max, int grid) {
    if (d < 1) throw DomainError("find_minima: dimension must be positive");
    if (!(k_max > 0.0) || !std::isfinite(k_max)) throw DomainError("find_minima: k_max must be positive");
    if (grid < 16) throw DomainError("find_minima: grid too coarse");
    MinimaScan scan;
    const double h = k_max / grid;
    double k_prev = h;
    double f_prev = structure_factor_derivative(d, phi, sigma, Z, k_prev);
    for (int i = 2; i <= grid; ++i) {
        const double k = h * i;
        const double f = structure_factor_derivative(d, phi, sigma, Z, k);
        if (f_prev < 0.0 && f > 0.0) {
            const double km = refine_root(d, phi, sigma, Z, k_prev, k);
            scan.minima.push_back({km, structure_factor_gap(d, phi, sigma, Z, km)});
        }
        k_prev = k;
        f_prev = f;
    }
    if (const auto deep = scan.deepest()) scan.deepest_near_edge = deep->k > 0.98 * k_max;
    return scan;
}

double improvement_ratio(int d, double phi) {
    if (phi <= 0.0) return 0.0;
    return std::exp((d + 1) * std::log(2.0) + std::log(phi) - std::log(d + 2.0));
}

TerminalDensityRecord terminal_step(int d) {
    check_dimension(d, 1, 1000, "terminal_step");
    TerminalDensityRecord rec;
    rec.d = d;
    rec.kind = ModelKind::Step;
    rec.phi_star = std::ldexp(1.0, -d);
    rec.min_S_residual = std::abs(structure_factor_step(d, rec.phi_star, 0.0));
    fill_diagnostics(rec, 2048);
    return rec;
}

TerminalDensityRecord terminal_delta(int d) {
    check_dimension(d, 1, 1000, "terminal_delta");
    TerminalDensityRecord rec;
    rec.d = d;
    rec.kind = ModelKind::StepDelta;
    rec.phi_star = std::ldexp(d + 2.0, -(d + 1));
    rec.Z_star = 0.5 * d;
    rec.min_S_residual = std::abs(structure_factor_delta(d, rec.phi_star, rec.Z_star, 0.0));
    fill_diagnostics(rec, 2048);
    if (rec.min_S_grid < -kNegativeTolerance)
        throw VerificationError("terminal_delta: S dips to " + std::to_string(rec.min_S_grid) +
                                " at d = " + std::to_string(d));
    return rec;
}

GapPoint gap_max_phi(int d, double sigma, int k_grid) {
    check_dimension(d, 2, 300, "gap_max_phi");
    if (!(sigma >= 1.0) || !std::isfinite(sigma)) throw DomainError("gap_max_phi: sigma must be >= 1");
    const double nu = 0.5 * d;
    const double k_max = default_k_max(d);
    const double h = k_max / k_grid;

    // S >= 0 with Z = W - 1 is equivalent to W <= (1 - L1)/(L0 - L1) wherever L0 > L1.
    auto ratio = [&](double k) {
        const double l0 = normalized_bessel_j(nu, k * sigma);
        const double l1 = normalized_bessel_j(nu - 1.0, k);
        const double den = l0 - l1;
        if (!(den > 0.0)) return std::numeric_limits<double>::infinity();
        return (1.0 - l1) / den;
    };

    std::vector<double> r(static_cast<std::size_t>(k_grid + 1));
    r[0] = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= k_grid; ++i) r[static_cast<std::size_t>(i)] = ratio(h * i);

    std::vector<int> candidates;
    for (int i = 1; i < k_grid; ++i) {
        const double v = r[static_cast<std::size_t>(i)];
        if (std::isfinite(v) && v <= r[static_cast<std::size_t>(i - 1)] && v <= r[static_cast<std::size_t>(i + 1)])
            candidates.push_back(i);
    }
    std::sort(candidates.begin(), candidates.end(),
              [&](int a, int b) { return r[static_cast<std::size_t>(a)] < r[static_cast<std::size_t>(b)]; });
    if (candidates.size() > 6) candidates.resize(6);

    // dS/dk with Z = W - 1; its root is a fixed point of k -> argmin S at W = ratio(k).
    auto slope = [&](double W, double k) {
        return W * sigma * (k * sigma / (2.0 * (nu + 1.0))) * normalized_bessel_j(nu + 1.0, k * sigma) -
               (W - 1.0) * (k / (2.0 * nu)) * normalized_bessel_j(nu, k);
    };

    double best = std::numeric_limits<double>::infinity();
    double k_touch = 0.0;
    for (int i : candidates) {
        const auto res = boost::math::tools::brent_find_minima(ratio, h * (i - 1), h * (i + 1),
                                                               std::numeric_limits<double>::digits);
        double k = res.first;
        double W = res.second;
        for (int it = 0; it < 4; ++it) {
            double lo = std::max(k - 0.5 * h, 0.5 * k);
            double hi = k + 0.5 * h;
            double flo = slope(W, lo);
            if ((flo < 0.0) == (slope(W, hi) < 0.0)) break;
            while (hi - lo > 1e-12 * hi) {
                const double mid = 0.5 * (lo + hi);
                const double fm = slope(W, mid);
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            const double kn = 0.5 * (lo + hi);
            const double Wn = ratio(kn);
            if (!(Wn < W)) break;
            k = kn;
            W = Wn;
        }
        if (W < best) {
            best = W;
            k_touch = k;
        }
    }

    const double a = d * sigma * sigma;
    if (a < d + 2.0) {
        const double cap = (d + 2.0) / (d + 2.0 - a);
        if (cap <= best) {
            best = cap;
            k_touch = 0.0;
        }
    }
    if (!std::isfinite(best))
        throw ConvergenceError("gap_max_phi: no binding constraint found", sigma, sigma);
    return {sigma, best, std::log(best) - d * std::log(2.0 * sigma), k_touch};
}

TerminalDensityRecord terminal_gap(int d, const GapOptions& options) {
    check_dimension(d, 2, 300, "terminal_gap");
    const double lo = 1.0;
    const double hi = 1.0 + 4.0 / d;
    const int n = std::max(8, options.sigma_scan);

    std::vector<double> vals(static_cast<std::size_t>(n + 1));
    int best = 0;
    for (int i = 0; i <= n; ++i) {
        vals[static_cast<std::size_t>(i)] = gap_max_phi(d, lo + (hi - lo) * i / n, options.k_grid).log_phi;
        if (vals[static_cast<std::size_t>(i)] > vals[static_cast<std::size_t>(best)]) best = i;
    }
    double a = lo + (hi - lo) * std::max(0, best - 1) / n;
    double b = lo + (hi - lo) * std::min(n, best + 1) / n;

    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    auto f = [&](double s) { return gap_max_phi(d, s, options.k_grid).log_phi; };
    double c = b - g * (b - a);
    double e = a + g * (b - a);
    double fc = f(c);
    double fe = f(e);
    while (b - a > options.sigma_tol) {
        if (fc >= fe) {
            b = e;
            e = c;
            fe = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + g * (b - a);
            fe = f(e);
        }
    }
    const double sigma = 0.5 * (a + b);
    const GapPoint pt = gap_max_phi(d, sigma, options.k_grid);
    if (pt.W <= 1.0) throw InfeasibleError("terminal_gap: no gap improves on the delta model at d = " + std::to_string(d));

    TerminalDensityRecord rec;
    rec.d = d;
    rec.kind = ModelKind::StepDeltaGap;
    rec.sigma_star = sigma;
    rec.phi_star = std::exp(pt.log_phi);
    rec.Z_star = pt.W - 1.0;
    fill_diagnostics(rec, options.k_grid);

    const TerminalDensityRecord delta = terminal_delta(d);
    if (!(rec.phi_star > delta.phi_star))
        throw InfeasibleError("terminal_gap: no gap improves on the delta model at d = " + std::to_string(d));

    if (pt.k_touch > 0.0) {
        // Polish the touching point as a root of dS/dk near the minimiser of the ratio.
        const double h = default_k_max(d) / options.k_grid;
        double best_k = pt.k_touch;
        double best_dist = std::numeric_limits<double>::infinity();
        for (const auto& m : rec.minima) {
            const double dist = std::abs(m.k - pt.k_touch);
            if (dist < best_dist) {
                best_dist = dist;
                best_k = m.k;
            }
        }
        rec.k_min = best_dist < 2.0 * h ? best_k : pt.k_touch;
    }
    rec.min_S_residual = std::abs(structure_factor_gap(d, rec.phi_star, rec.sigma_star, rec.Z_star, rec.k_min));
    if (rec.min_S_grid < -kNegativeTolerance)
        throw VerificationError("terminal_gap: S dips to " + std::to_string(rec.min_S_grid) +
                                " at d = " + std::to_string(d));
    return rec;
}

ClassicalBounds classical_bounds(int d) {
    check_dimension(d, 2, 100000, "classical_bounds");
    const double zeta = std::riemann_zeta(static_cast<double>(d));
    ClassicalBounds b{};
    b.d = d;
    b.minkowski = zeta * std::exp2(-(d - 1.0));
    b.ball = 2.0 * (d - 1) * zeta * std::exp2(-d);
    b.greedy = std::exp2(-d);
    b.blichfeldt = (0.5 * d + 1.0) * std::exp2(-0.5 * d);
    b.rogers = (d / std::numbers::e) * std::exp2(-0.5 * d);
    b.kabatiansky_levenshtein = std::exp2(-0.599 * d);
    return b;
}

std::optional<double> densest_known_density(int d) {
    switch (d) {
    case 56: return 2.327670e-11;
    case 60: return 2.966747e-13;
    case 64: return 1.326615e-12;
    default: return std::nullopt;
    }
}

}  // namespace spherepack
