#include "spherepack/matern.hpp"

#include "spherepack/errors.hpp"
#include "spherepack/geometry.hpp"
#include "spherepack/specialfn.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <random>

namespace spherepack {

namespace {

constexpr double kMaxExpectedArrivals = 2e7;

double dist2(const Point& a, const Point& b, int d, double L) {
    double s = 0.0;
    for (int k = 0; k < d; ++k) {
        double dx = a[k] - b[k];
        dx -= L * std::round(dx / L);
        s += dx * dx;
    }
    return s;
}

double wrap(double x, double L) {
    x = std::fmod(x, L);
    if (x < 0.0) x += L;
    return x >= L ? 0.0 : x;
}

// Uniform periodic cell grid; neighbour queries visit each adjacent cell once
// even when a dimension has fewer than three cells.
class CellList {
public:
    CellList(int d, double L, double cutoff) : d_(d), L_(L) {
        n_ = std::max(1, static_cast<int>(std::floor(L / cutoff)));
        size_ = L / n_;
        std::size_t total = 1;
        for (int k = 0; k < d; ++k) total *= static_cast<std::size_t>(n_);
        cells_.resize(total);
    }

    void insert(std::size_t id, const Point& p) { cells_[index_of(p)].push_back(id); }

    template <class F>
    void visit(const Point& p, F&& f) const {
        std::array<std::array<int, 3>, 3> opts{};
        std::array<int, 3> counts{1, 1, 1};
        for (int k = 0; k < d_; ++k) {
            const int base = coord(p[k]);
            int c = 0;
            for (int o = -1; o <= 1; ++o) {
                const int v = ((base + o) % n_ + n_) % n_;
                bool seen = false;
                for (int q = 0; q < c; ++q) seen = seen || opts[k][q] == v;
                if (!seen) opts[k][c++] = v;
            }
            counts[k] = c;
        }
        for (int a = 0; a < counts[0]; ++a)
            for (int b = 0; b < counts[1]; ++b)
                for (int c = 0; c < counts[2]; ++c) {
                    std::size_t idx = static_cast<std::size_t>(opts[0][a]);
                    if (d_ > 1) idx = idx * n_ + static_cast<std::size_t>(opts[1][b]);
                    if (d_ > 2) idx = idx * n_ + static_cast<std::size_t>(opts[2][c]);
                    for (std::size_t id : cells_[idx]) f(id);
                }
    }

private:
    int coord(double x) const {
        const int c = static_cast<int>(std::floor(x / size_));
        return ((c % n_) + n_) % n_;
    }
    std::size_t index_of(const Point& p) const {
        std::size_t idx = 0;
        for (int k = 0; k < d_; ++k) idx = idx * n_ + static_cast<std::size_t>(coord(p[k]));
        return idx;
    }

    int d_;
    double L_;
    int n_;
    double size_;
    std::vector<std::vector<std::size_t>> cells_;
};

double volume(int d, double L) { return std::pow(L, d); }

// Fill the remaining space by sampling uniformly within the uncovered part of
// a voxel grid, refining voxels until none can hold another centre.
bool saturate(std::vector<Point>& accepted, CellList& cells, int d, double L, std::mt19937_64& rng) {
    const double root_d = std::sqrt(static_cast<double>(d));
    const int m = static_cast<int>(std::ceil(L * root_d));
    double h = L / m;

    auto is_free = [&](const Point& p) {
        bool ok = true;
        cells.visit(p, [&](std::size_t j) { ok = ok && dist2(p, accepted[j], d, L) >= 1.0; });
        return ok;
    };
    auto covered = [&](const Point& lo) {
        Point c{};
        for (int k = 0; k < d; ++k) c[k] = wrap(lo[k] + 0.5 * h, L);
        bool cov = false;
        cells.visit(c, [&](std::size_t j) {
            if (cov) return;
            double s = 0.0;
            for (int k = 0; k < d; ++k) {
                double dx = c[k] - accepted[j][k];
                dx -= L * std::round(dx / L);
                const double far = std::abs(dx) + 0.5 * h;
                s += far * far;
            }
            cov = s < 1.0;
        });
        return cov;
    };

    std::vector<Point> voxels;
    const int my = d > 1 ? m : 1;
    const int mz = d > 2 ? m : 1;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < my; ++j)
            for (int k = 0; k < mz; ++k) {
                Point lo{i * h, d > 1 ? j * h : 0.0, d > 2 ? k * h : 0.0};
                if (!covered(lo)) voxels.push_back(lo);
            }

    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int level = 0; !voxels.empty(); ++level) {
        if (level > 40) return false;
        const std::size_t attempts = voxels.size();
        std::uniform_int_distribution<std::size_t> pick(0, voxels.size() - 1);
        for (std::size_t a = 0; a < attempts; ++a) {
            const Point& lo = voxels[pick(rng)];
            Point p{};
            for (int k = 0; k < d; ++k) p[k] = wrap(lo[k] + h * u01(rng), L);
            if (is_free(p)) {
                cells.insert(accepted.size(), p);
                accepted.push_back(p);
            }
        }
        std::erase_if(voxels, covered);
        if (voxels.empty()) break;

        h *= 0.5;
        std::vector<Point> next;
        next.reserve(voxels.size() * (std::size_t{1} << d));
        for (const Point& lo : voxels)
            for (int mask = 0; mask < (1 << d); ++mask) {
                Point c = lo;
                for (int k = 0; k < d; ++k)
                    if (mask & (1 << k)) c[k] += h;
                if (!covered(c)) next.push_back(c);
            }
        voxels.swap(next);
    }
    return true;
}

}  // namespace

double phi_of_t(int d, double t) {
    if (d < 1) throw DomainError("phi_of_t: dimension must be positive");
    if (!(t >= 0.0)) throw DomainError("phi_of_t: t must be non-negative");
    return -std::expm1(-sphere_volume(d, 1.0) * t) * std::ldexp(1.0, -d);
}

double g2_matern_limit(int d, double r) {
    if (d < 1) throw DomainError("g2_matern_limit: dimension must be positive");
    if (!(r >= 0.0)) throw DomainError("g2_matern_limit: r must be non-negative");
    if (r < 1.0) return 0.0;
    return 2.0 / beta2(d, r, 1.0);
}

double g2_matern(int d, double r, double t) {
    if (d < 1) throw DomainError("g2_matern: dimension must be positive");
    if (!(r >= 0.0)) throw DomainError("g2_matern: r must be non-negative");
    if (!(t > 0.0)) throw DomainError("g2_matern: t must be positive");
    if (r < 1.0) return 0.0;
    if (std::isinf(t)) return g2_matern_limit(d, r);
    const double v = sphere_volume(d, 1.0);
    const double beta = beta2(d, r, 1.0);
    const double u = -std::expm1(-v * t);
    const double a = -std::expm1(-beta * v * t) / beta;
    return 2.0 * (u - a) / ((beta - 1.0) * u * u);
}

std::vector<ContactExcess> decorrelation_profile(int d_max) {
    if (d_max < 1 || d_max > 300) throw DomainError("decorrelation_profile: d_max must lie in [1, 300]");
    std::vector<ContactExcess> out;
    for (int d = 1; d <= d_max; ++d) {
        const double a = alpha2_integral(d, 1.0, 1.0);
        out.push_back({d, a / (2.0 - a)});
    }
    return out;
}

std::vector<Arrival> generate_arrivals(int d, double L, double T, std::uint64_t seed) {
    if (d < 1 || d > 3) throw DomainError("generate_arrivals: d must lie in [1, 3]");
    if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("generate_arrivals: L must be positive");
    if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("generate_arrivals: T must be positive");
    const double V = volume(d, L);
    if (V * T > kMaxExpectedArrivals) throw DomainError("generate_arrivals: too many expected arrivals");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::poisson_distribution<long long> count(V);
    const long long slabs = static_cast<long long>(std::ceil(T));
    std::vector<Arrival> out;
    for (long long s = 0; s < slabs; ++s) {
        const long long n = count(rng);
        for (long long i = 0; i < n; ++i) {
            Arrival a{static_cast<double>(s) + u01(rng), {0.0, 0.0, 0.0}};
            for (int k = 0; k < d; ++k) a.x[k] = wrap(L * u01(rng), L);
            if (a.t < T) out.push_back(a);
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const Arrival& a, const Arrival& b) { return a.t < b.t; });
    return out;
}

std::vector<char> ghost_rsa_accept(const std::vector<Arrival>& arrivals, int d, double L) {
    CellList cells(d, L, 1.0);
    for (std::size_t i = 0; i < arrivals.size(); ++i) cells.insert(i, arrivals[i].x);
    std::vector<char> keep(arrivals.size(), 1);
    for (std::size_t i = 0; i < arrivals.size(); ++i) {
        cells.visit(arrivals[i].x, [&](std::size_t j) {
            if (j != i && arrivals[j].t < arrivals[i].t && dist2(arrivals[i].x, arrivals[j].x, d, L) < 1.0)
                keep[i] = 0;
        });
    }
    return keep;
}

double min_periodic_distance(const std::vector<Point>& points, int d, double L) {
    double best = INFINITY;
    if (points.size() < 2) return best;
    CellList cells(d, L, std::min(2.0, 0.5 * L));
    for (std::size_t i = 0; i < points.size(); ++i) cells.insert(i, points[i]);
    for (std::size_t i = 0; i < points.size(); ++i)
        cells.visit(points[i], [&](std::size_t j) {
            if (j > i) best = std::min(best, dist2(points[i], points[j], d, L));
        });
    if (std::isinf(best)) {
        // Nothing within the cell neighbourhood; fall back to all pairs.
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t j = i + 1; j < points.size(); ++j) best = std::min(best, dist2(points[i], points[j], d, L));
    }
    return std::sqrt(best);
}

PairHistogram::PairHistogram(int d_, int bins, double r_min_, double r_max_)
    : d(d_), r_min(r_min_), r_max(r_max_), counts(static_cast<std::size_t>(bins), 0) {
    if (bins < 1 || !(r_max_ > r_min_) || !(r_min_ >= 0.0)) throw DomainError("PairHistogram: invalid binning");
}

double PairHistogram::shell(int i) const {
    const double lo = r_min + i * width();
    return sphere_volume(d, lo + width()) - sphere_volume(d, lo);
}

void PairHistogram::accumulate(const std::vector<Point>& points, double L) {
    if (2.0 * r_max > L) throw DomainError("PairHistogram: r_max must not exceed L/2");
    CellList cells(d, L, r_max);
    for (std::size_t i = 0; i < points.size(); ++i) cells.insert(i, points[i]);
    const double w = width();
    const double lo2 = r_min * r_min;
    const double hi2 = r_max * r_max;
    for (std::size_t i = 0; i < points.size(); ++i)
        cells.visit(points[i], [&](std::size_t j) {
            if (j <= i) return;
            const double s = dist2(points[i], points[j], d, L);
            if (s < lo2 || s >= hi2) return;
            const auto b = static_cast<std::size_t>((std::sqrt(s) - r_min) / w);
            if (b < counts.size()) ++counts[b];
        });
    const double V = volume(d, L);
    const double n = static_cast<double>(points.size());
    pair_norm += n * (n - 1.0) / (2.0 * V);
    volume_sum += V;
    ++runs;
}

void PairHistogram::merge(const PairHistogram& other) {
    if (other.d != d || other.counts.size() != counts.size() || other.r_min != r_min || other.r_max != r_max)
        throw DomainError("PairHistogram::merge: incompatible histograms");
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
    pair_norm += other.pair_norm;
    volume_sum += other.volume_sum;
    runs += other.runs;
}

std::vector<double> PairHistogram::estimate() const {
    std::vector<double> g(counts.size(), 0.0);
    if (pair_norm <= 0.0) return g;
    for (int i = 0; i < bins(); ++i) g[static_cast<std::size_t>(i)] = counts[static_cast<std::size_t>(i)] / (pair_norm * shell(i));
    return g;
}

std::vector<double> PairHistogram::standard_error() const {
    std::vector<double> e(counts.size(), 0.0);
    if (pair_norm <= 0.0) return e;
    for (int i = 0; i < bins(); ++i)
        e[static_cast<std::size_t>(i)] =
            std::sqrt(static_cast<double>(counts[static_cast<std::size_t>(i)])) / (pair_norm * shell(i));
    return e;
}

GoodnessOfFit chi_square_gof(const PairHistogram& hist, const std::function<double(double)>& g2, double rho,
                             double confidence, double min_expected) {
    if (!(rho > 0.0)) throw DomainError("chi_square_gof: rho must be positive");
    if (!(confidence > 0.0 && confidence < 1.0)) throw DomainError("chi_square_gof: confidence must lie in (0, 1)");
    const double norm = rho * rho * hist.volume_sum / 2.0;
    auto integrand = [&](double r) { return g2(r) * sphere_surface(hist.d, r); };
    auto piece = [&](double a, double b) {
        return b > a ? boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, a, b, 8, 1e-10) : 0.0;
    };
    double stat = 0.0;
    int groups = 0;
    double obs = 0.0;
    double expct = 0.0;
    for (int i = 0; i < hist.bins(); ++i) {
        const double lo = hist.r_min + i * hist.width();
        const double hi = lo + hist.width();
        double e = 0.0;
        double a = lo;
        for (double brk : {1.0, 2.0})
            if (brk > a && brk < hi) {
                e += piece(a, brk);
                a = brk;
            }
        e += piece(a, hi);
        obs += static_cast<double>(hist.counts[static_cast<std::size_t>(i)]);
        expct += norm * e;
        const bool last = i + 1 == hist.bins();
        if (expct >= min_expected || last) {
            if (expct > 0.0) {
                stat += (obs - expct) * (obs - expct) / expct;
                ++groups;
            }
            obs = 0.0;
            expct = 0.0;
        }
    }
    if (groups < 1) throw DomainError("chi_square_gof: no bins with positive expectation");
    const boost::math::chi_squared_distribution<double> dist(groups);
    const double p = boost::math::cdf(boost::math::complement(dist, stat));
    return {stat, groups, p, p >= 1.0 - confidence};
}

void MaternConfig::validate() const {
    if (d < 1 || d > 3) throw DomainError("matern: d must lie in [1, 3]");
    if (!std::isfinite(box_length) || box_length < 6.0) throw DomainError("matern: box length must be >= 6");
    if (!std::isfinite(time_horizon) || !(time_horizon > 0.0)) throw DomainError("matern: T must be positive and finite");
    if (kappa != 0 && kappa != 1) throw DomainError("matern: kappa must be 0 or 1");
    if (bins < 50) throw DomainError("matern: need at least 50 bins");
    if (saturate && kappa != 0) throw DomainError("matern: saturation applies to kappa = 0 only");
    if (!(r_max > 1.0) || 2.0 * r_max > box_length) throw DomainError("matern: r_max must lie in (1, L/2]");
    if (volume(d, box_length) * time_horizon > kMaxExpectedArrivals)
        throw DomainError("matern: too many expected arrivals");
}

MaternResult simulate(const MaternConfig& config) {
    config.validate();
    const int d = config.d;
    const double L = config.box_length;
    MaternResult res;
    res.config = config;

    const std::vector<Arrival> arrivals = generate_arrivals(d, L, config.time_horizon, config.seed);
    res.arrivals = arrivals.size();

    if (config.kappa == 1) {
        const std::vector<char> keep = ghost_rsa_accept(arrivals, d, L);
        for (std::size_t i = 0; i < arrivals.size(); ++i)
            if (keep[i]) res.centers.push_back(arrivals[i].x);
        res.ghost_count = arrivals.size() - res.centers.size();
        res.phi_analytic = phi_of_t(d, config.time_horizon);
    } else {
        CellList cells(d, L, 1.5);
        for (const Arrival& a : arrivals) {
            bool ok = true;
            cells.visit(a.x, [&](std::size_t j) { ok = ok && dist2(a.x, res.centers[j], d, L) >= 1.0; });
            if (ok) {
                cells.insert(res.centers.size(), a.x);
                res.centers.push_back(a.x);
            }
        }
        res.ghost_count = arrivals.size() - res.centers.size();
        if (config.saturate) {
            std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                              0x5a7u};
            std::mt19937_64 rng(seq);
            res.saturated = saturate(res.centers, cells, d, L, rng);
            if (!res.saturated) throw ConvergenceError("matern: voxel refinement did not terminate", 0.0, L);
        }
    }

    res.phi_hat = static_cast<double>(res.centers.size()) * sphere_volume(d, 0.5) / volume(d, L);
    res.histogram = PairHistogram(d, config.bins, 0.999, config.r_max);
    res.histogram.accumulate(res.centers, L);
    if (config.kappa == 1) {
        for (int i = 0; i < config.bins; ++i)
            res.g2_analytic.push_back(g2_matern(d, res.histogram.center(i), config.time_horizon));
    }
    return res;
}

}  // namespace spherepack
