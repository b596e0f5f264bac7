#include "spherepack_cli/cli.hpp"

#include "spherepack/asymptotics.hpp"
#include "spherepack/errors.hpp"
#include "spherepack/matern.hpp"
#include "spherepack/models.hpp"
#include "spherepack/optimizer.hpp"
#include "spherepack/specialfn.hpp"
#include "spherepack/variance.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <thread>

namespace spherepack::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string format = "csv";
    std::string out;
    int threads = 1;
    std::uint64_t seed = 1;

    bool csv() const { return format == "csv"; }
};

std::string fmt(double x, int digits) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
    return buf;
}

std::string fmt_opt(const std::optional<double>& x, int digits = 7) { return x ? fmt(*x, digits) : std::string(); }

json num(double x, int digits = 7) {
    if (!std::isfinite(x)) return nullptr;
    return std::strtod(fmt(x, digits).c_str(), nullptr);
}

json num_opt(const std::optional<double>& x, int digits = 7) { return x ? num(*x, digits) : json(nullptr); }

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) body(i);
        });
    for (auto& t : pool) t.join();
}

TerminalDensityRecord terminal(ModelKind kind, int d) {
    switch (kind) {
        case ModelKind::Step: return terminal_step(d);
        case ModelKind::StepDelta: return terminal_delta(d);
        case ModelKind::StepDeltaGap: return terminal_gap(d);
    }
    throw UsageError("unknown model");
}

RadialModel model_of(const TerminalDensityRecord& rec) {
    switch (rec.kind) {
        case ModelKind::Step: return RadialModel::step();
        case ModelKind::StepDelta: return RadialModel::delta(rec.Z_star);
        case ModelKind::StepDeltaGap: return RadialModel::gap(rec.sigma_star, rec.Z_star);
    }
    throw UsageError("unknown model");
}

ModelKind parse_model(const std::string& name) {
    try {
        return model_kind_from_string(name);
    } catch (const DomainError&) {
        throw UsageError("unknown model '" + name + "' (expected step, delta or gap)");
    }
}

// Explicit parameters, or the terminal optimum of the model when phi is absent.
struct ModelParams {
    RadialModel model;
    PackingDensity density;
};

ModelParams resolve_params(ModelKind kind, int d, std::optional<double> phi, std::optional<double> sigma,
                           std::optional<double> Z, bool use_terminal) {
    if (use_terminal || !phi) {
        const auto rec = terminal(kind, d);
        return {model_of(rec), PackingDensity::from_phi(d, rec.phi_star)};
    }
    if (!(*phi > 0.0 && *phi < 1.0)) throw UsageError("phi must lie in (0, 1)");
    RadialModel m;
    switch (kind) {
        case ModelKind::Step: m = RadialModel::step(); break;
        case ModelKind::StepDelta:
            if (!Z) throw UsageError("--Z is required for the delta model");
            m = RadialModel::delta(*Z);
            break;
        case ModelKind::StepDeltaGap: {
            if (!sigma) throw UsageError("--sigma is required for the gap model");
            m = RadialModel::gap(*sigma, Z ? *Z : hyperuniform_Z(d, *phi, *sigma));
            break;
        }
    }
    m.validate();
    return {m, PackingDensity::from_phi(d, *phi)};
}

json model_json(const ModelParams& p) {
    return {{"model", to_string(p.model.kind)},
            {"d", p.density.d},
            {"phi", num(p.density.phi)},
            {"sigma", num(p.model.sigma)},
            {"Z", num(p.model.Z)}};
}

// ---- table ------------------------------------------------------------------

struct TableArgs {
    std::string dims;
    std::string model = "gap";
};

int cmd_table(const Globals& g, const TableArgs& a, std::ostream& os, std::ostream& err) {
    const ModelKind kind = parse_model(a.model);
    const auto dims = parse_dims(a.dims);
    for (int d : dims) {
        if (kind == ModelKind::StepDeltaGap && (d < 2 || d > 300))
            throw UsageError("gap model supports 2 <= d <= 300, got " + std::to_string(d));
        if (d > 1000) throw UsageError("dimension too large: " + std::to_string(d));
    }

    std::vector<std::optional<TerminalDensityRecord>> recs(dims.size());
    std::vector<std::string> errors(dims.size());
    parallel_for(dims.size(), g.threads, [&](std::size_t i) {
        try {
            recs[i] = terminal(kind, dims[i]);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });

    bool failed = false;
    for (std::size_t i = 0; i < dims.size(); ++i)
        if (!recs[i]) {
            failed = true;
            err << "d=" << dims[i] << ": " << errors[i] << "\n";
        }

    if (g.csv()) {
        os << "d,sigma_star,Z_star,phi_star,ratio,k_min\n";
        for (std::size_t i = 0; i < dims.size(); ++i) {
            os << dims[i];
            if (const auto& r = recs[i])
                os << ',' << fmt(r->sigma_star, 7) << ',' << fmt(r->Z_star, 7) << ',' << fmt(r->phi_star, 7) << ','
                   << fmt(r->ratio, 7) << ',' << fmt(r->k_min, 7);
            else
                os << ",nan,nan,nan,nan,nan";
            os << '\n';
        }
    } else {
        json rows = json::array();
        for (std::size_t i = 0; i < dims.size(); ++i) {
            json row = {{"d", dims[i]}};
            if (const auto& r = recs[i]) {
                row["sigma_star"] = num(r->sigma_star);
                row["Z_star"] = num(r->Z_star);
                row["phi_star"] = num(r->phi_star);
                row["ratio"] = num(r->ratio);
                row["k_min"] = num(r->k_min);
                row["min_S_residual"] = num(r->min_S_residual);
                row["first_minimum_deepest"] = r->first_minimum_deepest;
            } else {
                row["error"] = errors[i];
            }
            rows.push_back(row);
        }
        os << json{{"command", "table"}, {"model", to_string(kind)}, {"rows", rows}}.dump(2) << '\n';
    }
    return failed ? kExitNumerical : kExitOk;
}

// ---- sk ---------------------------------------------------------------------

struct SkArgs {
    std::string model = "gap";
    int d = 3;
    std::optional<double> phi, sigma, Z, k_max;
    int samples = 512;
    bool terminal = false;
};

int cmd_sk(const Globals& g, const SkArgs& a, std::ostream& os) {
    if (a.samples < 2) throw UsageError("--samples must be at least 2");
    if (a.d < 1) throw UsageError("d must be positive");
    const auto p = resolve_params(parse_model(a.model), a.d, a.phi, a.sigma, a.Z, a.terminal);
    const double k_max = a.k_max ? *a.k_max : default_k_max(a.d);
    const auto curve = sample_structure_factor(p.model, p.density, k_max, a.samples);
    if (g.csv()) {
        os << "k,S\n";
        for (std::size_t i = 0; i < curve.k.size(); ++i) os << fmt(curve.k[i], 7) << ',' << fmt(curve.S[i], 7) << '\n';
    } else {
        json k = json::array(), s = json::array();
        for (std::size_t i = 0; i < curve.k.size(); ++i) {
            k.push_back(num(curve.k[i]));
            s.push_back(num(curve.S[i]));
        }
        json j = {{"command", "sk"}, {"parameters", model_json(p)}, {"S0", num(curve.S0)}, {"k", k}, {"S", s}};
        os << j.dump(2) << '\n';
    }
    return kExitOk;
}

// ---- asymptotics --------------------------------------------------------------

struct AsymptoticsArgs {
    int d = 200;
    bool numeric = true;
};

int cmd_asymptotics(const Globals& g, const AsymptoticsArgs& a, std::ostream& os) {
    constexpr int kDigits = 11;
    if (a.d < 20) throw UsageError("asymptotics requires d >= 20");
    const int d = a.d;
    const auto& c = solve_constants();

    std::optional<TerminalDensityRecord> rec;
    if (a.numeric && d <= 300) rec = terminal_gap(d);

    struct Row {
        std::string name;
        double asymptotic;
        std::optional<double> numeric;
    };
    std::vector<Row> rows = {
        {"q1", c.q1, {}},          {"q2", c.q2, {}}, {"Q1", c.Q1, {}}, {"C1", c.C1, {}},
        {"C1_refined", c.C1_refined, {}}, {"C2", c.C2, {}}, {"D1", c.D1, {}}, {"D2", c.D2, {}},
        {"E1", c.E1, {}},          {"E2", c.E2, {}},
    };
    const auto phi = phi_star_asymptotic(d);
    const auto kiss = kissing_asymptotic(d);
    const auto dt = delta_nu_terms(d);
    const double beta_exact = beta_ratio_exact(d);
    std::optional<DeltaTerms> de;
    if (rec) de = delta_nu_exact(d, rec->sigma_star, rec->k_min);
    auto field = [&](auto get) -> std::optional<double> {
        if (!rec) return std::nullopt;
        return get(*rec);
    };
    const double sigma_for_linear = rec ? rec->sigma_star : sigma_star_asymptotic(d);
    rows.push_back({"sigma_star", sigma_star_asymptotic(d), field([](auto& r) { return r.sigma_star; })});
    rows.push_back({"k_min", kmin_asymptotic(d), field([](auto& r) { return r.k_min; })});
    rows.push_back({"k_min_linearized", kmin_linearized(d, sigma_for_linear, beta_exact),
                    field([](auto& r) { return r.k_min; })});
    rows.push_back({"phi_star", phi.full, field([](auto& r) { return r.phi_star; })});
    rows.push_back({"phi_star_dominant", phi.dominant, field([](auto& r) { return r.phi_star; })});
    rows.push_back({"kissing", kiss.full, field([](auto& r) { return r.Z_star; })});
    rows.push_back({"kissing_dominant", kiss.dominant, field([](auto& r) { return r.Z_star; })});
    rows.push_back({"delta_nu", dt.delta, de ? std::optional(de->delta) : std::nullopt});
    rows.push_back({"kmin_over_nu_pow", dt.kmin_over_nu_pow, de ? std::optional(de->kmin_over_nu_pow) : std::nullopt});
    rows.push_back({"sigma_pow", dt.sigma_pow, de ? std::optional(de->sigma_pow) : std::nullopt});
    rows.push_back({"beta_ratio", beta_ratio_asymptotic(d), beta_exact});

    auto rel = [](const Row& r) -> std::optional<double> {
        if (!r.numeric || *r.numeric == 0.0) return std::nullopt;
        return std::abs(r.asymptotic - *r.numeric) / std::abs(*r.numeric);
    };

    if (g.csv()) {
        os << "quantity,asymptotic,numeric,relative_error\n";
        for (const auto& r : rows)
            os << r.name << ',' << fmt(r.asymptotic, kDigits) << ',' << fmt_opt(r.numeric, kDigits) << ','
               << fmt_opt(rel(r), 3) << '\n';
    } else {
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back({{"quantity", r.name},
                           {"asymptotic", num(r.asymptotic, kDigits)},
                           {"numeric", num_opt(r.numeric, kDigits)},
                           {"relative_error", num_opt(rel(r), 3)}});
        os << json{{"command", "asymptotics"}, {"d", d}, {"rows", arr}}.dump(2) << '\n';
    }
    return kExitOk;
}

// ---- yamada -----------------------------------------------------------------

struct YamadaArgs {
    std::string model = "delta";
    int d = 1;
    std::optional<double> phi, sigma, Z;
    double r_max = 10.0;
    int grid = 200;
};

int cmd_yamada(const Globals& g, const YamadaArgs& a, std::ostream& os) {
    if (a.d < 1) throw UsageError("d must be positive");
    if (a.grid < 2) throw UsageError("--grid must be at least 2");
    const auto p = resolve_params(parse_model(a.model), a.d, a.phi, a.sigma, a.Z, false);
    const auto chk = yamada_check(p.model, p.density, a.r_max, a.grid);
    if (g.csv()) {
        os << "R,sigma2,yamada_bound,violated\n";
        for (std::size_t i = 0; i < chk.R.size(); ++i)
            os << fmt(chk.R[i], 7) << ',' << fmt(chk.sigma2[i], 7) << ',' << fmt(chk.yamada_bound[i], 7) << ','
               << (chk.violated[i] ? 1 : 0) << '\n';
    } else {
        json pts = json::array();
        for (std::size_t i = 0; i < chk.R.size(); ++i)
            pts.push_back({{"R", num(chk.R[i])},
                           {"sigma2", num(chk.sigma2[i])},
                           {"yamada_bound", num(chk.yamada_bound[i])},
                           {"violated", static_cast<bool>(chk.violated[i])}});
        json viol = json::array();
        for (double r : chk.violations) viol.push_back(num(r));
        json j = {{"command", "yamada"}, {"parameters", model_json(p)}, {"R0", num(chk.R0)},
                  {"R_max", num(a.r_max)},   {"violation_count", chk.violations.size()},
                  {"violations", viol},      {"points", pts}};
        os << j.dump(2) << '\n';
    }
    return kExitOk;
}

// ---- matern -----------------------------------------------------------------

struct MaternArgs {
    int d = 1;
    double T = 10.0;
    double L = 20.0;
    int kappa = 1;
    int bins = 50;
    double r_max = 3.0;
    bool saturate = false;
    int runs = 1;
    std::string centers;
};

int cmd_matern(const Globals& g, const MaternArgs& a, std::ostream& os, std::ostream& err) {
    if (a.runs < 1) throw UsageError("--runs must be at least 1");
    MaternConfig base;
    base.d = a.d;
    base.time_horizon = a.T;
    base.box_length = a.L;
    base.kappa = a.kappa;
    base.bins = a.bins;
    base.r_max = a.r_max;
    base.saturate = a.saturate;
    base.seed = g.seed;
    base.validate();

    std::vector<MaternResult> results(static_cast<std::size_t>(a.runs));
    std::vector<std::string> errors(results.size());
    parallel_for(results.size(), g.threads, [&](std::size_t i) {
        MaternConfig cfg = base;
        cfg.seed = g.seed + i;
        try {
            results[i] = simulate(cfg);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (const auto& e : errors)
        if (!e.empty()) throw ConvergenceError(e, 0.0, 0.0);

    PairHistogram hist(a.d, a.bins, 0.999, a.r_max);
    double phi_sum = 0.0;
    double min_dist = INFINITY;
    std::size_t arrivals = 0, accepted = 0, ghosts = 0;
    bool saturated = true;
    for (const auto& r : results) {
        hist.merge(r.histogram);
        phi_sum += r.phi_hat;
        min_dist = std::min(min_dist, min_periodic_distance(r.centers, a.d, a.L));
        arrivals += r.arrivals;
        accepted += r.centers.size();
        ghosts += r.ghost_count;
        saturated = saturated && r.saturated;
    }
    const double phi_hat = phi_sum / a.runs;
    const auto& first = results.front();
    const auto est = hist.estimate();
    const auto se = hist.standard_error();
    std::optional<GoodnessOfFit> gof;
    if (a.kappa == 1) {
        const double rho = *first.phi_analytic / sphere_volume(a.d, 0.5);
        gof = chi_square_gof(hist, [&](double r) { return g2_matern(a.d, r, a.T); }, rho);
    }

    if (!a.centers.empty()) {
        std::ofstream f(a.centers);
        if (!f) throw UsageError("cannot open " + a.centers);
        for (int k = 0; k < a.d; ++k) f << (k ? ",x" : "x") << k + 1;
        f << '\n';
        for (const auto& p : first.centers) {
            for (int k = 0; k < a.d; ++k) f << (k ? "," : "") << fmt(p[static_cast<std::size_t>(k)], 7);
            f << '\n';
        }
    }

    auto analytic = [&](std::size_t i) -> std::optional<double> {
        if (first.g2_analytic.empty()) return std::nullopt;
        return first.g2_analytic[i];
    };
    if (g.csv()) {
        os << "r,g2_hat,stderr,g2_analytic\n";
        for (int i = 0; i < hist.bins(); ++i) {
            const auto u = static_cast<std::size_t>(i);
            os << fmt(hist.center(i), 7) << ',' << fmt(est[u], 7) << ',' << fmt(se[u], 7) << ','
               << fmt_opt(analytic(u)) << '\n';
        }
        err << "phi_hat=" << fmt(phi_hat, 7);
        if (first.phi_analytic) err << " phi_analytic=" << fmt(*first.phi_analytic, 7);
        if (gof) err << " chi2=" << fmt(gof->statistic, 7) << " dof=" << gof->dof << " p=" << fmt(gof->p_value, 4);
        err << '\n';
    } else {
        json h = json::array();
        for (int i = 0; i < hist.bins(); ++i) {
            const auto u = static_cast<std::size_t>(i);
            h.push_back({{"r", num(hist.center(i))},
                         {"g2_hat", num(est[u])},
                         {"stderr", num(se[u])},
                         {"g2_analytic", num_opt(analytic(u))}});
        }
        json phis = json::array();
        for (const auto& r : results) phis.push_back(num(r.phi_hat));
        json j = {{"command", "matern"},
                  {"config",
                   {{"d", a.d},
                    {"L", num(a.L)},
                    {"T", num(a.T)},
                    {"kappa", a.kappa},
                    {"seed", g.seed},
                    {"runs", a.runs},
                    {"bins", a.bins},
                    {"r_max", num(a.r_max)},
                    {"saturate", a.saturate}}},
                  {"phi_hat", num(phi_hat)},
                  {"phi_hat_runs", phis},
                  {"phi_analytic", num_opt(first.phi_analytic)},
                  {"arrivals", arrivals},
                  {"accepted", accepted},
                  {"ghosts", ghosts},
                  {"saturated", a.saturate ? json(saturated) : json(nullptr)},
                  {"min_distance", num(min_dist)},
                  {"goodness_of_fit", gof ? json{{"statistic", num(gof->statistic)},
                                                 {"dof", gof->dof},
                                                 {"p_value", num(gof->p_value)},
                                                 {"pass", gof->pass}}
                                          : json(nullptr)},
                  {"histogram", h}};
        os << j.dump(2) << '\n';
    }
    return kExitOk;
}

// ---- classical --------------------------------------------------------------

struct ClassicalArgs {
    std::string dims;
    bool terminal = false;
};

int cmd_classical(const Globals& g, const ClassicalArgs& a, std::ostream& os) {
    const auto dims = parse_dims(a.dims);
    for (int d : dims) {
        if (d < 2) throw UsageError("classical bounds require d >= 2");
        if (a.terminal && d > 300) throw UsageError("--terminal supports d <= 300");
    }
    std::vector<std::optional<double>> phi(dims.size());
    if (a.terminal)
        parallel_for(dims.size(), g.threads, [&](std::size_t i) { phi[i] = terminal_gap(dims[i]).phi_star; });

    if (g.csv()) {
        os << "d,minkowski,ball,greedy,blichfeldt,rogers,kabatiansky_levenshtein,densest_known,phi_star\n";
        for (std::size_t i = 0; i < dims.size(); ++i) {
            const auto b = classical_bounds(dims[i]);
            os << b.d << ',' << fmt(b.minkowski, 7) << ',' << fmt(b.ball, 7) << ',' << fmt(b.greedy, 7) << ','
               << fmt(b.blichfeldt, 7) << ',' << fmt(b.rogers, 7) << ',' << fmt(b.kabatiansky_levenshtein, 7) << ','
               << fmt_opt(densest_known_density(dims[i])) << ',' << fmt_opt(phi[i]) << '\n';
        }
    } else {
        json rows = json::array();
        for (std::size_t i = 0; i < dims.size(); ++i) {
            const auto b = classical_bounds(dims[i]);
            rows.push_back({{"d", b.d},
                            {"minkowski", num(b.minkowski)},
                            {"ball", num(b.ball)},
                            {"greedy", num(b.greedy)},
                            {"blichfeldt", num(b.blichfeldt)},
                            {"rogers", num(b.rogers)},
                            {"kabatiansky_levenshtein", num(b.kabatiansky_levenshtein)},
                            {"densest_known", num_opt(densest_known_density(dims[i]))},
                            {"phi_star", num_opt(phi[i])}});
        }
        os << json{{"command", "classical"}, {"rows", rows}}.dump(2) << '\n';
    }
    return kExitOk;
}

template <class T>
CLI::Option* add_optional(CLI::App* app, const std::string& name, std::optional<T>& target, const std::string& help) {
    return app->add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

}  // namespace

std::string format_number(double x) { return fmt(x, 7); }

std::vector<int> parse_dims(const std::string& text) {
    std::vector<int> dims;
    auto to_int = [&](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            throw UsageError("invalid dimension '" + s + "'");
        }
        if (used != s.size()) throw UsageError("invalid dimension '" + s + "'");
        return v;
    };
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw UsageError("empty entry in dimension list");
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            dims.push_back(to_int(item));
        } else {
            const int lo = to_int(item.substr(0, dots));
            const int hi = to_int(item.substr(dots + 2));
            if (hi < lo) throw UsageError("empty dimension range '" + item + "'");
            if (hi - lo > 10000) throw UsageError("dimension range too long '" + item + "'");
            for (int d = lo; d <= hi; ++d) dims.push_back(d);
        }
    }
    if (dims.empty()) throw UsageError("no dimensions given");
    for (int d : dims)
        if (d < 1) throw UsageError("dimensions must be positive, got " + std::to_string(d));
    return dims;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Terminal densities of hard-core test pair-correlation functions"};
    app.name("spherepack");
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--out", g.out, "Write results to this file instead of stdout");
    app.add_option("--threads", g.threads, "Worker threads (0 = hardware concurrency)")
        ->check(CLI::Range(0, 1024))
        ->capture_default_str();
    app.add_option("--seed", g.seed, "Random seed")->capture_default_str();

    TableArgs ta;
    auto* table = app.add_subcommand("table", "Terminal density per dimension");
    table->add_option("--dims", ta.dims, "Dimensions, e.g. 3,4,5 or 3..8")->required();
    table->add_option("--model", ta.model, "step, delta or gap")->capture_default_str();

    SkArgs sa;
    auto* sk = app.add_subcommand("sk", "Sample the structure factor");
    sk->add_option("--model", sa.model, "step, delta or gap")->capture_default_str();
    sk->add_option("--d", sa.d, "Dimension")->required();
    add_optional(sk, "--phi", sa.phi, "Packing fraction (default: terminal optimum)");
    add_optional(sk, "--sigma", sa.sigma, "Gap edge");
    add_optional(sk, "--Z", sa.Z, "Contact weight (gap default: hyperuniform value)");
    add_optional(sk, "--kmax", sa.k_max, "Largest wavenumber");
    sk->add_option("--samples", sa.samples, "Number of k samples")->capture_default_str();
    sk->add_flag("--terminal", sa.terminal, "Use the terminal optimum of the model");

    AsymptoticsArgs aa;
    auto* asym = app.add_subcommand("asymptotics", "Large-d predictions against the optimizer");
    asym->add_option("--d", aa.d, "Dimension (>= 20)")->capture_default_str();
    asym->add_flag("!--no-numeric", aa.numeric, "Skip the numeric optimizer comparison");

    YamadaArgs ya;
    auto* yam = app.add_subcommand("yamada", "Number-variance check against the Yamada bound");
    yam->add_option("--model", ya.model, "step, delta or gap")->capture_default_str();
    yam->add_option("--d", ya.d, "Dimension")->required();
    add_optional(yam, "--phi", ya.phi, "Packing fraction (default: terminal optimum)");
    add_optional(yam, "--sigma", ya.sigma, "Gap edge");
    add_optional(yam, "--Z", ya.Z, "Contact weight");
    yam->add_option("--rmax", ya.r_max, "Largest window radius")->capture_default_str();
    yam->add_option("--grid", ya.grid, "Geometric grid points")->capture_default_str();

    MaternArgs ma;
    auto* mat = app.add_subcommand("matern", "Ghost random sequential addition simulation");
    mat->add_option("--d", ma.d, "Dimension (1..3)")->capture_default_str();
    mat->add_option("--T", ma.T, "Time horizon")->capture_default_str();
    mat->add_option("--L", ma.L, "Box side")->capture_default_str();
    mat->add_option("--kappa", ma.kappa, "1 = ghost RSA, 0 = classical RSA")->capture_default_str();
    mat->add_option("--bins", ma.bins, "Histogram bins on [0.999, rmax)")->capture_default_str();
    mat->add_option("--rmax", ma.r_max, "Histogram upper edge")->capture_default_str();
    mat->add_flag("--saturate", ma.saturate, "Run RSA to saturation (kappa = 0)");
    mat->add_option("--runs", ma.runs, "Independent runs with seeds seed, seed+1, ...")->capture_default_str();
    mat->add_option("--centers", ma.centers, "Write the first run's centers as CSV to this file");

    ClassicalArgs ca;
    auto* cls = app.add_subcommand("classical", "Classical packing bounds");
    cls->add_option("--dims", ca.dims, "Dimensions, e.g. 56,60,64")->required();
    cls->add_flag("--terminal", ca.terminal, "Include the gap-model terminal density");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    if (g.threads == 0) g.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    std::ostringstream buf;
    int status = kExitOk;
    try {
        if (*table) status = cmd_table(g, ta, buf, err);
        else if (*sk) status = cmd_sk(g, sa, buf);
        else if (*asym) status = cmd_asymptotics(g, aa, buf);
        else if (*yam) status = cmd_yamada(g, ya, buf);
        else if (*mat) status = cmd_matern(g, ma, buf, err);
        else if (*cls) status = cmd_classical(g, ca, buf);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }

    if (g.out.empty()) {
        out << buf.str();
    } else {
        std::ofstream f(g.out);
        if (!f) {
            err << "error: cannot open " << g.out << '\n';
            return kExitUsage;
        }
        f << buf.str();
    }
    return status;
}

}  // namespace spherepack::cli
