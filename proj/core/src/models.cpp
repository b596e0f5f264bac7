#include "spherepack/models.hpp"

#include "spherepack/errors.hpp"
#include "spherepack/specialfn.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace spherepack {

namespace {

void check_common(int d, double phi, double k) {
    if (d < 1) throw DomainError("structure factor: dimension must be positive");
    if (!std::isfinite(phi) || phi < 0.0) throw DomainError("structure factor: phi must be non-negative");
    if (!std::isfinite(k) || k < 0.0) throw DomainError("structure factor: k must be non-negative");
}

// (2 sigma)^d phi, the weight of the hard-core term.
double core_weight(int d, double phi, double sigma) {
    if (phi == 0.0) return 0.0;
    return std::exp(d * std::log(2.0 * sigma) + std::log(phi));
}

}  // namespace

std::string to_string(ModelKind kind) {
    switch (kind) {
    case ModelKind::Step: return "step";
    case ModelKind::StepDelta: return "delta";
    case ModelKind::StepDeltaGap: return "gap";
    }
    return "unknown";
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "step") return ModelKind::Step;
    if (name == "delta") return ModelKind::StepDelta;
    if (name == "gap") return ModelKind::StepDeltaGap;
    throw DomainError("unknown model '" + name + "' (expected step, delta or gap)");
}

RadialModel RadialModel::step() { return {ModelKind::Step, 1.0, 0.0}; }

RadialModel RadialModel::delta(double Z) {
    RadialModel m{ModelKind::StepDelta, 1.0, Z};
    m.validate();
    return m;
}

RadialModel RadialModel::gap(double sigma, double Z) {
    RadialModel m{ModelKind::StepDeltaGap, sigma, Z};
    m.validate();
    return m;
}

void RadialModel::validate() const {
    if (!std::isfinite(sigma) || sigma < 1.0) throw DomainError("model: sigma must be >= 1");
    if (!std::isfinite(Z) || Z < 0.0) throw DomainError("model: Z must be >= 0");
    if (kind == ModelKind::Step && (sigma != 1.0 || Z != 0.0))
        throw DomainError("model: step model has sigma = 1 and Z = 0");
    if (kind == ModelKind::StepDelta && sigma != 1.0)
        throw DomainError("model: delta model has sigma = 1");
}

PackingDensity PackingDensity::from_phi(int d, double phi) {
    if (d < 1) throw DomainError("density: dimension must be positive");
    if (!std::isfinite(phi) || phi < 0.0 || phi > 1.0) throw DomainError("density: phi must lie in [0, 1]");
    const double rho = phi == 0.0 ? 0.0 : std::exp(std::log(phi) - log_sphere_volume(d, 0.5));
    return {d, phi, rho};
}

G2Value g2_eval(const RadialModel& model, const PackingDensity& density, double r) {
    model.validate();
    if (!(r >= 0.0)) throw DomainError("g2_eval: r must be non-negative");
    const double cont = r >= model.sigma ? 1.0 : 0.0;
    double w = 0.0;
    if (model.Z > 0.0) {
        if (density.rho == 0.0) throw DomainError("g2_eval: delta shell needs a positive density");
        w = model.Z / (sphere_surface(density.d, 1.0) * density.rho);
    }
    return {cont, w};
}

double structure_factor_gap(int d, double phi, double sigma, double Z, double k) {
    check_common(d, phi, k);
    if (!(sigma >= 1.0)) throw DomainError("structure factor: sigma must be >= 1");
    if (!(Z >= 0.0)) throw DomainError("structure factor: Z must be >= 0");
    const double nu = 0.5 * d;
    const double w = core_weight(d, phi, sigma);
    double s = 1.0;
    if (w != 0.0) s -= w * normalized_bessel_j(nu, k * sigma);
    if (Z != 0.0) s += Z * normalized_bessel_j(nu - 1.0, k);
    return s;
}

double structure_factor_step(int d, double phi, double k) { return structure_factor_gap(d, phi, 1.0, 0.0, k); }

double structure_factor_delta(int d, double phi, double Z, double k) {
    return structure_factor_gap(d, phi, 1.0, Z, k);
}

double structure_factor(const RadialModel& model, const PackingDensity& density, double k) {
    model.validate();
    return structure_factor_gap(density.d, density.phi, model.sigma, model.Z, k);
}

double structure_factor_derivative(int d, double phi, double sigma, double Z, double k) {
    check_common(d, phi, k);
    const double nu = 0.5 * d;
    const double w = core_weight(d, phi, sigma);
    double ds = 0.0;
    if (w != 0.0) ds += w * sigma * (k * sigma / (2.0 * (nu + 1.0))) * normalized_bessel_j(nu + 1.0, k * sigma);
    if (Z != 0.0) ds -= Z * (k / (2.0 * nu)) * normalized_bessel_j(nu, k);
    return ds;
}

double structure_factor_numeric(const RadialModel& model, const PackingDensity& density, double k,
                                double r_max) {
    model.validate();
    check_common(density.d, density.phi, k);
    if (!(r_max >= 50.0 * model.sigma)) throw DomainError("structure_factor_numeric: r_max must be >= 50 sigma");
    const int d = density.d;
    const double nu = 0.5 * d;
    double s = 1.0;
    if (density.phi > 0.0) {
        // rho s1(r) = phi d 2^d r^{d-1}
        const double log_pref = std::log(density.phi) + std::log(static_cast<double>(d)) + d * std::log(2.0);
        auto f = [&](double r) {
            if (r <= 0.0) return d == 1 ? std::exp(log_pref) : 0.0;
            return std::exp(log_pref + (d - 1) * std::log(r)) * normalized_bessel_j(nu - 1.0, k * r);
        };
        double err = 0.0;
        const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            f, 0.0, model.sigma, 15, 1e-12, &err);
        s -= integral;
    }
    if (model.Z != 0.0) s += model.Z * normalized_bessel_j(nu - 1.0, k);
    return s;
}

double small_k_quadratic_coefficient(const RadialModel& model, const PackingDensity& density) {
    model.validate();
    const int d = density.d;
    const double w = core_weight(d, density.phi, model.sigma);
    return w * model.sigma * model.sigma / (2.0 * (d + 2)) - model.Z / (2.0 * d);
}

double hyperuniform_Z(int d, double phi, double sigma) {
    if (d < 1 || !(phi >= 0.0) || !(sigma >= 1.0)) throw DomainError("hyperuniform_Z: invalid arguments");
    return core_weight(d, phi, sigma) - 1.0;
}

double default_k_max(int d) {
    if (d < 1) throw DomainError("default_k_max: dimension must be positive");
    const double nu = 0.5 * d;
    return 2.0 * (first_zero(nu) + 10.0 * std::cbrt(nu) + 20.0);
}

StructureFactorCurve sample_structure_factor(const RadialModel& model, const PackingDensity& density,
                                             double k_max, int samples) {
    model.validate();
    if (!(k_max > 0.0) || !std::isfinite(k_max)) throw DomainError("sample_structure_factor: k_max must be positive");
    if (samples < 2) throw DomainError("sample_structure_factor: need at least 2 samples");
    StructureFactorCurve c{model, density, {}, {}, 1.0};
    c.k.reserve(static_cast<std::size_t>(samples));
    c.S.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double k = k_max * i / (samples - 1);
        c.k.push_back(k);
        c.S.push_back(structure_factor(model, density, k));
    }
    c.S0 = c.S.front();
    return c;
}

}  // namespace spherepack
