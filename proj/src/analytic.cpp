#include "buffon/analytic.hpp"

#include "buffon/arclength.hpp"

#include <cmath>
#include <numbers>

namespace buffon {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoOverPi = 2.0 / std::numbers::pi;

} // namespace

const char* method_name(Method m) {
    switch (m) {
    case Method::Exact: return "exact";
    case Method::Quadrature: return "quadrature";
    case Method::Series: return "series";
    case Method::MonteCarlo: return "montecarlo";
    }
    return "unknown";
}

ProbabilityEstimate probability(const NeedleSetup& setup, double tol) {
    if (!(tol > 0.0))
        throw std::invalid_argument("probability tolerance must be positive");
    const double ell = setup.half_length();
    switch (setup.surface().kind()) {
    case SurfaceKind::Plane:
        return {kTwoOverPi, 0.0, Method::Exact, 0, std::nullopt};
    case SurfaceKind::Sphere: {
        // P = 1 - 2/(pi*ell) * int_0^ell asin(tan(w/r) * cot(ell/r)) dw
        const double r = setup.surface().radius();
        const double cot_ell = 1.0 / std::tan(ell / r);
        const double scale = 2.0 / (kPi * ell);
        auto integrand = [&](double w) {
            return std::asin(std::min(std::tan(w / r) * cot_ell, 1.0));
        };
        const QuadratureResult q = integrate(integrand, 0.0, ell, tol / scale);
        return {1.0 - scale * q.value, scale * q.error_bound, Method::Quadrature,
                q.evals, std::nullopt};
    }
    case SurfaceKind::PoincareDisk: {
        // P = 2*(1 - 1/(pi*ell*sinh ell) * int_0^ell B(z) dz)
        const double scale = 2.0 / (kPi * ell * std::sinh(ell));
        auto integrand = [&](double z) { return disk_arc_defect(z, ell); };
        const QuadratureResult q = integrate(integrand, 0.0, ell, tol / scale);
        return {2.0 - scale * q.value, scale * q.error_bound, Method::Quadrature,
                q.evals, std::nullopt};
    }
    }
    throw std::logic_error("unreachable surface kind");
}

ProbabilityEstimate probability_via_arclength(const NeedleSetup& setup, double tol) {
    if (!(tol > 0.0))
        throw std::invalid_argument("probability tolerance must be positive");
    const double ell = setup.half_length();
    const double scale = 1.0 / ell;
    auto integrand = [&](double z) { return conditional_probability(setup, z); };
    const QuadratureResult q = integrate(integrand, 0.0, ell, tol / scale);
    return {scale * q.value, scale * q.error_bound, Method::Quadrature, q.evals,
            std::nullopt};
}

double series_probability(const Surface& surface, double ell) {
    if (!(ell > 0.0))
        throw std::invalid_argument("half-length must be positive");
    switch (surface.kind()) {
    case SurfaceKind::Plane:
        return kTwoOverPi;
    case SurfaceKind::Sphere: {
        const double r = surface.radius();
        return kTwoOverPi + 2.0 / (9.0 * kPi * r * r) * ell * ell;
    }
    case SurfaceKind::PoincareDisk:
        return 2.0 * (1.0 - ell / (kPi * std::sinh(ell)) *
                                ((kPi - 1.0) +
                                 ell * ell * ((kPi - 1.0) / 6.0 + 1.0 / 9.0)));
    }
    throw std::logic_error("unreachable surface kind");
}

double deficit(const NeedleSetup& setup, double tol) {
    return probability(setup, tol).value - kTwoOverPi;
}

GridSpec GridSpec::defaults(const Surface& surface) {
    GridSpec spec;
    if (surface.is_sphere()) {
        spec.levels = 5; // n in {4, 8, 16, 32, 64}
        spec.index_start = 4;
    } else {
        spec.levels = 6; // ell in {0.2 * 2^-k : k = 0..5}
        spec.ell_max = 0.2;
    }
    return spec;
}

std::vector<NeedleSetup> GridSpec::setups(const Surface& surface, double radius) const {
    if (levels < 1)
        throw std::invalid_argument("grid must have at least one level");
    std::vector<NeedleSetup> out;
    out.reserve(levels);
    for (int k = 0; k < levels; ++k) {
        switch (surface.kind()) {
        case SurfaceKind::Plane:
            out.push_back(NeedleSetup::plane(ell_max * std::ldexp(1.0, -k)));
            break;
        case SurfaceKind::Sphere:
            out.push_back(NeedleSetup::sphere(radius, index_start << k));
            break;
        case SurfaceKind::PoincareDisk:
            out.push_back(NeedleSetup::poincare_disk(ell_max * std::ldexp(1.0, -k)));
            break;
        }
    }
    return out;
}

DeficitCurve deficit_curve(const Surface& surface, double radius,
                           const GridSpec& grid, double tol) {
    DeficitCurve curve;
    curve.surface = surface;
    for (const NeedleSetup& setup : grid.setups(surface, radius)) {
        const ProbabilityEstimate est = probability(setup, tol);
        curve.ells.push_back(setup.half_length());
        curve.probs.push_back(est);
        curve.deficits.push_back(est.value - kTwoOverPi);
    }
    return curve;
}

CurvatureEstimate curvature_estimate(const Surface& surface, double radius,
                                     const GridSpec& grid, double tol) {
    DeficitCurve curve = deficit_curve(surface, radius, grid, tol);
    const std::size_t n = curve.ells.size();
    if (n < 4)
        throw FitError("curvature fit needs at least 4 grid points");
    for (std::size_t i = 0; i < n; ++i) {
        if (curve.probs[i].error > std::abs(curve.deficits[i]))
            throw FitError("quadrature error exceeds deficit magnitude at ell = " +
                           std::to_string(curve.ells[i]) +
                           "; grid is too fine for the tolerance");
    }

    // Weighting squared residuals by 1/ell^4 turns the fit into ordinary
    // least squares of y = deficit/ell^2 against a + b*u with u = ell^2.
    double su = 0.0, suu = 0.0, sy = 0.0, suy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = curve.ells[i] * curve.ells[i];
        const double y = curve.deficits[i] / u;
        su += u;
        suu += u * u;
        sy += y;
        suy += u * y;
    }
    const double count = static_cast<double>(n);
    const double det = count * suu - su * su;
    if (det == 0.0)
        throw FitError("degenerate curvature fit grid");
    const double a = (suu * sy - su * suy) / det;
    const double b = (count * suy - su * sy) / det;

    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = curve.ells[i] * curve.ells[i];
        const double resid = curve.deficits[i] / u - (a + b * u);
        rss += resid * resid;
    }

    CurvatureEstimate est;
    est.coeff_a = a;
    est.kappa_hat = 9.0 * kPi / 2.0 * a;
    est.residual_rms = std::sqrt(rss / count);
    est.grid = std::move(curve);
    return est;
}

} // namespace buffon
