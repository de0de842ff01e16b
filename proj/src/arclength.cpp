#include "buffon/arclength.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace buffon {

namespace {

constexpr double kPi = std::numbers::pi;

// Upstream rounding can push |z| epsilon-outside [-ell, ell]; fold such
// values back to the boundary, reject anything further out.
double checked_offset(double z, double ell) {
    double a = std::abs(z);
    if (a > ell) {
        if (a - ell <= 1e-12 * ell)
            return ell;
        throw std::domain_error("needle offset exceeds half-length");
    }
    return a;
}

} // namespace

EuclidCircleParams euclid_circle_params(double z, double ell) {
    if (!(ell > 0.0))
        throw std::domain_error("half-length must be positive");
    const double tp = std::tanh((z + ell) / 2.0);
    const double tm = std::tanh((z - ell) / 2.0);
    EuclidCircleParams out;
    out.center_x = 0.5 * (tp + tm);
    out.radius_e = 0.5 * (tp - tm);
    out.alpha = 1.0 - out.center_x * out.center_x - out.radius_e * out.radius_e;
    out.beta = 2.0 * out.radius_e * out.center_x;
    const double c = -out.center_x / out.radius_e;
    out.theta_crit = std::abs(c) <= 1.0 ? std::acos(c)
                                        : std::numeric_limits<double>::quiet_NaN();
    return out;
}

double disk_arc_defect(double z, double ell) {
    const double a = checked_offset(z, ell);
    const double tp = std::tanh((a + ell) / 2.0);
    const double tm = std::tanh((a - ell) / 2.0);
    const double prefactor =
        2.0 * (tp - tm) / std::sqrt((1.0 - tp * tp) * (1.0 - tm * tm));
    // tanh((ell-a)/2) -> 0 as a -> ell; the atan argument diverges but the
    // limit is finite (atan -> pi/2), so clamp the denominator only.
    const double num = std::tanh((ell + a) / 2.0);
    const double den = std::max(std::tanh((ell - a) / 2.0), 1e-300);
    const double arg = std::sqrt((1.0 - tm * tm) / (1.0 - tp * tp)) *
                       std::sqrt(num / den);
    return prefactor * std::atan(arg);
}

double arc_length(const NeedleSetup& setup, double z) {
    const double ell = setup.half_length();
    const double a = checked_offset(z, ell);
    switch (setup.surface().kind()) {
    case SurfaceKind::Plane:
        return 2.0 * ell * std::acos(a / ell);
    case SurfaceKind::Sphere: {
        const double r = setup.surface().radius();
        const double s = std::sin(ell / r);
        const double arg = std::min(std::tan(a / r) / std::tan(ell / r), 1.0);
        return kPi * r * s - 2.0 * r * s * std::asin(arg);
    }
    case SurfaceKind::PoincareDisk:
        return std::max(2.0 * (kPi * std::sinh(ell) - disk_arc_defect(a, ell)), 0.0);
    }
    throw std::logic_error("unreachable surface kind");
}

double conditional_probability(const NeedleSetup& setup, double z) {
    const double p = 2.0 * arc_length(setup, z) /
                     circumference(setup.surface(), setup.half_length());
    return std::min(std::max(p, 0.0), 1.0);
}

} // namespace buffon
