#include "buffon/surfaces.hpp"

#include <cmath>
#include <numbers>

namespace buffon {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_nonnegative(double value, double period) {
    double w = std::fmod(value, period);
    if (w < 0.0)
        w += period;
    return w;
}

// Mobius equator translation g_tau applied to (x, y), tau in (-1, 1).
SurfacePoint mobius_translate(double tau, const SurfacePoint& p) {
    const double x = p.x, y = p.y;
    const double denom = (tau * x + 1.0) * (tau * x + 1.0) + tau * tau * y * y;
    SurfacePoint image;
    image.x = (tau * (x * x + y * y) + (tau * tau + 1.0) * x + tau) / denom;
    image.y = ((1.0 - tau * tau) * y) / denom;
    return image;
}

} // namespace

double Surface::curvature() const {
    switch (kind_) {
    case SurfaceKind::Plane: return 0.0;
    case SurfaceKind::Sphere: return 1.0 / (radius_ * radius_);
    case SurfaceKind::PoincareDisk: return -1.0;
    }
    return 0.0;
}

const char* Surface::name() const {
    switch (kind_) {
    case SurfaceKind::Plane: return "plane";
    case SurfaceKind::Sphere: return "sphere";
    case SurfaceKind::PoincareDisk: return "hyperbolic";
    }
    return "unknown";
}

bool on_surface(const Surface& surface, const SurfacePoint& p) {
    switch (surface.kind()) {
    case SurfaceKind::Plane:
        return std::isfinite(p.x) && std::isfinite(p.y);
    case SurfaceKind::Sphere: {
        const double r2 = surface.radius() * surface.radius();
        const double n2 = p.x * p.x + p.y * p.y + p.z * p.z;
        return std::abs(n2 - r2) <= 1e-12 * r2;
    }
    case SurfaceKind::PoincareDisk:
        return p.x * p.x + p.y * p.y < 1.0;
    }
    return false;
}

Isometry Isometry::from_displacement(const Surface& surface, double d) {
    switch (surface.kind()) {
    case SurfaceKind::Plane:
        return Isometry(surface, d);
    case SurfaceKind::Sphere: {
        const double angle = wrap_nonnegative(d / surface.radius(), 2.0 * kPi);
        return Isometry(surface, angle);
    }
    case SurfaceKind::PoincareDisk:
        return Isometry(surface, std::tanh(d / 2.0));
    }
    throw std::logic_error("unreachable surface kind");
}

double Isometry::displacement() const {
    switch (surface_.kind()) {
    case SurfaceKind::Plane: return parameter_;
    case SurfaceKind::Sphere: return parameter_ * surface_.radius();
    case SurfaceKind::PoincareDisk: return 2.0 * std::atanh(parameter_);
    }
    return 0.0;
}

Isometry Isometry::compose(const Isometry& other) const {
    if (surface_.kind() != other.surface_.kind())
        throw std::invalid_argument("cannot compose isometries of different surfaces");
    switch (surface_.kind()) {
    case SurfaceKind::Plane:
        return Isometry(surface_, parameter_ + other.parameter_);
    case SurfaceKind::Sphere:
        return Isometry(surface_,
                        wrap_nonnegative(parameter_ + other.parameter_, 2.0 * kPi));
    case SurfaceKind::PoincareDisk: {
        // g_a . g_b = g_{(a+b)/(1+ab)}: tanh addition of half-displacements.
        const double a = parameter_, b = other.parameter_;
        return Isometry(surface_, (a + b) / (1.0 + a * b));
    }
    }
    throw std::logic_error("unreachable surface kind");
}

Isometry Isometry::inverse() const {
    switch (surface_.kind()) {
    case SurfaceKind::Plane:
        return Isometry(surface_, -parameter_);
    case SurfaceKind::Sphere:
        return Isometry(surface_, wrap_nonnegative(-parameter_, 2.0 * kPi));
    case SurfaceKind::PoincareDisk:
        return Isometry(surface_, -parameter_);
    }
    throw std::logic_error("unreachable surface kind");
}

SurfacePoint Isometry::apply(const SurfacePoint& p) const {
    switch (surface_.kind()) {
    case SurfaceKind::Plane:
        return SurfacePoint{p.x + parameter_, p.y, 0.0};
    case SurfaceKind::Sphere: {
        const double c = std::cos(parameter_), s = std::sin(parameter_);
        return SurfacePoint{c * p.x - s * p.y, s * p.x + c * p.y, p.z};
    }
    case SurfaceKind::PoincareDisk:
        return mobius_translate(parameter_, p);
    }
    throw std::logic_error("unreachable surface kind");
}

NeedleSetup NeedleSetup::plane(double half_length) {
    if (!(half_length > 0.0))
        throw std::invalid_argument("needle half-length must be positive");
    return NeedleSetup(Surface::plane(), half_length, std::nullopt, true);
}

NeedleSetup NeedleSetup::poincare_disk(double half_length) {
    if (!(half_length > 0.0))
        throw std::invalid_argument("needle half-length must be positive");
    return NeedleSetup(Surface::poincare_disk(), half_length, std::nullopt, true);
}

NeedleSetup NeedleSetup::sphere(double radius, int index) {
    if (index < 2)
        throw std::invalid_argument("sphere grating index must be >= 2");
    const Surface surface = Surface::sphere(radius);
    const double ell = kPi * radius / (2.0 * index);
    return NeedleSetup(surface, ell, index, true);
}

NeedleSetup NeedleSetup::sphere_incommensurate(double radius, double half_length) {
    const Surface surface = Surface::sphere(radius);
    if (!(half_length > 0.0) || half_length > kPi * radius / 4.0)
        throw std::invalid_argument(
            "sphere needle half-length must lie in (0, pi*r/4]");
    // Exact multiples of pi*r/(2n) are still commensurate.
    const double n_real = kPi * radius / (2.0 * half_length);
    const int n = static_cast<int>(std::lround(n_real));
    if (n >= 2 && half_length == kPi * radius / (2.0 * n))
        return NeedleSetup(surface, half_length, n, true);
    return NeedleSetup(surface, half_length, std::nullopt, false);
}

double circumference(const Surface& surface, double rho) {
    if (!(rho > 0.0))
        throw std::domain_error("geodesic circle radius must be positive");
    switch (surface.kind()) {
    case SurfaceKind::Plane:
        return 2.0 * kPi * rho;
    case SurfaceKind::Sphere: {
        const double r = surface.radius();
        if (rho >= kPi * r)
            throw std::domain_error("sphere circle radius must be below pi*r");
        return 2.0 * kPi * r * std::sin(rho / r);
    }
    case SurfaceKind::PoincareDisk:
        return 2.0 * kPi * std::sinh(rho);
    }
    throw std::logic_error("unreachable surface kind");
}

SurfacePoint equator_point(const Surface& surface, double z) {
    switch (surface.kind()) {
    case SurfaceKind::Plane:
        return SurfacePoint{z, 0.0, 0.0};
    case SurfaceKind::Sphere: {
        const double r = surface.radius();
        const double phi = z / r;
        return SurfacePoint{r * std::cos(phi), r * std::sin(phi), 0.0};
    }
    case SurfaceKind::PoincareDisk:
        return SurfacePoint{std::tanh(z / 2.0), 0.0, 0.0};
    }
    throw std::logic_error("unreachable surface kind");
}

SurfacePoint exp_map(const Surface& surface, const SurfacePoint& p,
                     double theta, double t) {
    if (!on_surface(surface, p))
        throw std::domain_error("exp_map: point violates surface invariants");
    switch (surface.kind()) {
    case SurfaceKind::Plane:
        return SurfacePoint{p.x + t * std::cos(theta), p.y + t * std::sin(theta), 0.0};
    case SurfaceKind::Sphere: {
        const double r = surface.radius();
        // Tangent frame at p: azimuthal direction e (the positive equator
        // direction when p lies on the equator) and the poleward n = p/r x e.
        const double phi = std::atan2(p.y, p.x);
        const double ex = -std::sin(phi), ey = std::cos(phi);
        const double nx = -(p.z / r) * ey;
        const double ny = (p.z / r) * ex;
        const double nz = (p.x * ey - p.y * ex) / r;
        const double ct = std::cos(theta), st = std::sin(theta);
        const double ux = ct * ex + st * nx;
        const double uy = ct * ey + st * ny;
        const double uz = st * nz;
        const double c = std::cos(t / r), s = std::sin(t / r);
        return SurfacePoint{c * p.x + r * s * ux, c * p.y + r * s * uy,
                            c * p.z + r * s * uz};
    }
    case SurfaceKind::PoincareDisk: {
        if (p.y != 0.0)
            throw std::domain_error("exp_map: disk base point must lie on the equator");
        // Translate p to the origin, shoot the geodesic (angles at the
        // origin are euclidean by conformality), translate back.
        const double rho = std::tanh(t / 2.0);
        const SurfacePoint from_origin{rho * std::cos(theta), rho * std::sin(theta), 0.0};
        return mobius_translate(p.x, from_origin);
    }
    }
    throw std::logic_error("unreachable surface kind");
}

double geodesic_distance(const Surface& surface, const SurfacePoint& p,
                         const SurfacePoint& q) {
    switch (surface.kind()) {
    case SurfaceKind::Plane:
        return std::hypot(q.x - p.x, q.y - p.y);
    case SurfaceKind::Sphere: {
        const double r = surface.radius();
        const double dot = (p.x * q.x + p.y * q.y + p.z * q.z) / (r * r);
        const double cx = p.y * q.z - p.z * q.y;
        const double cy = p.z * q.x - p.x * q.z;
        const double cz = p.x * q.y - p.y * q.x;
        const double cross = std::sqrt(cx * cx + cy * cy + cz * cz) / (r * r);
        return r * std::atan2(cross, dot);
    }
    case SurfaceKind::PoincareDisk: {
        // 2*atanh of the Mobius-invariant modulus |p - q| / |1 - conj(q) p|.
        const double dx = p.x - q.x, dy = p.y - q.y;
        const double ax = 1.0 - (q.x * p.x + q.y * p.y);
        const double ay = q.y * p.x - q.x * p.y;
        const double num = std::hypot(dx, dy);
        const double den = std::hypot(ax, ay);
        return 2.0 * std::atanh(num / den);
    }
    }
    throw std::logic_error("unreachable surface kind");
}

std::vector<double> grating_offsets(const NeedleSetup& setup, int k) {
    if (k < 0)
        throw std::invalid_argument("grating window must be non-negative");
    const double spacing = setup.spacing();
    std::vector<double> offsets;
    if (setup.surface().is_sphere()) {
        if (!setup.commensurate())
            throw std::invalid_argument(
                "grating offsets are defined only for commensurate sphere setups");
        const int n = *setup.sphere_index();
        offsets.reserve(2 * n);
        for (int m = 0; m < 2 * n; ++m)
            offsets.push_back(m * spacing);
        return offsets;
    }
    offsets.reserve(2 * k + 1);
    for (int m = -k; m <= k; ++m)
        offsets.push_back(m * spacing);
    return offsets;
}

} // namespace buffon
