#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace buffon {

enum class SurfaceKind { Plane, Sphere, PoincareDisk };

/// One of the three homogeneous model surfaces: the euclidean plane, the
/// sphere of a given radius embedded in R^3, or the Poincare disk (unit
/// disk with the conformal metric of curvature -1).
class Surface {
public:
    static Surface plane() { return Surface(SurfaceKind::Plane, 0.0); }
    static Surface sphere(double radius) {
        if (!(radius > 0.0))
            throw std::invalid_argument("sphere radius must be positive");
        return Surface(SurfaceKind::Sphere, radius);
    }
    static Surface poincare_disk() { return Surface(SurfaceKind::PoincareDisk, 0.0); }

    SurfaceKind kind() const { return kind_; }
    bool is_plane() const { return kind_ == SurfaceKind::Plane; }
    bool is_sphere() const { return kind_ == SurfaceKind::Sphere; }
    bool is_disk() const { return kind_ == SurfaceKind::PoincareDisk; }

    /// Sphere radius; only meaningful when kind() == Sphere.
    double radius() const {
        if (!is_sphere())
            throw std::logic_error("radius() is defined only for spheres");
        return radius_;
    }

    /// Gaussian curvature ground truth: 0, 1/r^2, -1.
    double curvature() const;

    const char* name() const;

private:
    Surface(SurfaceKind kind, double radius) : kind_(kind), radius_(radius) {}
    SurfaceKind kind_;
    double radius_;
};

/// A point on a surface. Plane and disk use (x, y) with z = 0; the sphere
/// uses embedded coordinates with x^2 + y^2 + z^2 = r^2.
struct SurfacePoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// True if p satisfies the surface's point invariants (on-sphere to
/// 1e-12 relative, strictly inside the unit disk).
bool on_surface(const Surface& surface, const SurfacePoint& p);

/// Orientation-preserving isometry that maps the equator to itself:
/// an x-translation (plane), a rotation about the z-axis (sphere), or the
/// Mobius map g_tau (disk). Parametrised by the signed arc length it
/// moves points along the equator.
class Isometry {
public:
    /// Isometry moving equator points by signed arc length d
    /// (sphere: d taken mod 2*pi*r, representative in [0, 2*pi*r)).
    static Isometry from_displacement(const Surface& surface, double d);

    const Surface& surface() const { return surface_; }

    /// Raw parameter: translation distance (plane), rotation angle in
    /// [0, 2*pi) (sphere), Mobius parameter tau in (-1, 1) (disk).
    double parameter() const { return parameter_; }

    /// Signed distance the isometry moves points along the equator
    /// (sphere: representative in [0, 2*pi*r)).
    double displacement() const;

    /// Group composition; displacement adds (mod 2*pi*r on the sphere).
    Isometry compose(const Isometry& other) const;

    Isometry inverse() const;

    SurfacePoint apply(const SurfacePoint& p) const;

private:
    Isometry(const Surface& surface, double parameter)
        : surface_(surface), parameter_(parameter) {}
    Surface surface_;
    double parameter_;
};

inline SurfacePoint apply(const Isometry& iso, const SurfacePoint& p) {
    return iso.apply(p);
}

/// Needle drop configuration: needle length L = 2*ell on a grating of
/// spacing L. On the sphere the spacing must close up evenly around the
/// equator, L = pi*r/n with integer n >= 2, so ell = pi*r/(2n).
class NeedleSetup {
public:
    static NeedleSetup plane(double half_length);
    static NeedleSetup poincare_disk(double half_length);
    /// Grating-legal sphere setup: ell = pi*radius/(2*index), index >= 2.
    static NeedleSetup sphere(double radius, int index);
    /// Sphere setup with arbitrary ell in (0, pi*r/4]; not grating-legal,
    /// accepted by quadrature only (Monte Carlo rejects it).
    static NeedleSetup sphere_incommensurate(double radius, double half_length);

    const Surface& surface() const { return surface_; }
    double half_length() const { return half_length_; }   // ell
    double spacing() const { return 2.0 * half_length_; } // L = 2*ell
    std::optional<int> sphere_index() const { return sphere_index_; }
    bool commensurate() const { return commensurate_; }

private:
    NeedleSetup(const Surface& surface, double half_length,
                std::optional<int> index, bool commensurate)
        : surface_(surface), half_length_(half_length),
          sphere_index_(index), commensurate_(commensurate) {}
    Surface surface_;
    double half_length_;
    std::optional<int> sphere_index_;
    bool commensurate_;
};

/// Circumference of a geodesic circle of radius rho:
/// 2*pi*rho (plane), 2*pi*r*sin(rho/r) (sphere), 2*pi*sinh(rho) (disk).
double circumference(const Surface& surface, double rho);

/// The point on the equator at signed arc length z from the base point
/// (origin, (r,0,0), or disk centre). Sphere: z is taken mod 2*pi*r.
SurfacePoint equator_point(const Surface& surface, double z);

/// Geodesic exponential map from an equator point p: the point at
/// distance |t| along the geodesic leaving p at angle theta, measured
/// from the positive equator direction.
SurfacePoint exp_map(const Surface& surface, const SurfacePoint& p,
                     double theta, double t);

double geodesic_distance(const Surface& surface, const SurfacePoint& p,
                         const SurfacePoint& q);

/// Signed equator offsets of the grating lines: {m*L : |m| <= k} for the
/// plane and disk; the full set {m*L : 0 <= m <= 2n-1} for the sphere.
std::vector<double> grating_offsets(const NeedleSetup& setup, int k);

} // namespace buffon
