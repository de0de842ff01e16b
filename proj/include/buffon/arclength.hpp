#pragma once

#include "buffon/surfaces.hpp"

namespace buffon {

/// Euclidean description of the hyperbolic tip circle of radius ell
/// centred on the equator at hyperbolic offset z: centre (center_x, 0),
/// radius radius_e, plus the quantities entering the arc-length formula.
struct EuclidCircleParams {
    double center_x;   // x(z)
    double radius_e;   // r(z)
    double alpha;      // 1 - x^2 - r^2
    double beta;       // 2 * r * x
    double theta_crit; // angle of the ray to the upper G_0 crossing; NaN if none
};

/// Circle parameters from the half-sum/half-difference of
/// tanh((z+ell)/2) and tanh((z-ell)/2).
EuclidCircleParams euclid_circle_params(double z, double ell);

/// A(z): length of the smaller tip-circle arc cut off by the nearest
/// grating line, for a needle centre at signed offset z, |z| <= ell.
/// Even in z; A(0) = C(ell)/2 and A(+-ell) = 0.
double arc_length(const NeedleSetup& setup, double z);

/// B(z) term of the disk arc-length formula, so that
/// A(z) = 2*(pi*sinh(ell) - B(z)). Exposed for the probability integral.
double disk_arc_defect(double z, double ell);

/// Conditional intersection probability 2*A(z)/C(ell), in [0, 1].
double conditional_probability(const NeedleSetup& setup, double z);

} // namespace buffon
