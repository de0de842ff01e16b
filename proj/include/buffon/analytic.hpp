#pragma once

#include "buffon/quadrature.hpp"
#include "buffon/surfaces.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace buffon {

enum class Method { Exact, Quadrature, Series, MonteCarlo };

const char* method_name(Method m);

/// An intersection probability with its provenance: exact value,
/// quadrature result with an error bound, series model, or Monte Carlo
/// estimate with a standard error.
struct ProbabilityEstimate {
    double value = 0.0;
    double error = 0.0; // quadrature bound or MC standard error
    Method method = Method::Exact;
    std::int64_t detail = 0; // integrand evals or MC samples
    std::optional<std::uint64_t> seed;
};

/// Per-ell probabilities and their deviations from the flat-space value
/// 2/pi, on a strictly decreasing ell grid.
struct DeficitCurve {
    Surface surface = Surface::plane();
    std::vector<double> ells;
    std::vector<ProbabilityEstimate> probs;
    std::vector<double> deficits;
};

/// Result of extrapolating deficits to ell -> 0: the fitted ell^2
/// coefficient a and kappa_hat = (9*pi/2) * a.
struct CurvatureEstimate {
    double kappa_hat = 0.0;
    double coeff_a = 0.0;
    double residual_rms = 0.0;
    DeficitCurve grid;
};

/// Grid of needle half-lengths for deficit sweeps. Plane/disk grids halve
/// ell from ell_max; sphere grids double the grating index from
/// index_start so every ell stays grating-legal.
struct GridSpec {
    int levels = 6;
    double ell_max = 0.2;  // plane/disk
    int index_start = 4;   // sphere: n, 2n, 4n, ...

    static GridSpec defaults(const Surface& surface);
    std::vector<NeedleSetup> setups(const Surface& surface, double radius) const;
};

class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Intersection probability by the surface's specialised route: the
/// exact 2/pi on the plane, tanh-sinh quadrature of the probability
/// integral on the sphere and the disk (absolute tolerance tol).
ProbabilityEstimate probability(const NeedleSetup& setup, double tol);

/// Same probability through the law-of-total-probability route: the
/// integral of the conditional probability 2A(z)/C over the drop window,
/// using only the closed-form arc lengths. Cross-formula oracle for
/// probability(); always method = Quadrature.
ProbabilityEstimate probability_via_arclength(const NeedleSetup& setup, double tol);

/// Second-order small-ell model: 2/pi (plane),
/// 2/pi + (2/(9*pi*r^2))*ell^2 (sphere),
/// 2*(1 - ell/(pi*sinh ell) * ((pi-1) + ell^2*((pi-1)/6 + 1/9))) (disk).
double series_probability(const Surface& surface, double ell);

/// probability(setup).value - 2/pi.
double deficit(const NeedleSetup& setup, double tol);

DeficitCurve deficit_curve(const Surface& surface, double radius,
                           const GridSpec& grid, double tol);

/// Recovers Gaussian curvature from the probability deficits on the
/// grid: weighted least-squares fit of deficit = a*ell^2 + b*ell^4
/// (weights 1/ell^4), kappa_hat = (9*pi/2)*a.
///
/// Throws FitError when the grid has fewer than 4 points or the
/// quadrature error bounds swamp the deficits.
CurvatureEstimate curvature_estimate(const Surface& surface, double radius,
                                     const GridSpec& grid, double tol);

} // namespace buffon
