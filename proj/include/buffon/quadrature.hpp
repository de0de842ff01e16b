#pragma once

#include <functional>
#include <stdexcept>

namespace buffon {

struct QuadratureResult {
    double value = 0.0;
    double error_bound = 0.0; // estimated absolute error
    int evals = 0;
};

/// Thrown when the node-doubling cap is reached before the requested
/// tolerance.
class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Integrates f over (a, b) with tanh-sinh (double-exponential) node
/// placement. The substitution pushes nodes exponentially close to the
/// endpoints, so endpoint derivative blow-ups of bounded integrands
/// converge at spectral rate. Levels double the node count; the error
/// bound is the last inter-level difference.
///
/// Throws QuadratureError if the bound still exceeds tol after 12
/// refinement levels.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double tol);

} // namespace buffon
