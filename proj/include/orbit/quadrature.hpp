#pragma once

// Building blocks for the brute-force integrals: panel-wise adaptive
// Gauss-Kronrod over a prescribed mesh, mesh grading towards near-singular
// points, and polynomial extrapolation of a regulator ladder.

#include <functional>
#include <vector>

#include "orbit/cerf.hpp"

namespace orbit {

using ComplexIntegrand = std::function<Complex(double)>;

struct PanelSum {
    Complex value;
    double error = 0.0;  ///< sum of per-panel Kronrod error estimates
    std::size_t panels = 0;
};

/// Integrates f over consecutive intervals [breaks[i], breaks[i+1]], each with
/// an adaptive 21-point Gauss-Kronrod rule limited to max_depth bisections.
PanelSum integrate_panels(const ComplexIntegrand& f, const std::vector<double>& breaks, double rel_tol = 1e-13,
                          unsigned max_depth = 10);

/// Breakpoints on [a, b]: a uniform grid of `uniform_panels` intervals, plus
/// geometric grading around each point in `singular` from width/4 up to the
/// uniform spacing, on both sides.
std::vector<double> graded_mesh(double a, double b, const std::vector<double>& singular, double width,
                                int uniform_panels);

struct Extrapolation {
    Complex value;  ///< polynomial through all rungs evaluated at h = 0
    Complex lower;  ///< same, dropping the coarsest rung
    double error = 0.0;
    double order = 0.0;  ///< observed order from the last three rungs
};

/// Neville extrapolation to h = 0 of values v taken at strictly decreasing
/// h > 0 (at least three). Throws ConvergenceError when the successive
/// differences do not shrink. Differences below 1e-14 max(|v|, scale) count
/// as rounding noise; pass the magnitude of any cancelled parts as scale.
Extrapolation extrapolate_to_zero(const std::vector<double>& h, const std::vector<Complex>& v, double scale = 0.0);

}  // namespace orbit
