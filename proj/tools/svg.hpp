#pragma once

// Minimal SVG output: line plots and zero-level contours on a rectangular
// grid. No styling beyond what is needed to read the figure.

#include <string>
#include <vector>

namespace orbit::cli {

struct Segment {
    double x0, y0, x1, y1;
};

/// Marching squares for f = 0. f is row-major with x fastest,
/// f[j * xs.size() + i] = f(xs[i], ys[j]). Cells touching a NaN are skipped.
std::vector<Segment> zero_contour(const std::vector<double>& xs, const std::vector<double>& ys,
                                  const std::vector<double>& f);

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct Axes {
    std::string title;
    std::string xlabel;
    std::string ylabel;
};

std::string line_plot(const Axes& axes, const std::vector<Series>& series);

/// Contour segments drawn inside the box [x_lo, x_hi] x [y_lo, y_hi].
std::string contour_plot(const Axes& axes, double x_lo, double x_hi, double y_lo, double y_hi,
                         const std::vector<Segment>& segments);

}  // namespace orbit::cli
