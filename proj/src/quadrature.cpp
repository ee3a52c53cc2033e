#include "orbit/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "orbit/error.hpp"

namespace orbit {

PanelSum integrate_panels(const ComplexIntegrand& f, const std::vector<double>& breaks, double rel_tol,
                          unsigned max_depth)
{
    using Rule = boost::math::quadrature::gauss_kronrod<double, 21>;
    struct Panel {
        double a, b;
        Complex value;
        double error, l1;
    };
    std::vector<Panel> panels;
    double total_l1 = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) {
            continue;
        }
        Panel p{breaks[i], breaks[i + 1], {}, 0.0, 0.0};
        p.value = Rule::integrate(f, p.a, p.b, 0, 0.0, &p.error, &p.l1);
        total_l1 += p.l1;
        panels.push_back(p);
    }
    // refine only panels whose error matters against the whole integral
    const double target = rel_tol * total_l1;
    const double share = target / std::sqrt(static_cast<double>(std::max<std::size_t>(1, panels.size())));
    PanelSum out;
    for (auto& p : panels) {
        if (p.error > share && max_depth > 0) {
            const double tol = std::max(rel_tol, share / std::max(p.l1, std::numeric_limits<double>::min()));
            p.value = Rule::integrate(f, p.a, p.b, max_depth, tol, &p.error, &p.l1);
        }
        if (!std::isfinite(p.value.real()) || !std::isfinite(p.value.imag())) {
            throw NumericalError("non-finite integrand on [" + std::to_string(p.a) + ", " + std::to_string(p.b) + "]");
        }
        out.value += p.value;
        out.error += p.error;
        ++out.panels;
    }
    return out;
}

std::vector<double> graded_mesh(double a, double b, const std::vector<double>& singular, double width,
                                int uniform_panels)
{
    if (!(b > a) || uniform_panels < 1 || !(width > 0)) {
        throw InvalidArgument("graded_mesh: need b > a, width > 0, uniform_panels >= 1");
    }
    std::vector<double> pts;
    const double step = (b - a) / uniform_panels;
    for (int i = 0; i <= uniform_panels; ++i) {
        pts.push_back(a + step * i);
    }
    for (double s : singular) {
        if (s < a || s > b) {
            continue;
        }
        pts.push_back(s);
        for (double d = width / 4; d < step; d *= 2) {
            for (double p : {s - d, s + d}) {
                if (p > a && p < b) {
                    pts.push_back(p);
                }
            }
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

namespace {

Complex neville_at_zero(const std::vector<double>& h, const std::vector<Complex>& v, std::size_t first)
{
    std::vector<Complex> p(v.begin() + first, v.end());
    std::vector<double> x(h.begin() + first, h.end());
    const std::size_t n = p.size();
    for (std::size_t m = 1; m < n; ++m) {
        for (std::size_t i = 0; i + m < n; ++i) {
            p[i] = (x[i + m] * p[i] - x[i] * p[i + 1]) / (x[i + m] - x[i]);
        }
    }
    return p[0];
}

}  // namespace

Extrapolation extrapolate_to_zero(const std::vector<double>& h, const std::vector<Complex>& v, double scale)
{
    if (h.size() != v.size() || h.size() < 3) {
        throw InvalidArgument("extrapolation needs at least three rungs");
    }
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!(h[i] > 0) || (i > 0 && !(h[i] < h[i - 1]))) {
            throw InvalidArgument("extrapolation rungs must be positive and strictly decreasing");
        }
    }
    const std::size_t n = h.size();
    Extrapolation out;
    out.value = neville_at_zero(h, v, 0);
    out.lower = neville_at_zero(h, v, 1);
    out.error = std::abs(out.value - out.lower);

    const double d1 = std::abs(v[n - 3] - v[n - 2]);
    const double d2 = std::abs(v[n - 2] - v[n - 1]);
    // residuals at the rounding level carry no information about the order
    const double noise = 1e-14 * std::max(std::abs(v[n - 1]), scale);
    if (d1 <= noise && d2 <= noise) {
        out.order = NAN;
        return out;
    }
    for (std::size_t i = 0; i + 2 < n; ++i) {
        if (!(std::abs(v[i + 1] - v[i + 2]) < std::abs(v[i] - v[i + 1]))) {
            throw ConvergenceError("regulator ladder residuals are not decreasing");
        }
    }
    // assumes a roughly geometric ladder
    out.order = std::log(d1 / d2) / std::log(h[n - 3] / h[n - 2]);
    return out;
}

}  // namespace orbit
