#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace orbit::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v, const char* spec = "%.4g")
{
    char buf[32];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Frame {
    double x_lo, x_hi, y_lo, y_hi;

    double px(double x) const { return kLeft + (x - x_lo) / (x_hi - x_lo) * (kWidth - kLeft - kRight); }
    double py(double y) const { return kHeight - kBottom - (y - y_lo) / (y_hi - y_lo) * (kHeight - kTop - kBottom); }
};

void open_figure(std::ostringstream& out, const Axes& axes, const Frame& f)
{
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth - kLeft - kRight << "\" height=\""
        << kHeight - kTop - kBottom << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\">" << escape(axes.title) << "</text>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">"
        << escape(axes.xlabel) << "</text>\n";
    out << "<text x=\"16\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << kHeight / 2 << ")\">" << escape(axes.ylabel) << "</text>\n";
    // end-point tick labels
    const double yb = kHeight - kBottom + 16;
    out << "<text x=\"" << kLeft << "\" y=\"" << yb << "\" text-anchor=\"start\">" << fmt(f.x_lo) << "</text>\n";
    out << "<text x=\"" << kWidth - kRight << "\" y=\"" << yb << "\" text-anchor=\"end\">" << fmt(f.x_hi)
        << "</text>\n";
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << kHeight - kBottom << "\" text-anchor=\"end\">" << fmt(f.y_lo)
        << "</text>\n";
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << kTop + 10 << "\" text-anchor=\"end\">" << fmt(f.y_hi)
        << "</text>\n";
}

Frame widen(double x_lo, double x_hi, double y_lo, double y_hi)
{
    if (!(x_hi > x_lo)) {
        x_lo -= 0.5;
        x_hi += 0.5;
    }
    if (!(y_hi > y_lo)) {
        y_lo -= 0.5;
        y_hi += 0.5;
    }
    return {x_lo, x_hi, y_lo, y_hi};
}

}  // namespace

std::vector<Segment> zero_contour(const std::vector<double>& xs, const std::vector<double>& ys,
                                  const std::vector<double>& f)
{
    std::vector<Segment> out;
    const std::size_t nx = xs.size();
    const std::size_t ny = ys.size();
    if (nx < 2 || ny < 2 || f.size() != nx * ny) {
        return out;
    }
    auto at = [&](std::size_t i, std::size_t j) { return f[j * nx + i]; };
    // crossing point on the edge between (xa, ya, fa) and (xb, yb, fb)
    auto cross = [](double xa, double ya, double fa, double xb, double yb, double fb) {
        const double t = fa / (fa - fb);
        return std::pair{xa + t * (xb - xa), ya + t * (yb - ya)};
    };
    for (std::size_t j = 0; j + 1 < ny; ++j) {
        for (std::size_t i = 0; i + 1 < nx; ++i) {
            const double x0 = xs[i], x1 = xs[i + 1], y0 = ys[j], y1 = ys[j + 1];
            const double v[4] = {at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)};
            if (std::any_of(v, v + 4, [](double q) { return std::isnan(q); })) {
                continue;
            }
            const double px[4] = {x0, x1, x1, x0};
            const double py[4] = {y0, y0, y1, y1};
            std::vector<std::pair<double, double>> pts;
            for (int e = 0; e < 4; ++e) {
                const int a = e;
                const int b = (e + 1) % 4;
                if ((v[a] > 0) != (v[b] > 0)) {
                    pts.push_back(cross(px[a], py[a], v[a], px[b], py[b], v[b]));
                }
            }
            if (pts.size() == 2) {
                out.push_back({pts[0].first, pts[0].second, pts[1].first, pts[1].second});
            } else if (pts.size() == 4) {
                // saddle: the centre value decides which corners connect
                const double centre = 0.25 * (v[0] + v[1] + v[2] + v[3]);
                if ((centre > 0) == (v[0] > 0)) {
                    out.push_back({pts[0].first, pts[0].second, pts[3].first, pts[3].second});
                    out.push_back({pts[1].first, pts[1].second, pts[2].first, pts[2].second});
                } else {
                    out.push_back({pts[0].first, pts[0].second, pts[1].first, pts[1].second});
                    out.push_back({pts[2].first, pts[2].second, pts[3].first, pts[3].second});
                }
            }
        }
    }
    return out;
}

std::string line_plot(const Axes& axes, const std::vector<Series>& series)
{
    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -x_lo;
    double y_lo = x_lo;
    double y_hi = -x_lo;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) {
                x_lo = std::min(x_lo, s.x[i]);
                x_hi = std::max(x_hi, s.x[i]);
                y_lo = std::min(y_lo, s.y[i]);
                y_hi = std::max(y_hi, s.y[i]);
            }
        }
    }
    if (!std::isfinite(x_lo)) {
        x_lo = y_lo = 0.0;
        x_hi = y_hi = 1.0;
    }
    const Frame f = widen(x_lo, x_hi, y_lo, y_hi);
    std::ostringstream out;
    open_figure(out, axes, f);
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = kColors[k % std::size(kColors)];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) {
                out << fmt(f.px(s.x[i]), "%.2f") << ',' << fmt(f.py(s.y[i]), "%.2f") << ' ';
            }
        }
        out << "\"/>\n";
        out << "<text x=\"" << kWidth - kRight - 8 << "\" y=\"" << kTop + 16 + 14 * k << "\" text-anchor=\"end\" fill=\""
            << color << "\">" << escape(s.label) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string contour_plot(const Axes& axes, double x_lo, double x_hi, double y_lo, double y_hi,
                         const std::vector<Segment>& segments)
{
    const Frame f = widen(x_lo, x_hi, y_lo, y_hi);
    std::ostringstream out;
    open_figure(out, axes, f);
    out << "<g stroke=\"#1f77b4\" stroke-width=\"1.5\">\n";
    for (const auto& s : segments) {
        out << "<line x1=\"" << fmt(f.px(s.x0), "%.2f") << "\" y1=\"" << fmt(f.py(s.y0), "%.2f") << "\" x2=\""
            << fmt(f.px(s.x1), "%.2f") << "\" y2=\"" << fmt(f.py(s.y1), "%.2f") << "\"/>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

}  // namespace orbit::cli
