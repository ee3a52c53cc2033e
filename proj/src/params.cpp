#include "orbit/params.hpp"

#include <cmath>
#include <string>

#include "orbit/error.hpp"

namespace orbit {

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok) {
        throw InvalidArgument(what);
    }
}

}  // namespace

void PhysicalParams::validate() const
{
    require(std::isfinite(omega_gap) && omega_gap > 0, "omega_gap must be finite and > 0");
    require(std::isfinite(coupling) && coupling > 0, "coupling must be finite and > 0");
    require(std::isfinite(window) && window > 0, "window must be finite and > 0");
    require(std::isfinite(radius) && radius > 0, "radius must be finite and > 0");
    require(std::isfinite(accel) && accel >= 0, "accel must be finite and >= 0");
}

double beta_from_r_alpha(double r_alpha)
{
    if (r_alpha == 0.0) {
        return 0.0;
    }
    return std::sqrt(r_alpha / (1.0 + r_alpha));
}

OrbitPoint::OrbitPoint(double r, double y, double alpha)
    : r_(r), y_(y), alpha_(alpha), gamma_sq_(r * alpha + 1.0), beta_(beta_from_r_alpha(r * alpha))
{
    angular_ = alpha == 0.0 ? 0.0 : alpha / (gamma_sq_ * beta_);
}

OrbitPoint OrbitPoint::make(double r, double y, double alpha)
{
    require(std::isfinite(r) && r > 0, "r must be finite and > 0");
    require(std::isfinite(y) && y > 0, "y must be finite and > 0");
    require(std::isfinite(alpha) && alpha >= 0, "alpha must be finite and >= 0");
    return OrbitPoint(r, y, alpha);
}

double OrbitPoint::gamma() const
{
    return std::sqrt(gamma_sq_);
}

OrbitPoint derive_orbit_point(const PhysicalParams& p)
{
    p.validate();
    return OrbitPoint::make(p.radius / p.window, p.omega_gap * p.window, p.accel * p.window);
}

PhysicalParams reconstruct_physical(const OrbitPoint& pt, double window, double coupling)
{
    require(std::isfinite(window) && window > 0, "window must be finite and > 0");
    PhysicalParams p;
    p.window = window;
    p.coupling = coupling;
    p.radius = pt.r() * window;
    p.omega_gap = pt.y() / window;
    p.accel = pt.alpha() / window;
    p.validate();
    return p;
}

FrameQuantities to_lab_frame(const PhysicalParams& p)
{
    p.validate();
    const double r_alpha = p.radius * p.accel;
    const double gamma_sq = r_alpha + 1.0;
    const double gamma = std::sqrt(gamma_sq);
    FrameQuantities f{};
    f.gamma = gamma;
    f.beta = beta_from_r_alpha(r_alpha);
    f.omega_gap_lab = p.omega_gap / gamma;
    f.coupling_lab = p.coupling / gamma;
    f.window_lab = gamma * p.window;
    f.accel_lab = p.accel / gamma;
    f.coordinate_accel = gamma_sq * p.accel;
    return f;
}

std::array<double, 4> Worldline::position(double t) const
{
    const double s = sign();
    return {t, s * radius * std::cos(angular * t), s * radius * std::sin(angular * t), 0.0};
}

std::array<Worldline, 2> worldlines(double radius, double angular)
{
    return {Worldline{Detector::A, radius, angular}, Worldline{Detector::B, radius, angular}};
}

double separation_squared(const Worldline& line_a, const Worldline& line_b, double t, double t_prime)
{
    const auto xa = line_a.position(t);
    const auto xb = line_b.position(t_prime);
    const double dt = xa[0] - xb[0];
    double spatial = 0.0;
    for (int i = 1; i < 4; ++i) {
        const double d = xa[i] - xb[i];
        spatial += d * d;
    }
    return dt * dt - spatial;
}

}  // namespace orbit
