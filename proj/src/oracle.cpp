#include "orbit/oracle.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <charconv>
#include <cmath>
#include <sstream>

#include "orbit/error.hpp"
#include "orbit/quadrature.hpp"

namespace orbit {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kSqrtPi = std::sqrt(kPi);
constexpr double kInvFourPiSq = 1.0 / (4.0 * kPi * kPi);

struct Rung {
    Complex value;
    double error;
    double imag_part = 0.0;
};

QuadratureReport assemble(const Regulator& reg, const std::vector<Rung>& rungs)
{
    QuadratureReport rep;
    std::vector<Complex> vals;
    double scale = 0.0;
    for (const auto& r : rungs) {
        scale = std::max(scale, std::abs(r.value) + std::abs(r.imag_part));
        vals.push_back(r.value);
        rep.quadrature_error = std::max(rep.quadrature_error, r.error);
        rep.diagnostic_imag.push_back(r.imag_part);
    }
    rep.ladder = vals;
    rep.value = vals.back();
    const Extrapolation ex = extrapolate_to_zero(reg.epsilon_ladder, vals, scale);
    rep.eps_extrapolated = ex.value;
    rep.convergence_order = ex.order;
    const double floor = 1e-15 * std::abs(ex.value) + std::numeric_limits<double>::min();
    rep.error_estimate = std::max({ex.error, rep.quadrature_error, floor});
    return rep;
}

// Gaussian-windowed half-line integral int_0^L e^{-d^2/4xi'^2} phase(d) D(d - i eps) dd.
Complex windowed(const Kinematics& k, const Regulator& reg, double eps, bool cross, double phase_rate,
                 double* err)
{
    const double xi = k.window_lab;
    const double len = reg.truncation * xi;
    std::vector<double> singular{0.0};
    if (cross) {
        singular.push_back(cross_light_cone(k.radius, k.angular));
    }
    const auto mesh = graded_mesh(0.0, len, singular, eps, reg.node_budget);
    auto f = [&](double d) -> Complex {
        const double g = std::exp(-d * d / (4.0 * xi * xi));
        const Complex w = cross ? wightman_cross(d, k.radius, k.angular, eps)
                                : wightman_single(d, k.radius, k.angular, eps);
        return g * std::polar(1.0, -phase_rate * d) * w;
    };
    const PanelSum s = integrate_panels(f, mesh);
    *err = s.error;
    return s.value;
}

enum class Quantity { A, X, Y };

Rung rung(Quantity q, const Kinematics& k, const Regulator& reg, double eps_rel)
{
    const double eps = eps_rel * k.window_lab;
    const double pref = k.coupling * k.coupling / (k.gamma * k.gamma) * kSqrtPi * k.window_lab;
    double err = 0.0;
    switch (q) {
    case Quantity::A: {
        const Complex j = windowed(k, reg, eps, false, k.omega_lab, &err);
        return {Complex(2.0 * pref * j.real(), 0.0), 2.0 * pref * err};
    }
    case Quantity::Y: {
        const Complex j = windowed(k, reg, eps, true, k.omega_lab, &err);
        return {Complex(2.0 * pref * j.real(), 0.0), 2.0 * pref * err};
    }
    case Quantity::X: {
        const Complex j = windowed(k, reg, eps, true, 0.0, &err);
        const double c = -2.0 * pref * std::exp(-k.y * k.y);
        return {c * j, std::abs(c) * err};
    }
    }
    return {};
}

QuadratureReport run(Quantity q, const Kinematics& k, const Regulator& reg)
{
    reg.validate();
    std::vector<Rung> rungs;
    for (double e : reg.epsilon_ladder) {
        rungs.push_back(rung(q, k, reg, e));
    }
    return assemble(reg, rungs);
}

// int_L^inf e^{-i c s} / s^2 ds by rotating onto the ray where the
// exponential decays.
Complex oscillatory_tail(double c, double len)
{
    if (c == 0.0) {
        return 1.0 / len;
    }
    using Rule = boost::math::quadrature::gauss_kronrod<double, 21>;
    const double sgn = c > 0 ? 1.0 : -1.0;
    // s = L - i sgn t
    auto f = [&](double t) -> Complex {
        const Complex s(len, -sgn * t);
        return std::exp(-std::abs(c) * t) / (s * s);
    };
    const Complex integral = Rule::integrate(f, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-14);
    return Complex(0.0, -sgn) * std::polar(1.0, -c * len) * integral;
}

}  // namespace

void Regulator::validate() const
{
    if (epsilon_ladder.size() < 3) {
        throw InvalidArgument("regulator ladder needs at least three entries");
    }
    for (std::size_t i = 0; i < epsilon_ladder.size(); ++i) {
        const double e = epsilon_ladder[i];
        if (!(e > 0) || !std::isfinite(e) || (i > 0 && !(e < epsilon_ladder[i - 1]))) {
            throw InvalidArgument("regulator ladder must be positive and strictly decreasing");
        }
    }
    if (!(truncation >= 6.0) || !std::isfinite(truncation)) {
        throw InvalidArgument("regulator truncation must be >= 6");
    }
    if (node_budget < 10) {
        throw InvalidArgument("regulator node budget must be >= 10");
    }
}

std::string Regulator::fingerprint() const
{
    // shortest round-trip form so the text is stable and readable
    auto fmt = [](double v) {
        char buf[32];
        const auto res = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, res.ptr);
    };
    std::string out = "eps:";
    for (std::size_t i = 0; i < epsilon_ladder.size(); ++i) {
        out += (i ? "/" : "") + fmt(epsilon_ladder[i]);
    }
    out += "|trunc:" + fmt(truncation) + "|nodes:" + std::to_string(node_budget);
    return out;
}

Regulator Regulator::from_fingerprint(const std::string& text)
{
    Regulator reg;
    reg.epsilon_ladder.clear();
    std::istringstream in(text);
    std::string field;
    bool seen[3] = {false, false, false};
    try {
        while (std::getline(in, field, '|')) {
            const auto colon = field.find(':');
            if (colon == std::string::npos) {
                throw InvalidArgument("bad regulator field '" + field + "'");
            }
            const std::string key = field.substr(0, colon);
            const std::string val = field.substr(colon + 1);
            if (key == "eps") {
                std::istringstream vs(val);
                std::string item;
                while (std::getline(vs, item, '/')) {
                    reg.epsilon_ladder.push_back(std::stod(item));
                }
                seen[0] = true;
            } else if (key == "trunc") {
                reg.truncation = std::stod(val);
                seen[1] = true;
            } else if (key == "nodes") {
                reg.node_budget = std::stoi(val);
                seen[2] = true;
            } else {
                throw InvalidArgument("unknown regulator field '" + key + "'");
            }
        }
    } catch (const std::logic_error& e) {
        if (dynamic_cast<const InvalidArgument*>(&e)) {
            throw;
        }
        throw InvalidArgument("bad regulator fingerprint '" + text + "'");
    }
    if (!(seen[0] && seen[1] && seen[2])) {
        throw InvalidArgument("incomplete regulator fingerprint '" + text + "'");
    }
    reg.validate();
    return reg;
}

Complex wightman_cross(double dt, double radius, double omega, double eps)
{
    const Complex d(dt, -eps);
    const Complex c = std::cos(omega * d / 2.0);
    return -kInvFourPiSq / (d * d - 4.0 * radius * radius * c * c);
}

Complex wightman_single(double dt, double radius, double omega, double eps)
{
    const Complex d(dt, -eps);
    const Complex s = std::sin(omega * d / 2.0);
    return -kInvFourPiSq / (d * d - 4.0 * radius * radius * s * s);
}

double cross_light_cone(double radius, double omega)
{
    // h(d) = d - 2R cos(omega d / 2): h(0) < 0 <= h(2R)
    auto h = [&](double d) { return d - 2.0 * radius * std::cos(omega * d / 2.0); };
    double lo = 0.0;
    double hi = 2.0 * radius;
    if (h(hi) == 0.0) {
        return hi;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (h(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Kinematics Kinematics::from_point(const OrbitPoint& pt, double coupling)
{
    const double g = pt.gamma();
    return {pt.r(), pt.angular(), g, pt.y() / g, g, pt.y(), coupling};
}

Kinematics Kinematics::from_physical(const PhysicalParams& p)
{
    const FrameQuantities f = to_lab_frame(p);
    const double omega = p.accel == 0.0 ? 0.0 : p.accel / (f.gamma * f.gamma * f.beta);
    return {p.radius, omega, f.gamma, f.omega_gap_lab, f.window_lab, p.omega_gap * p.window, p.coupling};
}

QuadratureReport quad_a(const OrbitPoint& pt, const Regulator& reg, double coupling)
{
    return run(Quantity::A, Kinematics::from_point(pt, coupling), reg);
}

QuadratureReport quad_x(const OrbitPoint& pt, const Regulator& reg, double coupling)
{
    return run(Quantity::X, Kinematics::from_point(pt, coupling), reg);
}

QuadratureReport quad_y(const OrbitPoint& pt, const Regulator& reg, double coupling)
{
    return run(Quantity::Y, Kinematics::from_point(pt, coupling), reg);
}

QuadratureReport quad_a(const PhysicalParams& p, const Regulator& reg)
{
    return run(Quantity::A, Kinematics::from_physical(p), reg);
}

QuadratureReport quad_x(const PhysicalParams& p, const Regulator& reg)
{
    return run(Quantity::X, Kinematics::from_physical(p), reg);
}

Complex quad_a_rung(const OrbitPoint& pt, double eps_rel, const Regulator& reg)
{
    const Kinematics k = Kinematics::from_point(pt);
    double err = 0.0;
    const double pref = kSqrtPi * k.window_lab / (k.gamma * k.gamma);
    return pref * windowed(k, reg, eps_rel * k.window_lab, false, k.omega_lab, &err);
}

Complex quad_a_2d(const OrbitPoint& pt, double eps_rel, const Regulator& reg)
{
    const Kinematics k = Kinematics::from_point(pt);
    const double xi = k.window_lab;
    const double eps = eps_rel * xi;
    // exp(-t^2/2xi'^2) per variable; this half-width matches the 1d window
    const double half = reg.truncation * xi / std::sqrt(2.0);
    const int panels = std::max(50, reg.node_budget / 50);
    auto inner = [&](double tp) -> Complex {
        const auto mesh = graded_mesh(-half, half, {tp}, eps, panels);
        auto f = [&](double tpp) -> Complex {
            const double d = tp - tpp;
            return std::exp(-tpp * tpp / (2.0 * xi * xi)) * std::polar(1.0, k.omega_lab * tpp) *
                   wightman_single(d, k.radius, k.angular, eps);
        };
        return std::exp(-tp * tp / (2.0 * xi * xi)) * std::polar(1.0, -k.omega_lab * tp) *
               integrate_panels(f, mesh, 1e-12, 8).value;
    };
    std::vector<double> outer;
    for (int i = 0; i <= panels; ++i) {
        outer.push_back(-half + 2.0 * half * i / panels);
    }
    return integrate_panels(inner, outer, 1e-12, 6).value / (k.gamma * k.gamma);
}

QuadratureReport quad_i_pm(int sign, double omega_lab, const OrbitPoint& pt, const Regulator& reg)
{
    return quad_i_pm(sign, omega_lab, pt.r(), pt.angular(), reg);
}

QuadratureReport quad_i_pm(int sign, double omega_lab, double radius, double angular, const Regulator& reg)
{
    if (sign != 1 && sign != -1) {
        throw InvalidArgument("quad_i_pm: sign must be +1 or -1");
    }
    if (!(omega_lab >= 0) || !(radius >= 0) || !(angular >= 0)) {
        throw InvalidArgument("quad_i_pm: rates and radius must be >= 0");
    }
    reg.validate();
    const double rate = std::max(omega_lab, angular);
    if (!(rate > 0)) {
        throw InvalidArgument("quad_i_pm: need omega_lab > 0 or angular > 0");
    }
    const double tau = 1.0 / rate;
    const double len = 2000.0 * std::max(tau, radius);
    const double c = sign * omega_lab;  // e^{-i c s}
    const Complex tail = -kInvFourPiSq * oscillatory_tail(c, len);
    std::vector<Rung> rungs;
    for (double e : reg.epsilon_ladder) {
        const double eps = e * tau;
        const auto mesh = graded_mesh(0.0, len, {0.0}, eps, reg.node_budget);
        auto f = [&](double s) { return std::polar(1.0, -c * s) * wightman_single(s, radius, angular, eps); };
        const PanelSum sum = integrate_panels(f, mesh);
        const Complex total = sum.value + tail;
        rungs.push_back({Complex(total.real(), 0.0), sum.error, total.imag()});
    }
    return assemble(reg, rungs);
}

}  // namespace orbit
