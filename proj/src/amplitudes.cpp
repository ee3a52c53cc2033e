#include "orbit/amplitudes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orbit/error.hpp"
#include "orbit/poles.hpp"
#include "parallel.hpp"

namespace orbit {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kSqrtPi = std::sqrt(kPi);
const Complex kI(0.0, 1.0);

// exp(-y^2) erfcx(u), without forming exp(u^2) on its own when Re u < 0.
Complex damped_erfcx(Complex u, double y)
{
    const double damp = std::exp(-y * y);
    if (u.real() >= 0.0) {
        return damp * erfcx_complex(u);
    }
    // erfcx(u) = 2 exp(u^2) - erfcx(-u)
    return 2.0 * exp_checked(u * u - y * y) - damp * erfcx_complex(-u);
}

// Sum of the remaining terms of a pole series given the magnitudes of its
// last terms: the larger of a power-law and a geometric continuation.
double series_tail(const std::vector<double>& m)
{
    const std::size_t n = m.size();
    if (n == 0) {
        return 0.0;
    }
    if (n < 3) {
        return m.back() * static_cast<double>(n);
    }
    const double k = static_cast<double>(n);
    const double last = m[n - 1];
    const double prev = m[n - 3];
    if (!(last > 0.0)) {
        return 0.0;
    }
    const double p = std::log(prev / last) / std::log(k / (k - 2.0));
    if (!(p > 1.05)) {
        return std::numeric_limits<double>::infinity();
    }
    double tail = last * k / (p - 1.0);
    const double q = last / m[n - 2];
    if (q < 1.0) {
        tail = std::max(tail, last * q / (1.0 - q));
    }
    return tail;
}

struct PoleSum {
    Complex im_part;  // Im of the sum in .real(); residual in .imag()
    double tail = 0.0;
};

std::string pole_context(const Pole& p)
{
    return "pole " + to_string(p.branch) + " k=" + std::to_string(p.k);
}

// sum_p Im g(z_p) computed as (g(z) + g(-conj z)) / 2i, using
// g(-conj z) = -conj g(z); the imaginary part of the result is the leak.
template <typename Term>
PoleSum im_sum(const PoleSet& set, Term term)
{
    PoleSum out;
    Complex total = 0.0;
    std::vector<double> mags[2];
    for (const auto& p : set.members) {
        Complex a, b;
        try {
            a = term(p.z);
            b = term(-std::conj(p.z));
        } catch (const OverflowError& e) {
            throw OverflowError(std::string(e.what()) + " at " + pole_context(p));
        }
        total += (a + b) / (2.0 * kI);
        mags[p.branch == Branch::z1 ? 0 : 1].push_back(std::abs(a));
    }
    out.im_part = total;
    for (auto& m : mags) {
        out.tail += series_tail(m);
    }
    return out;
}

struct Partial {
    double a;
    Complex x;
    double tail_a;
    double tail_x;
    double leak;
};

Partial evaluate(const OrbitPoint& pt, int k_max, double coupling)
{
    const double r = pt.r();
    const double y = pt.y();
    const double alpha = pt.alpha();
    const double g2 = pt.gamma_sq();
    const double beta = pt.beta();
    const double sk = std::sqrt(r / alpha);  // sqrt(kappa)
    const double ska = std::sqrt(alpha / r);
    const double eta2 = coupling * coupling;

    // A
    const PoleSet aset = solve_a_poles(beta, k_max);
    const double y0 = aset.special.imag();
    const double e0 = (damped_erfcx(Complex(y0 * sk + y, 0.0), y) + damped_erfcx(Complex(y0 * sk - y, 0.0), y)).real();
    const double c_a = kSqrtPi / (2.0 * g2) * ska;
    const double special_a = 0.5 * c_a * e0 / (y0 * (y0 / std::tanh(y0) - 1.0));
    auto g = [&](Complex z) {
        const Complex w = -kI * z * sk;
        const Complex e = damped_erfcx(w + y, y) + damped_erfcx(w - y, y);
        // z (1 - z cot z) = z (sin z - z cos z) / sin z
        const Complex s = std::sin(z);
        return e * s / (z * (s - z * std::cos(z)));
    };
    const PoleSum sa = im_sum(aset, g);
    const double window = std::exp(-y * y) - kSqrtPi * y * std::erfc(y);
    const double a_unit = eta2 / (4.0 * kPi);
    const double a = a_unit * (window + special_a + c_a * sa.im_part.real());

    // X
    const PoleSet xset = solve_x_poles(beta, k_max);
    const double x0 = xset.special.real();
    const Complex special_x = -kI * faddeeva(Complex(sk * x0, 0.0)) * std::cos(x0) /
                              (2.0 * x0 * (std::cos(x0) + x0 * std::sin(x0)));
    auto h = [&](Complex z) {
        // z (1 + z tan z) = z (cos z + z sin z) / cos z
        const Complex c = std::cos(z);
        return faddeeva(sk * z) * c / (z * (c + z * std::sin(z)));
    };
    const PoleSum sx = im_sum(xset, h);
    const double c_x = -eta2 / (4.0 * kSqrtPi * g2) * ska * std::exp(-y * y);
    const Complex x = c_x * (special_x + sx.im_part.real());

    Partial out;
    out.a = a;
    out.x = x;
    out.tail_a = a_unit * c_a * sa.tail;
    out.tail_x = std::abs(c_x) * sx.tail;
    out.leak = std::max(a_unit * c_a * std::abs(sa.im_part.imag()), std::abs(c_x) * std::abs(sx.im_part.imag()));
    return out;
}

void check_coupling(double coupling)
{
    if (!std::isfinite(coupling) || coupling < 0.0) {
        throw InvalidArgument("coupling must be finite and >= 0");
    }
}

}  // namespace

double inertial_a(double r, double y, double coupling)
{
    if (!(r > 0) || !(y > 0)) {
        throw InvalidArgument("inertial_a needs r > 0 and y > 0");
    }
    return coupling * coupling / (4.0 * kPi) * (std::exp(-y * y) - kSqrtPi * y * std::erfc(y));
}

Complex inertial_x(double r, double y, double coupling)
{
    if (!(r > 0) || !(y > 0)) {
        throw InvalidArgument("inertial_x needs r > 0 and y > 0");
    }
    // e^{-r^2} (erfi(r) - i) = -i w(r)
    return -coupling * coupling / (4.0 * kSqrtPi) / (2.0 * r) * std::exp(-y * y) * (-kI * faddeeva(Complex(r, 0.0)));
}

AmplitudeResult amplitudes(const OrbitPoint& pt, const AmplitudeOptions& opt)
{
    check_coupling(opt.coupling);
    if (opt.k_max < 1 || opt.k_cap < opt.k_max) {
        throw InvalidArgument("need 1 <= k_max <= k_cap");
    }
    AmplitudeResult res;
    if (pt.inertial()) {
        res.a_val = inertial_a(pt.r(), pt.y(), opt.coupling);
        res.x_val = inertial_x(pt.r(), pt.y(), opt.coupling);
        return res;
    }
    int k = opt.k_max;
    for (;;) {
        const Partial p = evaluate(pt, k, opt.coupling);
        res.a_val = p.a;
        res.x_val = p.x;
        res.k_used = k;
        res.tail_a = p.tail_a;
        res.tail_x = p.tail_x;
        res.tail_estimate = std::max(p.tail_a, p.tail_x);
        res.imag_leak = p.leak;
        if (opt.tolerance <= 0.0 || res.tail_estimate <= opt.tolerance) {
            break;
        }
        if (k >= opt.k_cap) {
            throw ConvergenceError("pole sum tail " + std::to_string(res.tail_estimate) + " above tolerance " +
                                   std::to_string(opt.tolerance) + " at k_cap=" + std::to_string(opt.k_cap));
        }
        k = std::min(2 * k, opt.k_cap);
    }
    return res;
}

double amplitude_a(const OrbitPoint& pt, int k_max, double coupling)
{
    AmplitudeOptions opt;
    opt.k_max = k_max;
    opt.k_cap = std::max(k_max, opt.k_cap);
    opt.coupling = coupling;
    return amplitudes(pt, opt).a_val;
}

Complex amplitude_x(const OrbitPoint& pt, int k_max, double coupling)
{
    AmplitudeOptions opt;
    opt.k_max = k_max;
    opt.k_cap = std::max(k_max, opt.k_cap);
    opt.coupling = coupling;
    return amplitudes(pt, opt).x_val;
}

double longtime_rate_a(double omega_gap, double accel, double eta0)
{
    if (!(accel > 0) || !(omega_gap >= 0)) {
        throw InvalidArgument("longtime_rate_a needs accel > 0 and omega_gap >= 0");
    }
    return eta0 * eta0 * accel * std::exp(-std::sqrt(12.0) * omega_gap / accel) / (8.0 * std::sqrt(3.0) * kPi);
}

double large_alpha_a(double alpha, double eta0)
{
    return eta0 * eta0 * alpha / (8.0 * std::sqrt(3.0 * kPi));
}

double large_alpha_x_coefficient(int k_max)
{
    // beta -> 1 and kappa -> 0, so w(sqrt(kappa) z) -> 1
    const PoleSet set = solve_x_poles(std::nextafter(1.0, 0.0), k_max);
    const double x0 = set.special.real();
    const Complex special = -kI * std::cos(x0) / (2.0 * x0 * (std::cos(x0) + x0 * std::sin(x0)));
    double sum = 0.0;
    for (const auto& p : set.members) {
        const Complex c = std::cos(p.z);
        sum += (c / (p.z * (c + p.z * std::sin(p.z)))).imag();
    }
    return std::abs(special + sum);
}

RegionSample entangled(const OrbitPoint& pt, const AmplitudeOptions& opt)
{
    RegionSample s(pt);
    s.result = amplitudes(pt, opt);
    s.margin = std::abs(s.result.x_val) - s.result.a_val;
    s.entangled = s.margin > 0.0;
    return s;
}

std::vector<double> Axis::values() const
{
    if (n < 1 || !std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
        throw InvalidArgument("axis needs n >= 1 and finite lo <= hi");
    }
    if (log_spaced && !(lo > 0)) {
        throw InvalidArgument("log-spaced axis needs lo > 0");
    }
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / (n - 1);
        v[i] = log_spaced ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo);
    }
    v.front() = lo;
    v.back() = hi;
    return v;
}

std::vector<RegionSample> region_scan(const RegionGrid& grid, const AmplitudeOptions& opt, int threads)
{
    const auto rs = grid.r.values();
    const auto ys = grid.y.values();
    const auto as = grid.alpha.values();
    std::vector<OrbitPoint> points;
    points.reserve(rs.size() * ys.size() * as.size());
    for (double a : as) {
        for (double y : ys) {
            for (double r : rs) {
                points.push_back(OrbitPoint::make(r, y, a));
            }
        }
    }
    std::vector<RegionSample> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        out.emplace_back(p);
    }
    detail::parallel_for(points.size(), threads, [&](std::size_t i) {
        try {
            out[i] = entangled(points[i], opt);
        } catch (const std::exception& e) {
            RegionSample s(points[i]);
            s.failed = true;
            s.error = e.what();
            s.margin = std::numeric_limits<double>::quiet_NaN();
            out[i] = s;
        }
    });
    return out;
}

}  // namespace orbit
