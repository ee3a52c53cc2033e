// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "orbit/amplitudes.hpp"
#include "orbit/cerf.hpp"
#include "orbit/corpus.hpp"
#include "orbit/dynamics.hpp"
#include "orbit/oracle.hpp"
#include "orbit/poles.hpp"
#include "support/profiles.hpp"

using orbit::Complex;
using testing_support::profile_for_delta;

namespace {

constexpr double kPi = std::numbers::pi;
const double kEsdLimit = std::log(1.0 / (std::sqrt(2.0) - 1.0));

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

double rel(Complex a, Complex b)
{
    return std::abs(a - b) / std::abs(b);
}

// least-squares slope of log y against log x
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Outcome inertial_limit()
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto axis = orbit::Axis{0.1, 2.0, 5}.values();
    double worst = 0.0;
    for (double r : axis) {
        for (double y : axis) {
            const auto pt = orbit::OrbitPoint::make(r, y, 1e-6);
            const auto res = orbit::amplitudes(pt);
            worst = std::max({worst, rel(res.a_val, orbit::inertial_a(r, y)), rel(res.x_val, orbit::inertial_x(r, y))});
        }
    }
    const double t = seconds_since(t0);
    return {worst <= 1e-4 && t < 10.0, fmt("max rel err %.3g over 25 points, %.2f s", worst, t)};
}

Outcome oracle_equivalence()
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto pts = orbit::default_corpus_points();
    std::vector<double> err(pts.size(), INFINITY);
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < pts.size(); i = next++) {
            try {
                const auto qa = orbit::quad_a(pts[i]).eps_extrapolated.real();
                const auto qx = orbit::quad_x(pts[i]).eps_extrapolated;
                const auto c = orbit::amplitudes(pts[i]);
                err[i] = std::max({std::abs(c.a_val - qa) / std::abs(qa),
                                   std::abs(c.x_val.real() - qx.real()) / std::abs(qx.real()),
                                   std::abs(c.x_val.imag() - qx.imag()) / std::abs(qx.imag())});
            } catch (const std::exception& e) {
                std::fprintf(stderr, "oracle point %zu failed: %s\n", i, e.what());
            }
        }
    };
    const unsigned n = std::max(1u, std::thread::hardware_concurrency());
    for (unsigned i = 1; i < n; ++i) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }
    const double worst = *std::max_element(err.begin(), err.end());
    const double t = seconds_since(t0);
    return {worst <= 1e-3 && t < 300.0,
            fmt("max rel err %.3g (A, Re X, Im X) over %.0f points, %.1f s", worst, double(pts.size()), t)};
}

Outcome large_alpha()
{
    const double r = 0.5;
    const double y = 0.5;
    std::vector<double> alphas;
    std::vector<double> as;
    std::vector<double> xs;
    for (int i = 0; i <= 8; ++i) {
        const double alpha = std::pow(10.0, 2.0 + 0.25 * i);
        const auto res = orbit::amplitudes(orbit::OrbitPoint::make(r, y, alpha));
        alphas.push_back(alpha);
        as.push_back(res.a_val);
        xs.push_back(std::abs(res.x_val));
    }
    const double sa = loglog_slope(alphas, as);
    const double sx = loglog_slope(alphas, xs);
    const double scale = std::exp(-y * y) / (4.0 * std::sqrt(kPi)) * std::pow(r, -1.5) * std::pow(alphas.back(), -0.5);
    const double coef_point = xs.back() / scale;
    const double coef_limit = orbit::large_alpha_x_coefficient(10);
    const bool ok = std::abs(sa - 1.0) <= 0.02 && std::abs(sx + 0.5) <= 0.02 && std::abs(coef_point - 0.42) <= 0.005 &&
                    std::abs(coef_limit - 0.42) <= 0.005;
    return {ok, fmt("slope A %.4f, slope |X| %.4f, |X| coefficient %.4f at alpha=1e4, %.4f in the limit", sa, sx,
                    coef_point, coef_limit)};
}

Outcome long_time()
{
    // fixed (Omega, a, R) with gamma = 100; the window grows
    const double gamma2 = 1e4;
    const std::vector<double> ladder{50.0, 100.0, 200.0};
    bool ok = true;
    std::string detail;
    for (double ratio : {1.0, 5.0, 10.0}) {
        const double omega = 1.0;
        const double a = ratio * omega;
        const double radius = (gamma2 - 1.0) / a;
        std::vector<double> v;
        double x_last = 0.0;
        for (double xi : ladder) {
            const auto res = orbit::amplitudes(orbit::OrbitPoint::make(radius / xi, omega * xi, a * xi));
            v.push_back(res.a_val / (std::sqrt(kPi) * xi));
            x_last = std::abs(res.x_val);
        }
        // corrections fall off as 1/xi^2
        const double r1 = (4.0 * v[1] - v[0]) / 3.0;
        const double r2 = (4.0 * v[2] - v[1]) / 3.0;
        const double extrap = (16.0 * r2 - r1) / 15.0;
        const double target = orbit::longtime_rate_a(omega, a);
        const double dev = std::abs(extrap / target - 1.0);
        const double x_ref = std::abs(orbit::amplitude_x(orbit::OrbitPoint::make(radius * omega, 1.0, a / omega)));
        const double x_ratio = x_last / x_ref;
        ok = ok && dev <= 0.01 && x_ratio < 1e-6;
        detail += fmt("a/Omega=%g: rate dev %.2e, |X| ratio %.1e; ", ratio, dev, x_ratio);
    }
    detail.resize(detail.size() - 2);
    return {ok, detail};
}

Outcome pole_residuals()
{
    double worst = 0.0;
    for (double beta : {0.05, 0.2, 0.5, 0.7, 0.9, 0.99, 0.999}) {
        for (const auto& set : {orbit::solve_a_poles(beta, 10), orbit::solve_x_poles(beta, 10)}) {
            worst = std::max({worst, set.residual, set.special_residual});
        }
    }
    double y0_dev = 0.0;
    for (double beta : {0.9, 0.95, 0.99, 0.999}) {
        y0_dev = std::max(y0_dev, std::abs(orbit::solve_y0(beta) / std::sqrt(6.0 * (1.0 / beta - 1.0)) - 1.0));
    }
    return {worst <= 1e-12 && y0_dev <= 0.02, fmt("max residual %.3g, max y0 deviation %.3g%%", worst, 100 * y0_dev)};
}

double max_dev(const orbit::Matrix4c& a, const orbit::Matrix4c& b)
{
    return (a - b).cwiseAbs().maxCoeff();
}

Outcome integrator()
{
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double d : {0.1, 0.5, 0.9, 1.0}) {
        const auto p = profile_for_delta(d);
        std::vector<double> ts;
        for (int i = 0; i <= 100; ++i) {
            ts.push_back(5.0 * p.t1 * i / 100);
        }
        for (const auto& s : orbit::lindblad_integrate(p, orbit::bell_state(), ts)) {
            worst = std::max(worst, max_dev(s.rho, orbit::density_at(p, s.time).rho));
        }
    }
    const double t = seconds_since(t0);
    return {worst <= 1e-8 && t < 30.0, fmt("max-norm deviation %.3g over [0, 5 T1], %.2f s", worst, t)};
}

Outcome concurrence_routes()
{
    double worst = 0.0;
    bool exact_one = true;
    double eq = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double d = 0.025 + 0.05 * i;
        const auto p = profile_for_delta(d);
        exact_one = exact_one && orbit::concurrence_closed(p, 0.0) == 1.0;
        for (int j = 0; j < 20; ++j) {
            const double t = 0.15 * j * p.t2;
            worst = std::max(worst, std::abs(orbit::concurrence_general(orbit::density_at(p, t)) -
                                             orbit::concurrence_closed(p, t)));
        }
        eq = std::max(eq, orbit::concurrence_general(orbit::equilibrium_state(p)));
    }
    const double bell = orbit::concurrence_general(orbit::bell_state());
    return {worst <= 1e-10 && exact_one && eq == 0.0 && std::abs(bell - 1.0) <= 1e-15,
            fmt("max |C_wootters - C_closed| %.3g on 20x20, C(0) == 1: %g, equilibrium C = %g", worst,
                exact_one ? 1.0 : 0.0, eq)};
}

Outcome sudden_death()
{
    double worst = 0.0;
    for (double d : {0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
        const auto p = profile_for_delta(d);
        double lo = 0.0;
        double hi = 10.0 * p.t2;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (orbit::concurrence_closed(p, mid) > 0.0 ? lo : hi) = mid;
        }
        worst = std::max(worst, std::abs(*orbit::esd_time(p).time - 0.5 * (lo + hi)) / p.t2);
    }
    const double small = orbit::esd_ratio(1e-9);
    const bool never = orbit::esd_time(orbit::relaxation_profile(1.0, 0.0)).never();
    return {worst <= 1e-10 && std::abs(small - 0.8814) < 5e-5 && never,
            fmt("max |t_esd - bisection| / T2 %.3g, t_esd/T2 at delta->0 %.6f (limit %.6f), delta=1 never: %g", worst,
                small, kEsdLimit, never ? 1.0 : 0.0)};
}

Outcome thermalization()
{
    double worst = 0.0;
    for (double d : {0.1, 0.5, 0.9}) {
        const auto p = profile_for_delta(d);
        worst = std::max(worst, max_dev(orbit::density_at(p, 50.0 * p.t2).rho, orbit::equilibrium_state(p).rho));
    }
    double ratio_dev = 0.0;
    for (double q : {0.5, 1.0, 5.0}) {
        const auto p = orbit::relaxation_profile(1.0, q);
        const double lhs = (1.0 + p.delta) / (1.0 - p.delta);
        const double rhs = 1.0 + 4.0 * std::sqrt(3.0) / q * std::exp(2.0 * std::sqrt(3.0) / q);
        ratio_dev = std::max(ratio_dev, std::abs(lhs / rhs - 1.0));
    }
    return {worst <= 1e-10 && ratio_dev <= 1e-10,
            fmt("state deviation at 50 T2 %.3g, detailed-balance ratio rel dev %.3g", worst, ratio_dev)};
}

Outcome properties()
{
    std::vector<std::string> broken;
    // evolved states
    for (double d : {0.05, 0.4, 0.8, 1.0}) {
        const auto p = profile_for_delta(d, 0.5, 2.0);
        if (p.t2 != 2.0 * p.t1) {
            broken.push_back("T2 = 2 T1");
        }
        std::vector<double> ts;
        for (int i = 0; i <= 60; ++i) {
            ts.push_back(6.0 * p.t1 * i / 60);
        }
        const auto traj = orbit::lindblad_integrate(p, orbit::bell_state(), ts);
        double prev = 2.0;
        for (std::size_t i = 0; i < traj.size(); ++i) {
            for (const auto& s : {traj[i], orbit::density_at(p, ts[i])}) {
                try {
                    s.validate();
                } catch (const std::exception& e) {
                    broken.push_back(std::string("state: ") + e.what());
                }
            }
            const double c = orbit::concurrence_general(traj[i]);
            if (c > prev + 1e-12) {
                broken.push_back("concurrence increased");
            }
            prev = c;
        }
    }
    for (double q : {0.01, 0.3, 1.0, 7.0, 300.0}) {
        const auto p = orbit::relaxation_profile(1.3, q, 0.2, 3.0);
        if (p.t2 != 2.0 * p.t1) {
            broken.push_back("T2 = 2 T1");
        }
    }
    // error-function identities
    std::mt19937_64 rng(20241016);
    std::uniform_real_distribution<double> u(-6.0, 6.0);
    double worst = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const Complex z(u(rng), u(rng));
        if (z.imag() * z.imag() - z.real() * z.real() > 600.0) {
            continue;
        }
        const Complex w = orbit::faddeeva(z);
        const Complex wm = orbit::faddeeva(-z);
        const Complex e2 = 2.0 * std::exp(-z * z);
        worst = std::max(worst, std::abs(w + wm - e2) / std::max({std::abs(w), std::abs(wm), std::abs(e2)}));
        worst = std::max(worst, rel(orbit::faddeeva(-std::conj(z)), std::conj(w)));
        const Complex ec = orbit::erfc_complex(z);
        worst = std::max(worst, std::abs(ec + orbit::erfc_complex(-z) - 2.0) / std::max(1.0, std::abs(ec)));
        worst = std::max(worst, rel(orbit::erf_complex(std::conj(z)), std::conj(orbit::erf_complex(z))));
    }
    if (worst > 1e-11) {
        broken.push_back(fmt("error-function identity %.3g", worst));
    }
    // region scan determinism
    const orbit::RegionGrid grid{{0.05, 3.0, 10}, {0.05, 3.0, 10}, {0.01, 10.0, 10, true}};
    const auto a = orbit::region_scan(grid, {}, 1);
    const auto b = orbit::region_scan(grid, {}, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::memcmp(&a[i].margin, &b[i].margin, sizeof(double)) != 0 ||
            std::memcmp(&a[i].result.x_val, &b[i].result.x_val, sizeof(Complex)) != 0) {
            broken.push_back("region_scan not reproducible");
            break;
        }
    }
    std::string detail = fmt("identity suites max rel err %.3g", worst);
    for (const auto& s : broken) {
        detail += "; " + s;
    }
    return {broken.empty(), detail};
}

}  // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"inertial limit", inertial_limit},
        {"oracle equivalence", oracle_equivalence},
        {"large-alpha scaling", large_alpha},
        {"long-time rate", long_time},
        {"pole residuals", pole_residuals},
        {"closed form vs integrator", integrator},
        {"concurrence routes", concurrence_routes},
        {"sudden death", sudden_death},
        {"thermalization", thermalization},
        {"property suites", properties},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
