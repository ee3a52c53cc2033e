#include "orbit/poles.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include "orbit/error.hpp"

namespace orbit {

namespace {

using LComplex = std::complex<long double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kDedup = 1e-8;

struct Equation {
    PoleKind kind;
    long double s;  // +1 for z1, -1 for z2
    long double beta;

    LComplex f(LComplex z) const
    {
        return kind == PoleKind::A ? z - s * beta * std::sin(z) : z - s * beta * std::cos(z);
    }
    LComplex df(LComplex z) const
    {
        return kind == PoleKind::A ? 1.0L - s * beta * std::cos(z) : 1.0L + s * beta * std::sin(z);
    }
    LComplex d2f(LComplex z) const
    {
        return kind == PoleKind::A ? s * beta * std::sin(z) : s * beta * std::cos(z);
    }
};

Equation equation(PoleKind kind, Branch branch, double beta)
{
    return {kind, branch == Branch::z1 ? 1.0L : -1.0L, static_cast<long double>(beta)};
}

std::string describe(Complex z)
{
    std::ostringstream os;
    os.precision(17);
    os << "(" << z.real() << ", " << z.imag() << ")";
    return os.str();
}

// Newton iteration in extended precision. Stops at the rounding floor; the
// caller judges the result by its residual.
bool newton(const Equation& eq, LComplex& z)
{
    long double prev = std::numeric_limits<long double>::infinity();
    for (int it = 0; it < 200; ++it) {
        const LComplex d = eq.f(z) / eq.df(z);
        z -= d;
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return false;
        }
        const long double step = std::abs(d);
        const long double scale = std::abs(z);
        if (step <= 1e-18L * scale || step == 0.0L) {
            return true;
        }
        // stalled in rounding noise
        if (step <= 1e-14L * scale && step >= prev) {
            return true;
        }
        prev = step;
    }
    return false;
}

// Smallest residual reachable after rounding the root to double.
double residual_floor(const Equation& eq, Complex z)
{
    const LComplex zl(z.real(), z.imag());
    return 4.0 * std::numeric_limits<double>::epsilon() * std::abs(z) * static_cast<double>(std::abs(eq.df(zl)));
}

double residual_of(const Equation& eq, Complex z)
{
    return static_cast<double>(std::abs(eq.f(LComplex(z.real(), z.imag()))));
}

void check_beta(double beta, int k_max)
{
    if (!std::isfinite(beta) || beta < 0.0 || beta >= 1.0) {
        throw InvalidArgument("beta must satisfy 0 <= beta < 1, got " + std::to_string(beta));
    }
    if (k_max < 1) {
        throw InvalidArgument("k_max must be >= 1");
    }
}

// Large-|z| form of the equation in the upper half plane: z = c exp(-iz),
// solved by the fixed point z = i(Ln z - Ln c) + 2 pi n.
LComplex asymptotic_seed(LComplex c, int n)
{
    LComplex z(2.0L * kPi * n, 3.0L);
    for (int it = 0; it < 50; ++it) {
        z = LComplex(0.0L, 1.0L) * (std::log(z) - std::log(c)) + 2.0L * static_cast<long double>(kPi) * n;
    }
    return z;
}

std::vector<Pole> solve_branch(PoleKind kind, Branch branch, double beta, int k_max)
{
    const Equation eq = equation(kind, branch, beta);
    const long double half = eq.s * beta / 2.0L;
    // leading coefficient c of z ~ c exp(-iz)
    const LComplex c = kind == PoleKind::A ? LComplex(0.0L, half) : LComplex(half, 0.0L);
    const long double arg_c = std::arg(c);
    // strip n = 0 holds i*y0 for A z1 and no root at all for X z2
    const int first = (kind == PoleKind::A) == (branch == Branch::z1) ? -1 : 0;

    std::vector<Pole> out;
    for (int j = 0; j < k_max; ++j) {
        const int n = first - j;
        const LComplex seed = asymptotic_seed(c, n);
        LComplex z = seed;
        const bool ok = newton(eq, z);
        const Complex zd(static_cast<double>(z.real()), static_cast<double>(z.imag()));
        // canonical roots sit at angle in (0, pi/2) from the negative real axis
        const double offset = zd.real() - (2.0 * kPi * n + static_cast<double>(arg_c) - kPi);
        const bool in_strip = offset > -1e-9 && offset < kPi / 2 + 1e-9 && zd.imag() > 0.0;
        const double res = residual_of(eq, zd);
        if (!ok || !in_strip || res > std::max(1e-12, residual_floor(eq, zd))) {
            throw ConvergenceError("pole solve failed: kind " + to_string(kind) + ", branch " + to_string(branch) +
                                   ", k " + std::to_string(j + 1) + ", beta " + std::to_string(beta) + ", seed " +
                                   describe(Complex(static_cast<double>(seed.real()), static_cast<double>(seed.imag()))) +
                                   ", reached " + describe(zd));
        }
        out.push_back({branch, j + 1, zd, res});
    }
    return out;
}

int multiplicity(const Equation& eq, Complex z)
{
    const LComplex zl(z.real(), z.imag());
    if (std::abs(eq.df(zl)) > 1e-8L) {
        return 1;
    }
    if (std::abs(eq.d2f(zl)) > 1e-8L) {
        return 2;
    }
    return 3;
}

PoleSet finish(PoleSet set, int k_max)
{
    set.k_max = k_max;
    for (Branch b : {Branch::z1, Branch::z2}) {
        auto part = solve_branch(set.kind, b, set.beta, k_max);
        set.members.insert(set.members.end(), part.begin(), part.end());
    }
    std::sort(set.members.begin(), set.members.end(),
              [](const Pole& a, const Pole& b) { return std::abs(a.z) < std::abs(b.z); });
    for (std::size_t i = 0; i + 1 < set.members.size(); ++i) {
        const auto& a = set.members[i];
        const auto& b = set.members[i + 1];
        if (std::abs(a.z - b.z) < kDedup) {
            throw ConvergenceError("duplicate pole " + describe(a.z) + " from branches " + to_string(a.branch) +
                                   " and " + to_string(b.branch));
        }
        if (!(std::abs(a.z) < std::abs(b.z))) {
            throw ConvergenceError("poles not strictly ordered by modulus near " + describe(a.z));
        }
    }
    set.residual = set.special_residual;
    for (const auto& p : set.members) {
        set.residual = std::max(set.residual, p.residual);
    }
    return set;
}

}  // namespace

std::string to_string(PoleKind kind)
{
    return kind == PoleKind::A ? "A" : "X";
}

std::string to_string(Branch branch)
{
    return branch == Branch::z1 ? "z1" : "z2";
}

std::vector<Pole> PoleSet::branch(Branch b) const
{
    std::vector<Pole> out;
    for (const auto& p : members) {
        if (p.branch == b) {
            out.push_back(p);
        }
    }
    return out;
}

double pole_residual(PoleKind kind, Branch branch, double beta, Complex z)
{
    return residual_of(equation(kind, branch, beta), z);
}

double y0_approx(double beta)
{
    return std::sqrt(6.0 * (1.0 / beta - 1.0));
}

double x0_approx(double beta)
{
    return -1.0 / beta + std::sqrt(1.0 / (beta * beta) + 2.0);
}

double solve_y0(double beta)
{
    check_beta(beta, 1);
    if (beta == 0.0) {
        throw InvalidArgument("y0 does not exist for beta = 0");
    }
    // g(t) = t - beta sinh t peaks where beta cosh t = 1, and the root lies in
    // [1, sqrt 3] times that abscissa for small beta; widen if needed.
    auto g = [beta](double t) { return t - beta * std::sinh(t); };
    const double lo = std::acosh(1.0 / beta);
    double hi = std::sqrt(3.0) * lo;
    while (g(hi) > 0.0) {
        hi *= 1.5;
        if (hi > 710.0) {
            throw ConvergenceError("y0 bracket failed for beta " + std::to_string(beta));
        }
    }
    if (lo == 0.0 || g(lo) <= 0.0) {
        throw ConvergenceError("y0 bracket lower end not positive for beta " + std::to_string(beta));
    }
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(g, lo, hi, boost::math::tools::eps_tolerance<double>(53), iters);
    double t = 0.5 * (r.first + r.second);
    // polish with extended-precision Newton on the real line
    long double tl = t;
    for (int i = 0; i < 5; ++i) {
        const long double gl = tl - beta * std::sinh(tl);
        const long double dg = 1.0L - beta * std::cosh(tl);
        tl -= gl / dg;
    }
    if (std::isfinite(static_cast<double>(tl)) && std::abs(static_cast<double>(tl) - t) < 1e-10 * t) {
        t = static_cast<double>(tl);
    }
    return t;
}

double solve_x0(double beta)
{
    check_beta(beta, 1);
    if (beta == 0.0) {
        return 0.0;
    }
    auto g = [beta](double x) { return x - beta * std::cos(x); };
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(g, 0.0, beta, boost::math::tools::eps_tolerance<double>(53), iters);
    long double xl = 0.5 * (r.first + r.second);
    for (int i = 0; i < 3; ++i) {
        xl -= (xl - beta * std::cos(xl)) / (1.0L + beta * std::sin(xl));
    }
    return static_cast<double>(xl);
}

PoleSet solve_a_poles(double beta, int k_max)
{
    check_beta(beta, k_max);
    PoleSet set;
    set.kind = PoleKind::A;
    set.beta = beta;
    if (beta == 0.0) {
        set.degenerate = true;
        return set;
    }
    const double y0 = solve_y0(beta);
    const Equation eq = equation(PoleKind::A, Branch::z1, beta);
    // unconstrained complex solve from an off-axis seed
    LComplex z(0.05L * y0, y0);
    if (!newton(eq, z)) {
        throw ConvergenceError("special root i*y0 failed from seed " + describe(Complex(0.05 * y0, y0)));
    }
    set.special_axis_offset = std::abs(static_cast<double>(z.real()));
    set.special = Complex(0.0, y0);
    set.special_residual = residual_of(eq, set.special);
    set.special_order = multiplicity(eq, set.special);
    return finish(set, k_max);
}

PoleSet solve_x_poles(double beta, int k_max)
{
    check_beta(beta, k_max);
    PoleSet set;
    set.kind = PoleKind::X;
    set.beta = beta;
    if (beta == 0.0) {
        set.degenerate = true;
        return set;
    }
    const double x0 = solve_x0(beta);
    const Equation eq = equation(PoleKind::X, Branch::z1, beta);
    LComplex z(x0, 0.05L * x0);
    if (!newton(eq, z)) {
        throw ConvergenceError("special root x0 failed from seed " + describe(Complex(x0, 0.05 * x0)));
    }
    set.special_axis_offset = std::abs(static_cast<double>(z.imag()));
    set.special = Complex(x0, 0.0);
    set.special_residual = residual_of(eq, set.special);
    set.special_order = multiplicity(eq, set.special);
    return finish(set, k_max);
}

}  // namespace orbit
