#include "orbit/cerf.hpp"

#include <cmath>
#include <string>

#include "orbit/error.hpp"

namespace orbit {

namespace {

using LComplex = std::complex<long double>;

constexpr double kMaxExp = 709.0;
constexpr long double kInvSqrtPiL = 0.564189583547756286948079451560772586L;
constexpr double kInvSqrtPi = 0.56418958354775628695;

void check_finite(Complex z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw InvalidArgument("complex error function: non-finite argument");
    }
}

// Maclaurin series sum_n (iz)^n / Gamma(n/2 + 1), split into even and odd n.
Complex w_series(Complex z)
{
    const LComplex zl(z.real(), z.imag());
    const LComplex mz2 = -zl * zl;
    LComplex even = 1.0L;
    LComplex odd = 2.0L * kInvSqrtPiL * LComplex(0.0L, 1.0L) * zl;
    LComplex sum = even + odd;
    for (int n = 0; n < 200; n += 2) {
        even *= mz2 / (n / 2.0L + 1.0L);
        odd *= mz2 / ((n + 1) / 2.0L + 1.0L);
        sum += even + odd;
        if (std::abs(even) + std::abs(odd) < 1e-20L * std::abs(sum)) {
            break;
        }
    }
    return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

// Laplace continued fraction, evaluated backwards. Upper half plane only.
Complex w_continued_fraction(Complex z)
{
    const double r2 = std::norm(z);
    const int depth = 12 + static_cast<int>(500.0 / r2);
    Complex f = z;
    for (int k = depth; k >= 1; --k) {
        f = z - (0.5 * k) / f;
    }
    return Complex(0.0, kInvSqrtPi) / f;
}

// Rybicki's sampling of the Dawson integral, h = 0.2. First quadrant,
// imaginary part below ~1.5.
Complex w_rybicki(Complex z)
{
    constexpr long double h = 0.2L;
    const long double x = z.real();
    const long double m = 2.0L * std::nearbyint(x / (2.0L * h));
    const LComplex zp(x - m * h, z.imag());
    LComplex sum = 0.0L;
    for (int n = -61; n <= 61; n += 2) {
        const LComplex d = zp - static_cast<long double>(n) * h;
        sum += std::exp(-d * d) / (static_cast<long double>(n) + m);
    }
    const LComplex dawson = sum * kInvSqrtPiL;
    const LComplex zl(z.real(), z.imag());
    const LComplex w = std::exp(-zl * zl) + LComplex(0.0L, 2.0L * kInvSqrtPiL) * dawson;
    return {static_cast<double>(w.real()), static_cast<double>(w.imag())};
}

Complex w_first_quadrant(Complex z)
{
    const double r = std::abs(z);
    if (r < 1.0) {
        return w_series(z);
    }
    if (r >= 6.0 || z.imag() >= 1.5) {
        return w_continued_fraction(z);
    }
    return w_rybicki(z);
}

// Upper half plane via w(-conj z) = conj w(z).
Complex w_upper(Complex z)
{
    if (z.real() >= 0.0) {
        return w_first_quadrant(z);
    }
    return std::conj(w_first_quadrant(Complex(-z.real(), z.imag())));
}

// a*b as an unevaluated sum hi + lo.
void two_product(double a, double b, double& hi, double& lo)
{
    hi = a * b;
    lo = std::fma(a, b, -hi);
}

}  // namespace

Complex exp_checked(Complex z)
{
    if (z.real() > kMaxExp) {
        throw OverflowError("exp overflow: real exponent " + std::to_string(z.real()));
    }
    return std::exp(z);
}

Complex exp_minus_square(Complex z)
{
    const double x = z.real();
    const double y = z.imag();
    double xx_hi, xx_lo, yy_hi, yy_lo, xy_hi, xy_lo;
    two_product(x, x, xx_hi, xx_lo);
    two_product(y, y, yy_hi, yy_lo);
    two_product(x, y, xy_hi, xy_lo);
    // -z^2 = (y^2 - x^2) - 2ixy
    const double re_hi = yy_hi - xx_hi;
    const double re_lo = (yy_hi - re_hi - xx_hi) + (yy_lo - xx_lo);
    const double im_hi = -2.0 * xy_hi;
    const double im_lo = -2.0 * xy_lo;
    if (re_hi > kMaxExp) {
        throw OverflowError("exp(-z^2) overflow at z = (" + std::to_string(x) + ", " + std::to_string(y) + ")");
    }
    const double mag = std::exp(re_hi) * (1.0 + re_lo);
    const Complex phase = std::polar(1.0, im_hi) * Complex(1.0, im_lo);
    return mag * phase;
}

Complex faddeeva(Complex z)
{
    check_finite(z);
    if (z.imag() >= 0.0) {
        return w_upper(z);
    }
    // w(z) = 2 exp(-z^2) - w(-z)
    return 2.0 * exp_minus_square(z) - w_upper(-z);
}

Complex erfcx_complex(Complex z)
{
    return faddeeva(Complex(-z.imag(), z.real()));
}

Complex erfc_complex(Complex z)
{
    check_finite(z);
    if (z.real() >= 0.0) {
        const Complex w = faddeeva(Complex(-z.imag(), z.real()));
        if (z.imag() == 0.0) {
            return {exp_minus_square(z).real() * w.real(), 0.0};
        }
        return exp_minus_square(z) * w;
    }
    const Complex m = erfc_complex(-z);
    if (z.imag() == 0.0) {
        return {2.0 - m.real(), 0.0};
    }
    return 2.0 - m;
}

Complex erf_complex(Complex z)
{
    check_finite(z);
    if (std::abs(z) < 1.0) {
        // 2/sqrt(pi) sum_n (-1)^n z^(2n+1) / (n! (2n+1))
        const LComplex zl(z.real(), z.imag());
        const LComplex mz2 = -zl * zl;
        LComplex term = zl;
        LComplex sum = zl;
        for (int n = 1; n < 60; ++n) {
            term *= mz2 / static_cast<long double>(n);
            const LComplex add = term / static_cast<long double>(2 * n + 1);
            sum += add;
            if (std::abs(add) < 1e-21L * std::abs(sum)) {
                break;
            }
        }
        sum *= 2.0L * kInvSqrtPiL;
        return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
    }
    return 1.0 - erfc_complex(z);
}

Complex erfi_complex(Complex z)
{
    check_finite(z);
    if (z.imag() == 0.0 && std::abs(z.real()) >= 1.0) {
        // erfi(x) = exp(x^2) Im w(x) for real x
        const double x = std::abs(z.real());
        const double v = exp_minus_square(Complex(0.0, x)).real() * faddeeva(Complex(x, 0.0)).imag();
        return {std::copysign(v, z.real()), 0.0};
    }
    const Complex e = erf_complex(Complex(-z.imag(), z.real()));
    return {e.imag(), -e.real()};
}

}  // namespace orbit
