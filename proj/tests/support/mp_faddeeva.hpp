#pragma once

// Slow reference implementation of the Faddeeva function in 110-digit
// arithmetic. Used to build and audit the regression corpus; independent of
// the double-precision kernel in the library.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>
#include <complex>
#include <stdexcept>

namespace mpref {

using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<110>>;
using Cplx = boost::multiprecision::cpp_complex<110>;

inline Real pi() { return boost::math::constants::pi<Real>(); }

inline Real eps() { return Real("1e-60"); }

// sum_n (iz)^n / Gamma(n/2+1); enough guard digits for |z| <= 8.
inline Cplx taylor(const Cplx& z)
{
    const Cplx iz = Cplx(0, 1) * z;
    const Cplx mz2 = -z * z;
    Cplx even = 1;
    Cplx odd = iz * 2 / sqrt(pi());
    Cplx sum = even + odd;
    for (int n = 0; n < 4000; n += 2) {
        even *= mz2 / (Real(n) / 2 + 1);
        odd *= mz2 / (Real(n + 1) / 2 + 1);
        sum += even + odd;
        if (n > 20 && abs(even) + abs(odd) < eps() * abs(sum)) {
            return sum;
        }
    }
    throw std::runtime_error("taylor did not converge");
}

inline Cplx laplace_cf(const Cplx& z, int depth)
{
    Cplx f = z;
    for (int k = depth; k >= 1; --k) {
        f = z - Real(k) / 2 / f;
    }
    return Cplx(0, 1) / sqrt(pi()) / f;
}

// Continued fraction deepened until two successive depths agree.
inline Cplx laplace(const Cplx& z)
{
    int depth = 64;
    Cplx prev = laplace_cf(z, depth);
    for (int i = 0; i < 12; ++i) {
        depth *= 2;
        Cplx next = laplace_cf(z, depth);
        if (abs(next - prev) < eps() * abs(next)) {
            return next;
        }
        prev = next;
    }
    throw std::runtime_error("continued fraction did not converge");
}

// Rybicki sampling with a fine step; the discretisation error is far below
// 1e-60 for |Im z| < 3.
inline Cplx rybicki(const Cplx& z)
{
    const Real h("0.0625");
    const Real x = z.real();
    const Real m = 2 * round(x / (2 * h));
    const Cplx zp = z - Cplx(m * h, 0);
    const int nmax = 2 * static_cast<int>(16 / h.convert_to<double>()) + 1;
    Cplx sum = 0;
    for (int n = -nmax; n <= nmax; n += 2) {
        const Cplx d = zp - Cplx(Real(n) * h, 0);
        sum += exp(-d * d) / (Real(n) + m);
    }
    return exp(-z * z) + Cplx(0, 2) / pi() * sum;
}

inline Cplx w_upper(const Cplx& z)
{
    const Real r = abs(z);
    if (r <= 8) {
        return taylor(z);
    }
    if (z.imag() >= 3) {
        return laplace(z);
    }
    return rybicki(z);
}

inline Cplx w(const Cplx& z)
{
    if (z.imag() >= 0) {
        return w_upper(z);
    }
    if (abs(z) <= 8) {
        return taylor(z);
    }
    return 2 * exp(-z * z) - w_upper(-z);
}

inline Cplx from(std::complex<double> z) { return Cplx(Real(z.real()), Real(z.imag())); }

inline std::complex<double> to_double(const Cplx& z)
{
    return {z.real().convert_to<double>(), z.imag().convert_to<double>()};
}

// w(z) = (i/pi) int e^{-t^2}/(z-t) dt for Im z > 0, by double-exponential
// quadrature in 50 digits. Only used for a few spot values.
inline std::complex<double> integral(std::complex<double> zd)
{
    using R50 = boost::multiprecision::cpp_bin_float_50;
    const R50 x = zd.real();
    const R50 y = zd.imag();
    boost::math::quadrature::sinh_sinh<R50> rule;
    const R50 tol("1e-40");
    // 1/(z-t) = ((x-t) - iy)/((x-t)^2 + y^2)
    auto re = [&](R50 t) { return exp(-t * t) * (x - t) / ((x - t) * (x - t) + y * y); };
    auto im = [&](R50 t) { return -exp(-t * t) * y / ((x - t) * (x - t) + y * y); };
    const R50 a = rule.integrate(re, tol);
    const R50 b = rule.integrate(im, tol);
    const R50 inv_pi = 1 / boost::math::constants::pi<R50>();
    // i/pi (a + ib) = (-b + ia)/pi
    return {(-b * inv_pi).convert_to<double>(), (a * inv_pi).convert_to<double>()};
}

}  // namespace mpref
