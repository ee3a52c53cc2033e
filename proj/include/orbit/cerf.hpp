#pragma once

// Complex error-function family at double precision.
//
// All functions reject non-finite arguments with InvalidArgument and raise
// OverflowError when the result (or the unavoidable factor exp(-z^2)) leaves
// the double range, instead of returning inf.

#include <complex>

namespace orbit {

using Complex = std::complex<double>;

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
Complex faddeeva(Complex z);

/// Scaled complementary error function exp(z^2) erfc(z) = w(iz).
Complex erfcx_complex(Complex z);

Complex erfc_complex(Complex z);
Complex erf_complex(Complex z);

/// erfi(z) = -i erf(iz). Real for real z.
Complex erfi_complex(Complex z);

/// exp(z) with overflow reported as OverflowError. Underflow returns 0.
Complex exp_checked(Complex z);

/// exp(-z^2), with the exponent formed in extended precision so the relative
/// error does not grow with |z|^2.
Complex exp_minus_square(Complex z);

}  // namespace orbit
