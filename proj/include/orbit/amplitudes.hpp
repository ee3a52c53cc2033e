#pragma once

// Closed-form second-order amplitudes for two detectors on opposite points of
// a circular orbit, in units of eta0^2 unless a coupling is given. A is the
// single-detector excitation probability, X the two-excitation amplitude.
// The pair is entangled when |X| > A.
//
// With kappa = r/alpha, the contour integrals reduce to sums over the roots
// z_p of z = +-beta sin z (for A) and z = +-beta cos z (for X); see poles.hpp.

#include <optional>
#include <string>
#include <vector>

#include "orbit/cerf.hpp"
#include "orbit/params.hpp"

namespace orbit {

struct AmplitudeOptions {
    int k_max = 10;
    /// If > 0, k_max is doubled until tail_estimate <= tolerance; reaching
    /// k_cap first throws ConvergenceError.
    double tolerance = 0.0;
    int k_cap = 640;
    double coupling = 1.0;
};

struct AmplitudeResult {
    double a_val = 0.0;
    Complex x_val;
    int k_used = 0;
    /// Bound on the truncated pole-sum remainder of A and X (absolute, the
    /// larger of the two), from a fit to the decay of the last terms.
    double tail_estimate = 0.0;
    double tail_a = 0.0;
    double tail_x = 0.0;
    /// Size of the imaginary part that must cancel in the Im-extracted pole
    /// sums, in the units of the amplitude.
    double imag_leak = 0.0;
    /// Optional Y amplitude, only available from quadrature.
    std::optional<double> y_val;
};

AmplitudeResult amplitudes(const OrbitPoint& pt, const AmplitudeOptions& opt = {});

double amplitude_a(const OrbitPoint& pt, int k_max = 10, double coupling = 1.0);
Complex amplitude_x(const OrbitPoint& pt, int k_max = 10, double coupling = 1.0);

/// beta -> 0 limits.
double inertial_a(double r, double y, double coupling = 1.0);
Complex inertial_x(double r, double y, double coupling = 1.0);

/// Transition rate eta0^2 a exp(-sqrt(12) Omega/a) / (8 sqrt(3) pi), the
/// xi -> infinity limit of A / (sqrt(pi) xi).
double longtime_rate_a(double omega_gap, double accel, double eta0 = 1.0);

/// alpha -> infinity at fixed r: A -> eta0^2 alpha / (8 sqrt(3 pi)).
double large_alpha_a(double alpha, double eta0 = 1.0);
/// c in |X| -> c (eta0^2 / 4 sqrt(pi)) e^{-y^2} r^{-3/2} alpha^{-1/2}, from
/// the beta -> 1 pole sums truncated at k_max.
double large_alpha_x_coefficient(int k_max = 10);

struct RegionSample {
    explicit RegionSample(const OrbitPoint& pt) : point(pt) {}

    OrbitPoint point;
    bool entangled = false;
    double margin = 0.0;  ///< |X| - A
    AmplitudeResult result;
    bool failed = false;
    std::string error;
};

RegionSample entangled(const OrbitPoint& pt, const AmplitudeOptions& opt = {});

struct Axis {
    double lo = 0.0;
    double hi = 0.0;
    int n = 1;
    bool log_spaced = false;

    std::vector<double> values() const;
};

struct RegionGrid {
    Axis r;
    Axis y;
    Axis alpha;
};

/// Evaluates every grid point; alpha outermost, then y, with r fastest.
/// Point failures are recorded in the sample and do not stop the scan.
/// threads <= 0 uses the hardware concurrency.
std::vector<RegionSample> region_scan(const RegionGrid& grid, const AmplitudeOptions& opt = {}, int threads = 1);

}  // namespace orbit
