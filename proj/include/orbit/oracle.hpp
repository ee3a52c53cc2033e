#pragma once

// Brute-force reference values for the amplitudes and response integrals.
//
// The positive-frequency prescription is realised by dt -> dt - i eps
// throughout the Wightman function. Each quantity is computed on a
// ladder of eps values and extrapolated to eps = 0.
//
// Time integrals are reduced analytically to one dimension first:
//   A = (eta^2/gamma^2) sqrt(pi) xi' 2 Re int_0^L e^{-d^2/4xi'^2} e^{-i Omega' d} D_AA(d) dd
//   X = -(2 sqrt(pi) xi' eta^2/gamma^2) e^{-y^2} int_0^L e^{-d^2/4xi'^2} D_AB(d) dd
//   Y = (eta^2/gamma^2) sqrt(pi) xi' 2 Re int_0^L e^{-d^2/4xi'^2} e^{-i Omega' d} D_AB(d) dd
// with L = truncation * xi'.

#include <string>
#include <vector>

#include "orbit/cerf.hpp"
#include "orbit/params.hpp"

namespace orbit {

struct Regulator {
    /// In units of the natural time scale of the integral (xi' for the
    /// amplitudes); strictly decreasing, at least three entries.
    std::vector<double> epsilon_ladder{1e-2, 5e-3, 2.5e-3};
    /// Half-width of the integration window in units of xi'.
    double truncation = 12.0;
    /// Number of uniform base panels of the quadrature mesh.
    int node_budget = 10000;

    void validate() const;
    /// e.g. "eps:0.01/0.005/0.0025|trunc:12|nodes:10000"
    std::string fingerprint() const;
    static Regulator from_fingerprint(const std::string& text);
};

struct QuadratureReport {
    Complex value;             ///< finest rung of the ladder
    Complex eps_extrapolated;  ///< eps -> 0
    double convergence_order = 0.0;
    double error_estimate = 0.0;
    std::vector<Complex> ladder;
    double quadrature_error = 0.0;  ///< largest Kronrod estimate over the rungs
    /// Im I(+-): divergent as eps -> 0; kept for diagnostics only.
    std::vector<double> diagnostic_imag;
};

/// -1/(4 pi^2) / (d^2 - 4 R^2 cos^2(omega d / 2)), d = dt - i eps
Complex wightman_cross(double dt, double radius, double omega, double eps);
/// -1/(4 pi^2) / (d^2 - 4 R^2 sin^2(omega d / 2)), d = dt - i eps
Complex wightman_single(double dt, double radius, double omega, double eps);

/// Positive real zero of dt^2 - 4R^2 cos^2(omega dt/2), by bisection.
double cross_light_cone(double radius, double omega);

/// Orbit, gap and window in one consistent time unit.
struct Kinematics {
    double radius;
    double angular;
    double gamma;
    double omega_lab;
    double window_lab;
    double y;
    double coupling = 1.0;

    static Kinematics from_point(const OrbitPoint& pt, double coupling = 1.0);
    static Kinematics from_physical(const PhysicalParams& p);
};

QuadratureReport quad_a(const OrbitPoint& pt, const Regulator& reg = {}, double coupling = 1.0);
QuadratureReport quad_x(const OrbitPoint& pt, const Regulator& reg = {}, double coupling = 1.0);
QuadratureReport quad_y(const OrbitPoint& pt, const Regulator& reg = {}, double coupling = 1.0);

/// Same integrals with dimensionful inputs. The results are dimensionless.
QuadratureReport quad_a(const PhysicalParams& p, const Regulator& reg = {});
QuadratureReport quad_x(const PhysicalParams& p, const Regulator& reg = {});

/// Single rung of quad_a at eps = eps_rel * xi' (complex, before taking 2 Re).
Complex quad_a_rung(const OrbitPoint& pt, double eps_rel, const Regulator& reg = {});
/// The undecomposed double integral over (t', t'') at the same eps.
Complex quad_a_2d(const OrbitPoint& pt, double eps_rel, const Regulator& reg = {});

/// Re I(+-) = Re int_0^inf e^{-+ i omega_lab s} D_AA(s - i eps) ds, for the
/// orbit of `pt` (time unit xi). sign = +1 gives I+, -1 gives I-. The eps
/// ladder is in units of 1/max(omega_lab, angular).
QuadratureReport quad_i_pm(int sign, double omega_lab, const OrbitPoint& pt, const Regulator& reg = {});
/// Same with the orbit given directly.
QuadratureReport quad_i_pm(int sign, double omega_lab, double radius, double angular, const Regulator& reg = {});

}  // namespace orbit
