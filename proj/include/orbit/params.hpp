#pragma once

// Parameters of two detectors on diametrically opposite points of a circular
// orbit, coupled to a massless scalar field.
//
// Units: hbar = c = 1, metric signature (+,-,-,-). The single free unit is the
// switching time xi; every dimensionless quantity below is measured in units of
// xi (r = R/xi, y = Omega*xi, alpha = a*xi). Setting xi = 1 gives the
// "all-dimensionless" mode used by the amplitude and oracle modules.

#include <array>

namespace orbit {

/// Physical inputs in the instantaneous rest frame of a detector.
struct PhysicalParams {
    double omega_gap = 1.0;  ///< level spacing Omega (1/time)
    double coupling = 1.0;   ///< eta_0, dimensionless
    double window = 1.0;     ///< Gaussian switching width xi (time)
    double radius = 1.0;     ///< orbit radius R (length)
    double accel = 0.0;      ///< proper acceleration a (1/time); 0 is inertial

    void validate() const;
};

/// Quantities seen from the inertial frame at the centre of rotation.
///
/// accel_lab is a' = a/gamma, the rate of change of coordinate speed per unit
/// proper time (dv/dtau). The coordinate acceleration dv/dt = R*omega^2 =
/// gamma^2 a is a different quantity and is reported separately.
struct FrameQuantities {
    double omega_gap_lab;     ///< Omega' = Omega/gamma
    double coupling_lab;      ///< eta'  = eta/gamma
    double window_lab;        ///< xi'   = gamma*xi
    double accel_lab;         ///< a'    = a/gamma  (dv/dtau)
    double coordinate_accel;  ///< dv/dt = gamma^2 a
    double gamma;
    double beta;
};

/// One configuration in dimensionless form, with derived kinematics.
class OrbitPoint {
public:
    /// Throws InvalidArgument unless r > 0, y > 0, alpha >= 0 (all finite).
    static OrbitPoint make(double r, double y, double alpha);

    double r() const { return r_; }
    double y() const { return y_; }
    double alpha() const { return alpha_; }

    /// gamma^2 = r*alpha + 1, stored exactly as computed.
    double gamma_sq() const { return gamma_sq_; }
    double gamma() const;
    /// beta = (1 + 1/(r alpha))^{-1/2}; exactly 0 when alpha == 0.
    double beta() const { return beta_; }
    /// omega*xi = alpha/(gamma^2 beta); exactly 0 when alpha == 0.
    double angular() const { return angular_; }
    bool inertial() const { return alpha_ == 0.0; }

private:
    OrbitPoint(double r, double y, double alpha);

    double r_;
    double y_;
    double alpha_;
    double gamma_sq_;
    double beta_;
    double angular_;
};

OrbitPoint derive_orbit_point(const PhysicalParams& p);

/// Inverse of derive_orbit_point at a chosen window xi.
PhysicalParams reconstruct_physical(const OrbitPoint& pt, double window, double coupling = 1.0);

FrameQuantities to_lab_frame(const PhysicalParams& p);

/// Speed from gamma^2 - 1 = r alpha (exact for gamma close to one).
double beta_from_r_alpha(double r_alpha);

enum class Detector { A, B };

/// x_A(t) = (t,  R cos wt,  R sin wt, 0), x_B(t) = (t, -R cos wt, -R sin wt, 0).
struct Worldline {
    Detector detector;
    double radius;
    double angular;

    int sign() const { return detector == Detector::A ? 1 : -1; }
    std::array<double, 4> position(double t) const;
};

std::array<Worldline, 2> worldlines(double radius, double angular);

/// Minkowski interval (x_i(t) - x_j(t'))^2 with signature (+,-,-,-).
double separation_squared(const Worldline& line_a, const Worldline& line_b, double t, double t_prime);

}  // namespace orbit
