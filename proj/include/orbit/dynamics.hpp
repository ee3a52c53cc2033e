#pragma once

// Markovian evolution of two identical orbiting detectors, each coupled to its
// own vacuum noise (cross-detector terms are dropped, which is justified at
// large acceleration). Interaction picture, rotating-wave approximation.
//
// Basis of each qubit: index 0 = ground ("up"), index 1 = excited ("down");
// sigma_z = diag(1, -1), lowering operator sigma_- = |0><1|.
// Two-qubit basis {|00>, |01>, |10>, |11>}: rho(0,0) is "both in the ground
// state". The Bloch expansion is rho = sum_ij r_ij sigma_i (x) sigma_j with
// index order {1, x, y, z}.

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <vector>

namespace orbit {

using Matrix4c = Eigen::Matrix4cd;

struct RelaxationProfile {
    double omega_gap = 0.0;  ///< Omega (proper frame)
    double accel = 0.0;      ///< a (proper acceleration)
    double eta0 = 0.0;
    double gamma = 1.0;
    double re_i_minus = 0.0;  ///< Re I-
    double re_i_plus = 0.0;   ///< Re I+
    double delta = 1.0;
    double t1 = 0.0;
    double t2 = 0.0;
    double beta_eff_omega = 0.0;  ///< +inf at a = 0
    double t_eff = 0.0;           ///< Omega / beta_eff_omega

    /// eta0 / gamma, the lab-frame coupling that multiplies the rates.
    double coupling_lab() const { return eta0 / gamma; }
};

/// Uses the closed forms
///   Re I- = gamma^2/(4 pi) (Omega' + a'/(4 sqrt 3) exp(-2 sqrt 3 Omega'/a')),
///   Re I+ = Re I- - gamma^2 Omega'/(4 pi),
/// T1^-1 = 4 (eta0/gamma)^2 Re(I- + I+), T2 = 2 T1.
/// eta0 = 0 gives infinite T1, T2.
RelaxationProfile relaxation_profile(double omega_gap, double accel, double eta0 = 1.0, double gamma = 1.0);

using BlochTensor = std::array<std::array<double, 4>, 4>;

BlochTensor bloch_solution(const RelaxationProfile& prof, double t);

struct TwoQubitState {
    Matrix4c rho = Matrix4c::Zero();
    double time = 0.0;

    /// Throws InvalidArgument unless Hermitian (1e-12), unit trace (1e-12)
    /// and eigenvalues >= -1e-10.
    void validate() const;
    double min_eigenvalue() const;
};

Matrix4c bloch_to_matrix(const BlochTensor& r);
BlochTensor matrix_to_bloch(const Matrix4c& rho);

/// (|00> + |11>) / sqrt 2
TwoQubitState bell_state();

TwoQubitState density_at(const RelaxationProfile& prof, double t);

/// The four jump operators: sqrt(Re I-) eta' sigma_- and sqrt(Re I+) eta'
/// sigma_+ on each detector.
std::array<Matrix4c, 4> jump_operators(const RelaxationProfile& prof);

/// d rho/dt = sum_j (2 L rho L^+ - {L^+ L, rho})
Matrix4c lindblad_rhs(const std::array<Matrix4c, 4>& jumps, const Matrix4c& rho);

struct IntegratorOptions {
    /// Base step as a fraction of T2 (at most 1/200).
    double step_fraction = 1e-3;
    /// Largest tolerated difference between one step and two half steps.
    double halving_tolerance = 1e-12;
};

/// Fixed-step RK4 with a step-halving check. t_grid must start at 0 and
/// increase. Throws NumericalError on step underflow or lost positivity.
std::vector<TwoQubitState> lindblad_integrate(const RelaxationProfile& prof, const TwoQubitState& rho0,
                                              const std::vector<double>& t_grid, const IntegratorOptions& opt = {});

/// Wootters concurrence from the singular values of W^T (sy (x) sy) W, where
/// rho = W W^+.
double concurrence_general(const TwoQubitState& state);

/// max{-(1 - d^2)(1/2 - e^{-t/T2}) + (1 + d^2)/2 e^{-t/T1}, 0}
double concurrence_closed(const RelaxationProfile& prof, double t);

/// Entanglement sudden-death time. Empty when the concurrence never vanishes
/// (delta = 1).
struct EsdTime {
    std::optional<double> time;

    bool never() const { return !time.has_value(); }
};

EsdTime esd_time(const RelaxationProfile& prof);

/// t_esd / T2 as a function of delta alone; +inf for delta = 1.
double esd_ratio(double delta);

TwoQubitState equilibrium_state(const RelaxationProfile& prof);

/// exp(-beta H0) / Tr for two detectors, H0 = sum of (-Omega/2) sigma_z.
TwoQubitState thermal_state(double beta_eff_omega);

/// t' = eta0^2 Omega t / gamma
double rescaled_time(const RelaxationProfile& prof, double t);

}  // namespace orbit
