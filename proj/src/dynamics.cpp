#include "orbit/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "orbit/error.hpp"

namespace orbit {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kSqrt3 = std::sqrt(3.0);
const double kInf = std::numeric_limits<double>::infinity();

using C = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;

std::array<Matrix2c, 4> paulis()
{
    Matrix2c id = Matrix2c::Identity();
    Matrix2c x, y, z;
    x << 0, 1, 1, 0;
    y << 0, C(0, -1), C(0, 1), 0;
    z << 1, 0, 0, -1;
    return {id, x, y, z};
}

Matrix4c kron(const Matrix2c& a, const Matrix2c& b)
{
    Matrix4c out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return out;
}

Matrix2c lowering()
{
    Matrix2c m = Matrix2c::Zero();
    m(0, 1) = 1.0;
    return m;
}

void require(bool ok, const std::string& what)
{
    if (!ok) {
        throw InvalidArgument(what);
    }
}

}  // namespace

RelaxationProfile relaxation_profile(double omega_gap, double accel, double eta0, double gamma)
{
    require(std::isfinite(omega_gap) && omega_gap > 0, "omega_gap must be > 0");
    require(std::isfinite(accel) && accel >= 0, "accel must be >= 0");
    require(std::isfinite(eta0) && eta0 >= 0, "eta0 must be >= 0");
    require(std::isfinite(gamma) && gamma >= 1, "gamma must be >= 1");

    RelaxationProfile p;
    p.omega_gap = omega_gap;
    p.accel = accel;
    p.eta0 = eta0;
    p.gamma = gamma;
    const double g2 = gamma * gamma;
    const double om = omega_gap / gamma;
    const double unit = g2 / (4.0 * kPi);
    if (accel == 0.0) {
        p.re_i_plus = 0.0;
        p.re_i_minus = unit * om;
        p.delta = 1.0;
        p.beta_eff_omega = kInf;
        p.t_eff = 0.0;
    } else {
        const double ap = accel / gamma;
        const double ratio = omega_gap / accel;  // Omega'/a'
        p.re_i_plus = unit * ap / (4.0 * kSqrt3) * std::exp(-2.0 * kSqrt3 * ratio);
        p.re_i_minus = unit * om + p.re_i_plus;
        // ln(Re I- / Re I+) = ln(1 + 4 sqrt3 (Omega/a) e^{2 sqrt3 Omega/a})
        const double l = std::log(4.0 * kSqrt3 * ratio) + 2.0 * kSqrt3 * ratio;
        p.beta_eff_omega = l > 0 ? l + std::log1p(std::exp(-l)) : std::log1p(std::exp(l));
        p.delta = std::tanh(0.5 * p.beta_eff_omega);
        p.t_eff = omega_gap / p.beta_eff_omega;
    }
    const double eta_lab = eta0 / gamma;
    const double rate = 4.0 * eta_lab * eta_lab * (p.re_i_minus + p.re_i_plus);
    p.t1 = rate > 0 ? 1.0 / rate : kInf;
    p.t2 = 2.0 * p.t1;
    return p;
}

BlochTensor bloch_solution(const RelaxationProfile& prof, double t)
{
    require(t >= 0, "time must be >= 0");
    const double s = std::exp(-t / prof.t2);
    const double s1 = std::exp(-t / prof.t1);
    const double d = prof.delta;
    BlochTensor r{};
    r[0][0] = 0.25;
    r[1][1] = 0.25 * s;
    r[2][2] = -0.25 * s;
    r[0][3] = r[3][0] = 0.25 * d * (1.0 - s);
    // (d^2/4)(1 - 2s + (1 + 1/d^2) e^{-t/T1})
    r[3][3] = 0.25 * (d * d * (1.0 - 2.0 * s) + (d * d + 1.0) * s1);
    return r;
}

Matrix4c bloch_to_matrix(const BlochTensor& r)
{
    const auto p = paulis();
    Matrix4c m = Matrix4c::Zero();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (r[i][j] != 0.0) {
                m += r[i][j] * kron(p[i], p[j]);
            }
        }
    }
    return m;
}

BlochTensor matrix_to_bloch(const Matrix4c& rho)
{
    const auto p = paulis();
    BlochTensor r{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            r[i][j] = 0.25 * (rho * kron(p[i], p[j])).trace().real();
        }
    }
    return r;
}

double TwoQubitState::min_eigenvalue() const
{
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(rho, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

void TwoQubitState::validate() const
{
    if (!rho.allFinite()) {
        throw InvalidArgument("density matrix has non-finite entries");
    }
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw InvalidArgument("density matrix is not Hermitian");
    }
    if (std::abs(rho.trace() - C(1.0, 0.0)) > 1e-12) {
        throw InvalidArgument("density matrix trace differs from 1");
    }
    if (min_eigenvalue() < -1e-10) {
        throw InvalidArgument("density matrix has a negative eigenvalue");
    }
}

TwoQubitState bell_state()
{
    TwoQubitState s;
    s.rho(0, 0) = s.rho(0, 3) = s.rho(3, 0) = s.rho(3, 3) = 0.5;
    return s;
}

TwoQubitState density_at(const RelaxationProfile& prof, double t)
{
    require(t >= 0, "time must be >= 0");
    const double s = std::exp(-t / prof.t2);
    const double s1 = std::exp(-t / prof.t1);
    const double d = prof.delta;
    const double u = d * (1.0 - s);
    TwoQubitState out;
    out.time = t;
    out.rho(0, 0) = 0.25 * (s1 + (1.0 + u) * (1.0 + u));
    out.rho(1, 1) = out.rho(2, 2) = 0.25 * (1.0 - s1 - u * u);
    out.rho(3, 3) = 0.25 * (s1 + (1.0 - u) * (1.0 - u));
    out.rho(0, 3) = out.rho(3, 0) = 0.5 * s;
    return out;
}

std::array<Matrix4c, 4> jump_operators(const RelaxationProfile& prof)
{
    const Matrix2c lo = lowering();
    const Matrix2c hi = lo.adjoint();
    const Matrix2c id = Matrix2c::Identity();
    const double e = prof.coupling_lab();
    const double cm = e * std::sqrt(prof.re_i_minus);
    const double cp = e * std::sqrt(prof.re_i_plus);
    return {cm * kron(lo, id), cp * kron(hi, id), cm * kron(id, lo), cp * kron(id, hi)};
}

Matrix4c lindblad_rhs(const std::array<Matrix4c, 4>& jumps, const Matrix4c& rho)
{
    Matrix4c out = Matrix4c::Zero();
    for (const auto& l : jumps) {
        const Matrix4c ld = l.adjoint();
        const Matrix4c ldl = ld * l;
        out += 2.0 * l * rho * ld - ldl * rho - rho * ldl;
    }
    return out;
}

std::vector<TwoQubitState> lindblad_integrate(const RelaxationProfile& prof, const TwoQubitState& rho0,
                                              const std::vector<double>& t_grid, const IntegratorOptions& opt)
{
    rho0.validate();
    require(!t_grid.empty() && t_grid.front() == 0.0, "time grid must start at 0");
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        require(t_grid[i] > t_grid[i - 1], "time grid must be increasing");
    }
    require(opt.step_fraction > 0 && opt.step_fraction <= 1.0 / 200.0, "step fraction must be in (0, 1/200]");

    const auto jumps = jump_operators(prof);
    auto rk4 = [&](const Matrix4c& y, double h) {
        const Matrix4c k1 = lindblad_rhs(jumps, y);
        const Matrix4c k2 = lindblad_rhs(jumps, y + 0.5 * h * k1);
        const Matrix4c k3 = lindblad_rhs(jumps, y + 0.5 * h * k2);
        const Matrix4c k4 = lindblad_rhs(jumps, y + h * k3);
        return Matrix4c(y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    };

    double h_base = std::isfinite(prof.t2) ? opt.step_fraction * prof.t2 : kInf;
    std::vector<TwoQubitState> out;
    out.push_back(rho0);
    out.back().time = 0.0;
    Matrix4c y = rho0.rho;
    double t = 0.0;
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const double target = t_grid[i];
        while (t < target) {
            double h = std::min(h_base, target - t);
            for (;;) {
                const Matrix4c full = rk4(y, h);
                const Matrix4c half = rk4(rk4(y, 0.5 * h), 0.5 * h);
                if ((full - half).cwiseAbs().maxCoeff() <= opt.halving_tolerance) {
                    y = half;
                    break;
                }
                h *= 0.5;
                h_base = std::min(h_base, h);
                if (h < 1e-14 * std::max(1.0, target)) {
                    throw NumericalError("lindblad_integrate: step size underflow at t = " + std::to_string(t));
                }
            }
            t = (target - t <= h) ? target : t + h;
        }
        // keep the state exactly Hermitian
        y = 0.5 * (y + y.adjoint()).eval();
        TwoQubitState s;
        s.rho = y;
        s.time = target;
        const double lam = s.min_eigenvalue();
        if (lam < -1e-10) {
            throw NumericalError("lindblad_integrate: positivity lost at t = " + std::to_string(target) +
                                 " (eigenvalue " + std::to_string(lam) + ")");
        }
        out.push_back(s);
    }
    return out;
}

double concurrence_general(const TwoQubitState& state)
{
    state.validate();
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(state.rho);
    Matrix4c w = es.eigenvectors();
    for (int i = 0; i < 4; ++i) {
        w.col(i) *= std::sqrt(std::max(0.0, es.eigenvalues()(i)));
    }
    const auto p = paulis();
    const Matrix4c flip = kron(p[2], p[2]);
    const Matrix4c tau = w.transpose() * flip * w;
    Eigen::JacobiSVD<Matrix4c> svd(tau);
    const auto sv = svd.singularValues();  // descending
    return std::max(0.0, sv(0) - sv(1) - sv(2) - sv(3));
}

double concurrence_closed(const RelaxationProfile& prof, double t)
{
    require(t >= 0, "time must be >= 0");
    const double s = std::exp(-t / prof.t2);
    const double s1 = std::exp(-t / prof.t1);
    const double d = prof.delta;
    // -(1 - d^2)(1/2 - s) + (1 + d^2) s1 / 2 rearranged so that t = 0 gives 1 exactly
    return std::max(0.0, s - 0.5 * (1.0 - s1) + 0.5 * d * d * (1.0 - 2.0 * s + s1));
}

double esd_ratio(double delta)
{
    require(delta > 0 && delta <= 1, "delta must be in (0, 1]");
    if (delta == 1.0) {
        return kInf;
    }
    const double one_minus = (1.0 - delta) * (1.0 + delta);
    const double denom = std::sqrt(2.0 * one_minus) - one_minus;
    return std::log((1.0 + delta * delta) / denom);
}

EsdTime esd_time(const RelaxationProfile& prof)
{
    if (prof.delta >= 1.0) {
        return {};
    }
    return {esd_ratio(prof.delta) * prof.t2};
}

TwoQubitState equilibrium_state(const RelaxationProfile& prof)
{
    Matrix2c one = Matrix2c::Zero();
    one(0, 0) = 0.5 * (1.0 + prof.delta);
    one(1, 1) = 0.5 * (1.0 - prof.delta);
    TwoQubitState s;
    s.rho = kron(one, one);
    s.time = kInf;
    return s;
}

TwoQubitState thermal_state(double beta_eff_omega)
{
    require(beta_eff_omega >= 0, "beta_eff_omega must be >= 0");
    // single detector populations proportional to e^{+b/2}, e^{-b/2}
    Matrix2c one = Matrix2c::Zero();
    if (std::isinf(beta_eff_omega)) {
        one(0, 0) = 1.0;
    } else {
        const double e = std::exp(-beta_eff_omega);
        one(0, 0) = 1.0 / (1.0 + e);
        one(1, 1) = e / (1.0 + e);
    }
    TwoQubitState s;
    s.rho = kron(one, one);
    s.time = kInf;
    return s;
}

double rescaled_time(const RelaxationProfile& prof, double t)
{
    return prof.eta0 * prof.eta0 * prof.omega_gap * t / prof.gamma;
}

}  // namespace orbit
