#pragma once

// Complex roots of the transcendental equations
//     A family:  z = +beta sin z  (branch z1),  z = -beta sin z  (branch z2)
//     X family:  z = +beta cos z  (branch z1),  z = -beta cos z  (branch z2)
// for 0 < beta < 1. Family members are stored by their canonical
// representative (Re z < 0, Im z > 0); -z, conj(z) and -conj(z) are also roots.

#include <string>
#include <vector>

#include "orbit/cerf.hpp"

namespace orbit {

enum class PoleKind { A, X };
enum class Branch { z1, z2 };

std::string to_string(PoleKind kind);
std::string to_string(Branch branch);

struct Pole {
    Branch branch;
    int k;  ///< 1-based index within its branch, by distance from the origin
    Complex z;
    double residual;
};

struct PoleSet {
    PoleKind kind = PoleKind::A;
    double beta = 0.0;
    /// beta == 0: the equations only have z = 0 and there is nothing to sum.
    bool degenerate = false;
    /// i*y0 for the A family, x0 for the X family.
    Complex special;
    /// Multiplicity of the special root, determined numerically.
    int special_order = 0;
    double special_residual = 0.0;
    /// Deviation of the special root from its symmetry axis after an
    /// unconstrained complex Newton solve.
    double special_axis_offset = 0.0;
    /// All branches merged, sorted by |z| (strictly increasing).
    std::vector<Pole> members;
    /// max residual over members and the special root
    double residual = 0.0;
    int k_max = 0;

    std::vector<Pole> branch(Branch b) const;
};

/// Throws InvalidArgument unless 0 <= beta < 1 and k_max >= 1; beta == 0
/// returns a degenerate set. ConvergenceError names the failing seed.
PoleSet solve_a_poles(double beta, int k_max = 10);
PoleSet solve_x_poles(double beta, int k_max = 10);

/// |z - s beta trig(z)| evaluated in extended precision.
double pole_residual(PoleKind kind, Branch branch, double beta, Complex z);

/// Closed approximations, used only as seeds.
double y0_approx(double beta);
double x0_approx(double beta);

/// Real solutions of t = beta sinh t (t > 0) and x = beta cos x.
double solve_y0(double beta);
double solve_x0(double beta);

}  // namespace orbit
