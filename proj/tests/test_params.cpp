#include <catch_amalgamated.hpp>

#include <cmath>

#include "orbit/error.hpp"
#include "orbit/params.hpp"

using Catch::Matchers::WithinRel;
using Catch::Matchers::WithinAbs;

TEST_CASE("orbit point derived kinematics")
{
    const auto pt = orbit::OrbitPoint::make(1.0, 1.0, 1.0);
    CHECK(pt.gamma_sq() == 2.0);
    CHECK_THAT(pt.beta(), WithinRel(1.0 / std::sqrt(2.0), 1e-15));

    const auto still = orbit::OrbitPoint::make(0.7, 2.0, 0.0);
    CHECK(still.gamma_sq() == 1.0);
    CHECK(still.beta() == 0.0);
    CHECK(still.angular() == 0.0);
    CHECK(still.inertial());
}

TEST_CASE("orbit point rejects out of domain input")
{
    CHECK_THROWS_AS(orbit::OrbitPoint::make(0.0, 1.0, 1.0), orbit::InvalidArgument);
    CHECK_THROWS_AS(orbit::OrbitPoint::make(1.0, -1.0, 1.0), orbit::InvalidArgument);
    CHECK_THROWS_AS(orbit::OrbitPoint::make(1.0, 1.0, -1e-3), orbit::InvalidArgument);
    CHECK_THROWS_AS(orbit::OrbitPoint::make(1.0, NAN, 1.0), orbit::InvalidArgument);

    orbit::PhysicalParams p;
    p.accel = -1.0;
    CHECK_THROWS_AS(orbit::derive_orbit_point(p), orbit::InvalidArgument);
    p.accel = 1.0;
    p.window = 0.0;
    CHECK_THROWS_AS(orbit::derive_orbit_point(p), orbit::InvalidArgument);
    p.window = 1.0;
    p.radius = -2.0;
    CHECK_THROWS_AS(orbit::derive_orbit_point(p), orbit::InvalidArgument);
    p.radius = 1.0;
    p.omega_gap = 0.0;
    CHECK_THROWS_AS(orbit::to_lab_frame(p), orbit::InvalidArgument);
}

TEST_CASE("radius and angular frequency follow from gamma, beta and a")
{
    for (double r : {0.01, 0.3, 2.0, 40.0}) {
        for (double alpha : {1e-6, 0.2, 3.0, 1e4}) {
            const auto pt = orbit::OrbitPoint::make(r, 1.0, alpha);
            const double g2 = pt.gamma_sq();
            const double b = pt.beta();
            CHECK_THAT(g2 - b * b * g2, WithinRel(1.0, 1e-12));
            CHECK_THAT(b * b * g2, WithinRel(r * alpha, 1e-12));
            CHECK_THAT(g2 * b * b / alpha, WithinRel(r, 1e-12));
            CHECK_THAT(alpha / (g2 * b), WithinRel(pt.angular(), 1e-12));
            // R omega = beta
            CHECK_THAT(r * pt.angular(), WithinRel(b, 1e-12));
        }
    }
    const auto pt = orbit::OrbitPoint::make(2.0, 1.0, 3.0);
    const auto back = orbit::reconstruct_physical(pt, 1.0);
    CHECK_THAT(back.radius / back.window, WithinRel(2.0, 1e-15));
}

TEST_CASE("physical to dimensionless round trip")
{
    for (double xi : {1e-3, 0.5, 1.0, 7.0, 1e3}) {
        for (double r : {0.05, 1.0, 3.0}) {
            for (double alpha : {0.0, 0.01, 1.0, 100.0}) {
                const auto pt = orbit::OrbitPoint::make(r, 0.8, alpha);
                const auto p = orbit::reconstruct_physical(pt, xi, 0.3);
                const auto again = orbit::derive_orbit_point(p);
                CHECK_THAT(again.r(), WithinRel(r, 1e-12));
                CHECK_THAT(again.y(), WithinRel(0.8, 1e-12));
                CHECK_THAT(again.alpha(), WithinAbs(alpha, 1e-12 * alpha));
            }
        }
    }
}

TEST_CASE("lab frame scalings")
{
    orbit::PhysicalParams p;
    p.omega_gap = 1.0;
    p.coupling = 0.5;
    p.window = 1.0;
    p.radius = 1.0;
    p.accel = 0.0;
    auto f = orbit::to_lab_frame(p);
    CHECK(f.gamma == 1.0);
    CHECK(f.beta == 0.0);
    CHECK(f.omega_gap_lab == 1.0);
    CHECK(f.window_lab == 1.0);
    CHECK(f.coupling_lab == 0.5);
    CHECK(f.accel_lab == 0.0);

    p.accel = 1.0;
    f = orbit::to_lab_frame(p);
    CHECK_THAT(f.gamma, WithinRel(std::sqrt(2.0), 1e-15));
    CHECK_THAT(f.omega_gap_lab, WithinRel(1.0 / std::sqrt(2.0), 1e-15));
    CHECK_THAT(f.accel_lab, WithinRel(1.0 / std::sqrt(2.0), 1e-15));
    CHECK_THAT(f.coordinate_accel, WithinRel(2.0, 1e-15));
    CHECK_THAT(f.gamma, WithinRel(1.0 / std::sqrt(1.0 - f.beta * f.beta), 1e-12));

    // gamma = 2: R a = 3
    p.radius = 3.0;
    p.omega_gap = 1.7;
    p.window = 0.9;
    f = orbit::to_lab_frame(p);
    CHECK_THAT(f.gamma, WithinRel(2.0, 1e-15));
    CHECK_THAT(f.omega_gap_lab, WithinRel(1.7 / 2.0, 1e-15));
    CHECK_THAT(f.window_lab, WithinRel(1.8, 1e-15));
    CHECK_THAT(f.omega_gap_lab * f.window_lab, WithinRel(p.omega_gap * p.window, 1e-15));
}

TEST_CASE("worldline separations")
{
    const auto lines = orbit::worldlines(1.0, M_PI);
    const auto& a = lines[0];
    const auto& b = lines[1];
    CHECK(a.sign() == 1);
    CHECK(b.sign() == -1);
    CHECK(orbit::separation_squared(a, a, 0.4, 0.4) == 0.0);
    for (double t : {-3.0, 0.0, 0.25, 11.0}) {
        CHECK_THAT(orbit::separation_squared(a, b, t, t), WithinRel(-4.0, 1e-14));
    }
    CHECK_THAT(orbit::separation_squared(a, b, 1.0, 0.0), WithinAbs(1.0, 1e-14));

    // cross pair gives cos^2, same pair gives sin^2
    const auto l2 = orbit::worldlines(0.7, 1.3);
    for (double t : {0.0, 0.5, 2.0}) {
        for (double tp : {-1.0, 0.1, 3.0}) {
            const double d = t - tp;
            const double c = std::cos(1.3 * d / 2);
            const double s = std::sin(1.3 * d / 2);
            CHECK_THAT(orbit::separation_squared(l2[0], l2[1], t, tp),
                       WithinAbs(d * d - 4 * 0.49 * c * c, 1e-13));
            CHECK_THAT(orbit::separation_squared(l2[0], l2[0], t, tp),
                       WithinAbs(d * d - 4 * 0.49 * s * s, 1e-13));
        }
    }
}
