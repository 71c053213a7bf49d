#include <cmath>

#include "doctest.h"
#include "sgcov/geometry.hpp"
#include "sgcov/quadrature.hpp"
#include "sgcov/rng.hpp"

using namespace sgcov;
using geom::CircleConfig;

namespace {

// independent oracle: radial chord-length integral of the lens area
double area_by_chords(double d, double D, double r) {
    const CircleConfig cfg{d, D};
    quad::QuadratureSettings tight;
    tight.abs_tol = 1e-13;
    tight.rel_tol = 1e-11;
    if (d <= D) {
        return quad::integrate(
            [&](double th) {
                const double R1 = geom::chord_radii(cfg, th).r_far;
                const double m = std::min(r, R1);
                return m * m;
            },
            0.0, M_PI, tight);
    }
    const double phi0 = geom::tangent_angle(cfg);
    return quad::integrate(
        [&](double th) {
            const auto cr = geom::chord_radii(cfg, th);
            const double hi = std::min(r, cr.r_far);
            const double lo = std::min(hi, std::max(0.0, cr.r_near));
            return hi * hi - lo * lo;
        },
        0.0, phi0, tight);
}

}  // namespace

TEST_CASE("intersection area boundary collapses") {
    CircleConfig cfg{10.0, 15.0};
    CHECK(geom::intersection_area(cfg, 5.0) == doctest::Approx(M_PI * 25.0).epsilon(1e-12));
    CHECK(geom::intersection_area(cfg, 25.0) == doctest::Approx(M_PI * 225.0).epsilon(1e-12));
}

TEST_CASE("lens area regression and oracles") {
    // regression constant fixed from the chord-length and Monte Carlo oracles
    const double lens = geom::intersection_area({10.0, 15.0}, 15.0);
    CHECK(lens == doctest::Approx(412.510381566039).epsilon(1e-10));
    CHECK(lens == doctest::Approx(area_by_chords(10.0, 15.0, 15.0)).epsilon(1e-9));
    CHECK(geom::intersection_area({20.0, 15.0}, 16.0) ==
          doctest::Approx(area_by_chords(20.0, 15.0, 16.0)).epsilon(1e-9));
}

TEST_CASE("monte carlo area oracle at a few configurations") {
    mc::RngStream rng(99);
    const struct { double d, D, r; } cases[] = {{10, 15, 15}, {20, 15, 16}, {3, 5, 4.5}, {8, 6, 9}};
    for (const auto& c : cases) {
        const double R = std::min(c.r, c.D);  // sample inside the smaller circle
        long hits = 0;
        const long n = 2000000;
        for (long i = 0; i < n; ++i) {
            double x, y;
            if (c.r <= c.D) {
                rng.next_in_disk(R, 0.0, 0.0, x, y);
                const double dx = x - c.d;
                if (dx * dx + y * y <= c.D * c.D) ++hits;
            } else {
                rng.next_in_disk(R, c.d, 0.0, x, y);
                if (x * x + y * y <= c.r * c.r) ++hits;
            }
        }
        const double p = static_cast<double>(hits) / n;
        const double est = p * M_PI * R * R;
        const double se = std::sqrt(p * (1 - p) / n) * M_PI * R * R;
        const double analytic = geom::intersection_area({c.d, c.D}, c.r);
        CHECK(std::fabs(analytic - est) <= std::max(4.0 * se, 1e-9));
    }
}

TEST_CASE("continuity at piece boundaries") {
    for (auto [d, D] : {std::pair{10.0, 15.0}, {20.0, 15.0}, {15.0, 15.0}}) {
        const CircleConfig cfg{d, D};
        for (double b : {std::fabs(D - d), D + d}) {
            if (b <= 0.0) continue;
            const double lo = geom::intersection_area(cfg, b - 1e-7);
            const double hi = geom::intersection_area(cfg, b + 1e-7);
            CHECK(std::fabs(hi - lo) < 2.0 * M_PI * b * 2.1e-7 + 1e-9);  // slope-bounded
            CHECK(std::fabs(geom::intersection_area(cfg, b) -
                            geom::intersection_area(cfg, std::nextafter(b, 0.0))) < 1e-9);
        }
    }
}

TEST_CASE("monotone in r and symmetric under circle swap") {
    mc::RngStream rng(7);
    for (int i = 0; i < 200; ++i) {
        const double d = 30.0 * rng.next_double();
        const double D = 0.5 + 25.0 * rng.next_double();
        const double r1 = 40.0 * rng.next_double();
        const double r2 = r1 + 5.0 * rng.next_double();
        const double a1 = geom::intersection_area({d, D}, r1);
        const double a2 = geom::intersection_area({d, D}, r2);
        CHECK(a2 >= a1 - 1e-12);
        if (r1 > 0.0) {
            const double swapped = geom::intersection_area({d, r1}, D);
            CHECK(a1 == doctest::Approx(swapped).epsilon(1e-10).scale(1e-12));
        }
    }
}

TEST_CASE("derivative matches finite differences") {
    for (auto [d, D] : {std::pair{10.0, 15.0}, {20.0, 15.0}, {14.9, 15.0}}) {
        const CircleConfig cfg{d, D};
        const double lo = std::fabs(D - d), hi = D + d;
        for (int k = 1; k < 20; ++k) {
            const double r = lo + (hi - lo) * k / 20.0;
            const double h = 1e-6 * std::max(1.0, r);
            const double fd =
                (geom::intersection_area(cfg, r + h) - geom::intersection_area(cfg, r - h)) /
                (2.0 * h);
            CHECK(geom::intersection_area_derivative(cfg, r) ==
                  doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("derivative limits at the lens boundaries") {
    const CircleConfig cfg{10.0, 15.0};
    const double inner = 5.0 + 1e-9;
    CHECK(geom::intersection_area_derivative(cfg, inner) ==
          doctest::Approx(2.0 * M_PI * inner).epsilon(1e-4));
    const double outer = 25.0 - 1e-9;
    CHECK(geom::intersection_area_derivative(cfg, outer) < 1e-3);
}

TEST_CASE("half angle and tangent angle") {
    CHECK(geom::half_angle({10, 15}, 5.0) == doctest::Approx(M_PI));
    CHECK(geom::half_angle({10, 15}, 25.0) == doctest::Approx(0.0));
    const double split = std::sqrt(400.0 - 225.0);
    CHECK(geom::half_angle({20, 15}, split) ==
          doctest::Approx(geom::tangent_angle({20, 15})).epsilon(1e-12));
    CHECK(geom::tangent_angle({30, 15}) == doctest::Approx(M_PI / 6).epsilon(1e-12));
    CHECK(geom::tangent_angle({15, 15}) == doctest::Approx(M_PI / 2).epsilon(1e-12));
    CHECK(geom::tangent_angle({20, 15}) == doctest::Approx(0.848062).epsilon(1e-6));
}

TEST_CASE("chord radii collinear and tangent cases") {
    const auto in = geom::chord_radii({10, 15}, 0.0);
    CHECK(in.r_near == doctest::Approx(-5.0));
    CHECK(in.r_far == doctest::Approx(25.0));
    const auto out = geom::chord_radii({20, 15}, 0.0);
    CHECK(out.r_near == doctest::Approx(5.0));
    CHECK(out.r_far == doctest::Approx(35.0));
    const auto tang = geom::chord_radii({20, 15}, geom::tangent_angle({20, 15}));
    CHECK(tang.r_near == doctest::Approx(std::sqrt(175.0)).epsilon(1e-6));
    CHECK(tang.r_far == doctest::Approx(std::sqrt(175.0)).epsilon(1e-6));
}

TEST_CASE("chord radii give disk membership") {
    mc::RngStream rng(11);
    for (int i = 0; i < 300; ++i) {
        const double d = 25.0 * rng.next_double();
        const double D = 1.0 + 20.0 * rng.next_double();
        const CircleConfig cfg{d, D};
        double thmax = M_PI;
        if (d > D) thmax = geom::tangent_angle(cfg) * 0.999;
        const double th = thmax * rng.next_double();
        const auto cr = geom::chord_radii(cfg, th);
        const double lo = std::max(0.0, cr.r_near);
        if (cr.r_far <= lo) continue;
        const double rho = lo + (cr.r_far - lo) * rng.next_double();
        const double x = rho * std::cos(th) - d, y = rho * std::sin(th);
        CHECK(x * x + y * y <= D * D * (1.0 + 1e-9));
        const double beyond = cr.r_far * (1.0 + 1e-6) + 1e-9;
        const double xb = beyond * std::cos(th) - d, yb = beyond * std::sin(th);
        CHECK(xb * xb + yb * yb > D * D);
    }
}

TEST_CASE("receiver at the disk center short-circuits") {
    CHECK(geom::intersection_area({0.0, 15.0}, 10.0) == doctest::Approx(M_PI * 100.0));
    CHECK(geom::intersection_area({0.0, 15.0}, 20.0) == doctest::Approx(M_PI * 225.0));
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(geom::intersection_area({10, 15}, -1.0), std::domain_error);
    CHECK_THROWS_AS(geom::intersection_area({-1, 15}, 1.0), std::domain_error);
    CHECK_THROWS_AS(geom::intersection_area({10, 0.0}, 1.0), std::domain_error);
    CHECK_THROWS_AS(geom::intersection_area_derivative({10, 15}, 4.0), std::domain_error);
    CHECK_THROWS_AS(geom::intersection_area_derivative({10, 15}, 26.0), std::domain_error);
    CHECK_THROWS_AS(geom::intersection_area_derivative({0.0, 15}, 10.0), std::domain_error);
    CHECK_THROWS_AS(geom::half_angle({10, 15}, 4.0), std::domain_error);
    CHECK_THROWS_AS(geom::tangent_angle({10, 15}), std::domain_error);
    CHECK_THROWS_AS(geom::chord_radii({20, 15}, 1.5), std::domain_error);
}
