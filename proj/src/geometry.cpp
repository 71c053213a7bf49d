#include "sgcov/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sgcov::geom {

namespace {

constexpr double kClampTol = 1e-12;

// Inverse-trig arguments may overshoot [-1,1] by cancellation at the piece
// boundaries; clamp within kClampTol, reject beyond.
double clamp_unit(double v, const char* what) {
    if (v > 1.0) {
        if (v - 1.0 > kClampTol) throw std::domain_error(std::string(what) + ": argument above 1");
        return 1.0;
    }
    if (v < -1.0) {
        if (-1.0 - v > kClampTol) throw std::domain_error(std::string(what) + ": argument below -1");
        return -1.0;
    }
    return v;
}

// Kahan's stable 4*area of the triangle with sides a >= b >= c
double triangle_area4(double a, double b, double c) {
    if (b > a) std::swap(a, b);
    if (c > a) std::swap(a, c);
    if (c > b) std::swap(b, c);
    const double t = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    return std::sqrt(std::max(0.0, t));
}

// lens area via atan2 half-angles; exact to machine precision at the fold
// boundaries r = |D-d| and r = D+d where the acos form loses sqrt(eps)
double lens_area(double d, double D, double r) {
    const double k4 = triangle_area4(r, d, D);
    const double phi_r = std::atan2(k4, r * r + d * d - D * D);
    const double phi_D = std::atan2(k4, D * D + d * d - r * r);
    return D * D * phi_D + r * r * phi_r - 0.5 * k4;
}

}  // namespace

void CircleConfig::validate() const {
    if (!(D > 0.0)) throw std::domain_error("CircleConfig: D must be > 0");
    if (!(d >= 0.0)) throw std::domain_error("CircleConfig: d must be >= 0");
}

double intersection_area(const CircleConfig& cfg, double r) {
    cfg.validate();
    if (!(r >= 0.0)) throw std::domain_error("intersection_area: r must be >= 0");
    const double d = cfg.d, D = cfg.D;
    if (d == 0.0) return r < D ? M_PI * r * r : M_PI * D * D;
    if (r >= D + d) return M_PI * D * D;
    if (d <= D) {
        if (r <= D - d) return M_PI * r * r;
        return lens_area(d, D, r);
    }
    if (r <= d - D) return 0.0;
    return lens_area(d, D, r);
}

double intersection_area_derivative(const CircleConfig& cfg, double r) {
    cfg.validate();
    const double lo = std::fabs(cfg.D - cfg.d);
    if (!(cfg.d > 0.0) || !(r > lo) || !(r < cfg.D + cfg.d))
        throw std::domain_error("intersection_area_derivative: r outside open lens interval");
    return 2.0 * r * half_angle(cfg, r);
}

double half_angle(const CircleConfig& cfg, double r) {
    cfg.validate();
    if (!(cfg.d > 0.0)) throw std::domain_error("half_angle: requires d > 0");
    if (!(r > 0.0)) throw std::domain_error("half_angle: requires r > 0");
    const double lo = std::fabs(cfg.D - cfg.d);
    const double hi = cfg.D + cfg.d;
    const double slack = kClampTol * (1.0 + hi);
    if (r < lo - slack || r > hi + slack)
        throw std::domain_error("half_angle: r outside [|D-d|, D+d]");
    return std::atan2(triangle_area4(r, cfg.d, cfg.D), r * r + cfg.d * cfg.d - cfg.D * cfg.D);
}

double tangent_angle(const CircleConfig& cfg) {
    cfg.validate();
    if (!(cfg.d >= cfg.D)) throw std::domain_error("tangent_angle: requires d >= D");
    return std::asin(clamp_unit(cfg.D / cfg.d, "tangent_angle"));
}

ChordRadii chord_radii(const CircleConfig& cfg, double theta) {
    cfg.validate();
    const double st = std::sin(theta);
    double rad = cfg.D * cfg.D - cfg.d * cfg.d * st * st;
    if (rad < 0.0) {
        if (-rad > kClampTol * cfg.D * cfg.D)
            throw std::domain_error("chord_radii: ray misses the disk");
        rad = 0.0;
    }
    const double root = std::sqrt(rad);
    const double base = cfg.d * std::cos(theta);
    return {base - root, base + root};
}

}  // namespace sgcov::geom
