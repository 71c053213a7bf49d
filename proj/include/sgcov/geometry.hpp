#pragma once

namespace sgcov::geom {

// Two-circle configuration: a fixed disk of radius D whose center sits at
// distance d from the origin, probed by a circle of radius r at the origin.
struct CircleConfig {
    double d;  // center separation (m), >= 0
    double D;  // disk radius (m), > 0

    void validate() const;
};

struct ChordRadii {
    double r_near;  // ray entry radius, may be negative when the origin is inside the disk
    double r_far;   // ray exit radius
};

// |C_r|: area of b(o,r) intersected with b(x_o,D), piecewise in r.
double intersection_area(const CircleConfig& cfg, double r);

// d|C_r|/dr on the open lens interval (|D-d|, D+d); equals 2*r*phi1(r).
double intersection_area_derivative(const CircleConfig& cfg, double r);

// phi1(r) = acos((r^2+d^2-D^2)/(2dr)) in [0,pi]; requires d > 0 and
// |D-d| <= r <= D+d.
double half_angle(const CircleConfig& cfg, double r);

// phi0 = asin(D/d); requires d >= D > 0.
double tangent_angle(const CircleConfig& cfg);

// (Rhat1(theta), R1(theta)) = d*cos(theta) -/+ sqrt(D^2 - d^2 sin^2(theta)).
ChordRadii chord_radii(const CircleConfig& cfg, double theta);

}  // namespace sgcov::geom
