#pragma once

#include "sgcov/quadrature.hpp"

#include <cmath>

namespace sgcov::quad {

// t^alpha with fast paths for the exponents the sweeps use
inline double pow_alpha(double t, double alpha) {
    if (alpha == 4.0) {
        const double t2 = t * t;
        return t2 * t2;
    }
    if (alpha == 3.0) return t * t * t;
    return std::pow(t, alpha);
}

struct KernelArgs {
    double s;      // Laplace-transform argument, units of m^alpha
    double x;      // radial limit (m)
    double alpha;  // path loss exponent, > 2

    void validate() const;
};

// F(s,x) = x^2 * 2F1(1, 2/alpha; 1+2/alpha; -x^alpha/s).
// Equals 2*int_0^x t/(1+t^alpha/s) dt; nonnegative, increasing in x.
double kernel_F(double s, double x, double alpha);
double kernel_F(const KernelArgs& args);

// F(s,b) - F(s,a) for 0 <= a <= b, evaluated as 2*int_a^b t/(1+t^alpha/s) dt
// so that near-equal operands never cancel.
double kernel_F_diff(double s, double a, double b, double alpha);

// x^2 - F(s,x) = 2*int_0^x t/(1+s*t^-alpha) dt, stable when F(s,x) -> x^2.
double kernel_F_complement(double s, double x, double alpha);

}  // namespace sgcov::quad
