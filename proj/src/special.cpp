#include "sgcov/special.hpp"

#include <cmath>
#include <stdexcept>

namespace sgcov::quad {

void KernelArgs::validate() const {
    if (!(s > 0.0)) throw std::domain_error("KernelArgs: s must be > 0");
    if (!(x >= 0.0)) throw std::domain_error("KernelArgs: x must be >= 0");
    if (!(alpha > 2.0)) throw std::domain_error("KernelArgs: alpha must be > 2");
}

namespace {

// 2F1(1,1;c;w) for w in [0, 1/2]; the term ratio tends to w so roughly
// 55 terms reach machine precision at the split point.
double gauss_2f1_11(double c, double w) {
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < 500; ++n) {
        term *= w * (n + 1.0) / (c + n);
        sum += term;
        if (term < sum * 1e-17) return sum;
    }
    throw std::runtime_error("kernel_F: hypergeometric series failed to converge");
}

}  // namespace

double kernel_F(double s, double x, double alpha) {
    KernelArgs{s, x, alpha}.validate();
    if (x == 0.0) return 0.0;

    const double nu = 2.0 / alpha;
    const double y = pow_alpha(x, alpha) / s;

    if (y <= 1.0) {
        // Pfaff: 2F1(1,nu;1+nu;-y) = (1+y)^-1 * 2F1(1,1;1+nu;y/(1+y))
        const double w = y / (1.0 + y);
        return x * x / (1.0 + y) * gauss_2f1_11(1.0 + nu, w);
    }
    // large-argument connection formula, inner series mapped by Pfaff to 1/(1+y)
    const double head = M_PI * nu / std::sin(M_PI * nu) * std::pow(s, nu);
    const double w = 1.0 / (1.0 + y);
    const double corr = nu / (1.0 - nu) * x * x * w * gauss_2f1_11(2.0 - nu, w);
    return head - corr;
}

double kernel_F(const KernelArgs& args) { return kernel_F(args.s, args.x, args.alpha); }

double kernel_F_diff(double s, double a, double b, double alpha) {
    if (!(s > 0.0)) throw std::domain_error("kernel_F_diff: s must be > 0");
    if (!(0.0 <= a && a <= b)) throw std::domain_error("kernel_F_diff: requires 0 <= a <= b");
    if (a == b) return 0.0;

    // series difference unless the operands nearly cancel
    const double fb = kernel_F(s, b, alpha);
    if (a == 0.0) return fb;
    const double diff = fb - kernel_F(s, a, alpha);
    if (diff >= 0.05 * fb) return diff;

    QuadratureSettings qs;
    qs.rel_tol = 1e-10;
    qs.abs_tol = std::max(1e-300, 1e-14 * (b * b - a * a));
    auto f = [s, alpha](double t) {
        const double ta = pow_alpha(t, alpha);
        return 2.0 * t / (1.0 + ta / s);
    };
    return integrate(f, a, b, qs);
}

double kernel_F_complement(double s, double x, double alpha) {
    if (!(s > 0.0)) throw std::domain_error("kernel_F_complement: s must be > 0");
    if (!(x >= 0.0)) throw std::domain_error("kernel_F_complement: x must be >= 0");
    if (x == 0.0) return 0.0;
    QuadratureSettings qs;
    qs.rel_tol = 1e-10;
    qs.abs_tol = std::max(1e-300, 1e-14 * x * x);
    auto f = [s, alpha](double t) {
        if (t == 0.0) return 0.0;
        const double ta = pow_alpha(t, alpha);
        return 2.0 * t * ta / (ta + s);
    };
    return integrate(f, 0.0, x, qs);
}

}  // namespace sgcov::quad
