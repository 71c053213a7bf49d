#include "sgcov/single_cluster.hpp"

#include <cmath>
#include <stdexcept>

#include "sgcov/geometry.hpp"
#include "sgcov/special.hpp"

namespace sgcov::single {

using geom::CircleConfig;
using quad::integrate;
using quad::kernel_F;
using quad::kernel_F_complement;
using quad::kernel_F_diff;
using quad::pow_alpha;
using quad::QuadratureSettings;

void SingleClusterGeometry::validate() const {
    if (!(lambda > 0.0)) throw std::domain_error("SingleClusterGeometry: lambda must be > 0");
    if (!(D > 0.0)) throw std::domain_error("SingleClusterGeometry: D must be > 0");
    if (!(d >= 0.0)) throw std::domain_error("SingleClusterGeometry: d must be >= 0");
}

void ChannelModel::validate() const {
    if (!(alpha > 2.0)) throw std::domain_error("ChannelModel: alpha must be > 2");
    if (!(sigma2 >= 0.0)) throw std::domain_error("ChannelModel: sigma2 must be >= 0");
}

namespace {

double disk_mass(const SingleClusterGeometry& g) { return g.lambda * M_PI * g.D * g.D; }

}  // namespace

double serving_ccdf_closest(const SingleClusterGeometry& g, double r) {
    g.validate();
    if (!(r >= 0.0)) throw std::domain_error("serving_ccdf_closest: r must be >= 0");
    const double mu = disk_mass(g);
    if (r >= g.D + g.d) return 0.0;
    const double area = geom::intersection_area({g.d, g.D}, r);
    const double num = std::exp(-g.lambda * area) - std::exp(-mu);
    return std::max(0.0, num / (-std::expm1(-mu)));
}

double serving_pdf_closest(const SingleClusterGeometry& g, double r) {
    g.validate();
    if (!(r >= 0.0)) throw std::domain_error("serving_pdf_closest: r must be >= 0");
    const double mu = disk_mass(g);
    const double denom = -std::expm1(-mu);
    if (g.d == 0.0) {
        if (r >= g.D) return 0.0;
        return 2.0 * M_PI * g.lambda * r * std::exp(-g.lambda * M_PI * r * r) / denom;
    }
    const double lo = std::fabs(g.D - g.d);
    const double hi = g.D + g.d;
    if (r >= hi) return 0.0;
    if (r <= lo) {
        if (g.d > g.D) return 0.0;  // inside d-D gap the intersection is still empty or a full ball
        return 2.0 * M_PI * g.lambda * r * std::exp(-g.lambda * M_PI * r * r) / denom;
    }
    const double area = geom::intersection_area({g.d, g.D}, r);
    const double darea = geom::intersection_area_derivative({g.d, g.D}, r);
    return g.lambda * darea * std::exp(-g.lambda * area) / denom;
}

double serving_cdf_uniform(const SingleClusterGeometry& g, double r) {
    g.validate();
    if (!(r >= 0.0)) throw std::domain_error("serving_cdf_uniform: r must be >= 0");
    if (r >= g.D + g.d) return 1.0;
    return geom::intersection_area({g.d, g.D}, r) / (M_PI * g.D * g.D);
}

double serving_pdf_uniform(const SingleClusterGeometry& g, double r) {
    g.validate();
    if (!(r >= 0.0)) throw std::domain_error("serving_pdf_uniform: r must be >= 0");
    const double lo = std::fabs(g.D - g.d);
    const double hi = g.D + g.d;
    if (r >= hi) return 0.0;
    if (g.d == 0.0 || r <= lo) {
        if (g.d > g.D) return 0.0;
        return 2.0 * r / (g.D * g.D);
    }
    return geom::intersection_area_derivative({g.d, g.D}, r) / (M_PI * g.D * g.D);
}

namespace {

// lens-regime exponent: lambda * int_0^phi1 {F(s,R1(th)) - F(s,r)} dth
double closest_exponent_B(const SingleClusterGeometry& g, const ChannelModel& ch, double s,
                          double r, const QuadratureSettings& qs) {
    const CircleConfig cfg{g.d, g.D};
    const double phi1 = geom::half_angle(cfg, std::clamp(r, std::fabs(g.D - g.d), g.D + g.d));
    if (phi1 == 0.0) return 0.0;
    auto f = [&](double th) {
        const double r1 = geom::chord_radii(cfg, th).r_far;
        return kernel_F_diff(s, std::min(r, r1), std::max(r, r1), ch.alpha);
    };
    return g.lambda * integrate(f, 0.0, phi1, qs);
}

}  // namespace

double lt_interference_closest(const SingleClusterGeometry& g, const ChannelModel& ch, double s,
                               double serving_r, const QuadratureSettings& qs) {
    g.validate();
    ch.validate();
    if (!(s > 0.0)) throw std::domain_error("lt_interference_closest: s must be > 0");
    if (!(serving_r >= 0.0)) throw std::domain_error("lt_interference_closest: serving_r >= 0");
    const double r = serving_r;
    const double slack = 1e-9 * (g.D + g.d);
    const QuadratureSettings& inner = qs;

    if (g.d <= g.D) {
        if (r > g.D + g.d + slack)
            throw std::domain_error("lt_interference_closest: serving_r beyond D+d");
        if (r < g.D - g.d) {
            // A-branch; for d = 0 the chord radius is constant D
            if (g.d == 0.0) return std::exp(-g.lambda * M_PI * kernel_F_diff(s, r, g.D, ch.alpha));
            const CircleConfig cfg{g.d, g.D};
            auto f = [&](double th) {
                const double r1 = geom::chord_radii(cfg, th).r_far;
                return kernel_F_diff(s, r, std::max(r, r1), ch.alpha);
            };
            return std::exp(-g.lambda * integrate(f, 0.0, M_PI, inner));
        }
        return std::exp(-closest_exponent_B(g, ch, s, std::min(r, g.D + g.d), inner));
    }

    // d > D
    if (r < g.d - g.D - slack || r > g.d + g.D + slack)
        throw std::domain_error("lt_interference_closest: serving_r outside [d-D, d+D]");
    const double split = std::sqrt(g.d * g.d - g.D * g.D);
    const double rc = std::clamp(r, g.d - g.D, g.d + g.D);
    const double expB = closest_exponent_B(g, ch, s, rc, inner);
    if (rc >= split) return std::exp(-expB);

    // C-branch: B times the swath between phi1 and the tangent angle
    const CircleConfig cfg{g.d, g.D};
    const double phi1 = geom::half_angle(cfg, rc);
    const double phi0 = geom::tangent_angle(cfg);
    auto f = [&](double th) {
        const auto cr = geom::chord_radii(cfg, th);
        return kernel_F_diff(s, std::max(0.0, cr.r_near), cr.r_far, ch.alpha);
    };
    const double extra = g.lambda * integrate(f, phi1, std::max(phi1, phi0), inner);
    return std::exp(-expB - extra);
}

namespace {

// int {1 - 1/(1 + s x^-alpha)} dA over the disk: pi D^2 minus the serving-
// distance mixing integral, computed directly so neither limit s -> 0 nor
// s -> inf loses precision.
double uniform_mixing_complement(const SingleClusterGeometry& g, const ChannelModel& ch, double s,
                                 const QuadratureSettings& qs) {
    auto blocked = [&](double x) {
        const double xa = pow_alpha(x, ch.alpha);
        return s / (xa + s);
    };
    double total = 0.0;
    const CircleConfig cfg{g.d, g.D};
    if (g.d < g.D) {
        auto f = [&](double x) { return 2.0 * M_PI * x * blocked(x); };
        total += integrate(f, 0.0, g.D - g.d, qs);
    }
    if (g.d > 0.0) {
        auto f = [&](double x) {
            return geom::intersection_area_derivative(cfg, x) * blocked(x);
        };
        total += integrate(f, std::fabs(g.D - g.d), g.D + g.d, qs);
    }
    return total;
}

// shared by the uniform transform and its bound: region of Poisson mass m whose
// points damp the transform by `damped`/m on average gives
// m e^{-(m-damped)} (1-e^{-damped}) / ((1-e^{-m}) damped).
double poisson_mixture_lt(double m, double damped) {
    if (damped >= m) return 1.0;
    if (damped <= 0.0) return std::min(1.0, m * std::exp(-m) / -std::expm1(-m));
    const double value =
        m * std::exp(-(m - damped)) * -std::expm1(-damped) / (-std::expm1(-m) * damped);
    return std::min(1.0, value);
}

}  // namespace

double lt_interference_uniform(const SingleClusterGeometry& g, const ChannelModel& ch, double s,
                               const QuadratureSettings& qs) {
    g.validate();
    ch.validate();
    if (!(s > 0.0)) throw std::domain_error("lt_interference_uniform: s must be > 0");
    const double mu = disk_mass(g);
    const double blocked = g.lambda * uniform_mixing_complement(g, ch, s, qs);
    return poisson_mixture_lt(mu, std::max(mu - blocked, 0.0));
}

double lt_lb_closest(const SingleClusterGeometry& g, const ChannelModel& ch, double s,
                     double serving_r) {
    g.validate();
    ch.validate();
    if (!(s > 0.0)) throw std::domain_error("lt_lb_closest: s must be > 0");
    const double r = serving_r;
    const double slack = 1e-9 * (g.D + g.d);

    if (g.d <= g.D) {
        if (r < 0.0 || r > g.D + g.d + slack)
            throw std::domain_error("lt_lb_closest: serving_r beyond D+d");
        const double rin = std::sqrt(g.D * g.D - g.d * g.d);
        if (r < rin) {
            const double e = 0.5 * (kernel_F_diff(s, r, g.D + g.d, ch.alpha) +
                                    kernel_F_diff(s, r, rin, ch.alpha));
            return std::exp(-M_PI * g.lambda * e);
        }
        return std::exp(-0.5 * M_PI * g.lambda *
                        kernel_F_diff(s, std::min(r, g.D + g.d), g.D + g.d, ch.alpha));
    }

    if (r < g.d - g.D - slack || r > g.d + g.D + slack)
        throw std::domain_error("lt_lb_closest: serving_r outside [d-D, d+D]");
    const double rc = std::clamp(r, g.d - g.D, g.d + g.D);
    const double split = std::sqrt(g.d * g.d - g.D * g.D);
    const CircleConfig cfg{g.d, g.D};
    const double phi1 = geom::half_angle(cfg, rc);
    if (rc >= split)
        return std::exp(-g.lambda * phi1 * kernel_F_diff(s, rc, g.d + g.D, ch.alpha));
    const double phi0 = geom::tangent_angle(cfg);
    const double router = (g.d * g.d - g.D * g.D) / rc;  // R1 at the intersection angle
    const double e = phi0 * kernel_F_diff(s, rc, router, ch.alpha) +
                     phi1 * kernel_F_diff(s, router, g.d + g.D, ch.alpha);
    return std::exp(-g.lambda * e);
}

double lt_lb_uniform(const SingleClusterGeometry& g, const ChannelModel& ch, double s) {
    g.validate();
    ch.validate();
    if (!(s > 0.0)) throw std::domain_error("lt_lb_uniform: s must be > 0");
    if (g.d <= g.D) {
        const double rin = std::sqrt(g.D * g.D - g.d * g.d);
        const double m = g.lambda * M_PI * g.D * (g.D + g.d);
        const double damped = 0.5 * M_PI * g.lambda *
                              (kernel_F_complement(s, rin, ch.alpha) +
                               kernel_F_complement(s, g.D + g.d, ch.alpha));
        return poisson_mixture_lt(m, damped);
    }
    const double phi0 = geom::tangent_angle({g.d, g.D});
    const double m = 4.0 * g.lambda * g.d * g.D * phi0;
    const double damped = g.lambda * phi0 *
                          (kernel_F_complement(s, g.d + g.D, ch.alpha) -
                           kernel_F_complement(s, g.d - g.D, ch.alpha));
    return poisson_mixture_lt(m, damped);
}

namespace {

struct CoverageTerms {
    const SingleClusterGeometry& g;
    const ChannelModel& ch;
    double beta;
    const QuadratureSettings& qs;
    bool lower_bound;
};

double lt_closest_dispatch(const CoverageTerms& t, double s, double r) {
    return t.lower_bound ? lt_lb_closest(t.g, t.ch, s, r)
                         : lt_interference_closest(t.g, t.ch, s, r, t.qs.tightened());
}

double coverage_closest(const CoverageTerms& t) {
    const auto& g = t.g;
    const double alpha = t.ch.alpha;
    auto conditional = [&](double r) {
        const double s = t.beta * pow_alpha(r, alpha);
        return std::exp(-t.beta * t.ch.sigma2 * pow_alpha(r, alpha)) * lt_closest_dispatch(t, s, r);
    };

    double total = 0.0;
    if (g.d < g.D) {
        auto f = [&](double r) {
            return 2.0 * M_PI * g.lambda * r * std::exp(-g.lambda * M_PI * r * r) * conditional(r);
        };
        total += integrate(f, 0.0, g.D - g.d, t.qs);
    }
    if (g.d > 0.0) {
        const CircleConfig cfg{g.d, g.D};
        auto f = [&](double r) {
            const double area = geom::intersection_area(cfg, r);
            return g.lambda * geom::intersection_area_derivative(cfg, r) *
                   std::exp(-g.lambda * area) * conditional(r);
        };
        const double lo = std::fabs(g.D - g.d);
        const double hi = g.D + g.d;
        std::vector<double> cuts{lo, hi};
        if (g.d > g.D) cuts.insert(cuts.begin() + 1, std::sqrt(g.d * g.d - g.D * g.D));
        else if (t.lower_bound) {
            const double rin = std::sqrt(g.D * g.D - g.d * g.d);
            if (rin > lo && rin < hi) cuts.insert(cuts.begin() + 1, rin);
        }
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            total += integrate(f, cuts[i], cuts[i + 1], t.qs);
    }
    return total;
}

double coverage_uniform(const CoverageTerms& t) {
    const auto& g = t.g;
    const double alpha = t.ch.alpha;
    auto conditional = [&](double r) {
        const double s = t.beta * pow_alpha(r, alpha);
        const double lt = t.lower_bound ? lt_lb_uniform(t.g, t.ch, s)
                                        : lt_interference_uniform(t.g, t.ch, s, t.qs.tightened());
        return std::exp(-t.beta * t.ch.sigma2 * pow_alpha(r, alpha)) * lt;
    };

    double total = 0.0;
    if (g.d < g.D) {
        auto f = [&](double r) { return 2.0 * r / (g.D * g.D) * conditional(r); };
        total += integrate(f, 0.0, g.D - g.d, t.qs);
    }
    if (g.d > 0.0) {
        const CircleConfig cfg{g.d, g.D};
        auto f = [&](double r) {
            return geom::intersection_area_derivative(cfg, r) / (M_PI * g.D * g.D) *
                   conditional(r);
        };
        total += integrate(f, std::fabs(g.D - g.d), g.D + g.d, t.qs);
    }
    return -std::expm1(-disk_mass(g)) * total;
}

}  // namespace

double coverage(Strategy strat, const SingleClusterGeometry& g, const ChannelModel& ch,
                double beta, const QuadratureSettings& qs) {
    g.validate();
    ch.validate();
    if (!(beta > 0.0)) throw std::domain_error("coverage: beta must be > 0");
    CoverageTerms t{g, ch, beta, qs, false};
    return strat == Strategy::Closest ? coverage_closest(t) : coverage_uniform(t);
}

double coverage_lower_bound(Strategy strat, const SingleClusterGeometry& g,
                            const ChannelModel& ch, double beta, const QuadratureSettings& qs) {
    g.validate();
    ch.validate();
    if (!(beta > 0.0)) throw std::domain_error("coverage_lower_bound: beta must be > 0");
    CoverageTerms t{g, ch, beta, qs, true};
    return strat == Strategy::Closest ? coverage_closest(t) : coverage_uniform(t);
}

double spectral_efficiency(Strategy strat, const SingleClusterGeometry& g,
                           const ChannelModel& ch, const QuadratureSettings& qs) {
    g.validate();
    ch.validate();
    // tau = int_0^inf P_C(t)/(ln2 (t+1)) dt mapped onto (0,1) by t = v/(1-v)
    QuadratureSettings cov_qs = qs;
    cov_qs.abs_tol = std::max(qs.abs_tol, 1e-7);
    cov_qs.rel_tol = std::max(qs.rel_tol, 1e-5);
    auto f = [&](double v) {
        const double t = v / (1.0 - v);
        return coverage(strat, g, ch, std::max(t, 1e-12), cov_qs) / (M_LN2 * (1.0 - v));
    };
    QuadratureSettings outer = qs;
    outer.abs_tol = std::max(outer.abs_tol, 1e-8);
    outer.rel_tol = std::max(outer.rel_tol, 1e-6);
    return integrate(f, 0.0, 1.0, outer);
}

}  // namespace sgcov::single
