#include "sgcov/multi_cluster.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sgcov/geometry.hpp"
#include "sgcov/special.hpp"

namespace sgcov::multi {

using geom::CircleConfig;
using quad::integrate;
using quad::integrate_tail_bounded;
using quad::kernel_F;
using quad::kernel_F_diff;
using quad::pow_alpha;
using quad::QuadratureSettings;
using single::SingleClusterGeometry;
using single::Strategy;

void MultiClusterParams::validate() const {
    if (!(lambda_p > 0.0)) throw std::domain_error("MultiClusterParams: lambda_p must be > 0");
    if (!(lambda > 0.0)) throw std::domain_error("MultiClusterParams: lambda must be > 0");
    if (!(D > 0.0)) throw std::domain_error("MultiClusterParams: D must be > 0");
    if (!(sigma_c > 0.0)) throw std::domain_error("MultiClusterParams: sigma_c must be > 0");
}

double receiver_offset_pdf(const MultiClusterParams& p, double v) {
    p.validate();
    if (!(v >= 0.0)) throw std::domain_error("receiver_offset_pdf: v must be >= 0");
    const double s2 = p.sigma_c * p.sigma_c;
    return v / s2 * std::exp(-v * v / (2.0 * s2));
}

double receiver_offset_vmax(const MultiClusterParams& p, const QuadratureSettings& qs) {
    p.validate();
    return p.sigma_c * std::sqrt(2.0 * std::log(1.0 / qs.tail_tol));
}

namespace {

// f(s,u): full-plane angular integral for a cluster whose disk covers the origin
double cluster_exponent_near(const MultiClusterParams& p, double alpha, double s, double u,
                             const QuadratureSettings& qs) {
    if (u == 0.0) return M_PI * kernel_F(s, p.D, alpha);
    const CircleConfig cfg{u, p.D};
    auto f = [&](double th) { return kernel_F(s, geom::chord_radii(cfg, th).r_far, alpha); };
    return integrate(f, 0.0, M_PI, qs);
}

// g(s,u): tangent-cone angular integral for a cluster disk not covering the origin
double cluster_exponent_far(const MultiClusterParams& p, double alpha, double s, double u,
                            const QuadratureSettings& qs) {
    const CircleConfig cfg{u, p.D};
    const double phi2 = geom::tangent_angle(cfg);
    auto f = [&](double th) {
        const auto cr = geom::chord_radii(cfg, th);
        return kernel_F_diff(s, std::max(0.0, cr.r_near), cr.r_far, alpha);
    };
    return integrate(f, 0.0, phi2, qs);
}

// int_U^inf of the tail integrand is bounded by
// lambda*pi*D^2*s * [(U-D)^{2-a}/(a-2) + D (U-D)^{1-a}/(a-1)]
double tail_remainder_bound(const MultiClusterParams& p, double alpha, double s, double U) {
    const double V = U - p.D;
    if (V <= 0.0) return std::numeric_limits<double>::infinity();
    const double c = p.lambda * M_PI * p.D * p.D * s;
    return c * (std::pow(V, 2.0 - alpha) / (alpha - 2.0) +
                p.D * std::pow(V, 1.0 - alpha) / (alpha - 1.0));
}

}  // namespace

double inter_cluster_tail_umax(const MultiClusterParams& p, const ChannelModel& ch, double s,
                               const QuadratureSettings& qs) {
    p.validate();
    ch.validate();
    double u = 2.0 * p.D;
    while (tail_remainder_bound(p, ch.alpha, s, u) > qs.tail_tol && u < 1e18) u *= 2.0;
    return u;
}

double lt_inter_cluster(const MultiClusterParams& p, const ChannelModel& ch, double s,
                        const QuadratureSettings& qs) {
    p.validate();
    ch.validate();
    if (!(s > 0.0)) throw std::domain_error("lt_inter_cluster: s must be > 0");
    const QuadratureSettings inner = qs.tightened();

    auto near = [&](double u) {
        return -std::expm1(-p.lambda * cluster_exponent_near(p, ch.alpha, s, u, inner)) * u;
    };
    double total = integrate(near, 0.0, p.D, qs);

    auto far = [&](double u) {
        return -std::expm1(-p.lambda * cluster_exponent_far(p, ch.alpha, s, u, inner)) * u;
    };
    auto bound = [&](double U) { return tail_remainder_bound(p, ch.alpha, s, U); };
    total += integrate_tail_bounded(far, p.D, qs, bound);

    return std::exp(-2.0 * M_PI * p.lambda_p * total);
}

double contact_cdf(const MultiClusterParams& p, double r, const QuadratureSettings& qs) {
    p.validate();
    if (!(r >= 0.0)) throw std::domain_error("contact_cdf: r must be >= 0");
    if (r == 0.0) return 0.0;
    const double lam = p.lambda;
    double T;
    auto lens = [&](double u) {
        return -std::expm1(-lam * geom::intersection_area({u, p.D}, r)) * u;
    };
    if (r < p.D) {
        T = -std::expm1(-lam * M_PI * r * r) * 0.5 * (p.D - r) * (p.D - r);
        T += integrate(lens, p.D - r, p.D + r, qs);
    } else {
        T = -std::expm1(-lam * M_PI * p.D * p.D) * 0.5 * (r - p.D) * (r - p.D);
        T += integrate(lens, r - p.D, p.D + r, qs);
    }
    return -std::expm1(-2.0 * M_PI * p.lambda_p * T);
}

double contact_pdf(const MultiClusterParams& p, double r, const QuadratureSettings& qs) {
    p.validate();
    if (!(r >= 0.0)) throw std::domain_error("contact_pdf: r must be >= 0");
    if (r == 0.0) return 0.0;
    const double lam = p.lambda;
    auto lens_deriv = [&](double u) {
        const CircleConfig cfg{u, p.D};
        return lam * geom::intersection_area_derivative(cfg, r) *
               std::exp(-lam * geom::intersection_area(cfg, r)) * u;
    };
    double A;
    if (r < p.D) {
        A = M_PI * lam * r * std::exp(-lam * M_PI * r * r) * (p.D - r) * (p.D - r);
        A += integrate(lens_deriv, p.D - r, p.D + r, qs);
    } else {
        A = integrate(lens_deriv, r - p.D, p.D + r, qs);
    }
    return 2.0 * M_PI * p.lambda_p * A * (1.0 - contact_cdf(p, r, qs));
}

double contact_rmax(const MultiClusterParams& p, const QuadratureSettings& qs) {
    p.validate();
    const double mass = -std::expm1(-p.lambda * M_PI * p.D * p.D);
    return p.D + std::sqrt(std::log(1.0 / qs.tail_tol) / (M_PI * p.lambda_p * mass));
}

namespace {

// E[exp(-s I_t); R_t in dr]/dr: radial zones over parent distance with every
// cluster factor tilted by its void probability exp(-lambda |C_u(r)|) and the
// density term averaging over the serving cluster. Derived by
// differentiating the joint void/damping functional; reduces to the
// contact-distance PDF at s -> 0.
double contact_density_lt(const MultiClusterParams& p, const ChannelModel& ch, double s,
                          double r, const QuadratureSettings& qs) {
    const double lam = p.lambda;
    const QuadratureSettings inner = qs.tightened();
    // the u-integrals feed an exponential / normalized ratio; modest relative
    // accuracy suffices and saves deep refinement at the sqrt lens edges
    QuadratureSettings uq = qs;
    uq.rel_tol = std::max(qs.rel_tol, 1e-6);
    const SingleClusterGeometry proto{lam, p.D, 0.0};

    // per-cluster Laplace factor: single-cluster transform at d = u, serving r
    auto psi = [&](double u) {
        SingleClusterGeometry g = proto;
        g.d = u;
        return single::lt_interference_closest(g, ch, s, r, inner);
    };
    auto void_mass = [&](double u) {
        return geom::intersection_area({u, p.D}, r);
    };

    // exponent W(r,s) = int (1 - e^{-lam |C_u|} Psi(u)) u du
    double W = 0.0;
    auto zone = [&](double u) { return (1.0 - std::exp(-lam * void_mass(u)) * psi(u)) * u; };
    const double mid = std::sqrt(p.D * p.D + r * r);
    std::vector<double> cuts;
    if (r < p.D) cuts = {0.0, p.D - r, mid, p.D + r};
    else cuts = {r - p.D, mid, p.D + r};
    if (r >= p.D)
        W += -std::expm1(-lam * M_PI * p.D * p.D) * 0.5 * (r - p.D) * (r - p.D);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        W += integrate(zone, cuts[i], cuts[i + 1], uq);
    auto far = [&](double u) {
        return -std::expm1(-lam * cluster_exponent_far(p, ch.alpha, s, u, inner)) * u;
    };
    auto bound = [&](double U) { return tail_remainder_bound(p, ch.alpha, s, U); };
    W += integrate_tail_bounded(far, p.D + r, uq, bound);

    // serving-cluster density term: arc-weighted average over parent radii
    double dens = 0.0;
    if (r < p.D) {
        auto fa = [&](double u) { return psi(u) * u; };
        dens += 2.0 * M_PI * r * std::exp(-lam * M_PI * r * r) *
                integrate(fa, 0.0, p.D - r, uq);
    }
    {
        auto fb = [&](double u) {
            const CircleConfig cfg{u, p.D};
            return geom::intersection_area_derivative(cfg, r) *
                   std::exp(-lam * geom::intersection_area(cfg, r)) * psi(u) * u;
        };
        const double lo = std::fabs(p.D - r);
        dens += integrate(fb, lo, mid, uq);
        dens += integrate(fb, mid, p.D + r, uq);
    }
    return 2.0 * M_PI * p.lambda_p * lam * dens * std::exp(-2.0 * M_PI * p.lambda_p * W);
}

}  // namespace

double lt_total_interference(const MultiClusterParams& p, const ChannelModel& ch, double s,
                             double contact_r, const QuadratureSettings& qs) {
    p.validate();
    ch.validate();
    if (!(s > 0.0)) throw std::domain_error("lt_total_interference: s must be > 0");
    if (!(contact_r > 0.0)) throw std::domain_error("lt_total_interference: contact_r must be > 0");
    const double joint = contact_density_lt(p, ch, s, contact_r, qs);
    const double pdf = contact_pdf(p, contact_r, qs);
    if (pdf <= 0.0) throw std::domain_error("lt_total_interference: contact_r outside support");
    return std::min(1.0, joint / pdf);
}

double coverage_open_access(const MultiClusterParams& p, const ChannelModel& ch, double beta,
                            const QuadratureSettings& qs) {
    p.validate();
    ch.validate();
    if (!(beta > 0.0)) throw std::domain_error("coverage_open_access: beta must be > 0");
    auto f = [&](double r) {
        const double s = std::max(beta * pow_alpha(r, ch.alpha), 1e-300);
        return std::exp(-beta * ch.sigma2 * pow_alpha(r, ch.alpha)) *
               contact_density_lt(p, ch, s, r, qs);
    };
    const double mass = -std::expm1(-p.lambda * M_PI * p.D * p.D);
    auto bound = [&](double U) {
        if (U <= p.D) return 1.0;
        return std::exp(-M_PI * p.lambda_p * mass * (U - p.D) * (U - p.D));
    };
    double total = integrate(f, 0.0, p.D, qs);
    total += integrate_tail_bounded(f, p.D, qs, bound);
    return std::min(1.0, total);
}

namespace {

struct ClosedTerms {
    const MultiClusterParams& p;
    const ChannelModel& ch;
    double beta;
    const QuadratureSettings& qs;
    bool uniform;
};

// inner deconditioning over the receiver offset v at fixed serving distance r;
// evaluating v innermost lets the expensive inter-cluster transform be
// computed once per outer node
double offset_average(const ClosedTerms& t, double r, double s) {
    const auto& p = t.p;
    const QuadratureSettings inner = t.qs.tightened();
    QuadratureSettings vq = t.qs;
    vq.rel_tol = std::max(t.qs.rel_tol, 1e-6);
    const double vmax = receiver_offset_vmax(p, t.qs);
    const SingleClusterGeometry proto{p.lambda, p.D, 0.0};

    auto lt_intra = [&](double v) {
        SingleClusterGeometry g = proto;
        g.d = v;
        return t.uniform ? single::lt_interference_uniform(g, t.ch, s, inner)
                         : single::lt_interference_closest(g, t.ch, s, r, inner);
    };

    double total = 0.0;
    if (r < p.D) {
        // ball fully inside the cluster disk: v < D - r
        const double w = t.uniform ? 2.0 * r / (p.D * p.D)
                                   : 2.0 * M_PI * p.lambda * r *
                                         std::exp(-p.lambda * M_PI * r * r);
        auto f = [&](double v) { return lt_intra(v) * receiver_offset_pdf(p, v); };
        total += w * integrate(f, 0.0, std::min(p.D - r, vmax), vq);
    }
    const double vlo = std::fabs(p.D - r);
    const double vhi = std::min(p.D + r, vmax);
    if (vlo < vhi) {
        auto f = [&](double v) {
            const CircleConfig cfg{v, p.D};
            const double darea = geom::intersection_area_derivative(cfg, r);
            const double w = t.uniform
                                 ? darea / (M_PI * p.D * p.D)
                                 : p.lambda * darea *
                                       std::exp(-p.lambda * geom::intersection_area(cfg, r));
            return w * lt_intra(v) * receiver_offset_pdf(p, v);
        };
        // intra-cluster branch boundary for closest selection
        const double mid = std::sqrt(p.D * p.D + r * r);
        std::vector<double> cuts{vlo, vhi};
        if (!t.uniform && mid > vlo && mid < vhi) cuts.insert(cuts.begin() + 1, mid);
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            total += integrate(f, cuts[i], cuts[i + 1], vq);
    }
    return total;
}

}  // namespace

double coverage_closed_access(AccessMode mode, const MultiClusterParams& p,
                              const ChannelModel& ch, double beta,
                              const QuadratureSettings& qs) {
    p.validate();
    ch.validate();
    if (!(beta > 0.0)) throw std::domain_error("coverage_closed_access: beta must be > 0");
    if (mode == AccessMode::OpenClosest)
        throw std::invalid_argument("coverage_closed_access: open access not handled here");

    ClosedTerms t{p, ch, beta, qs, mode == AccessMode::ClosedUniform};
    const double vmax = receiver_offset_vmax(p, qs);
    const double rmax = vmax + p.D;

    auto f = [&](double r) {
        const double s = std::max(beta * pow_alpha(r, ch.alpha), 1e-300);
        const double w = std::exp(-beta * ch.sigma2 * pow_alpha(r, ch.alpha)) *
                         lt_inter_cluster(p, ch, s, qs.tightened());
        return w * offset_average(t, r, s);
    };

    std::vector<double> cuts{0.0, p.D, 2.0 * p.D, rmax};
    if (vmax - p.D > 0.0 && vmax - p.D < rmax) cuts.push_back(vmax - p.D);
    const double cross = std::sqrt(std::max(0.0, vmax * vmax - p.D * p.D));
    if (cross > 0.0 && cross < rmax) cuts.push_back(cross);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        if (cuts[i + 1] > cuts[i] && cuts[i] < rmax)
            total += integrate(f, cuts[i], std::min(cuts[i + 1], rmax), qs);

    if (mode == AccessMode::ClosedUniform)
        total *= -std::expm1(-p.lambda * M_PI * p.D * p.D);
    return std::min(1.0, total);
}

}  // namespace sgcov::multi
