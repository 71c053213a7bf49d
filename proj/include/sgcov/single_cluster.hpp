#pragma once

#include "sgcov/quadrature.hpp"

namespace sgcov::single {

// FHPPP of transmitters on a disk of radius D whose center is at distance d
// from the reference receiver.
struct SingleClusterGeometry {
    double lambda;  // intensity (m^-2), > 0
    double D;       // disk radius (m), > 0
    double d;       // receiver-to-center distance (m), >= 0

    void validate() const;
};

struct ChannelModel {
    double alpha;   // path loss exponent, > 2
    double sigma2;  // noise power (transmit-power units), >= 0

    void validate() const;
};

enum class Strategy { Closest, Uniform };

// P(R_c > r | n > 0) for the closest-selection serving distance.
double serving_ccdf_closest(const SingleClusterGeometry& g, double r);
// density of R_c conditioned on n > 0; normalized over [max(0,d-D), d+D]
double serving_pdf_closest(const SingleClusterGeometry& g, double r);

// distance law of a uniformly selected transmitter
double serving_cdf_uniform(const SingleClusterGeometry& g, double r);
double serving_pdf_uniform(const SingleClusterGeometry& g, double r);

// E[exp(-s I) | R_c] under closest selection (three-branch form).
double lt_interference_closest(const SingleClusterGeometry& g, const ChannelModel& ch, double s,
                               double serving_r, const quad::QuadratureSettings& qs = {});

// E[exp(-s I) | n > 0] under uniform selection; independent of the serving distance.
double lt_interference_uniform(const SingleClusterGeometry& g, const ChannelModel& ch, double s,
                               const quad::QuadratureSettings& qs = {});

// closed-form lower bounds on the two transforms above
double lt_lb_closest(const SingleClusterGeometry& g, const ChannelModel& ch, double s,
                     double serving_r);
double lt_lb_uniform(const SingleClusterGeometry& g, const ChannelModel& ch, double s);

// P(SINR > beta), including the zero-coverage event of an empty disk.
double coverage(Strategy strat, const SingleClusterGeometry& g, const ChannelModel& ch,
                double beta, const quad::QuadratureSettings& qs = {});
double coverage_lower_bound(Strategy strat, const SingleClusterGeometry& g,
                            const ChannelModel& ch, double beta,
                            const quad::QuadratureSettings& qs = {});

// E[log2(1+SINR)] in bits/channel use, integrated from the coverage curve.
double spectral_efficiency(Strategy strat, const SingleClusterGeometry& g,
                           const ChannelModel& ch, const quad::QuadratureSettings& qs = {});

}  // namespace sgcov::single
