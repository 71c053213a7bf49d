#pragma once

#include "sgcov/quadrature.hpp"
#include "sgcov/single_cluster.hpp"

namespace sgcov::multi {

using single::ChannelModel;

// Matern cluster process: HPPP parents of intensity lambda_p, each dressed
// with an FHPPP of intensity lambda on a disk of radius D. Closed-access
// receivers sit at a Rayleigh(sigma_c) offset from their parent.
struct MultiClusterParams {
    double lambda_p;  // parent intensity (m^-2)
    double lambda;    // per-cluster offspring intensity (m^-2)
    double D;         // cluster disk radius (m)
    double sigma_c;   // closed-access receiver spread (m)

    void validate() const;
};

enum class AccessMode { ClosedClosest, ClosedUniform, OpenClosest };

// Rayleigh density of the receiver-to-parent distance.
double receiver_offset_pdf(const MultiClusterParams& p, double v);

// E[exp(-s I_inter)] over all clusters of the MCP.
double lt_inter_cluster(const MultiClusterParams& p, const ChannelModel& ch, double s,
                        const quad::QuadratureSettings& qs = {});

// truncation point of the semi-infinite parent integral, from the analytic
// bound lambda*g(s,u) <= lambda*pi*D^2*s*(u-D)^-alpha; recorded in CLI metadata
double inter_cluster_tail_umax(const MultiClusterParams& p, const ChannelModel& ch, double s,
                               const quad::QuadratureSettings& qs = {});

// Rayleigh deconditioning cutoff v_max = sigma_c*sqrt(2 ln(1/tail_tol)).
double receiver_offset_vmax(const MultiClusterParams& p, const quad::QuadratureSettings& qs = {});

// closed-access coverage, either selection strategy inside the own cluster
double coverage_closed_access(AccessMode mode, const MultiClusterParams& p,
                              const ChannelModel& ch, double beta,
                              const quad::QuadratureSettings& qs = {});

// contact distance (open access): CDF/PDF of the distance to the nearest
// transmitter of the whole MCP
double contact_cdf(const MultiClusterParams& p, double r, const quad::QuadratureSettings& qs = {});
double contact_pdf(const MultiClusterParams& p, double r, const quad::QuadratureSettings& qs = {});

// integration cutoff where 1 - contact_cdf drops below tail_tol
double contact_rmax(const MultiClusterParams& p, const quad::QuadratureSettings& qs = {});

// E[exp(-s I_total) | R_t] for the open-access receiver.
double lt_total_interference(const MultiClusterParams& p, const ChannelModel& ch, double s,
                             double contact_r, const quad::QuadratureSettings& qs = {});

double coverage_open_access(const MultiClusterParams& p, const ChannelModel& ch, double beta,
                            const quad::QuadratureSettings& qs = {});

}  // namespace sgcov::multi
