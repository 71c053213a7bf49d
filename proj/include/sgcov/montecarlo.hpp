#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sgcov/multi_cluster.hpp"
#include "sgcov/rng.hpp"
#include "sgcov/single_cluster.hpp"

namespace sgcov::mc {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct PointPattern {
    std::vector<Vec2> pts;
};

struct SimConfig {
    long n_trials = 0;
    uint64_t seed = 1;
    long batch_size = 16384;
    double interference_truncation_radius = 250.0;  // MCP only
    double window_dilation = -1.0;                  // parent sampling margin; -1 -> D
    bool compensate_far_field = true;
    int threads = 0;  // 0 -> hardware concurrency
    bool unit_fading = false;  // test hook: h = 1 instead of exp(1)

    void validate() const;
    // MCP-specific truncation checks (see truncation_bias_bound)
    void validate_for_mcp(const multi::MultiClusterParams& p, double alpha, double sigma2) const;
};

// expected interference omitted beyond radius R
double truncation_bias_bound(const multi::MultiClusterParams& p, double alpha, double R);
// residual coverage-scale effect of the omitted fluctuation when the omitted
// mean is added back deterministically
double residual_fluctuation_bound(const multi::MultiClusterParams& p, double alpha, double sigma2,
                                  double R);
// mean far-field interference added back when compensation is on
double far_field_mean(const multi::MultiClusterParams& p, double alpha, double R);

struct EstimateWithCI {
    double mean = 0.0;
    double std_error = 0.0;
    long n = 0;         // trials run
    long accepted = 0;  // trials contributing to the estimate
    uint64_t seed = 0;

    double acceptance_rate() const { return n > 0 ? static_cast<double>(accepted) / n : 0.0; }
};

// scenario descriptor shared by the estimators
struct Scenario {
    enum class Kind { SingleCluster, MultiClusterClosed, MultiClusterOpen };
    Kind kind = Kind::SingleCluster;
    single::SingleClusterGeometry geom{0.01, 15.0, 10.0};
    multi::MultiClusterParams params{4e-4, 0.01, 15.0, 10.0};
    single::ChannelModel channel{4.0, 1e-4};
    single::Strategy strategy = single::Strategy::Closest;  // for closed access too
};

// conditioning target for the Laplace-transform estimators
struct LtTarget {
    enum class Kind {
        SingleClosestGivenR,   // E[e^-sI | n>0, R_c near r]
        SingleUniform,         // E[e^-sI | n>0]
        InterCluster,          // MCP inter-cluster interference at the origin
        TotalGivenContact,     // E[e^-sI_t | R_t near r]
    };
    Kind kind = Kind::SingleUniform;
    double conditioned_r = 0.0;
    double band_fraction = 0.01;  // acceptance band, fraction of conditioned_r
};

PointPattern sample_fhppp(double lambda, Vec2 center, double D, RngStream& rng);

// parents on a disk of radius retain_radius + dilation; offspring kept within
// retain_radius of the origin
PointPattern sample_mcp(const multi::MultiClusterParams& p, double retain_radius, double dilation,
                        RngStream& rng);

struct SinrSample {
    bool has_server = false;
    double sinr = 0.0;
    double serving_distance = 0.0;
    double interference = 0.0;
};

SinrSample realize_sinr_single(const Scenario& scn, const PointPattern& pat, RngStream& rng,
                               bool unit_fading = false);

EstimateWithCI estimate_coverage(const Scenario& scn, double beta, const SimConfig& sim);
EstimateWithCI estimate_lt(const Scenario& scn, const LtTarget& target, double s,
                           const SimConfig& sim);
EstimateWithCI estimate_spectral_efficiency(const Scenario& scn, const SimConfig& sim);

std::vector<EstimateWithCI> estimate_contact_cdf(const multi::MultiClusterParams& p,
                                                 const std::vector<double>& r_grid,
                                                 const SimConfig& sim);

struct BatchSummary {
    long index = 0;
    long n = 0;
    long accepted = 0;
    double mean = 0.0;
    double std_error = 0.0;
};

// per-batch summaries backing the CLI dump flag
std::vector<BatchSummary> coverage_batches(const Scenario& scn, double beta, const SimConfig& sim);

}  // namespace sgcov::mc
