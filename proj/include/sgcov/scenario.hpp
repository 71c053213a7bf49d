#pragma once

#include <optional>
#include <string>

#include "sgcov/montecarlo.hpp"
#include "sgcov/multi_cluster.hpp"
#include "sgcov/quadrature.hpp"
#include "sgcov/single_cluster.hpp"

namespace sgcov::cli {

double db_to_linear(double db);
double linear_to_db(double lin);

enum class SweepAxis { BetaDb, Delta, DeltaC, Alpha };

struct SweepSpec {
    SweepAxis axis = SweepAxis::BetaDb;
    double min = -20.0;
    double max = 20.0;
    int n_points = 41;

    void validate() const;
    std::vector<double> values() const;
};

struct Scenario {
    std::string name;
    mc::Scenario::Kind kind = mc::Scenario::Kind::SingleCluster;
    single::Strategy strategy = single::Strategy::Closest;
    single::SingleClusterGeometry geometry{0.01, 15.0, 10.0};
    multi::MultiClusterParams params{4e-4, 0.01, 15.0, 10.0};
    single::ChannelModel channel{4.0, 1e-4};
    double beta_db = 0.0;  // fixed threshold for non-beta sweeps
    SweepSpec sweep;
    bool lower_bound = false;
    quad::QuadratureSettings quadrature;
    std::optional<mc::SimConfig> sim;
    // negative-control knob: the simulator runs with this alpha instead
    std::optional<double> mc_alpha_override;

    void validate() const;
    // scenario at a concrete sweep value
    Scenario at(double axis_value) const;
    mc::Scenario mc_scenario() const;
    double beta_linear() const { return db_to_linear(beta_db); }
};

// Resolve `path` against the filesystem, then against SGCOV_SCENARIO_DIR or
// the fallback directory (name or name.json).
std::string resolve_scenario_path(const std::string& path, const std::string& fallback_dir);
Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& json_text);

const char* axis_name(SweepAxis a);

}  // namespace sgcov::cli
