#pragma once

#include <ostream>

#include "sgcov/curve.hpp"
#include "sgcov/scenario.hpp"

namespace sgcov::cli {

inline constexpr const char* kVersion = "0.1.0";

// exit codes shared by the CLI and compare mode
enum ExitCode : int { kOk = 0, kCompareFailed = 1, kConfigError = 2, kQuadratureBudget = 3 };

// analytic curve (+ optional lower bound); flag-marks rows whose quadrature
// budget ran out and reports kQuadratureBudget through the return value
struct RunResult {
    CoverageCurve curve;
    int exit_code = kOk;
};

RunResult run_scenario(const Scenario& s, int threads = 0);

// Monte Carlo-only curve; requires sim settings
RunResult run_simulation(const Scenario& s, int threads = 0, bool dump_batches = false);

// analytic vs MC with |a - mc| <= max(atol, 3*stderr) per point;
// line-oriented key=value report written to `report`
struct CompareResult {
    CoverageCurve curve;
    int exit_code = kOk;
    int failures = 0;
};

CompareResult compare(const Scenario& s, double atol, int threads, std::ostream& report);

// spectral-efficiency sweep (single-cluster scenarios)
RunResult run_spectral_efficiency(const Scenario& s, int threads = 0);

// analytic contact CDF over the sweep grid interpreted as radii, plus the
// empirical CDF when sim settings are present
RunResult run_contact_cdf(const Scenario& s, int threads = 0);

}  // namespace sgcov::cli
