#include <cmath>

#include "doctest.h"
#include "sgcov/montecarlo.hpp"

using namespace sgcov;
using mc::RngStream;
using mc::Scenario;
using mc::SimConfig;

namespace {
const multi::MultiClusterParams kP{4e-4, 0.01, 15.0, 10.0};
const single::ChannelModel kCh{4.0, 1e-4};
}  // namespace

TEST_CASE("FHPPP count and empty-pattern statistics") {
    RngStream rng(44);
    const long n = 100000;
    const double mu = 0.01 * M_PI * 225.0;
    long total = 0, empty = 0;
    for (long i = 0; i < n; ++i) {
        auto pat = mc::sample_fhppp(0.01, {10.0, 0.0}, 15.0, rng);
        total += pat.pts.size();
        if (pat.pts.empty()) ++empty;
    }
    const double mean = static_cast<double>(total) / n;
    const double se_mean = std::sqrt(mu / n);
    CHECK(std::fabs(mean - mu) <= 3.5 * se_mean);
    const double pe = std::exp(-mu);
    const double se_e = std::sqrt(pe * (1 - pe) / n);
    CHECK(std::fabs(static_cast<double>(empty) / n - pe) <= 3.5 * se_e + 1e-5);
}

TEST_CASE("FHPPP radial law r^2/D^2 about the cluster center") {
    RngStream rng(45);
    const long n = 40000;
    long within = 0, pts = 0;
    const double rq = 15.0 * std::sqrt(0.5);  // median radius
    for (long i = 0; i < n; ++i) {
        auto pat = mc::sample_fhppp(0.01, {0.0, 0.0}, 15.0, rng);
        for (auto& p : pat.pts) {
            ++pts;
            if (p.x * p.x + p.y * p.y <= rq * rq) ++within;
        }
    }
    const double frac = static_cast<double>(within) / pts;
    CHECK(std::fabs(frac - 0.5) <= 3.5 * std::sqrt(0.25 / pts));
}

TEST_CASE("MCP intensity within the retained window") {
    RngStream rng(46);
    const long n = 4000;
    const double retain = 60.0;
    long total = 0;
    for (long i = 0; i < n; ++i) total += mc::sample_mcp(kP, retain, kP.D, rng).pts.size();
    const double expect = kP.lambda_p * kP.lambda * M_PI * kP.D * kP.D * M_PI * retain * retain;
    const double mean = static_cast<double>(total) / n;
    CHECK(std::fabs(mean - expect) <= 4.0 * std::sqrt(expect * 2.0 / n));
}

TEST_CASE("single-point pattern SINR and unit-fading hand check") {
    Scenario scn;
    scn.kind = Scenario::Kind::SingleCluster;
    scn.geom = {0.01, 15.0, 10.0};
    scn.channel = kCh;
    scn.strategy = single::Strategy::Closest;
    RngStream rng(3);
    mc::PointPattern one;
    one.pts = {{3.0, 4.0}};  // r = 5
    const auto s1 = mc::realize_sinr_single(scn, one, rng, true);
    CHECK(s1.has_server);
    CHECK(s1.serving_distance == doctest::Approx(5.0));
    CHECK(s1.interference == 0.0);
    CHECK(s1.sinr == doctest::Approx(std::pow(5.0, -4.0) / kCh.sigma2).epsilon(1e-12));

    mc::PointPattern two;
    two.pts = {{3.0, 4.0}, {0.0, 10.0}};
    const auto s2 = mc::realize_sinr_single(scn, two, rng, true);
    const double expect = std::pow(5.0, -4.0) / (kCh.sigma2 + std::pow(10.0, -4.0));
    CHECK(s2.sinr == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("estimate_coverage at tiny beta approaches the occupancy probability") {
    Scenario scn;
    scn.kind = Scenario::Kind::SingleCluster;
    scn.geom = {0.01, 15.0, 10.0};
    scn.channel = kCh;
    scn.strategy = single::Strategy::Closest;
    SimConfig sim;
    sim.n_trials = 100000;
    sim.seed = 5;
    const auto est = mc::estimate_coverage(scn, 1e-9, sim);
    const double expect = -std::expm1(-0.01 * M_PI * 225.0);
    CHECK(std::fabs(est.mean - expect) <= 3.5 * est.std_error + 1e-4);
}

TEST_CASE("estimate_lt at s -> 0 returns 1") {
    Scenario scn;
    scn.kind = Scenario::Kind::SingleCluster;
    scn.geom = {0.01, 15.0, 10.0};
    scn.channel = kCh;
    scn.strategy = single::Strategy::Uniform;
    mc::LtTarget t;
    t.kind = mc::LtTarget::Kind::SingleUniform;
    SimConfig sim;
    sim.n_trials = 20000;
    sim.seed = 6;
    const auto est = mc::estimate_lt(scn, t, 1e-15, sim);
    CHECK(est.mean == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(est.std_error <= 1e-9);
}

TEST_CASE("conditional estimator reports acceptance and rejects starved bands") {
    Scenario scn;
    scn.kind = Scenario::Kind::SingleCluster;
    scn.geom = {0.01, 15.0, 10.0};
    scn.channel = kCh;
    scn.strategy = single::Strategy::Closest;
    mc::LtTarget t;
    t.kind = mc::LtTarget::Kind::SingleClosestGivenR;
    t.conditioned_r = 1000.0;  // unreachable band
    SimConfig sim;
    sim.n_trials = 5000;
    sim.seed = 7;
    CHECK_THROWS_AS(mc::estimate_lt(scn, t, 1.0, sim), std::runtime_error);
    t.conditioned_r = 5.0;
    t.band_fraction = 0.05;
    sim.n_trials = 50000;
    const auto est = mc::estimate_lt(scn, t, 1.0, sim);
    CHECK(est.acceptance_rate() > 0.0);
    CHECK(est.acceptance_rate() < 1.0);
    CHECK(est.accepted >= 100);
}

TEST_CASE("identical seeds give bit-identical results for any thread count") {
    Scenario scn;
    scn.kind = Scenario::Kind::MultiClusterClosed;
    scn.params = kP;
    scn.channel = kCh;
    scn.strategy = single::Strategy::Closest;
    SimConfig a;
    a.n_trials = 20000;
    a.seed = 99;
    a.batch_size = 1024;
    a.threads = 1;
    SimConfig b = a;
    b.threads = 4;
    const auto ea = mc::estimate_coverage(scn, 1.0, a);
    const auto eb = mc::estimate_coverage(scn, 1.0, b);
    CHECK(ea.mean == eb.mean);
    CHECK(ea.std_error == eb.std_error);
    const auto sa = mc::estimate_spectral_efficiency(scn, a);
    const auto sb = mc::estimate_spectral_efficiency(scn, b);
    CHECK(sa.mean == sb.mean);
    CHECK(sa.std_error == sb.std_error);
}

TEST_CASE("confidence interval shrinks like 1/sqrt(n)") {
    Scenario scn;
    scn.kind = Scenario::Kind::SingleCluster;
    scn.geom = {0.01, 15.0, 10.0};
    scn.channel = kCh;
    scn.strategy = single::Strategy::Closest;
    SimConfig sim;
    sim.n_trials = 40000;
    sim.seed = 8;
    const auto e1 = mc::estimate_coverage(scn, 1.0, sim);
    sim.n_trials = 160000;
    const auto e2 = mc::estimate_coverage(scn, 1.0, sim);
    const double ratio = e1.std_error / e2.std_error;
    CHECK(ratio > 1.6);
    CHECK(ratio < 2.4);
}

TEST_CASE("truncation validation enforces the bias bound") {
    SimConfig sim;
    sim.n_trials = 1000;
    sim.seed = 1;
    sim.compensate_far_field = false;
    sim.interference_truncation_radius = 100.0;
    CHECK_THROWS_AS(sim.validate_for_mcp(kP, 3.0, kCh.sigma2), std::invalid_argument);
    sim.compensate_far_field = true;
    sim.interference_truncation_radius = 30.0;  // residual fluctuation too large
    CHECK_THROWS_AS(sim.validate_for_mcp(kP, 3.0, kCh.sigma2), std::invalid_argument);
    sim.interference_truncation_radius = 250.0;
    CHECK_NOTHROW(sim.validate_for_mcp(kP, 3.0, kCh.sigma2));
    CHECK(mc::truncation_bias_bound(kP, 4.0, 250.0) ==
          doctest::Approx(2.0 * M_PI * kP.lambda_p * kP.lambda * M_PI * 225.0 *
                          std::pow(250.0, -2.0) / 2.0));
}

TEST_CASE("per-batch summaries partition the trials") {
    Scenario scn;
    scn.kind = Scenario::Kind::SingleCluster;
    scn.geom = {0.01, 15.0, 10.0};
    scn.channel = kCh;
    scn.strategy = single::Strategy::Closest;
    SimConfig sim;
    sim.n_trials = 10000;
    sim.seed = 12;
    sim.batch_size = 3000;
    const auto batches = mc::coverage_batches(scn, 1.0, sim);
    CHECK(batches.size() == 4);
    long total = 0;
    for (const auto& b : batches) total += b.n;
    CHECK(total == sim.n_trials);
}
