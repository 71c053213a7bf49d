#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sgcov/runner.hpp"

namespace {

using namespace sgcov;

struct CommonOpts {
    std::string config;
    std::string out;
    std::optional<uint64_t> seed;
    std::optional<long> trials;
    double atol = 0.005;
    int threads = 0;
    bool dump_batches = false;
};

cli::Scenario load(const CommonOpts& o) {
    const std::string path = cli::resolve_scenario_path(o.config, "scenarios");
    cli::Scenario s = cli::load_scenario(path);
    if (o.seed && s.sim) s.sim->seed = *o.seed;
    if (o.trials && s.sim) s.sim->n_trials = *o.trials;
    if (o.seed && !s.sim) {
        mc::SimConfig cfg;
        cfg.seed = *o.seed;
        cfg.n_trials = o.trials.value_or(100000L);
        s.sim = cfg;
    }
    return s;
}

int emit(const cli::CoverageCurve& curve, const std::string& out) {
    if (out.empty()) {
        cli::write_csv(curve, std::cout);
        return 0;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) {
        std::cerr << "cannot open output file: " << out << "\n";
        return cli::kConfigError;
    }
    cli::write_csv(curve, f);
    return 0;
}

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config, "scenario config (path or bundled name)")->required();
    cmd->add_option("--out", o.out, "output CSV path (default: stdout)");
    cmd->add_option("--seed", o.seed, "override simulation seed");
    cmd->add_option("--trials", o.trials, "override simulation trial count");
    cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coverage analytics for single- and multi-cluster wireless networks"};
    app.require_subcommand(1);

    CommonOpts cov, se, cc, sim, cmp;
    auto* cov_cmd = app.add_subcommand("coverage", "analytic coverage sweep");
    add_common(cov_cmd, cov);
    auto* se_cmd = app.add_subcommand("spectral-efficiency", "spectral-efficiency sweep");
    add_common(se_cmd, se);
    auto* cc_cmd = app.add_subcommand("contact-cdf", "contact-distance CDF");
    add_common(cc_cmd, cc);
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo sweep");
    add_common(sim_cmd, sim);
    sim_cmd->add_flag("--dump-batches", sim.dump_batches, "emit per-batch summary rows");
    auto* cmp_cmd = app.add_subcommand("compare", "analytic vs Monte Carlo check");
    add_common(cmp_cmd, cmp);
    cmp_cmd->add_option("--atol", cmp.atol, "absolute tolerance floor");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cov_cmd->parsed()) {
            const auto r = cli::run_scenario(load(cov), cov.threads);
            const int ec = emit(r.curve, cov.out);
            return ec != 0 ? ec : r.exit_code;
        }
        if (se_cmd->parsed()) {
            const auto r = cli::run_spectral_efficiency(load(se), se.threads);
            const int ec = emit(r.curve, se.out);
            return ec != 0 ? ec : r.exit_code;
        }
        if (cc_cmd->parsed()) {
            const auto r = cli::run_contact_cdf(load(cc), cc.threads);
            const int ec = emit(r.curve, cc.out);
            return ec != 0 ? ec : r.exit_code;
        }
        if (sim_cmd->parsed()) {
            const auto r = cli::run_simulation(load(sim), sim.threads, sim.dump_batches);
            const int ec = emit(r.curve, sim.out);
            return ec != 0 ? ec : r.exit_code;
        }
        if (cmp_cmd->parsed()) {
            const auto r = cli::compare(load(cmp), cmp.atol, cmp.threads, std::cout);
            if (!cmp.out.empty()) {
                const int ec = emit(r.curve, cmp.out);
                if (ec != 0) return ec;
            }
            return r.exit_code;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return cli::kConfigError;
    } catch (const sgcov::quad::BudgetError& e) {
        std::cerr << "quadrature budget error: " << e.what() << "\n";
        return cli::kQuadratureBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kConfigError;
    }
    return 0;
}
