#include "sgcov/runner.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace sgcov::cli {

namespace {

void describe(const Scenario& s, CoverageCurve& c) {
    c.add_meta("name", s.name);
    c.add_meta("version", kVersion);
    switch (s.kind) {
        case mc::Scenario::Kind::SingleCluster: c.add_meta("kind", "single_cluster"); break;
        case mc::Scenario::Kind::MultiClusterClosed: c.add_meta("kind", "multi_cluster_closed"); break;
        case mc::Scenario::Kind::MultiClusterOpen: c.add_meta("kind", "multi_cluster_open"); break;
    }
    c.add_meta("strategy", s.strategy == single::Strategy::Closest ? "closest" : "uniform");
    if (s.kind == mc::Scenario::Kind::SingleCluster) {
        c.add_meta("lambda", s.geometry.lambda);
        c.add_meta("D", s.geometry.D);
        c.add_meta("d", s.geometry.d);
    } else {
        c.add_meta("lambda_p", s.params.lambda_p);
        c.add_meta("lambda", s.params.lambda);
        c.add_meta("D", s.params.D);
        c.add_meta("sigma_c", s.params.sigma_c);
        c.add_meta("rayleigh_vmax", multi::receiver_offset_vmax(s.params, s.quadrature));
        // document the truncation point at the largest transform argument the sweep reaches
        const double beta_hi = s.sweep.axis == SweepAxis::BetaDb ? db_to_linear(s.sweep.max)
                                                                 : s.beta_linear();
        const double s_ref = beta_hi * std::pow(2.0 * s.params.D, s.channel.alpha);
        c.add_meta("tail_umax", multi::inter_cluster_tail_umax(s.params, s.channel,
                                                               std::max(s_ref, 1.0), s.quadrature));
    }
    c.add_meta("alpha", s.channel.alpha);
    c.add_meta("sigma2", s.channel.sigma2);
    c.add_meta("beta_dB", s.beta_db);
    c.add_meta("axis", axis_name(s.sweep.axis));
    c.add_meta("sweep_min", s.sweep.min);
    c.add_meta("sweep_max", s.sweep.max);
    c.add_meta("sweep_n_points", static_cast<double>(s.sweep.n_points));
    c.add_meta("lower_bound", s.lower_bound ? "true" : "false");
    c.add_meta("abs_tol", s.quadrature.abs_tol);
    c.add_meta("rel_tol", s.quadrature.rel_tol);
    c.add_meta("max_subdivisions", static_cast<double>(s.quadrature.max_subdivisions));
    c.add_meta("tail_tol", s.quadrature.tail_tol);
    if (s.sim) {
        c.add_meta("seed", format_value(static_cast<double>(s.sim->seed)));
        c.add_meta("n_trials", static_cast<double>(s.sim->n_trials));
        c.add_meta("batch_size", static_cast<double>(s.sim->batch_size));
        c.add_meta("interference_truncation_radius", s.sim->interference_truncation_radius);
        c.add_meta("window_dilation",
                   s.sim->window_dilation < 0.0 && s.kind != mc::Scenario::Kind::SingleCluster
                       ? s.params.D
                       : s.sim->window_dilation);
        c.add_meta("compensate_far_field", s.sim->compensate_far_field ? "true" : "false");
        if (s.mc_alpha_override) c.add_meta("mc_alpha_override", *s.mc_alpha_override);
    }
}

double analytic_point(const Scenario& base, double axis_value, bool lower) {
    const Scenario s = base.at(axis_value);
    const double beta = s.beta_linear();
    switch (s.kind) {
        case mc::Scenario::Kind::SingleCluster:
            return lower ? single::coverage_lower_bound(s.strategy, s.geometry, s.channel, beta,
                                                        s.quadrature)
                         : single::coverage(s.strategy, s.geometry, s.channel, beta, s.quadrature);
        case mc::Scenario::Kind::MultiClusterClosed: {
            const auto mode = s.strategy == single::Strategy::Closest
                                  ? multi::AccessMode::ClosedClosest
                                  : multi::AccessMode::ClosedUniform;
            return multi::coverage_closed_access(mode, s.params, s.channel, beta, s.quadrature);
        }
        case mc::Scenario::Kind::MultiClusterOpen:
            return multi::coverage_open_access(s.params, s.channel, beta, s.quadrature);
    }
    return 0.0;
}

// grid points evaluated by a small pool; rows land in their slot so output
// order never depends on scheduling
template <class Fn>
void for_grid(std::size_t n, int threads, Fn&& fn) {
    unsigned hw = std::thread::hardware_concurrency();
    unsigned want = threads > 0 ? static_cast<unsigned>(threads) : (hw ? hw : 1);
    want = std::min<unsigned>(want, static_cast<unsigned>(n));
    if (want <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < want; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace

RunResult run_scenario(const Scenario& s, int threads) {
    s.validate();
    RunResult out;
    out.curve.axis = axis_name(s.sweep.axis);
    describe(s, out.curve);
    const auto grid = s.sweep.values();
    out.curve.rows.resize(grid.size());
    std::atomic<bool> budget_hit{false};

    for_grid(grid.size(), threads, [&](std::size_t i) {
        CurveRow& row = out.curve.rows[i];
        row.axis_value = grid[i];
        try {
            row.analytic = analytic_point(s, grid[i], false);
            if (s.lower_bound) row.lower_bound = analytic_point(s, grid[i], true);
        } catch (const quad::BudgetError& e) {
            row.analytic = e.estimate;
            row.flags = "quadrature_budget";
            budget_hit = true;
        }
    });
    if (budget_hit) out.exit_code = kQuadratureBudget;
    return out;
}

RunResult run_simulation(const Scenario& s, int threads, bool dump_batches) {
    s.validate();
    if (!s.sim) throw std::invalid_argument("simulate requires sim settings in the scenario");
    RunResult out;
    out.curve.axis = axis_name(s.sweep.axis);
    describe(s, out.curve);
    const auto grid = s.sweep.values();
    mc::SimConfig cfg = *s.sim;
    if (threads > 0) cfg.threads = threads;

    for (double v : grid) {
        const Scenario pt = s.at(v);
        mc::Scenario m = pt.mc_scenario();
        if (dump_batches) {
            const auto batches = mc::coverage_batches(m, pt.beta_linear(), cfg);
            for (const auto& b : batches) {
                CurveRow row;
                row.axis_value = v;
                row.mc_mean = b.mean;
                row.mc_stderr = b.std_error;
                row.flags = "batch=" + std::to_string(b.index);
                out.curve.rows.push_back(row);
            }
        }
        const auto est = mc::estimate_coverage(m, pt.beta_linear(), cfg);
        CurveRow row;
        row.axis_value = v;
        row.mc_mean = est.mean;
        row.mc_stderr = est.std_error;
        out.curve.rows.push_back(row);
    }
    return out;
}

CompareResult compare(const Scenario& s, double atol, int threads, std::ostream& report) {
    s.validate();
    if (!s.sim) throw std::invalid_argument("compare requires sim settings in the scenario");
    CompareResult out;
    out.curve.axis = axis_name(s.sweep.axis);
    describe(s, out.curve);
    out.curve.add_meta("atol", atol);
    const auto grid = s.sweep.values();
    out.curve.rows.resize(grid.size());
    std::atomic<bool> budget_hit{false};

    for_grid(grid.size(), threads, [&](std::size_t i) {
        CurveRow& row = out.curve.rows[i];
        row.axis_value = grid[i];
        try {
            row.analytic = analytic_point(s, grid[i], false);
        } catch (const quad::BudgetError& e) {
            row.analytic = e.estimate;
            row.flags = "quadrature_budget";
            budget_hit = true;
        }
    });

    mc::SimConfig cfg = *s.sim;
    if (threads > 0) cfg.threads = threads;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Scenario pt = s.at(grid[i]);
        const auto est = mc::estimate_coverage(pt.mc_scenario(), pt.beta_linear(), cfg);
        out.curve.rows[i].mc_mean = est.mean;
        out.curve.rows[i].mc_stderr = est.std_error;
    }

    report << "scenario=" << s.name << "\n";
    report << "points=" << grid.size() << "\n";
    double max_err = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& row = out.curve.rows[i];
        const double err = std::fabs(*row.analytic - *row.mc_mean);
        const double tol = std::max(atol, 3.0 * *row.mc_stderr);
        const bool pass = err <= tol;
        if (!pass) ++out.failures;
        max_err = std::max(max_err, err);
        report << "point=" << i << " axis_value=" << format_value(row.axis_value)
               << " analytic=" << format_value(*row.analytic)
               << " mc=" << format_value(*row.mc_mean)
               << " stderr=" << format_value(*row.mc_stderr) << " tol=" << format_value(tol)
               << " pass=" << (pass ? 1 : 0) << "\n";
    }
    report << "max_abs_err=" << format_value(max_err) << "\n";
    report << "result=" << (out.failures == 0 ? "pass" : "fail") << "\n";
    out.exit_code = budget_hit ? kQuadratureBudget : (out.failures == 0 ? kOk : kCompareFailed);
    return out;
}

RunResult run_spectral_efficiency(const Scenario& s, int threads) {
    s.validate();
    if (s.kind != mc::Scenario::Kind::SingleCluster)
        throw std::invalid_argument("spectral-efficiency requires a single-cluster scenario");
    RunResult out;
    out.curve.axis = axis_name(s.sweep.axis);
    describe(s, out.curve);
    out.curve.add_meta("quantity", "spectral_efficiency");
    const auto grid = s.sweep.values();
    out.curve.rows.resize(grid.size());
    std::atomic<bool> budget_hit{false};

    for_grid(grid.size(), threads, [&](std::size_t i) {
        CurveRow& row = out.curve.rows[i];
        row.axis_value = grid[i];
        const Scenario pt = s.at(grid[i]);
        try {
            row.analytic =
                single::spectral_efficiency(pt.strategy, pt.geometry, pt.channel, pt.quadrature);
        } catch (const quad::BudgetError& e) {
            row.analytic = e.estimate;
            row.flags = "quadrature_budget";
            budget_hit = true;
        }
    });

    if (s.sim) {
        mc::SimConfig cfg = *s.sim;
        if (threads > 0) cfg.threads = threads;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const Scenario pt = s.at(grid[i]);
            const auto est = mc::estimate_spectral_efficiency(pt.mc_scenario(), cfg);
            out.curve.rows[i].mc_mean = est.mean;
            out.curve.rows[i].mc_stderr = est.std_error;
        }
    }
    if (budget_hit) out.exit_code = kQuadratureBudget;
    return out;
}

RunResult run_contact_cdf(const Scenario& s, int threads) {
    if (s.kind == mc::Scenario::Kind::SingleCluster)
        throw std::invalid_argument("contact-cdf requires a multi-cluster scenario");
    RunResult out;
    out.curve.axis = "r";
    describe(s, out.curve);
    out.curve.add_meta("quantity", "contact_cdf");
    SweepSpec radii = s.sweep;  // reuse grid spec as radii in meters
    const auto grid = radii.values();
    out.curve.rows.resize(grid.size());

    for_grid(grid.size(), threads, [&](std::size_t i) {
        out.curve.rows[i].axis_value = grid[i];
        out.curve.rows[i].analytic = multi::contact_cdf(s.params, grid[i], s.quadrature);
    });

    if (s.sim) {
        mc::SimConfig cfg = *s.sim;
        if (threads > 0) cfg.threads = threads;
        const auto est = mc::estimate_contact_cdf(s.params, grid, cfg);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            out.curve.rows[i].mc_mean = est[i].mean;
            out.curve.rows[i].mc_stderr = est[i].std_error;
        }
    }
    return out;
}

}  // namespace sgcov::cli
