#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sgcov/runner.hpp"

using namespace sgcov;
using cli::Scenario;

namespace {

Scenario quick_single(int n_points = 2) {
    std::ostringstream js;
    js << R"({"name":"quick","kind":"single_cluster","strategy":"closest",)"
       << R"("geometry":{"lambda":0.01,"D":15.0,"d":10.0},)"
       << R"("channel":{"alpha":4.0,"sigma2":1e-4},)"
       << R"("sweep":{"axis":"beta_dB","min":-5.0,"max":5.0,"n_points":)" << n_points << "}}";
    return cli::parse_scenario(js.str());
}

}  // namespace

TEST_CASE("dB conversion round trip") {
    mc::RngStream rng(1);
    for (int i = 0; i < 200; ++i) {
        const double db = -40.0 + 80.0 * rng.next_double();
        CHECK(cli::linear_to_db(cli::db_to_linear(db)) == doctest::Approx(db).epsilon(1e-12));
    }
    CHECK(cli::db_to_linear(0.0) == 1.0);
    CHECK(cli::db_to_linear(10.0) == doctest::Approx(10.0));
}

TEST_CASE("scenario parsing and validation") {
    const Scenario s = quick_single();
    CHECK(s.geometry.d == 10.0);
    CHECK(s.sweep.n_points == 2);
    CHECK_THROWS_AS(cli::parse_scenario("{not json"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_scenario(R"({"kind":"bogus"})"), std::invalid_argument);
    CHECK_THROWS_AS(
        cli::parse_scenario(
            R"({"kind":"single_cluster","sweep":{"axis":"beta_dB","min":0,"max":1,"n_points":1}})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        cli::parse_scenario(
            R"({"kind":"single_cluster","sweep":{"axis":"delta_c","min":0.1,"max":1,"n_points":3}})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        cli::parse_scenario(
            R"({"kind":"multi_cluster_open","strategy":"uniform"})"),
        std::invalid_argument);
}

TEST_CASE("degenerate two-point grid emits two rows") {
    const auto res = cli::run_scenario(quick_single(2));
    CHECK(res.exit_code == cli::kOk);
    CHECK(res.curve.rows.size() == 2);
    const std::string csv = cli::to_csv(res.curve);
    CHECK(csv.find("axis,axis_value,analytic,lower_bound,mc_mean,mc_stderr,flags\n") !=
          std::string::npos);
    CHECK(csv.find("beta_dB,-5,") != std::string::npos);
}

TEST_CASE("CSV output is byte-identical across reruns and thread counts") {
    const Scenario s = quick_single(3);
    const auto a = cli::run_scenario(s, 1);
    const auto b = cli::run_scenario(s, 2);
    CHECK(cli::to_csv(a.curve) == cli::to_csv(b.curve));
}

TEST_CASE("metadata is complete enough to rebuild the scenario") {
    const auto res = cli::run_scenario(quick_single(2));
    const auto& meta = res.curve.metadata;
    auto has = [&](const std::string& k) {
        for (const auto& [key, value] : meta)
            if (key == k) return true;
        return false;
    };
    for (const char* k : {"name", "version", "kind", "strategy", "lambda", "D", "d", "alpha",
                          "sigma2", "axis", "sweep_min", "sweep_max", "sweep_n_points", "abs_tol",
                          "rel_tol", "tail_tol"})
        CHECK_MESSAGE(has(k), k);
}

TEST_CASE("lower-bound column filled when requested") {
    Scenario s = quick_single(2);
    s.lower_bound = true;
    const auto res = cli::run_scenario(s);
    for (const auto& row : res.curve.rows) {
        REQUIRE(row.analytic.has_value());
        REQUIRE(row.lower_bound.has_value());
        CHECK(*row.lower_bound <= *row.analytic + 1e-9);
    }
}

TEST_CASE("quadrature budget failure flags rows and exits 3") {
    Scenario s = quick_single(2);
    s.quadrature.abs_tol = 1e-300;
    s.quadrature.rel_tol = 1e-300;
    s.quadrature.max_subdivisions = 4;
    const auto res = cli::run_scenario(s);
    CHECK(res.exit_code == cli::kQuadratureBudget);
    bool flagged = false;
    for (const auto& row : res.curve.rows)
        if (row.flags == "quadrature_budget") flagged = true;
    CHECK(flagged);
}

TEST_CASE("compare passes on a faithful scenario and fails the negative control") {
    Scenario s = quick_single(2);
    mc::SimConfig sim;
    sim.n_trials = 60000;
    sim.seed = 31415;
    s.sim = sim;
    std::ostringstream report;
    const auto good = cli::compare(s, 0.01, 0, report);
    CHECK(good.exit_code == cli::kOk);
    CHECK(report.str().find("result=pass") != std::string::npos);
    CHECK(report.str().find("pass=1") != std::string::npos);

    Scenario bad = s;
    bad.mc_alpha_override = 3.0;
    std::ostringstream report2;
    const auto fail = cli::compare(bad, 0.005, 0, report2);
    CHECK(fail.exit_code == cli::kCompareFailed);
    CHECK(report2.str().find("result=fail") != std::string::npos);
}

TEST_CASE("compare report is key=value formatted") {
    Scenario s = quick_single(2);
    mc::SimConfig sim;
    sim.n_trials = 20000;
    sim.seed = 7;
    s.sim = sim;
    std::ostringstream report;
    cli::compare(s, 0.02, 0, report);
    std::istringstream in(report.str());
    std::string line;
    while (std::getline(in, line)) {
        CHECK(line.find('=') != std::string::npos);
    }
}

TEST_CASE("simulate emits per-batch rows under the dump flag") {
    Scenario s = quick_single(2);
    mc::SimConfig sim;
    sim.n_trials = 8000;
    sim.seed = 5;
    sim.batch_size = 4000;
    s.sim = sim;
    const auto res = cli::run_simulation(s, 0, true);
    int batch_rows = 0, summary_rows = 0;
    for (const auto& row : res.curve.rows) {
        if (row.flags.rfind("batch=", 0) == 0) ++batch_rows;
        else ++summary_rows;
        CHECK(row.mc_mean.has_value());
    }
    CHECK(batch_rows == 4);  // 2 grid points x 2 batches
    CHECK(summary_rows == 2);
}

TEST_CASE("spectral-efficiency sweep orders strategies") {
    std::ostringstream js;
    js << R"({"name":"se","kind":"single_cluster","strategy":"closest",)"
       << R"("geometry":{"lambda":0.01,"D":15.0,"d":10.0},)"
       << R"("channel":{"alpha":4.0,"sigma2":1e-4},)"
       << R"("sweep":{"axis":"delta","min":0.5,"max":1.0,"n_points":2}})";
    Scenario c = cli::parse_scenario(js.str());
    const auto rc = cli::run_spectral_efficiency(c);
    Scenario u = c;
    u.strategy = single::Strategy::Uniform;
    const auto ru = cli::run_spectral_efficiency(u);
    for (std::size_t i = 0; i < rc.curve.rows.size(); ++i)
        CHECK(*rc.curve.rows[i].analytic > *ru.curve.rows[i].analytic);
}

TEST_CASE("spectral efficiency vanishes for an almost-empty network") {
    std::ostringstream js;
    js << R"({"name":"dead","kind":"single_cluster","strategy":"closest",)"
       << R"("geometry":{"lambda":1e-7,"D":15.0,"d":10.0},)"
       << R"("channel":{"alpha":4.0,"sigma2":1e-4},)"
       << R"("sweep":{"axis":"delta","min":0.5,"max":1.0,"n_points":2}})";
    const auto res = cli::run_spectral_efficiency(cli::parse_scenario(js.str()));
    for (const auto& row : res.curve.rows) CHECK(*row.analytic < 1e-3);
}

TEST_CASE("scenario directory resolution honors SGCOV_SCENARIO_DIR") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "sgcov_scenarios_test";
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "resolved.json");
        out << R"({"name":"resolved","kind":"single_cluster",)"
            << R"("sweep":{"axis":"beta_dB","min":-1,"max":1,"n_points":2}})";
    }
    setenv("SGCOV_SCENARIO_DIR", dir.c_str(), 1);
    const std::string path = cli::resolve_scenario_path("resolved", "nonexistent_dir");
    CHECK(cli::load_scenario(path).name == "resolved");
    unsetenv("SGCOV_SCENARIO_DIR");
    CHECK_THROWS_AS(cli::resolve_scenario_path("resolved", "nonexistent_dir"),
                    std::invalid_argument);
    fs::remove_all(dir);
}

TEST_CASE("contact-cdf curve over the sweep grid") {
    std::ostringstream js;
    js << R"({"name":"cc","kind":"multi_cluster_open",)"
       << R"("params":{"lambda_p":4e-4,"lambda":0.01,"D":15.0,"sigma_c":10.0},)"
       << R"("channel":{"alpha":4.0,"sigma2":1e-4},)"
       << R"("sweep":{"axis":"beta_dB","min":5.0,"max":25.0,"n_points":3}})";
    const auto res = cli::run_contact_cdf(cli::parse_scenario(js.str()));
    CHECK(res.curve.axis == "r");
    REQUIRE(res.curve.rows.size() == 3);
    CHECK(*res.curve.rows[0].analytic < *res.curve.rows[2].analytic);
}
