#include "sgcov/scenario.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace sgcov::cli {

using nlohmann::json;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

void SweepSpec::validate() const {
    if (n_points < 2) throw std::invalid_argument("sweep: n_points must be >= 2");
    if (!(min < max)) throw std::invalid_argument("sweep: min must be < max");
}

std::vector<double> SweepSpec::values() const {
    validate();
    std::vector<double> v(n_points);
    for (int i = 0; i < n_points; ++i)
        v[i] = min + (max - min) * static_cast<double>(i) / (n_points - 1);
    return v;
}

const char* axis_name(SweepAxis a) {
    switch (a) {
        case SweepAxis::BetaDb: return "beta_dB";
        case SweepAxis::Delta: return "delta";
        case SweepAxis::DeltaC: return "delta_c";
        case SweepAxis::Alpha: return "alpha";
    }
    return "?";
}

void Scenario::validate() const {
    sweep.validate();
    channel.validate();
    quadrature.validate();
    if (kind == mc::Scenario::Kind::SingleCluster) geometry.validate();
    else params.validate();
    if (kind == mc::Scenario::Kind::MultiClusterOpen && strategy != single::Strategy::Closest)
        throw std::invalid_argument("open access supports only closest selection");
    if (kind == mc::Scenario::Kind::SingleCluster &&
        (sweep.axis == SweepAxis::DeltaC))
        throw std::invalid_argument("delta_c sweep requires a multi-cluster scenario");
    if (kind != mc::Scenario::Kind::SingleCluster && sweep.axis == SweepAxis::Delta)
        throw std::invalid_argument("delta sweep requires a single-cluster scenario");
}

Scenario Scenario::at(double axis_value) const {
    Scenario s = *this;
    switch (sweep.axis) {
        case SweepAxis::BetaDb: s.beta_db = axis_value; break;
        case SweepAxis::Delta: s.geometry.d = axis_value * s.geometry.D; break;
        case SweepAxis::DeltaC: s.params.sigma_c = axis_value * s.params.D; break;
        case SweepAxis::Alpha: s.channel.alpha = axis_value; break;
    }
    return s;
}

mc::Scenario Scenario::mc_scenario() const {
    mc::Scenario m;
    m.kind = kind;
    m.geom = geometry;
    m.params = params;
    m.channel = channel;
    if (mc_alpha_override) m.channel.alpha = *mc_alpha_override;
    m.strategy = strategy;
    return m;
}

namespace {

mc::Scenario::Kind parse_kind(const std::string& s) {
    if (s == "single_cluster") return mc::Scenario::Kind::SingleCluster;
    if (s == "multi_cluster_closed") return mc::Scenario::Kind::MultiClusterClosed;
    if (s == "multi_cluster_open") return mc::Scenario::Kind::MultiClusterOpen;
    throw std::invalid_argument("unknown scenario kind: " + s);
}

single::Strategy parse_strategy(const std::string& s) {
    if (s == "closest") return single::Strategy::Closest;
    if (s == "uniform") return single::Strategy::Uniform;
    throw std::invalid_argument("unknown strategy: " + s);
}

SweepAxis parse_axis(const std::string& s) {
    if (s == "beta_dB") return SweepAxis::BetaDb;
    if (s == "delta") return SweepAxis::Delta;
    if (s == "delta_c") return SweepAxis::DeltaC;
    if (s == "alpha") return SweepAxis::Alpha;
    throw std::invalid_argument("unknown sweep axis: " + s);
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    Scenario s;
    try {
        s.name = j.value("name", "scenario");
        s.kind = parse_kind(j.value("kind", "single_cluster"));
        if (j.contains("strategy")) s.strategy = parse_strategy(j["strategy"]);
        if (j.contains("geometry")) {
            const auto& g = j["geometry"];
            s.geometry.lambda = g.value("lambda", s.geometry.lambda);
            s.geometry.D = g.value("D", s.geometry.D);
            s.geometry.d = g.value("d", s.geometry.d);
        }
        if (j.contains("params")) {
            const auto& p = j["params"];
            s.params.lambda_p = p.value("lambda_p", s.params.lambda_p);
            s.params.lambda = p.value("lambda", s.params.lambda);
            s.params.D = p.value("D", s.params.D);
            s.params.sigma_c = p.value("sigma_c", s.params.sigma_c);
        }
        if (j.contains("channel")) {
            const auto& c = j["channel"];
            s.channel.alpha = c.value("alpha", s.channel.alpha);
            s.channel.sigma2 = c.value("sigma2", s.channel.sigma2);
        }
        s.beta_db = j.value("beta_dB", s.beta_db);
        if (j.contains("sweep")) {
            const auto& w = j["sweep"];
            s.sweep.axis = parse_axis(w.value("axis", "beta_dB"));
            s.sweep.min = w.value("min", s.sweep.min);
            s.sweep.max = w.value("max", s.sweep.max);
            s.sweep.n_points = w.value("n_points", s.sweep.n_points);
        }
        s.lower_bound = j.value("lower_bound", false);
        if (j.contains("quadrature")) {
            const auto& q = j["quadrature"];
            s.quadrature.abs_tol = q.value("abs_tol", s.quadrature.abs_tol);
            s.quadrature.rel_tol = q.value("rel_tol", s.quadrature.rel_tol);
            s.quadrature.max_subdivisions =
                q.value("max_subdivisions", s.quadrature.max_subdivisions);
            s.quadrature.tail_tol = q.value("tail_tol", s.quadrature.tail_tol);
        }
        if (j.contains("sim")) {
            const auto& m = j["sim"];
            mc::SimConfig cfg;
            cfg.n_trials = m.value("n_trials", 100000L);
            cfg.seed = m.value("seed", 1ULL);
            cfg.batch_size = m.value("batch_size", cfg.batch_size);
            cfg.interference_truncation_radius =
                m.value("interference_truncation_radius", cfg.interference_truncation_radius);
            cfg.window_dilation = m.value("window_dilation", cfg.window_dilation);
            cfg.compensate_far_field = m.value("compensate_far_field", true);
            cfg.threads = m.value("threads", 0);
            s.sim = cfg;
        }
        if (j.contains("mc_alpha_override")) s.mc_alpha_override = j["mc_alpha_override"].get<double>();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config field error: ") + e.what());
    }
    s.validate();
    return s;
}

std::string resolve_scenario_path(const std::string& path, const std::string& fallback_dir) {
    namespace fs = std::filesystem;
    if (fs::exists(path)) return path;
    std::string dir = fallback_dir;
    if (const char* env = std::getenv("SGCOV_SCENARIO_DIR")) dir = env;
    for (const auto& candidate : {dir + "/" + path, dir + "/" + path + ".json"})
        if (fs::exists(candidate)) return candidate;
    throw std::invalid_argument("scenario not found: " + path);
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open scenario file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

}  // namespace sgcov::cli
