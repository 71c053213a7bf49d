#include "sgcov/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace sgcov::mc {

void SimConfig::validate() const {
    if (!(n_trials > 0)) throw std::invalid_argument("SimConfig: n_trials must be > 0");
    if (!(batch_size > 0)) throw std::invalid_argument("SimConfig: batch_size must be > 0");
    if (!(interference_truncation_radius > 0.0))
        throw std::invalid_argument("SimConfig: truncation radius must be > 0");
}

double truncation_bias_bound(const multi::MultiClusterParams& p, double alpha, double R) {
    const double cluster_mass = p.lambda * M_PI * p.D * p.D;
    return 2.0 * M_PI * p.lambda_p * cluster_mass * std::pow(R, 2.0 - alpha) / (alpha - 2.0);
}

double far_field_mean(const multi::MultiClusterParams& p, double alpha, double R) {
    return truncation_bias_bound(p, alpha, R);
}

double residual_fluctuation_bound(const multi::MultiClusterParams& p, double alpha, double sigma2,
                                  double R) {
    const double mu = p.lambda * M_PI * p.D * p.D;
    const double second_moment = 2.0 * mu + mu * mu;  // E[(sum of fadings)^2]
    const double var = p.lambda_p * second_moment * 2.0 * M_PI *
                       std::pow(R, 2.0 - 2.0 * alpha) / (2.0 * alpha - 2.0);
    if (sigma2 <= 0.0) return std::numeric_limits<double>::infinity();
    // sup_s e^{-s sigma2} s^2 var/2 at s = 2/sigma2
    return std::exp(-2.0) * 2.0 * var / (sigma2 * sigma2);
}

void SimConfig::validate_for_mcp(const multi::MultiClusterParams& p, double alpha,
                                 double sigma2) const {
    validate();
    const double R = interference_truncation_radius;
    const double dil = window_dilation < 0.0 ? p.D : window_dilation;
    if (dil < p.D)
        throw std::invalid_argument("SimConfig: window_dilation must cover the cluster radius D");
    if (compensate_far_field) {
        if (residual_fluctuation_bound(p, alpha, sigma2, R) > 2e-3)
            throw std::invalid_argument(
                "SimConfig: truncation radius too small for compensated far field");
    } else {
        if (truncation_bias_bound(p, alpha, R) > 1e-6 * sigma2)
            throw std::invalid_argument(
                "SimConfig: truncation bias above 1e-6*sigma2; enlarge the radius or enable "
                "compensation");
    }
}

PointPattern sample_fhppp(double lambda, Vec2 center, double D, RngStream& rng) {
    PointPattern pat;
    const long n = rng.next_poisson(lambda * M_PI * D * D);
    pat.pts.resize(n);
    for (auto& pt : pat.pts) rng.next_in_disk(D, center.x, center.y, pt.x, pt.y);
    return pat;
}

PointPattern sample_mcp(const multi::MultiClusterParams& p, double retain_radius, double dilation,
                        RngStream& rng) {
    PointPattern pat;
    const double Rp = retain_radius + dilation;
    const long n_parents = rng.next_poisson(p.lambda_p * M_PI * Rp * Rp);
    const double mu_off = p.lambda * M_PI * p.D * p.D;
    const double keep2 = retain_radius * retain_radius;
    for (long i = 0; i < n_parents; ++i) {
        double px, py;
        rng.next_in_disk(Rp, 0.0, 0.0, px, py);
        const long n_off = rng.next_poisson(mu_off);
        for (long j = 0; j < n_off; ++j) {
            double x, y;
            rng.next_in_disk(p.D, px, py, x, y);
            if (x * x + y * y <= keep2) pat.pts.push_back({x, y});
        }
    }
    return pat;
}

namespace {

double path_gain(double x, double y, double alpha) {
    const double r2 = x * x + y * y;
    if (alpha == 4.0) return 1.0 / (r2 * r2);
    if (alpha == 3.0) return 1.0 / (r2 * std::sqrt(r2));
    return std::pow(r2, -0.5 * alpha);
}

struct Accumulator {
    double sum = 0.0;
    double sum_sq = 0.0;
    long accepted = 0;

    void add(double v) {
        sum += v;
        sum_sq += v * v;
        ++accepted;
    }
};

// Batches run independently (work-stealing by index) and merge in index
// order, so results do not depend on the thread count.
template <class BatchFn>
std::vector<Accumulator> run_batches(const SimConfig& sim, BatchFn&& body) {
    const long n_batches = (sim.n_trials + sim.batch_size - 1) / sim.batch_size;
    std::vector<Accumulator> acc(n_batches);
    unsigned hw = std::thread::hardware_concurrency();
    unsigned n_threads = sim.threads > 0 ? static_cast<unsigned>(sim.threads) : (hw ? hw : 1);
    n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(n_batches));

    std::atomic<long> next{0};
    auto worker = [&]() {
        for (;;) {
            const long b = next.fetch_add(1);
            if (b >= n_batches) return;
            RngStream rng = RngStream::for_batch(sim.seed, static_cast<uint64_t>(b));
            const long lo = b * sim.batch_size;
            const long hi = std::min(sim.n_trials, lo + sim.batch_size);
            body(rng, hi - lo, acc[b]);
        }
    };
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return acc;
}

EstimateWithCI merge(const std::vector<Accumulator>& acc, long n_trials, uint64_t seed) {
    double sum = 0.0, sum_sq = 0.0;
    long accepted = 0;
    for (const auto& a : acc) {
        sum += a.sum;
        sum_sq += a.sum_sq;
        accepted += a.accepted;
    }
    EstimateWithCI e;
    e.n = n_trials;
    e.accepted = accepted;
    e.seed = seed;
    if (accepted > 0) {
        e.mean = sum / accepted;
        if (accepted > 1) {
            const double var = std::max(0.0, (sum_sq - sum * sum / accepted) / (accepted - 1));
            e.std_error = std::sqrt(var / accepted);
        }
    }
    return e;
}

double self_fading(RngStream& rng, bool unit) { return unit ? 1.0 : rng.next_exp(); }

}  // namespace

SinrSample realize_sinr_single(const Scenario& scn, const PointPattern& pat, RngStream& rng,
                               bool unit_fading) {
    SinrSample out;
    if (pat.pts.empty()) return out;
    std::size_t serve;
    if (scn.strategy == single::Strategy::Closest) {
        serve = 0;
        double best = std::numeric_limits<double>::max();
        for (std::size_t i = 0; i < pat.pts.size(); ++i) {
            const double r2 = pat.pts[i].x * pat.pts[i].x + pat.pts[i].y * pat.pts[i].y;
            if (r2 < best) {
                best = r2;
                serve = i;
            }
        }
    } else {
        serve = static_cast<std::size_t>(rng.next_double() * pat.pts.size());
        if (serve == pat.pts.size()) --serve;
    }
    double interference = 0.0;
    double signal = 0.0;
    for (std::size_t i = 0; i < pat.pts.size(); ++i) {
        const double h = self_fading(rng, unit_fading);
        const double g = h * path_gain(pat.pts[i].x, pat.pts[i].y, scn.channel.alpha);
        if (i == serve) signal = g;
        else interference += g;
    }
    out.has_server = true;
    const auto& sp = pat.pts[serve];
    out.serving_distance = std::hypot(sp.x, sp.y);
    out.interference = interference;
    out.sinr = signal / (scn.channel.sigma2 + interference);
    return out;
}

namespace {

// one closed- or open-access MCP realization at the origin receiver
struct MultiTrial {
    bool has_server = false;
    double serving_distance = 0.0;
    double signal = 0.0;
    double interference = 0.0;  // includes far-field compensation
};

MultiTrial run_multi_trial(const Scenario& scn, const SimConfig& sim, RngStream& rng) {
    MultiTrial out;
    const auto& p = scn.params;
    const double alpha = scn.channel.alpha;
    const double R = sim.interference_truncation_radius;
    const double dil = sim.window_dilation < 0.0 ? p.D : sim.window_dilation;
    const double comp = sim.compensate_far_field ? far_field_mean(p, alpha, R) : 0.0;

    if (scn.kind == Scenario::Kind::MultiClusterClosed) {
        const double v = rng.next_rayleigh(p.sigma_c);
        PointPattern rep = sample_fhppp(p.lambda, {v, 0.0}, p.D, rng);
        PointPattern field = sample_mcp(p, R, dil, rng);
        double inter = comp;
        for (const auto& pt : field.pts)
            inter += self_fading(rng, sim.unit_fading) * path_gain(pt.x, pt.y, alpha);
        if (rep.pts.empty()) {
            out.interference = inter;
            return out;
        }
        std::size_t serve = 0;
        if (scn.strategy == single::Strategy::Closest) {
            double best = std::numeric_limits<double>::max();
            for (std::size_t i = 0; i < rep.pts.size(); ++i) {
                const double r2 = rep.pts[i].x * rep.pts[i].x + rep.pts[i].y * rep.pts[i].y;
                if (r2 < best) {
                    best = r2;
                    serve = i;
                }
            }
        } else {
            serve = static_cast<std::size_t>(rng.next_double() * rep.pts.size());
            if (serve == rep.pts.size()) --serve;
        }
        for (std::size_t i = 0; i < rep.pts.size(); ++i) {
            const double h = self_fading(rng, sim.unit_fading);
            const double g = h * path_gain(rep.pts[i].x, rep.pts[i].y, alpha);
            if (i == serve) out.signal = g;
            else inter += g;
        }
        out.has_server = true;
        out.serving_distance = std::hypot(rep.pts[serve].x, rep.pts[serve].y);
        out.interference = inter;
        return out;
    }

    // open access: serving transmitter is the globally nearest point
    PointPattern field = sample_mcp(p, R, dil, rng);
    if (field.pts.empty()) return out;
    std::size_t serve = 0;
    double best = std::numeric_limits<double>::max();
    for (std::size_t i = 0; i < field.pts.size(); ++i) {
        const double r2 = field.pts[i].x * field.pts[i].x + field.pts[i].y * field.pts[i].y;
        if (r2 < best) {
            best = r2;
            serve = i;
        }
    }
    double inter = comp;
    for (std::size_t i = 0; i < field.pts.size(); ++i) {
        const double h = self_fading(rng, sim.unit_fading);
        const double g = h * path_gain(field.pts[i].x, field.pts[i].y, alpha);
        if (i == serve) out.signal = g;
        else inter += g;
    }
    out.has_server = true;
    out.serving_distance = std::sqrt(best);
    out.interference = inter;
    return out;
}

void validate_scenario(const Scenario& scn, const SimConfig& sim) {
    scn.channel.validate();
    if (scn.kind == Scenario::Kind::SingleCluster) {
        scn.geom.validate();
        sim.validate();
    } else {
        scn.params.validate();
        sim.validate_for_mcp(scn.params, scn.channel.alpha, scn.channel.sigma2);
    }
}

}  // namespace

EstimateWithCI estimate_coverage(const Scenario& scn, double beta, const SimConfig& sim) {
    validate_scenario(scn, sim);
    auto acc = run_batches(sim, [&](RngStream& rng, long n, Accumulator& a) {
        for (long t = 0; t < n; ++t) {
            double covered = 0.0;
            if (scn.kind == Scenario::Kind::SingleCluster) {
                PointPattern pat =
                    sample_fhppp(scn.geom.lambda, {scn.geom.d, 0.0}, scn.geom.D, rng);
                const SinrSample s = realize_sinr_single(scn, pat, rng, sim.unit_fading);
                covered = (s.has_server && s.sinr > beta) ? 1.0 : 0.0;
            } else {
                const MultiTrial mt = run_multi_trial(scn, sim, rng);
                covered = (mt.has_server &&
                           mt.signal / (scn.channel.sigma2 + mt.interference) > beta)
                              ? 1.0
                              : 0.0;
            }
            a.add(covered);
        }
    });
    return merge(acc, sim.n_trials, sim.seed);
}

EstimateWithCI estimate_spectral_efficiency(const Scenario& scn, const SimConfig& sim) {
    validate_scenario(scn, sim);
    auto acc = run_batches(sim, [&](RngStream& rng, long n, Accumulator& a) {
        for (long t = 0; t < n; ++t) {
            double rate = 0.0;
            if (scn.kind == Scenario::Kind::SingleCluster) {
                PointPattern pat =
                    sample_fhppp(scn.geom.lambda, {scn.geom.d, 0.0}, scn.geom.D, rng);
                const SinrSample s = realize_sinr_single(scn, pat, rng, sim.unit_fading);
                if (s.has_server) rate = std::log2(1.0 + s.sinr);
            } else {
                const MultiTrial mt = run_multi_trial(scn, sim, rng);
                if (mt.has_server)
                    rate = std::log2(1.0 + mt.signal / (scn.channel.sigma2 + mt.interference));
            }
            a.add(rate);
        }
    });
    return merge(acc, sim.n_trials, sim.seed);
}

EstimateWithCI estimate_lt(const Scenario& scn, const LtTarget& target, double s,
                           const SimConfig& sim) {
    validate_scenario(scn, sim);
    const double lo = target.conditioned_r * (1.0 - target.band_fraction);
    const double hi = target.conditioned_r * (1.0 + target.band_fraction);

    auto acc = run_batches(sim, [&](RngStream& rng, long n, Accumulator& a) {
        for (long t = 0; t < n; ++t) {
            switch (target.kind) {
                case LtTarget::Kind::SingleClosestGivenR:
                case LtTarget::Kind::SingleUniform: {
                    PointPattern pat =
                        sample_fhppp(scn.geom.lambda, {scn.geom.d, 0.0}, scn.geom.D, rng);
                    const SinrSample smp = realize_sinr_single(scn, pat, rng, sim.unit_fading);
                    if (!smp.has_server) break;
                    if (target.kind == LtTarget::Kind::SingleClosestGivenR &&
                        (smp.serving_distance < lo || smp.serving_distance > hi))
                        break;
                    a.add(std::exp(-s * smp.interference));
                    break;
                }
                case LtTarget::Kind::InterCluster: {
                    const double R = sim.interference_truncation_radius;
                    const double dil =
                        sim.window_dilation < 0.0 ? scn.params.D : sim.window_dilation;
                    PointPattern field = sample_mcp(scn.params, R, dil, rng);
                    double inter = sim.compensate_far_field
                                       ? far_field_mean(scn.params, scn.channel.alpha, R)
                                       : 0.0;
                    for (const auto& pt : field.pts)
                        inter += self_fading(rng, sim.unit_fading) *
                                 path_gain(pt.x, pt.y, scn.channel.alpha);
                    a.add(std::exp(-s * inter));
                    break;
                }
                case LtTarget::Kind::TotalGivenContact: {
                    Scenario open = scn;
                    open.kind = Scenario::Kind::MultiClusterOpen;
                    const MultiTrial mt = run_multi_trial(open, sim, rng);
                    if (!mt.has_server) break;
                    if (mt.serving_distance < lo || mt.serving_distance > hi) break;
                    a.add(std::exp(-s * mt.interference));
                    break;
                }
            }
        }
    });
    EstimateWithCI e = merge(acc, sim.n_trials, sim.seed);
    if (e.accepted < 100)
        throw std::runtime_error("estimate_lt: fewer than 100 accepted samples");
    return e;
}

std::vector<EstimateWithCI> estimate_contact_cdf(const multi::MultiClusterParams& p,
                                                 const std::vector<double>& r_grid,
                                                 const SimConfig& sim) {
    p.validate();
    sim.validate();
    double r_max = 0.0;
    for (double r : r_grid) r_max = std::max(r_max, r);

    const long n_batches = (sim.n_trials + sim.batch_size - 1) / sim.batch_size;
    std::vector<std::vector<long>> counts(n_batches, std::vector<long>(r_grid.size(), 0));

    std::atomic<long> next{0};
    auto worker = [&]() {
        for (;;) {
            const long b = next.fetch_add(1);
            if (b >= n_batches) return;
            RngStream rng = RngStream::for_batch(sim.seed, static_cast<uint64_t>(b));
            const long lo = b * sim.batch_size;
            const long hi = std::min(sim.n_trials, lo + sim.batch_size);
            for (long t = 0; t < hi - lo; ++t) {
                PointPattern pat = sample_mcp(p, r_max, p.D, rng);
                double best = std::numeric_limits<double>::max();
                for (const auto& pt : pat.pts) best = std::min(best, pt.x * pt.x + pt.y * pt.y);
                const double rt = std::sqrt(best);
                for (std::size_t i = 0; i < r_grid.size(); ++i)
                    if (rt <= r_grid[i]) ++counts[b][i];
            }
        }
    };
    unsigned hw = std::thread::hardware_concurrency();
    unsigned n_threads = sim.threads > 0 ? static_cast<unsigned>(sim.threads) : (hw ? hw : 1);
    n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(n_batches));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<EstimateWithCI> out(r_grid.size());
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        long hits = 0;
        for (long b = 0; b < n_batches; ++b) hits += counts[b][i];
        EstimateWithCI e;
        e.n = sim.n_trials;
        e.accepted = sim.n_trials;
        e.seed = sim.seed;
        e.mean = static_cast<double>(hits) / sim.n_trials;
        e.std_error = std::sqrt(std::max(0.0, e.mean * (1.0 - e.mean) / sim.n_trials));
        out[i] = e;
    }
    return out;
}

std::vector<BatchSummary> coverage_batches(const Scenario& scn, double beta,
                                           const SimConfig& sim) {
    validate_scenario(scn, sim);
    auto acc = run_batches(sim, [&](RngStream& rng, long n, Accumulator& a) {
        for (long t = 0; t < n; ++t) {
            double covered = 0.0;
            if (scn.kind == Scenario::Kind::SingleCluster) {
                PointPattern pat =
                    sample_fhppp(scn.geom.lambda, {scn.geom.d, 0.0}, scn.geom.D, rng);
                const SinrSample s = realize_sinr_single(scn, pat, rng, sim.unit_fading);
                covered = (s.has_server && s.sinr > beta) ? 1.0 : 0.0;
            } else {
                const MultiTrial mt = run_multi_trial(scn, sim, rng);
                covered = (mt.has_server &&
                           mt.signal / (scn.channel.sigma2 + mt.interference) > beta)
                              ? 1.0
                              : 0.0;
            }
            a.add(covered);
        }
    });
    std::vector<BatchSummary> out;
    out.reserve(acc.size());
    for (std::size_t b = 0; b < acc.size(); ++b) {
        BatchSummary s;
        s.index = static_cast<long>(b);
        s.n = acc[b].accepted;
        s.accepted = acc[b].accepted;
        if (acc[b].accepted > 0) {
            s.mean = acc[b].sum / acc[b].accepted;
            if (acc[b].accepted > 1) {
                const double var = std::max(
                    0.0, (acc[b].sum_sq - acc[b].sum * acc[b].sum / acc[b].accepted) /
                             (acc[b].accepted - 1));
                s.std_error = std::sqrt(var / acc[b].accepted);
            }
        }
        out.push_back(s);
    }
    return out;
}

}  // namespace sgcov::mc
