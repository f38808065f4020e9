#include "mcerr/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>
#include <vector>

namespace mcerr::estimator {

InitialSpec InitialSpec::point_mass(Point x) {
    InitialSpec s;
    s.kind = Kind::point_mass;
    s.dim = static_cast<int>(x.size());
    s.point = std::move(x);
    return s;
}

InitialSpec InitialSpec::uniform_interval(double lo, double hi) {
    if (!(hi > lo)) throw DomainError("uniform_interval: empty interval");
    InitialSpec s;
    s.kind = Kind::uniform_interval;
    s.lo = lo;
    s.hi = hi;
    s.dim = 1;
    return s;
}

InitialSpec InitialSpec::uniform_ball(int dim, double radius) {
    if (dim < 1 || !(radius > 0.0)) throw DomainError("uniform_ball: invalid parameters");
    InitialSpec s;
    s.kind = Kind::uniform_ball;
    s.dim = dim;
    s.radius = radius;
    return s;
}

Point InitialSpec::draw(RngStream& rng) const {
    switch (kind) {
        case Kind::point_mass:
            return point;
        case Kind::uniform_interval: {
            Point x(1);
            x(0) = rng.uniform(lo, hi);
            return x;
        }
        case Kind::uniform_ball: {
            Point dir = sampler::sample_direction(rng, dim);
            double r = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(dim));
            return r * dir;
        }
    }
    throw DomainError("InitialSpec: unknown kind");
}

void RunConfig::validate() const {
    if (n < 1) throw DomainError("RunConfig: n must be >= 1");
    if (n0 < 0) throw DomainError("RunConfig: n0 must be >= 0");
    if (replications < 1) throw DomainError("RunConfig: replications must be >= 1");
    if (!integrand) throw DomainError("RunConfig: integrand missing");
}

std::uint64_t RunConfig::config_hash() const {
    // FNV-1a over the identifying fields
    auto mix = [](std::uint64_t h, std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xFF;
            h *= 0x100000001B3ULL;
        }
        return h;
    };
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : kernel.name()) h = mix(h, static_cast<std::uint64_t>(c));
    for (char c : integrand_name) h = mix(h, static_cast<std::uint64_t>(c));
    h = mix(h, static_cast<std::uint64_t>(n));
    h = mix(h, static_cast<std::uint64_t>(n0));
    h = mix(h, static_cast<std::uint64_t>(replications));
    h = mix(h, seed);
    return h;
}

double run_estimate(const RunConfig& cfg, long long replication_index) {
    cfg.validate();
    RngStream rng(cfg.seed, static_cast<std::uint64_t>(replication_index));
    Point x = cfg.initial.draw(rng);
    for (long long i = 0; i < cfg.n0; ++i) x = cfg.kernel.step(x, rng);
    double acc = 0.0;
    for (long long j = 0; j < cfg.n; ++j) {
        x = cfg.kernel.step(x, rng);
        acc += cfg.integrand(x);
    }
    return acc / static_cast<double>(cfg.n);
}

namespace {

// deterministic pairwise reduction
double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 8) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

}  // namespace

EstimateReport empirical_mse(const RunConfig& cfg, double true_value, int threads) {
    cfg.validate();
    const auto r = static_cast<std::size_t>(cfg.replications);
    std::vector<double> estimates(r);

    if (threads <= 1) {
        for (std::size_t i = 0; i < r; ++i) {
            estimates[i] = run_estimate(cfg, static_cast<long long>(i));
        }
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (r + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            std::size_t lo = t * chunk;
            std::size_t hi = std::min(lo + chunk, r);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                for (std::size_t i = lo; i < hi; ++i) {
                    estimates[i] = run_estimate(cfg, static_cast<long long>(i));
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    std::vector<double> sq(r);
    for (std::size_t i = 0; i < r; ++i) {
        double d = estimates[i] - true_value;
        sq[i] = d * d;
    }
    double mean_est = pairwise_sum(estimates, 0, r) / static_cast<double>(r);
    double mse = pairwise_sum(sq, 0, r) / static_cast<double>(r);

    // Leave-one-out jackknife of the mean statistic; reduces to sd/sqrt(R).
    double se = 0.0;
    if (r > 1) {
        std::vector<double> dev(r);
        for (std::size_t i = 0; i < r; ++i) {
            double d = sq[i] - mse;
            dev[i] = d * d;
        }
        double var = pairwise_sum(dev, 0, r) / static_cast<double>(r - 1);
        se = std::sqrt(var / static_cast<double>(r));
    }

    EstimateReport rep;
    rep.mean_estimate = mean_est;
    rep.empirical_mse = mse;
    rep.mse_std_error = se;
    rep.true_value = true_value;
    rep.seed = cfg.seed;
    rep.config_hash = cfg.config_hash();
    rep.n = cfg.n;
    rep.n0 = cfg.n0;
    rep.replications = cfg.replications;
    rep.oracle_calls.f_calls = cfg.replications * cfg.n;
    rep.oracle_calls.rho_calls = cfg.replications * (cfg.n + cfg.n0);
    rep.oracle_calls.membership_calls = cfg.kernel.membership_calls();
    return rep;
}

std::string Verdict::csv_header() {
    return "config_hash,n,n0,empirical_mse,std_error,lower,upper,verdict,seed";
}

std::string Verdict::csv_row() const {
    char buf[320];
    std::snprintf(buf, sizeof buf, "%016llx,%lld,%lld,%.17g,%.17g,%.17g,%.17g,%s,%llu",
                  static_cast<unsigned long long>(report.config_hash),
                  static_cast<long long>(report.n), static_cast<long long>(report.n0),
                  report.empirical_mse, report.mse_std_error, lower, upper,
                  pass ? "pass" : "fail", static_cast<unsigned long long>(report.seed));
    return buf;
}

Verdict certify(const EstimateReport& report, double lower, double upper,
                double sigma_mult) {
    Verdict v;
    v.report = report;
    v.lower = lower;
    v.upper = upper;
    v.root_mse = std::sqrt(std::max(report.empirical_mse, 0.0));
    v.sigma_root = v.root_mse > 0.0 ? report.mse_std_error / (2.0 * v.root_mse)
                                    : std::sqrt(report.mse_std_error);
    if (std::isinf(upper)) {
        v.pass = true;
        return v;
    }
    v.pass = (lower - sigma_mult * v.sigma_root <= v.root_mse) &&
             (v.root_mse <= upper + sigma_mult * v.sigma_root);
    return v;
}

}  // namespace mcerr::estimator
