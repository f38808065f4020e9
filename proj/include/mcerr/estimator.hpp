#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "mcerr/samplers.hpp"

namespace mcerr::estimator {

using sampler::Point;

/// Built-in initial distributions; the worked examples all use one of these.
struct InitialSpec {
    enum class Kind { point_mass, uniform_interval, uniform_ball };

    Kind kind = Kind::point_mass;
    Point point;           // point_mass
    double lo = 0.0;       // uniform_interval
    double hi = 0.0;
    double radius = 1.0;   // uniform_ball
    int dim = 1;

    static InitialSpec point_mass(Point x);
    static InitialSpec uniform_interval(double lo, double hi);
    static InitialSpec uniform_ball(int dim, double radius);

    Point draw(RngStream& rng) const;
};

struct RunConfig {
    sampler::KernelSampler kernel;
    InitialSpec initial;
    std::function<double(const Point&)> integrand;
    std::string integrand_name;
    long long n = 1;
    long long n0 = 0;
    long long replications = 1;
    std::uint64_t seed = 0;

    void validate() const;
    std::uint64_t config_hash() const;
};

struct OracleCounts {
    long long f_calls = 0;           // one per averaged sample
    long long rho_calls = 0;         // one per kernel step (Metropolis accounting)
    long long membership_calls = 0;  // actual membership-oracle invocations
};

struct EstimateReport {
    double mean_estimate = 0.0;
    double empirical_mse = 0.0;
    double mse_std_error = 0.0;
    std::optional<double> true_value;
    std::optional<double> bound_lower;
    std::optional<double> bound_upper;
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;
    long long n = 0;
    long long n0 = 0;
    long long replications = 0;
    OracleCounts oracle_calls;
};

/// One replication of S_{n,n0}: draw the initial state, advance n0 burn-in
/// steps, then average f over the states produced by the next n steps.
/// Deterministic given (seed, replication_index).
double run_estimate(const RunConfig& cfg, long long replication_index);

/// Empirical MSE over independent replications (streams derived from
/// (seed, replication_index)), with the jackknife standard error.  The
/// reduction is pairwise over the stored per-replication values, so the
/// result is bit-identical regardless of thread count.
EstimateReport empirical_mse(const RunConfig& cfg, double true_value, int threads = 1);

struct Verdict {
    bool pass = false;
    double root_mse = 0.0;
    double sigma_root = 0.0;  // delta-method standard error of root_mse
    double lower = 0.0;
    double upper = 0.0;
    EstimateReport report;

    /// One CSV row: config hash, n, n0, empirical_mse, std_error, lower,
    /// upper, verdict, seed.
    std::string csv_row() const;
    static std::string csv_header();
};

/// Flags whether lower - k sigma <= sqrt(mse) <= upper + k sigma on the
/// root-error scale, with k = 3 by default (raise to 5 to damp CI
/// flakiness).  An infinite upper bound always passes.
Verdict certify(const EstimateReport& report, double lower, double upper,
                double sigma_mult = 3.0);

}  // namespace mcerr::estimator
