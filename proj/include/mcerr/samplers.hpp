#pragma once

#include <Eigen/Dense>
#include <atomic>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "mcerr/errors.hpp"
#include "mcerr/finite_chain.hpp"
#include "mcerr/rng.hpp"

namespace mcerr::sampler {

using Point = Eigen::VectorXd;

/// Pointwise log-density oracle for Metropolis targets.  All density
/// arithmetic stays in log space.
struct LogDensityOracle {
    std::function<double(const Point&)> log_density;
    int dim = 1;
    std::optional<double> lipschitz;

    double operator()(const Point& x) const { return log_density(x); }
};

/// Membership oracle of a convex body with B(0, inner) inside and
/// B(0, outer) containing it.  Copies share the invocation counter.
struct MembershipOracle {
    std::function<bool(const Point&)> contains;
    double outer_radius = 1.0;
    double inner_radius = 1.0;
    std::shared_ptr<std::atomic<long long>> call_counter =
        std::make_shared<std::atomic<long long>>(0);

    bool operator()(const Point& x) const {
        call_counter->fetch_add(1, std::memory_order_relaxed);
        return contains(x);
    }

    long long calls() const { return call_counter->load(std::memory_order_relaxed); }
};

/// Uniform direction on the unit sphere (normalized Gaussian vector).
Point sample_direction(RngStream& rng, int dim);

/// One ball-walk move: uniform proposal in B(x, delta), kept only when it
/// stays inside the body.
Point ball_walk_step(const Point& x, double delta, const MembershipOracle& body,
                     RngStream& rng);

/// Metropolis accept/reject for a symmetric proposal, in log space.
Point metropolis_step(const Point& x, const Point& proposal,
                      const LogDensityOracle& target, RngStream& rng);

/// Lazy wrapper: hold with probability 1/2, otherwise delegate.
Point lazy_step(const Point& x, const std::function<Point(const Point&, RngStream&)>& inner,
                RngStream& rng);

/// Chord of the body through x along a unit direction, as parameter bounds
/// lambda1 <= 0 <= lambda2.  The returned bracket contains the true chord and
/// each endpoint is within eps0/4 of the true one.
struct Chord {
    double lambda1;
    double lambda2;
    long long oracle_calls;

    double length() const { return lambda2 - lambda1; }
};

Chord chord_bisect(const MembershipOracle& body, const Point& x, const Point& dir,
                   double eps0);

/// One hit-and-run move: uniform direction, chord bracketing by bisection,
/// then acceptance-rejection on the bracket (exact uniform on the chord).
Point hit_and_run_step(const Point& x, const MembershipOracle& body, RngStream& rng,
                       double eps0);

/// L1-contraction coefficient of a one-dimensional kernel density k(x,y)
/// against a (possibly unnormalized) target density rho on [lo, hi]:
///   alpha_hat = integral of sup_y |k(x,y)/rho_n(y) - 1| rho_n(x) dx,
/// with the sup taken over the grid and the integral by the trapezoid rule.
/// The grid doubles until the value moves by less than 1e-4.
double l1_contraction_1d(const std::function<double(double, double)>& kernel_density,
                         const std::function<double(double)>& rho, double lo, double hi,
                         int grid_points);

enum class KernelKind {
    ball_walk_metropolis,
    hit_and_run,
    contracting_normal,
    independence_normal,
    example1,
    example2,
    finite_chain,
    custom,
};

/// A configured general-state transition sampler.  Configurations are
/// immutable and shareable; one trajectory is advanced by one thread at a
/// time, and independent trajectories on distinct RngStream ids may run in
/// parallel.
class KernelSampler {
  public:
    KernelSampler() = default;  // unconfigured; step() is invalid until built

    Point step(const Point& x, RngStream& rng) const;

    KernelKind kind() const { return kind_; }
    bool lazy() const { return lazy_; }
    int dim() const { return dim_; }
    const std::string& name() const { return name_; }

    /// Membership-oracle calls made so far through this configuration.
    long long membership_calls() const;

    // factories
    static KernelSampler ball_walk_metropolis(double delta, MembershipOracle body,
                                              LogDensityOracle target, bool lazy = true);
    static KernelSampler hit_and_run(MembershipOracle body, double eps0 = 0.0,
                                     bool lazy = true);
    static KernelSampler contracting_normal(double theta);
    static KernelSampler independence_normal(double xi);
    static KernelSampler example1();
    static KernelSampler example2(bool lazy = true);
    static KernelSampler finite_chain(const finite::ReversibleChain& chain);
    /// User-supplied transition function (state in, state out).
    static KernelSampler custom(std::string name, int dim,
                                std::function<Point(const Point&, RngStream&)> step,
                                bool lazy = false);

  private:
    KernelKind kind_ = KernelKind::example1;
    bool lazy_ = false;
    int dim_ = 1;
    std::string name_;
    std::function<Point(const Point&, RngStream&)> inner_;
    std::shared_ptr<MembershipOracle> body_;
};

/// Factory resolving the kind by name ("ball_walk_metropolis", "hit_and_run",
/// "contracting_normal", "independence_normal", "example1", "example2").
KernelSampler builtin_kernel(KernelKind kind, double param, bool lazy);

}  // namespace mcerr::sampler
