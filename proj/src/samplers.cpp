#include "mcerr/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace mcerr::sampler {

Point sample_direction(RngStream& rng, int dim) {
    if (dim < 1) throw DomainError("sample_direction: dim must be >= 1");
    Point v(dim);
    while (true) {
        for (int i = 0; i < dim; ++i) v(i) = rng.normal();
        double norm = v.norm();
        if (norm > 1e-300) return v / norm;
    }
}

Point ball_walk_step(const Point& x, double delta, const MembershipOracle& body,
                     RngStream& rng) {
    if (!(delta > 0.0)) throw DomainError("ball_walk_step: delta must be positive");
    const int d = static_cast<int>(x.size());
    Point dir = sample_direction(rng, d);
    double radius = delta * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
    Point proposal = x + radius * dir;
    return body(proposal) ? proposal : x;
}

Point metropolis_step(const Point& x, const Point& proposal, const LogDensityOracle& target,
                      RngStream& rng) {
    double delta_log = target(proposal) - target(x);
    if (delta_log >= 0.0) return proposal;
    return std::log(rng.uniform()) < delta_log ? proposal : x;
}

Point lazy_step(const Point& x, const std::function<Point(const Point&, RngStream&)>& inner,
                RngStream& rng) {
    if (rng.uniform() > 0.5) return x;
    return inner(x, rng);
}

Chord chord_bisect(const MembershipOracle& body, const Point& x, const Point& dir,
                   double eps0) {
    if (!(eps0 > 0.0)) throw DomainError("chord_bisect: eps0 must be positive");
    const double r = body.outer_radius;
    long long calls_before = body.calls();
    if (!body(x)) throw DomainError("chord_bisect: anchor point outside the body");

    // One endpoint per side: bisect [inside, outside] down to eps0/4 and
    // return the outside end, so the bracket contains the true chord.
    auto endpoint = [&](double sign) {
        double lo = 0.0;                    // inside
        double hi = 2.0 * r + eps0;         // outside: |x + hi dir| >= hi - r > r
        while (hi - lo > 0.25 * eps0) {
            double mid = 0.5 * (lo + hi);
            if (body(x + (sign * mid) * dir)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return sign * hi;
    };

    Chord chord{endpoint(-1.0), endpoint(+1.0), 0};
    chord.oracle_calls = body.calls() - calls_before;
    if (chord.length() < eps0) {
        throw DegenerateChord("chord_bisect: bracket length " +
                              std::to_string(chord.length()) + " below eps0");
    }
    return chord;
}

Point hit_and_run_step(const Point& x, const MembershipOracle& body, RngStream& rng,
                       double eps0) {
    Point dir = sample_direction(rng, static_cast<int>(x.size()));
    Chord chord = chord_bisect(body, x, dir, eps0);
    // Uniform on the bracket, accepted only inside the body: exact uniform on
    // the chord, acceptance probability at least 1/6.
    for (int attempt = 0; attempt < 10000; ++attempt) {
        double t = rng.uniform(chord.lambda1, chord.lambda2);
        Point y = x + t * dir;
        if (body(y)) return y;
    }
    throw DegenerateChord("hit_and_run_step: rejection loop failed to land inside");
}

double l1_contraction_1d(const std::function<double(double, double)>& kernel_density,
                         const std::function<double(double)>& rho, double lo, double hi,
                         int grid_points) {
    if (!(hi > lo)) throw DomainError("l1_contraction_1d: empty interval");
    if (grid_points < 2) throw DomainError("l1_contraction_1d: need at least 2 grid points");

    auto evaluate = [&](long long m) {
        // m+1 nodes; trapezoid weights; rho normalized on the same grid so a
        // constant rescale of rho cannot change the result
        const double h = (hi - lo) / static_cast<double>(m);
        std::vector<double> xs(m + 1), rv(m + 1);
        double z = 0.0;
        for (long long i = 0; i <= m; ++i) {
            xs[i] = lo + h * static_cast<double>(i);
            rv[i] = rho(xs[i]);
            if (rv[i] < 0.0) throw DomainError("l1_contraction_1d: negative density");
            z += (i == 0 || i == m) ? 0.5 * rv[i] : rv[i];
        }
        z *= h;
        if (!(z > 0.0)) throw DomainError("l1_contraction_1d: density integrates to zero");
        double total = 0.0;
        for (long long i = 0; i <= m; ++i) {
            double sup = 0.0;
            for (long long j = 0; j <= m; ++j) {
                if (rv[j] <= 0.0) continue;
                sup = std::max(sup, std::abs(kernel_density(xs[i], xs[j]) * z / rv[j] - 1.0));
            }
            double w = (i == 0 || i == m) ? 0.5 : 1.0;
            total += w * sup * rv[i] / z;
        }
        return total * h;
    };

    long long m = grid_points;
    double prev = evaluate(m);
    for (int doubling = 0; doubling < 20; ++doubling) {
        m *= 2;
        double cur = evaluate(m);
        if (std::abs(cur - prev) < 1e-4) return cur;
        prev = cur;
    }
    throw NonConvergent("l1_contraction_1d: refinement did not stabilize in 20 doublings");
}

Point KernelSampler::step(const Point& x, RngStream& rng) const {
    if (lazy_ && rng.uniform() > 0.5) return x;
    return inner_(x, rng);
}

long long KernelSampler::membership_calls() const { return body_ ? body_->calls() : 0; }

KernelSampler KernelSampler::ball_walk_metropolis(double delta, MembershipOracle body,
                                                  LogDensityOracle target, bool lazy) {
    if (!(delta > 0.0)) throw DomainError("ball_walk_metropolis: delta must be positive");
    KernelSampler k;
    k.kind_ = KernelKind::ball_walk_metropolis;
    k.lazy_ = lazy;
    k.dim_ = target.dim;
    k.name_ = "ball_walk_metropolis";
    k.body_ = std::make_shared<MembershipOracle>(std::move(body));
    auto body_ptr = k.body_;
    k.inner_ = [delta, body_ptr, target = std::move(target)](const Point& x, RngStream& rng) {
        const int d = static_cast<int>(x.size());
        Point dir = sample_direction(rng, d);
        double radius = delta * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
        Point proposal = x + radius * dir;
        if (!(*body_ptr)(proposal)) return x;  // ball-walk rejection, no density call
        return metropolis_step(x, proposal, target, rng);
    };
    return k;
}

KernelSampler KernelSampler::hit_and_run(MembershipOracle body, double eps0, bool lazy) {
    KernelSampler k;
    k.kind_ = KernelKind::hit_and_run;
    k.lazy_ = lazy;
    k.dim_ = 0;  // dimension comes from the state
    k.name_ = "hit_and_run";
    double eps = eps0 > 0.0 ? eps0 : 1e-9 * body.outer_radius;
    k.body_ = std::make_shared<MembershipOracle>(std::move(body));
    auto body_ptr = k.body_;
    k.inner_ = [body_ptr, eps](const Point& x, RngStream& rng) {
        return hit_and_run_step(x, *body_ptr, rng, eps);
    };
    return k;
}

KernelSampler KernelSampler::contracting_normal(double theta) {
    if (!(theta > -1.0) || !(theta < 1.0)) {
        throw DomainError("contracting_normal: theta in (-1,1)");
    }
    KernelSampler k;
    k.kind_ = KernelKind::contracting_normal;
    k.dim_ = 1;
    k.name_ = "contracting_normal";
    double s = std::sqrt(1.0 - theta * theta);
    k.inner_ = [theta, s](const Point& x, RngStream& rng) {
        Point y(1);
        y(0) = theta * x(0) + s * rng.normal();
        return y;
    };
    return k;
}

KernelSampler KernelSampler::independence_normal(double xi) {
    if (!(xi > 1.0)) throw DomainError("independence_normal: xi must exceed 1");
    KernelSampler k;
    k.kind_ = KernelKind::independence_normal;
    k.dim_ = 1;
    k.name_ = "independence_normal";
    // proposal N(0, xi^2), target N(0,1); Hastings log ratio
    // (x^2 - y^2)/2 * (1 - 1/xi^2)
    double factor = 0.5 * (1.0 - 1.0 / (xi * xi));
    k.inner_ = [xi, factor](const Point& x, RngStream& rng) {
        double y = xi * rng.normal();
        double log_ratio = (x(0) * x(0) - y * y) * factor;
        if (log_ratio >= 0.0 || std::log(rng.uniform()) < log_ratio) {
            Point out(1);
            out(0) = y;
            return out;
        }
        return x;
    };
    return k;
}

KernelSampler KernelSampler::example1() {
    KernelSampler k;
    k.kind_ = KernelKind::example1;
    k.dim_ = 1;
    k.name_ = "example1";
    // density (1+x+y)/(x+3/2) on [0,1]; conditional CDF is quadratic in y, so
    // the inverse is closed-form
    k.inner_ = [](const Point& x, RngStream& rng) {
        double u = rng.uniform();
        double a = 1.0 + x(0);
        Point y(1);
        y(0) = -a + std::sqrt(a * a + 2.0 * u * (x(0) + 1.5));
        return y;
    };
    return k;
}

KernelSampler KernelSampler::example2(bool lazy) {
    KernelSampler k;
    k.kind_ = KernelKind::example2;
    k.lazy_ = lazy;
    k.dim_ = 1;
    k.name_ = "example2";
    // from [-1,0] jump uniform into (0,1]; from (0,1] jump uniform into [-1,0]
    k.inner_ = [](const Point& x, RngStream& rng) {
        double u = rng.uniform();
        Point y(1);
        y(0) = x(0) <= 0.0 ? u : u - 1.0;
        return y;
    };
    return k;
}

KernelSampler KernelSampler::finite_chain(const finite::ReversibleChain& chain) {
    KernelSampler k;
    k.kind_ = KernelKind::finite_chain;
    k.dim_ = 1;
    k.name_ = "finite_chain";
    auto rows = std::make_shared<std::vector<std::vector<double>>>();
    rows->resize(chain.size());
    for (Eigen::Index x = 0; x < chain.size(); ++x) {
        auto& cdf = (*rows)[x];
        cdf.resize(chain.size());
        double acc = 0.0;
        for (Eigen::Index y = 0; y < chain.size(); ++y) {
            acc += chain.p()(x, y);
            cdf[y] = acc;
        }
        cdf.back() = 1.0;
    }
    k.inner_ = [rows](const Point& x, RngStream& rng) {
        auto idx = static_cast<std::size_t>(std::llround(x(0)));
        const auto& cdf = (*rows)[idx];
        double u = rng.uniform();
        auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        Point y(1);
        y(0) = static_cast<double>(it - cdf.begin());
        return y;
    };
    return k;
}

KernelSampler KernelSampler::custom(std::string name, int dim,
                                    std::function<Point(const Point&, RngStream&)> step,
                                    bool lazy) {
    if (!step) throw DomainError("custom kernel: missing step function");
    KernelSampler k;
    k.kind_ = KernelKind::custom;
    k.lazy_ = lazy;
    k.dim_ = dim;
    k.name_ = std::move(name);
    k.inner_ = std::move(step);
    return k;
}

KernelSampler builtin_kernel(KernelKind kind, double param, bool lazy) {
    switch (kind) {
        case KernelKind::contracting_normal:
            return KernelSampler::contracting_normal(param);
        case KernelKind::independence_normal:
            return KernelSampler::independence_normal(param);
        case KernelKind::example1:
            return KernelSampler::example1();
        case KernelKind::example2:
            return KernelSampler::example2(lazy);
        default:
            throw DomainError("builtin_kernel: kind needs oracles; use the explicit factory");
    }
}

}  // namespace mcerr::sampler
