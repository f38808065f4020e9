#include "mcerr/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace mcerr::config {

namespace {

double get_num(const json& obj, const std::string& key) {
    if (!obj.contains(key)) throw SchemaError("missing key '" + key + "'");
    if (!obj[key].is_number()) throw SchemaError("key '" + key + "' must be a number");
    return obj[key].get<double>();
}

double get_num_or(const json& obj, const std::string& key, double fallback) {
    return obj.contains(key) ? get_num(obj, key) : fallback;
}

std::string get_str(const json& obj, const std::string& key) {
    if (!obj.contains(key)) throw SchemaError("missing key '" + key + "'");
    if (!obj[key].is_string()) throw SchemaError("key '" + key + "' must be a string");
    return obj[key].get<std::string>();
}

long long get_int(const json& obj, const std::string& key) {
    if (!obj.contains(key)) throw SchemaError("missing key '" + key + "'");
    if (!obj[key].is_number_integer()) throw SchemaError("key '" + key + "' must be an integer");
    return obj[key].get<long long>();
}

long long get_int_or(const json& obj, const std::string& key, long long fallback) {
    return obj.contains(key) ? get_int(obj, key) : fallback;
}

}  // namespace

void check_keys(const json& obj, const std::vector<std::string>& allowed,
                const std::string& where) {
    if (!obj.is_object()) throw SchemaError(where + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const auto& key : allowed) {
            if (it.key() == key) {
                ok = true;
                break;
            }
        }
        if (!ok) throw SchemaError(where + ": unknown key '" + it.key() + "'");
    }
}

ParsedConfig parse_config_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
    if (!j.is_object()) throw SchemaError(origin + ": top level must be an object");
    if (!j.contains("version")) throw SchemaError(origin + ": missing key 'version'");
    if (!j["version"].is_number_integer() || j["version"].get<int>() != 1) {
        throw SchemaError(origin + ": unsupported version");
    }
    if (!j.contains("kind")) throw SchemaError(origin + ": missing key 'kind'");
    ParsedConfig out;
    out.version = 1;
    out.kind = j["kind"].get<std::string>();
    out.body = j;
    out.body.erase("version");
    out.body.erase("kind");
    return out;
}

ParsedConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

std::string canonical_dump(const json& j) { return j.dump(2); }

finite::ToySpec toy_from_json(const json& body) {
    check_keys(body, {"family", "T", "d", "theta"}, "toy");
    std::string family = get_str(body, "family");
    if (family == "circle") {
        return finite::ToySpec::circle(get_int(body, "T"));
    }
    if (family == "hypercube") {
        return finite::ToySpec::hypercube(static_cast<int>(get_int(body, "d")));
    }
    if (family == "star") {
        return finite::ToySpec::star(get_int(body, "T"), get_num(body, "theta"));
    }
    throw SchemaError("toy: unknown family '" + family + "'");
}

json toy_to_json(const finite::ToySpec& spec) {
    json j;
    j["version"] = 1;
    j["kind"] = "toy";
    switch (spec.family) {
        case finite::ToyFamily::circle:
            j["family"] = "circle";
            j["T"] = spec.t;
            break;
        case finite::ToyFamily::hypercube:
            j["family"] = "hypercube";
            j["d"] = spec.d;
            break;
        case finite::ToyFamily::star:
            j["family"] = "star";
            j["T"] = spec.t;
            j["theta"] = spec.theta;
            break;
    }
    return j;
}

namespace {

sampler::MembershipOracle body_from_json(const json& spec) {
    check_keys(spec, {"shape", "radius", "dim", "lo", "hi"}, "body");
    std::string shape = get_str(spec, "shape");
    if (shape == "ball") {
        double radius = get_num_or(spec, "radius", 1.0);
        sampler::MembershipOracle body;
        body.contains = [radius](const sampler::Point& x) { return x.norm() <= radius; };
        body.outer_radius = radius;
        body.inner_radius = radius;
        return body;
    }
    if (shape == "interval") {
        double lo = get_num(spec, "lo");
        double hi = get_num(spec, "hi");
        if (!(hi > lo)) throw SchemaError("body: empty interval");
        sampler::MembershipOracle body;
        body.contains = [lo, hi](const sampler::Point& x) {
            return x(0) >= lo && x(0) <= hi;
        };
        body.outer_radius = std::max(std::abs(lo), std::abs(hi));
        body.inner_radius = 0.0;
        return body;
    }
    throw SchemaError("body: unknown shape '" + shape + "'");
}

sampler::LogDensityOracle target_from_json(const json& spec, int dim) {
    check_keys(spec, {"density", "lipschitz"}, "target");
    std::string density = get_str(spec, "density");
    sampler::LogDensityOracle target;
    target.dim = dim;
    if (spec.contains("lipschitz")) target.lipschitz = get_num(spec, "lipschitz");
    if (density == "std_normal") {
        target.log_density = [](const sampler::Point& x) { return -0.5 * x.squaredNorm(); };
        return target;
    }
    if (density == "uniform") {
        target.log_density = [](const sampler::Point&) { return 0.0; };
        return target;
    }
    throw SchemaError("target: unknown density '" + density + "'");
}

}  // namespace

EstimateSetup estimate_from_json(const json& body) {
    check_keys(body,
               {"kernel", "initial", "f", "n", "n0", "replications", "seed", "true_value",
                "bound_lower", "bound_upper"},
               "estimate");
    if (!body.contains("kernel")) throw SchemaError("estimate: missing key 'kernel'");
    const json& kj = body["kernel"];
    check_keys(kj,
               {"kind", "lazy", "theta", "xi", "delta", "body", "target", "eps0", "family",
                "T", "d"},
               "kernel");
    std::string kind = get_str(kj, "kind");
    bool lazy = kj.contains("lazy") ? kj["lazy"].get<bool>() : false;

    EstimateSetup setup;
    std::function<double(const estimator::Point&)> integrand;
    std::string fname = get_str(body, "f");

    if (kind == "toy") {
        json tj = kj;
        tj.erase("kind");
        tj.erase("lazy");
        auto spec = toy_from_json(tj);
        auto toy = finite::make_example(spec);
        setup.run.kernel = sampler::KernelSampler::finite_chain(toy.chain);
        finite::Vector f_vec = toy.f;
        if (fname == "u1") {
            integrand = [f_vec](const estimator::Point& x) {
                return f_vec(static_cast<Eigen::Index>(std::llround(x(0))));
            };
        } else {
            throw SchemaError("estimate: unknown integrand '" + fname + "' for toy kernel");
        }
        estimator::Point x0(1);
        x0(0) = 0.0;  // toy examples start at state 0
        setup.run.initial = estimator::InitialSpec::point_mass(x0);
    } else {
        if (kind == "contracting_normal") {
            setup.run.kernel = sampler::KernelSampler::contracting_normal(get_num(kj, "theta"));
        } else if (kind == "independence_normal") {
            setup.run.kernel = sampler::KernelSampler::independence_normal(get_num(kj, "xi"));
        } else if (kind == "example1") {
            setup.run.kernel = sampler::KernelSampler::example1();
        } else if (kind == "example2") {
            setup.run.kernel = sampler::KernelSampler::example2(lazy);
        } else if (kind == "hit_and_run") {
            if (!kj.contains("body")) throw SchemaError("kernel: hit_and_run needs 'body'");
            setup.run.kernel = sampler::KernelSampler::hit_and_run(
                body_from_json(kj["body"]), get_num_or(kj, "eps0", 0.0), lazy);
        } else if (kind == "ball_walk_metropolis") {
            if (!kj.contains("body")) throw SchemaError("kernel: ball walk needs 'body'");
            if (!kj.contains("target")) throw SchemaError("kernel: ball walk needs 'target'");
            auto oracle = body_from_json(kj["body"]);
            setup.run.kernel = sampler::KernelSampler::ball_walk_metropolis(
                get_num(kj, "delta"), oracle, target_from_json(kj["target"], 1), lazy);
        } else {
            throw SchemaError("kernel: unknown kind '" + kind + "'");
        }

        if (fname == "coordinate") {
            integrand = [](const estimator::Point& x) { return x(0); };
        } else if (fname == "square") {
            integrand = [](const estimator::Point& x) { return x(0) * x(0); };
        } else if (fname == "norm") {
            integrand = [](const estimator::Point& x) { return x.norm(); };
        } else if (fname == "one") {
            integrand = [](const estimator::Point&) { return 1.0; };
        } else if (fname == "example2_u") {
            integrand = [](const estimator::Point& x) {
                double v = x(0);
                bool plus = (v > -0.5 && v <= 0.0) || v > 0.5;
                return plus ? 1.0 : -1.0;
            };
        } else {
            throw SchemaError("estimate: unknown integrand '" + fname + "'");
        }

        if (!body.contains("initial")) throw SchemaError("estimate: missing key 'initial'");
        const json& ij = body["initial"];
        check_keys(ij, {"kind", "point", "lo", "hi", "dim", "radius"}, "initial");
        std::string ikind = get_str(ij, "kind");
        if (ikind == "point") {
            if (!ij.contains("point") || !ij["point"].is_array()) {
                throw SchemaError("initial: 'point' array required");
            }
            estimator::Point x0(ij["point"].size());
            for (std::size_t i = 0; i < ij["point"].size(); ++i) {
                x0(static_cast<Eigen::Index>(i)) = ij["point"][i].get<double>();
            }
            setup.run.initial = estimator::InitialSpec::point_mass(std::move(x0));
        } else if (ikind == "uniform_interval") {
            setup.run.initial =
                estimator::InitialSpec::uniform_interval(get_num(ij, "lo"), get_num(ij, "hi"));
        } else if (ikind == "uniform_ball") {
            setup.run.initial = estimator::InitialSpec::uniform_ball(
                static_cast<int>(get_int_or(ij, "dim", 1)), get_num_or(ij, "radius", 1.0));
        } else {
            throw SchemaError("initial: unknown kind '" + ikind + "'");
        }
    }

    setup.run.integrand = std::move(integrand);
    setup.run.integrand_name = fname;
    setup.run.n = get_int(body, "n");
    setup.run.n0 = get_int_or(body, "n0", 0);
    setup.run.replications = get_int_or(body, "replications", 1);
    setup.run.seed = static_cast<std::uint64_t>(get_int_or(body, "seed", 0));
    if (body.contains("true_value")) {
        setup.true_value = get_num(body, "true_value");
        setup.has_true_value = true;
    }
    if (body.contains("bound_lower") || body.contains("bound_upper")) {
        setup.bound_lower = get_num_or(body, "bound_lower", 0.0);
        setup.bound_upper = get_num_or(body, "bound_upper",
                                       std::numeric_limits<double>::infinity());
        setup.has_bounds = true;
    }
    setup.run.validate();
    return setup;
}

PlanSetup plan_from_json(const json& body) {
    check_keys(body,
               {"problem", "d", "r", "L", "p", "eps", "theta", "x0", "delta", "xi"},
               "plan");
    PlanSetup out;
    out.problem = get_str(body, "problem");
    double p = get_num_or(body, "p", std::numeric_limits<double>::infinity());
    double eps = get_num_or(body, "eps", 0.01);
    if (out.problem == "logconcave") {
        planner::LogConcaveProblem prob;
        prob.d = static_cast<int>(get_int(body, "d"));
        prob.r = get_num_or(body, "r", 1.0);
        prob.lipschitz = get_num_or(body, "L", 0.0);
        prob.p = p;
        if (body.contains("eps")) prob.eps = eps;
        out.plan = planner::plan_logconcave(prob);
    } else if (out.problem == "convex_body") {
        planner::ConvexBodyProblem prob;
        prob.d = static_cast<int>(get_int(body, "d"));
        prob.r = get_num_or(body, "r", 1.0);
        prob.p = p;
        if (body.contains("eps")) prob.eps = eps;
        out.plan = planner::plan_convex_body(prob);
    } else if (out.problem == "contracting_normals") {
        auto np = planner::plan_contracting_normals(get_num(body, "theta"),
                                                    get_num_or(body, "x0", 0.0),
                                                    get_num_or(body, "delta", 0.1), p, eps);
        out.plan = np.plan;
        out.detail["c_star"] = np.c_star;
        out.detail["beta_hat"] = np.beta_hat;
    } else if (out.problem == "example1" || out.problem == "example2" ||
               out.problem == "independence_normal") {
        planner::WorkedExample which = out.problem == "example1"
                                           ? planner::WorkedExample::example1
                                           : (out.problem == "example2"
                                                  ? planner::WorkedExample::example2
                                                  : planner::WorkedExample::independence_normal);
        planner::WorkedExampleParams params;
        params.delta = get_num_or(body, "delta", 0.1);
        params.x0 = get_num_or(body, "x0", 0.0);
        params.xi = get_num_or(body, "xi", 2.0);
        params.eps = eps;
        auto wp = planner::plan_worked_example(which, params);
        out.plan = wp.plan;
        out.detail["alpha"] = wp.alpha;
        out.detail["M"] = wp.m;
    } else {
        throw SchemaError("plan: unknown problem '" + out.problem + "'");
    }
    out.detail["walk"] = out.plan.walk;
    out.detail["n0"] = out.plan.n0;
    out.detail["n"] = out.plan.n;
    out.detail["gap_lower"] = out.plan.gap_lower;
    out.detail["error_bound"] = out.plan.error_bound;
    out.detail["oracle_budget"] = out.plan.oracle_budget;
    if (out.plan.delta) out.detail["delta"] = *out.plan.delta;
    return out;
}

}  // namespace mcerr::config
