#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "mcerr/config.hpp"
#include "mcerr/estimator.hpp"
#include "mcerr/tables.hpp"

using namespace mcerr;
using namespace mcerr::config;

TEST_CASE("parse_config_text") {
    auto cfg = parse_config_text(R"({"version":1,"kind":"toy","family":"circle","T":999})",
                                 "inline");
    CHECK(cfg.kind == "toy");
    auto spec = toy_from_json(cfg.body);
    CHECK(spec.family == finite::ToyFamily::circle);
    CHECK(spec.t == 999);

    CHECK_THROWS_AS(parse_config_text("{not json", "inline"), ParseError);
    CHECK_THROWS_AS(parse_config_text(R"({"kind":"toy"})", "inline"), SchemaError);
    CHECK_THROWS_AS(parse_config_text(R"({"version":2,"kind":"toy"})", "inline"), SchemaError);
    // unknown keys are fatal in strict mode
    auto extra = parse_config_text(
        R"({"version":1,"kind":"toy","family":"circle","T":9,"typo":3})", "inline");
    CHECK_THROWS_WITH_AS(toy_from_json(extra.body),
                         doctest::Contains("unknown key 'typo'"), SchemaError);
}

TEST_CASE("toy config round trip is byte identical") {
    auto spec = finite::ToySpec::star(100000, 0.1);
    std::string text = canonical_dump(toy_to_json(spec));
    auto parsed = parse_config_text(text, "roundtrip");
    auto spec2 = toy_from_json(parsed.body);
    std::string text2 = canonical_dump(toy_to_json(spec2));
    CHECK(text == text2);
}

TEST_CASE("plan config round trip is byte identical") {
    std::string text = R"({
  "delta": 0.1,
  "eps": 0.01,
  "kind": "plan",
  "p": 2.1,
  "problem": "contracting_normals",
  "theta": 0.91,
  "version": 1,
  "x0": 0.0
})";
    auto parsed = parse_config_text(text, "inline");
    json reassembled = parsed.body;
    reassembled["version"] = 1;
    reassembled["kind"] = parsed.kind;
    CHECK(canonical_dump(reassembled) == text);
    auto setup = plan_from_json(parsed.body);
    CHECK(setup.plan.n0 > 0.0);
    CHECK(setup.detail.contains("beta_hat"));
}

TEST_CASE("estimate config drives the estimator") {
    auto cfg = parse_config_text(R"({
        "version": 1, "kind": "estimate",
        "kernel": {"kind": "example2", "lazy": true},
        "initial": {"kind": "uniform_interval", "lo": 0.0, "hi": 0.001},
        "f": "example2_u", "n": 50, "n0": 13,
        "replications": 2000, "seed": 42, "true_value": 0.0
    })",
                                 "inline");
    auto setup = estimate_from_json(cfg.body);
    CHECK(setup.has_true_value);
    auto report = estimator::empirical_mse(setup.run, setup.true_value, 1);
    double expected = 3.0 / 50.0 - 4.0 * (1.0 - std::pow(2.0, -50.0)) / 2500.0;
    CHECK(std::abs(report.empirical_mse - expected) <= 3.0 * report.mse_std_error);

    // schema violations
    auto bad = parse_config_text(R"({
        "version": 1, "kind": "estimate",
        "kernel": {"kind": "example2", "gamma": 1},
        "initial": {"kind": "point", "point": [0.0]},
        "f": "example2_u", "n": 10
    })",
                                 "inline");
    CHECK_THROWS_WITH_AS(estimate_from_json(bad.body),
                         doctest::Contains("unknown key 'gamma'"), SchemaError);
}

TEST_CASE("toy-kernel estimate config") {
    auto cfg = parse_config_text(R"({
        "version": 1, "kind": "estimate",
        "kernel": {"kind": "toy", "family": "hypercube", "d": 3},
        "f": "u1", "n": 10, "n0": 0, "replications": 3000, "seed": 5,
        "true_value": 0.0
    })",
                                 "inline");
    auto setup = estimate_from_json(cfg.body);
    auto report = estimator::empirical_mse(setup.run, 0.0, 1);
    double exact = finite::analytic_example_error(finite::ToySpec::hypercube(3), 10, 0);
    CHECK(std::abs(report.empirical_mse - exact) <= 3.0 * report.mse_std_error);
}

TEST_CASE("burnin_table CSV layout") {
    auto csv = tables::burnin_table({100000}, {0.9}, 1e30, 2.1);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "# schema=burnin-table v1");
    std::getline(lines, line);
    CHECK(line.rfind("N,beta,", 0) == 0);
    std::getline(lines, line);
    CHECK(line.find("656,656,6655,6885") != std::string::npos);
}

TEST_CASE("figure_data emits monotone-consistent curves") {
    auto grid = tables::log_grid(14, 1000013, 25);
    auto csv = tables::figure_data(tables::FigureKind::fig5_example2, grid);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "# schema=figure-data v1");
    std::getline(lines, line);  // header
    int rows = 0;
    while (std::getline(lines, line)) {
        // N,burnin,exact,lower,upper
        double n_total, n0, exact, lower, upper;
        char comma;
        std::istringstream row(line);
        row >> n_total >> comma >> n0 >> comma >> exact >> comma >> lower >> comma >> upper;
        REQUIRE(n0 == 13.0);
        REQUIRE(lower <= exact * (1.0 + 1e-9));
        REQUIRE(exact <= upper * (1.0 + 1e-9));
        ++rows;
    }
    CHECK(rows >= 20);
}

TEST_CASE("figure_data circle columns use the mixed upper bound") {
    // at the suggested burn-in the first budget is n0 + 1
    auto sc = finite::toy_scalars(finite::ToySpec::circle(999));
    long long n0 = bounds::suggest_burnin_finite(sc.burnin_constant, sc.beta);
    auto csv = tables::figure_data(tables::FigureKind::fig2_circle, {n0 + 1000});
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    std::getline(lines, line);
    std::getline(lines, line);
    double n_total, burnin, exact, lower, upper;
    char comma;
    std::istringstream row(line);
    row >> n_total >> comma >> burnin >> comma >> exact >> comma >> lower >> comma >> upper;
    CHECK(burnin == static_cast<double>(n0));
    double expected_upper = std::sqrt(finite::bounds_finite(sc.beta1, sc.beta, 1.0, 1000, 0).upper);
    CHECK(upper == doctest::Approx(expected_upper).epsilon(1e-12));
    CHECK(lower <= exact);
    CHECK(exact <= upper);
}

TEST_CASE("log_grid is sorted and within range") {
    auto grid = tables::log_grid(1, 1000000, 30);
    CHECK(grid.front() == 1);
    CHECK(grid.back() == 1000000);
    for (std::size_t i = 1; i < grid.size(); ++i) REQUIRE(grid[i] > grid[i - 1]);
}

TEST_CASE("fig_est_curves emits est and stationary columns") {
    auto csv = tables::figure_data(tables::FigureKind::fig_est_curves, {20000, 100000});
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "# schema=figure-data-est-curves v1");
    std::getline(lines, line);
    CHECK(line == "N,n0_label,n0,est,exact_stationary");
    int suggested_rows = 0;
    while (std::getline(lines, line)) {
        if (line.find("suggested") != std::string::npos) ++suggested_rows;
    }
    CHECK(suggested_rows >= 2);
}
