#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "tailkit/pipeline.hpp"

using namespace tailkit;
using namespace tailkit::pipe;

namespace {

struct TempFile {
    std::string path;
    TempFile(const std::string& name, const std::string& content) : path(name) {
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

std::string steps_dump(const RunReport& r) {
    jsonout::Value arr = jsonout::Value::array();
    for (const auto& s : r.steps) arr.push_back(s.output);
    return arr.dump();
}

}  // namespace

TEST_CASE("pipeline runs load / to_returns / summary_stats") {
    TempFile csv("pipe_prices.csv", "date,close\n2020-01-01,100\n2020-01-02,110\n2020-01-03,104\n");
    const std::string cfg = R"({
        "input": "pipe_prices.csv",
        "column": "close",
        "time_column": "date",
        "convention": "price",
        "steps": [
            {"op": "load"},
            {"op": "to_returns", "mode": "simple"},
            {"op": "summary_stats"}
        ]
    })";
    const auto report = run_pipeline(parse_config_text(cfg));
    REQUIRE(report.steps.size() == 3);
    CHECK(report.steps[2].op == "summary_stats");
    const std::string out = report.steps[2].output.dump();
    CHECK(out.find("\"mean\"") != std::string::npos);
    CHECK(out.find("\"n\":2") != std::string::npos);
}

TEST_CASE("unknown steps fail validation before execution") {
    const std::string cfg = R"({
        "input": "whatever.csv",
        "column": 0,
        "steps": [{"op": "explode"}]
    })";
    CHECK_THROWS_WITH(parse_config_text(cfg),
                      Catch::Matchers::ContainsSubstring("unknown step"));
}

TEST_CASE("stochastic steps require a seed") {
    const std::string cfg = R"({
        "input": "whatever.csv",
        "column": 0,
        "steps": [{"op": "test", "name": "lilliefors"}]
    })";
    CHECK_THROWS_WITH(parse_config_text(cfg),
                      Catch::Matchers::ContainsSubstring("seed"));
}

TEST_CASE("a failing step reports its index and aborts") {
    TempFile csv("pipe_short.csv", "v\n1.0\n");
    const std::string cfg = R"({
        "input": "pipe_short.csv",
        "column": "v",
        "convention": "price",
        "steps": [{"op": "load"}, {"op": "to_returns"}, {"op": "summary_stats"}]
    })";
    CHECK_THROWS_WITH(run_pipeline(parse_config_text(cfg)),
                      Catch::Matchers::ContainsSubstring("step 1"));
}

TEST_CASE("identical config and seed reproduce the numeric report bytes") {
    // garch path written out once, reused by both runs
    garch::GarchSpec spec;
    spec.omega = 0.05;
    spec.alpha1 = 0.08;
    spec.beta1 = 0.85;
    mc::RngStream stream(5150, 0);
    const auto path = garch::simulate_garch(stream, spec, 600);
    std::string csv_text = "loss\n";
    for (double v : path.values) {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%.17g\n", v);
        csv_text += buf;
    }
    TempFile csv("pipe_garch.csv", csv_text);
    const std::string cfg = R"({
        "input": "pipe_garch.csv",
        "column": "loss",
        "convention": "loss",
        "seed": 99,
        "steps": [
            {"op": "load"},
            {"op": "summary_stats"},
            {"op": "test", "name": "lilliefors", "runs": 1000},
            {"op": "fit_garch"},
            {"op": "conditional_var", "q": 0.99, "z_method": "historical"}
        ]
    })";
    const auto r1 = run_pipeline(parse_config_text(cfg));
    const auto r2 = run_pipeline(parse_config_text(cfg));
    REQUIRE(steps_dump(r1) == steps_dump(r2));
}

TEST_CASE("emitted doubles round-trip bit exactly") {
    mc::RngStream stream(31337, 0);
    for (int k = 0; k < 2000; ++k) {
        // spread magnitudes across the useful range
        const double v = (stream.next_double() - 0.5) *
                         std::pow(10.0, 40.0 * (stream.next_double() - 0.5));
        jsonout::Value j(v);
        const auto parsed = nlohmann::json::parse(j.dump());
        REQUIRE(parsed.get<double>() == v);
    }
}

TEST_CASE("pipeline composition equals manual module calls") {
    garch::GarchSpec spec;
    spec.omega = 0.04;
    spec.alpha1 = 0.09;
    spec.beta1 = 0.86;
    mc::RngStream stream(808, 0);
    const auto path = garch::simulate_garch(stream, spec, 1500);
    std::string csv_text = "loss\n";
    for (double v : path.values) {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%.17g\n", v);
        csv_text += buf;
    }
    TempFile csv("pipe_compose.csv", csv_text);
    const std::string cfg = R"({
        "input": "pipe_compose.csv",
        "column": "loss",
        "convention": "loss",
        "seed": 1,
        "steps": [
            {"op": "load"},
            {"op": "fit_garch", "innovation": "normal"},
            {"op": "fit_evt", "method": "gpd", "on": "innovations", "threshold_quantile": 0.9},
            {"op": "conditional_var", "q": 0.99, "z_method": "gpd", "threshold_quantile": 0.9}
        ]
    })";
    const auto report = run_pipeline(parse_config_text(cfg));
    REQUIRE(report.steps.size() == 4);

    // manual route
    ReturnSeries loaded;
    loaded.convention = Convention::loss;
    loaded.values = path.values;
    const auto fit = garch::fit_ar_garch(loaded, garch::Innovation::normal);
    const auto zvar =
        risk::innovations_var_gpd(fit, empirical_quantile(fit.z, 0.9), 0.99);
    const auto manual = risk::conditional_var(fit, zvar);

    const std::string out = report.steps[3].output.dump();
    char expect[64];
    std::snprintf(expect, sizeof(expect), "%.17g", manual.value);
    CHECK(out.find(expect) != std::string::npos);
}
