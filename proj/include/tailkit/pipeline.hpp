#pragma once

#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "tailkit/csv.hpp"
#include "tailkit/serialize.hpp"

namespace tailkit::pipe {

inline constexpr const char* kVersion = "0.1.0";

/// One step of a batch run: an operation name plus its parameters,
/// straight from the JSON config.
struct Step {
    std::string op;
    nlohmann::json params;
};

struct PipelineConfig {
    std::string input_path;
    ColumnSpec value_column;
    std::optional<ColumnSpec> time_column;
    Convention convention = Convention::price;
    CsvOptions csv;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::vector<Step> steps;
};

struct StepRecord {
    std::string op;
    jsonout::Value output;
};

/// Everything a run produced. Numeric step outputs are deterministic
/// for a fixed config and seed; wall time is reported separately and is
/// not part of the serialized numeric report.
struct RunReport {
    std::uint64_t seed = 0;
    std::string version = kVersion;
    std::vector<StepRecord> steps;
    double wall_seconds = 0.0;

    jsonout::Value to_json() const {
        jsonout::Value v = jsonout::Value::object();
        v.set("version", version);
        v.set("seed", seed);
        jsonout::Value arr = jsonout::Value::array();
        for (const auto& s : steps) {
            jsonout::Value rec = jsonout::Value::object();
            rec.set("op", s.op);
            rec.set("output", s.output);
            arr.push_back(std::move(rec));
        }
        v.set("steps", std::move(arr));
        return v;
    }
};

namespace detail {

inline const std::set<std::string>& known_ops() {
    static const std::set<std::string> ops{
        "load",        "to_returns", "to_losses",       "summary_stats",
        "quantile",    "test",       "fit_garch",       "fit_evt",
        "var",         "es",         "conditional_var", "backtest"};
    return ops;
}

inline ColumnSpec column_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return ColumnSpec::by_index(j.get<std::size_t>());
    return ColumnSpec::by_name(j.get<std::string>());
}

}  // namespace detail

/// Parse and validate a config document. Unknown step names, stochastic
/// steps without a seed, and malformed fields all fail here, before any
/// execution.
inline PipelineConfig parse_config(const nlohmann::json& j) {
    PipelineConfig cfg;
    require(j.contains("input"), "pipeline config: missing 'input'");
    cfg.input_path = j.at("input").get<std::string>();
    require(j.contains("column"), "pipeline config: missing 'column'");
    cfg.value_column = detail::column_from_json(j.at("column"));
    if (j.contains("time_column"))
        cfg.time_column = detail::column_from_json(j.at("time_column"));
    if (j.contains("convention"))
        cfg.convention = convention_from_string(j.at("convention").get<std::string>());
    if (j.contains("sep")) {
        const std::string sep = j.at("sep").get<std::string>();
        require(sep.size() == 1, "pipeline config: 'sep' must be one character");
        cfg.csv.sep = sep[0];
    }
    if (j.contains("skip_bad")) cfg.csv.skip_bad = j.at("skip_bad").get<bool>();
    if (j.contains("seed")) {
        cfg.seed = j.at("seed").get<std::uint64_t>();
        cfg.seed_set = true;
    }

    require(j.contains("steps") && j.at("steps").is_array(),
            "pipeline config: missing 'steps' array");
    bool stochastic = false;
    for (const auto& js : j.at("steps")) {
        Step s;
        require(js.contains("op"), "pipeline config: step without 'op'");
        s.op = js.at("op").get<std::string>();
        require(detail::known_ops().count(s.op) == 1,
                "pipeline config: unknown step '" + s.op + "'");
        s.params = js;
        if (s.op == "test" || s.op == "fit_garch") stochastic = true;
        cfg.steps.push_back(std::move(s));
    }
    if (stochastic)
        require(cfg.seed_set, "pipeline config: stochastic steps require a seed");
    return cfg;
}

inline PipelineConfig parse_config_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(std::string("pipeline config: invalid JSON: ") + e.what());
    }
    try {
        return parse_config(j);
    } catch (const nlohmann::json::exception& e) {
        fail(std::string("pipeline config: ") + e.what());
    }
}

namespace detail {

struct State {
    std::optional<ReturnSeries> series;
    std::optional<garch::GarchFit> garch_fit;
    std::optional<evt::GpdFit> gpd_fit;
    std::optional<evt::GevFit> gev_fit;
    std::uint64_t seed = 0;
    std::uint64_t next_stream = 0;

    mc::RngStream stream() { return mc::RngStream(seed, next_stream++); }

    const ReturnSeries& need_series(const std::string& who) const {
        require(series.has_value(), who + ": no series loaded yet");
        return *series;
    }
    const garch::GarchFit& need_garch(const std::string& who) const {
        require(garch_fit.has_value(), who + ": requires a prior fit_garch step");
        return *garch_fit;
    }
};

inline double json_num(const nlohmann::json& j, const std::string& key, double fallback) {
    return j.contains(key) ? j.at(key).get<double>() : fallback;
}

inline std::string json_str(const nlohmann::json& j, const std::string& key,
                            const std::string& fallback) {
    return j.contains(key) ? j.at(key).get<std::string>() : fallback;
}

inline jsonout::Value run_test_step(State& st, const nlohmann::json& p) {
    const std::string name = p.at("name").get<std::string>();
    const auto& x = st.need_series("test").values;
    stats::TestResult r;
    if (name == "ljung_box") {
        r = stats::ljung_box(x, static_cast<std::size_t>(json_num(p, "h", 10)),
                             static_cast<std::size_t>(json_num(p, "model_dof", 0)));
    } else if (name == "jarque_bera") {
        r = stats::jarque_bera(x);
    } else if (name == "arch_lm") {
        r = stats::arch_lm(x, static_cast<std::size_t>(json_num(p, "lags", 1)));
    } else if (name == "lilliefors") {
        r = stats::lilliefors(x, static_cast<std::size_t>(json_num(p, "runs", 2000)),
                              st.stream());
    } else if (name == "adf") {
        const auto variant = stats::df_variant_from_string(json_str(p, "variant", "c"));
        const std::size_t max_lag = static_cast<std::size_t>(
            json_num(p, "max_lag",
                     static_cast<double>(stats::adf_default_max_lag(x.size()))));
        const auto sel =
            stats::lag_selection_from_string(json_str(p, "lag_selection", "bic"));
        std::optional<stats::McCriticalTable> table;
        if (json_num(p, "mc_runs", 0) >= 1000)
            table = stats::df_mc_critical_values(
                variant, x.size(), static_cast<std::size_t>(json_num(p, "mc_runs", 0)),
                st.stream());
        r = stats::adf_test(x, variant, max_lag, sel, table);
    } else if (name == "durbin_watson") {
        jsonout::Value v = jsonout::Value::object();
        v.set("test", "durbin_watson");
        v.set("stat", stats::durbin_watson(x));
        return v;
    } else {
        fail("test: unknown test '" + name + "'");
    }
    return jsonout::to_json(r);
}

inline jsonout::Value run_step(State& st, const Step& step, const PipelineConfig& cfg) {
    const auto& p = step.params;
    if (step.op == "load") {
        st.series = load_csv(cfg.input_path, cfg.value_column, cfg.convention,
                             cfg.time_column, cfg.csv);
        st.series->validate();
        jsonout::Value v = jsonout::Value::object();
        v.set("n", st.series->size());
        v.set("convention", to_string(st.series->convention));
        return v;
    }
    if (step.op == "to_returns") {
        const auto mode = json_str(p, "mode", "log") == "simple" ? ReturnMode::simple
                                                                 : ReturnMode::log;
        st.series = to_returns(st.need_series("to_returns"), mode);
        jsonout::Value v = jsonout::Value::object();
        v.set("n", st.series->size());
        v.set("convention", to_string(st.series->convention));
        return v;
    }
    if (step.op == "to_losses") {
        st.series = to_losses(st.need_series("to_losses"));
        jsonout::Value v = jsonout::Value::object();
        v.set("n", st.series->size());
        v.set("convention", to_string(st.series->convention));
        return v;
    }
    if (step.op == "summary_stats")
        return jsonout::to_json(summary_stats(st.need_series("summary_stats")));
    if (step.op == "quantile") {
        jsonout::Value v = jsonout::Value::object();
        const double q = json_num(p, "p", 0.95);
        v.set("p", q);
        v.set("value", empirical_quantile(st.need_series("quantile"), q));
        return v;
    }
    if (step.op == "test") return run_test_step(st, p);
    if (step.op == "fit_garch") {
        const auto innovation =
            garch::innovation_from_string(json_str(p, "innovation", "normal"));
        st.garch_fit = garch::fit_ar_garch(st.need_series("fit_garch"), innovation);
        return jsonout::to_json(*st.garch_fit);
    }
    if (step.op == "fit_evt") {
        const std::string method = json_str(p, "method", "gpd");
        const std::string on = json_str(p, "on", "series");
        std::vector<double> data;
        if (on == "innovations")
            data = st.need_garch("fit_evt").z;
        else
            data = st.need_series("fit_evt").values;
        if (method == "gpd") {
            double u;
            if (p.contains("threshold"))
                u = p.at("threshold").get<double>();
            else
                u = empirical_quantile(data, json_num(p, "threshold_quantile", 0.9));
            st.gpd_fit = evt::fit_gpd(data, u);
            return jsonout::to_json(*st.gpd_fit);
        }
        if (method == "gev") {
            const auto block = static_cast<std::size_t>(json_num(p, "block_size", 21));
            st.gev_fit = evt::fit_gev(evt::block_maxima(data, block));
            st.gev_fit->block_size = block;
            return jsonout::to_json(*st.gev_fit);
        }
        if (method == "hill") {
            const double u = json_num(p, "threshold", 0.0);
            std::vector<double> tail;
            for (double v : data)
                if (v > u) tail.push_back(v);
            return jsonout::to_json(evt::hill_estimator(tail, u));
        }
        fail("fit_evt: unknown method '" + method + "'");
    }
    if (step.op == "var" || step.op == "es") {
        const std::string method = json_str(p, "method", "historical");
        const double q = json_num(p, "q", 0.99);
        const auto& x = st.need_series(step.op).values;
        risk::RiskEstimate e;
        if (step.op == "var") {
            if (method == "historical")
                e = risk::var_historical(x, q);
            else if (method == "gaussian")
                e = risk::var_gaussian(sample_mean(x), sample_std(x), q);
            else if (method == "student")
                e = risk::var_student(sample_mean(x), sample_std(x),
                                      json_num(p, "nu", 6.0), q);
            else if (method == "gpd") {
                require(st.gpd_fit.has_value(), "var: requires a prior fit_evt gpd step");
                e = risk::var_gpd(*st.gpd_fit, q);
            } else
                fail("var: unknown method '" + method + "'");
        } else {
            if (method == "historical")
                e = risk::es_historical(x, q);
            else if (method == "gaussian")
                e = risk::es_gaussian(sample_mean(x), sample_std(x), q);
            else
                fail("es: unknown method '" + method + "'");
        }
        return jsonout::to_json(e);
    }
    if (step.op == "conditional_var") {
        const double q = json_num(p, "q", 0.99);
        const std::string zmethod = json_str(p, "z_method", "historical");
        const auto& fit = st.need_garch("conditional_var");
        risk::RiskEstimate zvar;
        if (zmethod == "historical")
            zvar = risk::innovations_var_historical(fit, q);
        else if (zmethod == "gpd") {
            const double uq = json_num(p, "threshold_quantile", 0.9);
            zvar = risk::innovations_var_gpd(fit, empirical_quantile(fit.z, uq), q);
        } else
            fail("conditional_var: unknown z_method '" + zmethod + "'");
        return jsonout::to_json(risk::conditional_var(fit, zvar));
    }
    if (step.op == "backtest") {
        const std::string which = json_str(p, "test", "kupiec");
        const double pcov = json_num(p, "p", 0.01);
        const auto method = json_str(p, "method", "historical") == "gaussian"
                                ? risk::RiskMethod::gaussian
                                : risk::RiskMethod::historical;
        const auto min_window =
            static_cast<std::size_t>(json_num(p, "min_window", 250));
        const auto& losses = st.need_series("backtest").values;
        const auto rolling = bt::expanding_var_path(losses, 1.0 - pcov, method, min_window);
        const std::vector<double> realized(losses.begin() + rolling.start, losses.end());
        const auto v = bt::violation_series(realized, rolling.var_path, pcov);
        bt::BacktestResult r;
        if (which == "kupiec")
            r = bt::kupiec_uc(v);
        else if (which == "dq")
            r = bt::em_dq(v, static_cast<std::size_t>(json_num(p, "lags", 1)));
        else
            fail("backtest: unknown test '" + which + "'");
        return jsonout::to_json(r);
    }
    fail("pipeline: unhandled op '" + step.op + "'");
}

}  // namespace detail

/// Execute the steps in order. The first failing step aborts the run
/// with its module error prefixed by the step index.
inline RunReport run_pipeline(const PipelineConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    RunReport report;
    report.seed = cfg.seed;
    detail::State st;
    st.seed = cfg.seed;
    for (std::size_t i = 0; i < cfg.steps.size(); ++i) {
        try {
            StepRecord rec;
            rec.op = cfg.steps[i].op;
            rec.output = detail::run_step(st, cfg.steps[i], cfg);
            report.steps.push_back(std::move(rec));
        } catch (const Error& e) {
            fail("step " + std::to_string(i) + " (" + cfg.steps[i].op + "): " + e.what());
        }
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace tailkit::pipe
