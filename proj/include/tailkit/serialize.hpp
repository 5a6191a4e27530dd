#pragma once

#include "tailkit/backtest.hpp"
#include "tailkit/copula.hpp"
#include "tailkit/evt.hpp"
#include "tailkit/garch.hpp"
#include "tailkit/jsonout.hpp"
#include "tailkit/mc.hpp"
#include "tailkit/risk.hpp"
#include "tailkit/stat_tests.hpp"

namespace tailkit::jsonout {

inline Value to_json(const ReturnSeries& s) {
    Value arr = Value::array();
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        Value pt = Value::object();
        pt.set("t", s.timestamps.empty() ? Value(i) : Value(s.timestamps[i]));
        pt.set("v", Value(s.values[i]));
        arr.push_back(std::move(pt));
    }
    Value v = Value::object();
    v.set("convention", to_string(s.convention));
    v.set("n", s.values.size());
    v.set("series", std::move(arr));
    return v;
}

inline Value to_json(const SummaryStats& s) {
    Value v = Value::object();
    v.set("n", s.n);
    v.set("mean", s.mean);
    v.set("std", s.std);
    v.set("skewness", s.skewness);
    v.set("kurtosis", s.kurtosis);
    return v;
}

inline Value to_json(const stats::TestResult& r) {
    Value v = Value::object();
    v.set("test", r.name);
    v.set("stat", r.statistic);
    v.set("dist", stats::to_string(r.dist));
    v.set("dof", r.dof);
    if (r.p_value) v.set("p", *r.p_value);
    if (!r.critical_values.empty()) {
        Value cv = Value::object();
        for (const auto& [lvl, val] : r.critical_values)
            cv.set(std::to_string(lvl).substr(0, 4), val);
        v.set("critical_values", std::move(cv));
    }
    if (!r.reject_at.empty()) {
        Value rj = Value::object();
        for (const auto& [lvl, rej] : r.reject_at)
            rj.set(std::to_string(lvl).substr(0, 4), rej);
        v.set("reject", std::move(rj));
    }
    return v;
}

inline Value to_json(const mc::McEstimate& e) {
    Value v = Value::object();
    v.set("value", e.value);
    v.set("se", e.std_error);
    v.set("n", e.n);
    return v;
}

inline Value to_json(const garch::GarchFit& f) {
    Value params = Value::object();
    params.set("mu", f.spec.mean_mu);
    params.set("theta", f.spec.ar_theta);
    params.set("omega", f.spec.omega);
    params.set("alpha1", f.spec.alpha1);
    params.set("beta1", f.spec.beta1);
    params.set("innovation", garch::to_string(f.spec.innovation));
    if (f.spec.innovation == garch::Innovation::student_t) params.set("nu", f.spec.nu);
    Value v = Value::object();
    v.set("params", std::move(params));
    v.set("se", Value::array_of(f.std_errors));
    v.set("loglik", f.loglik);
    v.set("at_boundary", f.at_boundary);
    v.set("n_path", f.sigma_path.size());
    return v;
}

inline Value to_json(const evt::GevFit& f) {
    Value v = Value::object();
    v.set("model", "gev");
    v.set("xi", f.xi);
    v.set("mu", f.mu);
    v.set("sigma", f.sigma);
    v.set("loglik", f.loglik);
    v.set("se", Value::array_of(f.std_errors));
    v.set("se_valid", f.se_valid);
    v.set("block_size", f.block_size);
    v.set("block_count", f.block_count);
    return v;
}

inline Value to_json(const evt::GpdFit& f) {
    Value v = Value::object();
    v.set("model", "gpd");
    v.set("xi", f.xi);
    v.set("beta", f.beta);
    v.set("threshold", f.threshold);
    v.set("n_exceed", f.n_exceed);
    v.set("n_total", f.n_total);
    v.set("loglik", f.loglik);
    v.set("se", Value::array_of(f.std_errors));
    v.set("se_valid", f.se_valid);
    return v;
}

inline Value to_json(const evt::HillFit& f) {
    Value v = Value::object();
    v.set("model", "hill");
    v.set("alpha", f.alpha_hat);
    v.set("ci_low", f.ci_low);
    v.set("ci_high", f.ci_high);
    v.set("threshold", f.threshold);
    v.set("n_tail", f.n_tail);
    return v;
}

inline Value to_json(const risk::RiskEstimate& e) {
    Value v = Value::object();
    v.set("kind", risk::to_string(e.kind));
    v.set("method", risk::to_string(e.method));
    v.set("q", e.q);
    v.set("value", e.value);
    v.set("inputs", e.inputs);
    return v;
}

inline Value to_json(const bt::BacktestResult& r) {
    Value v = Value::object();
    v.set("test", bt::to_string(r.test));
    v.set("stat", r.statistic);
    v.set("dof", r.dof);
    v.set("p", r.p_value);
    v.set("n_violations", r.n_violations);
    v.set("n_obs", r.n_obs);
    return v;
}

inline Value to_json(const copula::CopulaSpec& s) {
    Value v = Value::object();
    v.set("family", copula::to_string(s.family));
    if (s.family == copula::Family::gaussian || s.family == copula::Family::student_t)
        v.set("rho", s.rho);
    if (s.family == copula::Family::student_t) v.set("nu", s.nu);
    if (s.family == copula::Family::clayton || s.family == copula::Family::gumbel ||
        s.family == copula::Family::frank)
        v.set("theta", s.theta);
    if (s.loglik != 0.0) v.set("loglik", s.loglik);
    return v;
}

inline Value to_json(const copula::TailDependence& t) {
    Value v = Value::object();
    v.set("lambda_lower", t.lambda_lower);
    v.set("lambda_upper", t.lambda_upper);
    return v;
}

}  // namespace tailkit::jsonout
