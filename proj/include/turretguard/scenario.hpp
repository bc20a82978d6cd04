#pragma once

// Scenario file ingestion: JSON with game parameters, agent positions, and
// optional sim / sweep blocks. Unknown fields are rejected and validation
// failures name the offending field.

#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "turretguard/geometry.hpp"
#include "turretguard/simulate.hpp"

namespace turretguard {

struct SweepAxis {
    std::string name; // attacker_r | attacker_theta | defender_x | defender_y
    double min = 0.0;
    double max = 0.0;
    int count = 0;
};

struct SweepSpec {
    std::vector<SweepAxis> axes; // 1 or 2
};

struct ScenarioFile {
    GameParams params;
    GameState state;
    std::optional<SimConfig> sim;
    std::optional<SweepSpec> sweep;
};

namespace detail_io {

inline void expect_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                        const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ValidationError(where + it.key() + ": unknown field");
}

inline double need_number(const nlohmann::json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) throw ValidationError(where + key + ": missing");
    if (!j.at(key).is_number()) throw ValidationError(where + key + ": must be a number");
    return j.at(key).get<double>();
}

inline Vec2 need_point(const nlohmann::json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) throw ValidationError(where + key + ": missing");
    const auto& v = j.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw ValidationError(where + key + ": must be [x, y]");
    return {v[0].get<double>(), v[1].get<double>()};
}

} // namespace detail_io

inline ScenarioFile parse_scenario(const std::string& text) {
    using nlohmann::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("scenario: malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("scenario: top level must be an object");
    detail_io::expect_keys(j, {"nu", "mu", "omega", "attacker", "defender", "turret_angle", "sim", "sweep"},
                           "scenario.");

    ScenarioFile sc;
    sc.params.nu = detail_io::need_number(j, "nu", "scenario.");
    sc.params.mu = detail_io::need_number(j, "mu", "scenario.");
    sc.params.omega = detail_io::need_number(j, "omega", "scenario.");
    sc.state.attacker = detail_io::need_point(j, "attacker", "scenario.");
    sc.state.defender = detail_io::need_point(j, "defender", "scenario.");
    sc.state.theta_T = detail_io::need_number(j, "turret_angle", "scenario.");

    if (j.contains("sim")) {
        const auto& js = j.at("sim");
        if (!js.is_object()) throw ValidationError("scenario.sim: must be an object");
        detail_io::expect_keys(
            js, {"dt", "capture_tol_dist", "capture_tol_angle", "max_time", "resolve_period"},
            "scenario.sim.");
        SimConfig c;
        if (js.contains("dt")) c.dt = detail_io::need_number(js, "dt", "scenario.sim.");
        if (js.contains("capture_tol_dist"))
            c.capture_tol_dist = detail_io::need_number(js, "capture_tol_dist", "scenario.sim.");
        if (js.contains("capture_tol_angle"))
            c.capture_tol_angle = detail_io::need_number(js, "capture_tol_angle", "scenario.sim.");
        if (js.contains("max_time")) c.max_time = detail_io::need_number(js, "max_time", "scenario.sim.");
        if (js.contains("resolve_period")) {
            if (!js.at("resolve_period").is_number_integer())
                throw ValidationError("scenario.sim.resolve_period: must be an integer");
            c.resolve_period = js.at("resolve_period").get<int>();
        }
        validate(c);
        sc.sim = c;
    }

    if (j.contains("sweep")) {
        const auto& jw = j.at("sweep");
        if (!jw.is_object()) throw ValidationError("scenario.sweep: must be an object");
        detail_io::expect_keys(jw, {"axes"}, "scenario.sweep.");
        if (!jw.contains("axes") || !jw.at("axes").is_array())
            throw ValidationError("scenario.sweep.axes: must be an array");
        SweepSpec sw;
        size_t idx = 0;
        for (const auto& ja : jw.at("axes")) {
            const std::string where = "scenario.sweep.axes[" + std::to_string(idx++) + "].";
            if (!ja.is_object()) throw ValidationError(where + ": must be an object");
            detail_io::expect_keys(ja, {"name", "min", "max", "count"}, where);
            SweepAxis ax;
            if (!ja.contains("name") || !ja.at("name").is_string())
                throw ValidationError(where + "name: missing or not a string");
            ax.name = ja.at("name").get<std::string>();
            static const std::set<std::string> kAxes{"attacker_r", "attacker_theta", "defender_x",
                                                     "defender_y"};
            if (!kAxes.count(ax.name))
                throw ValidationError(where + "name: must be one of attacker_r, attacker_theta, "
                                              "defender_x, defender_y");
            ax.min = detail_io::need_number(ja, "min", where);
            ax.max = detail_io::need_number(ja, "max", where);
            if (!ja.contains("count") || !ja.at("count").is_number_integer())
                throw ValidationError(where + "count: missing or not an integer");
            ax.count = ja.at("count").get<int>();
            if (ax.count < 1) throw ValidationError(where + "count: must be >= 1");
            if (!(ax.min <= ax.max)) throw ValidationError(where + "min: must be <= max");
            sw.axes.push_back(ax);
        }
        if (sw.axes.empty() || sw.axes.size() > 2)
            throw ValidationError("scenario.sweep.axes: need 1 or 2 axes");
        long long cells = 1;
        for (const auto& ax : sw.axes) cells *= ax.count;
        if (cells > 10'000'000) throw ValidationError("scenario.sweep: grid exceeds 1e7 cells");
        sc.sweep = sw;
    }

    validate(sc.state, sc.params); // also validates params, with field-style messages
    return sc;
}

inline nlohmann::json serialize_scenario(const ScenarioFile& sc) {
    nlohmann::json j;
    j["nu"] = sc.params.nu;
    j["mu"] = sc.params.mu;
    j["omega"] = sc.params.omega;
    j["attacker"] = {sc.state.attacker.x, sc.state.attacker.y};
    j["defender"] = {sc.state.defender.x, sc.state.defender.y};
    j["turret_angle"] = sc.state.theta_T;
    if (sc.sim) {
        j["sim"] = {{"dt", sc.sim->dt},
                    {"capture_tol_dist", sc.sim->capture_tol_dist},
                    {"capture_tol_angle", sc.sim->capture_tol_angle},
                    {"max_time", sc.sim->max_time},
                    {"resolve_period", sc.sim->resolve_period}};
    }
    if (sc.sweep) {
        nlohmann::json axes = nlohmann::json::array();
        for (const auto& ax : sc.sweep->axes)
            axes.push_back({{"name", ax.name}, {"min", ax.min}, {"max", ax.max}, {"count", ax.count}});
        j["sweep"] = {{"axes", axes}};
    }
    return j;
}

} // namespace turretguard
