#pragma once

// Solution reports: the solve command's JSON payload. Numeric fields are
// rounded to 12 significant digits when the report is built, so serialization
// round-trips losslessly and output is byte-stable.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>

#include <json.hpp>

#include "turretguard/solver.hpp"

namespace turretguard {

inline double round_sig12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::strtod(buf, nullptr);
}

struct DirectionReport {
    std::string termination; // case name; "AttackerWins" for a failed side
    std::optional<double> value;
    std::optional<double> t_f;
    std::optional<std::array<double, 2>> capture_point;
    std::optional<double> heading_A;
    std::optional<double> heading_D;
};

struct SolutionReport {
    int schema_version = 1;
    std::string status = "TeamWins";
    double value = 0.0;
    std::string termination;
    std::string direction;
    bool dispersal = false;
    std::array<double, 2> capture_point{};
    double heading_A = 0.0;
    double heading_D = 0.0;
    double u_T = 1.0;
    double t_f = 0.0;
    DirectionReport ccw;
    DirectionReport cw;
};

inline DirectionReport make_direction_report(const std::optional<CaptureSolution>& s) {
    DirectionReport r;
    if (!s) {
        r.termination = to_string(TerminationCase::AttackerWins);
        return r;
    }
    r.termination = to_string(s->termination);
    r.value = round_sig12(s->value);
    r.t_f = round_sig12(s->t_f);
    r.capture_point = {round_sig12(s->capture_point.x), round_sig12(s->capture_point.y)};
    r.heading_A = round_sig12(s->heading_A);
    r.heading_D = round_sig12(s->heading_D);
    return r;
}

inline SolutionReport make_report(const FullSolution& full) {
    SolutionReport r;
    const CaptureSolution& best =
        full.chosen == TurnDirection::CCW ? *full.ccw : *full.cw;
    r.value = round_sig12(full.value);
    r.termination = to_string(best.termination);
    r.direction = to_string(full.chosen);
    r.dispersal = full.dispersal;
    r.capture_point = {round_sig12(best.capture_point.x), round_sig12(best.capture_point.y)};
    r.heading_A = round_sig12(best.heading_A);
    r.heading_D = round_sig12(best.heading_D);
    r.u_T = best.u_T;
    r.t_f = round_sig12(best.t_f);
    r.ccw = make_direction_report(full.ccw);
    r.cw = make_direction_report(full.cw);
    return r;
}

inline nlohmann::json to_json(const DirectionReport& r) {
    nlohmann::json j;
    j["case"] = r.termination;
    if (r.value) j["value"] = *r.value;
    if (r.t_f) j["t_f"] = *r.t_f;
    if (r.capture_point) j["capture_point"] = {(*r.capture_point)[0], (*r.capture_point)[1]};
    if (r.heading_A) j["heading_A"] = *r.heading_A;
    if (r.heading_D) j["heading_D"] = *r.heading_D;
    return j;
}

inline nlohmann::json to_json(const SolutionReport& r) {
    nlohmann::json j;
    j["schema_version"] = r.schema_version;
    j["status"] = r.status;
    j["value"] = r.value;
    j["case"] = r.termination;
    j["direction"] = r.direction;
    j["dispersal"] = r.dispersal;
    j["capture_point"] = {r.capture_point[0], r.capture_point[1]};
    j["heading_A"] = r.heading_A;
    j["heading_D"] = r.heading_D;
    j["u_T"] = r.u_T;
    j["t_f"] = r.t_f;
    j["directions"] = {{"ccw", to_json(r.ccw)}, {"cw", to_json(r.cw)}};
    return j;
}

inline DirectionReport direction_report_from_json(const nlohmann::json& j) {
    DirectionReport r;
    r.termination = j.at("case").get<std::string>();
    if (j.contains("value")) r.value = j.at("value").get<double>();
    if (j.contains("t_f")) r.t_f = j.at("t_f").get<double>();
    if (j.contains("capture_point"))
        r.capture_point = {j.at("capture_point")[0].get<double>(), j.at("capture_point")[1].get<double>()};
    if (j.contains("heading_A")) r.heading_A = j.at("heading_A").get<double>();
    if (j.contains("heading_D")) r.heading_D = j.at("heading_D").get<double>();
    return r;
}

inline SolutionReport report_from_json(const nlohmann::json& j) {
    SolutionReport r;
    r.schema_version = j.at("schema_version").get<int>();
    r.status = j.at("status").get<std::string>();
    r.value = j.at("value").get<double>();
    r.termination = j.at("case").get<std::string>();
    r.direction = j.at("direction").get<std::string>();
    r.dispersal = j.at("dispersal").get<bool>();
    r.capture_point = {j.at("capture_point")[0].get<double>(), j.at("capture_point")[1].get<double>()};
    r.heading_A = j.at("heading_A").get<double>();
    r.heading_D = j.at("heading_D").get<double>();
    r.u_T = j.at("u_T").get<double>();
    r.t_f = j.at("t_f").get<double>();
    r.ccw = direction_report_from_json(j.at("directions").at("ccw"));
    r.cw = direction_report_from_json(j.at("directions").at("cw"));
    return r;
}

inline bool operator==(const DirectionReport& a, const DirectionReport& b) {
    return a.termination == b.termination && a.value == b.value && a.t_f == b.t_f &&
           a.capture_point == b.capture_point && a.heading_A == b.heading_A &&
           a.heading_D == b.heading_D;
}

inline bool operator==(const SolutionReport& a, const SolutionReport& b) {
    return a.schema_version == b.schema_version && a.status == b.status && a.value == b.value &&
           a.termination == b.termination && a.direction == b.direction &&
           a.dispersal == b.dispersal && a.capture_point == b.capture_point &&
           a.heading_A == b.heading_A && a.heading_D == b.heading_D && a.u_T == b.u_T &&
           a.t_f == b.t_f && a.ccw == b.ccw && a.cw == b.cw;
}

} // namespace turretguard
