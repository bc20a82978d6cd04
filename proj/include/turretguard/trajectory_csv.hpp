#pragma once

// Trajectory CSV format: header `t,x_D,y_D,x_A,y_A,theta_T`, one row per
// sample, and a trailing comment line carrying the outcome.

#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "turretguard/simulate.hpp"

namespace turretguard {

inline std::string format_g10(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
    os << "t,x_D,y_D,x_A,y_A,theta_T\n";
    for (const auto& s : tr.samples) {
        os << format_g10(s.t) << ',' << format_g10(s.state.defender.x) << ','
           << format_g10(s.state.defender.y) << ',' << format_g10(s.state.attacker.x) << ','
           << format_g10(s.state.attacker.y) << ',' << format_g10(s.state.theta_T) << '\n';
    }
    os << "# outcome=" << to_string(tr.outcome)
       << ",terminal_distance=" << format_g10(tr.terminal_distance) << '\n';
}

struct ParsedTrajectory {
    std::vector<TrajectorySample> samples;
    std::string outcome;
    double terminal_distance = 0.0;
};

inline ParsedTrajectory parse_trajectory_csv(const std::string& text) {
    ParsedTrajectory out;
    std::istringstream is(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto opos = line.find("outcome=");
            if (opos != std::string::npos) {
                const auto comma = line.find(',', opos);
                out.outcome = line.substr(opos + 8, comma - (opos + 8));
            }
            const auto dpos = line.find("terminal_distance=");
            if (dpos != std::string::npos)
                out.terminal_distance = std::strtod(line.c_str() + dpos + 18, nullptr);
            continue;
        }
        if (!header_seen) {
            if (line.rfind("t,", 0) != 0) throw ValidationError("trajectory csv: missing header");
            header_seen = true;
            continue;
        }
        TrajectorySample s;
        double vals[6];
        const char* ptr = line.c_str();
        for (int k = 0; k < 6; ++k) {
            char* end = nullptr;
            vals[k] = std::strtod(ptr, &end);
            if (end == ptr) throw ValidationError("trajectory csv: bad row: " + line);
            ptr = (*end == ',') ? end + 1 : end;
        }
        s.t = vals[0];
        s.state.defender = {vals[1], vals[2]};
        s.state.attacker = {vals[3], vals[4]};
        s.state.theta_T = vals[5];
        out.samples.push_back(s);
    }
    if (!header_seen || out.samples.empty())
        throw ValidationError("trajectory csv: no samples");
    return out;
}

} // namespace turretguard
