#pragma once

// CLI command implementations, kept as functions so tests can exercise the
// exit-code and output contracts in-process. Exit codes: 0 success, 1 usage /
// parse / validation error, 2 attacker wins, 3 unresolved, 4 simulation
// timeout.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "turretguard/render.hpp"
#include "turretguard/report.hpp"
#include "turretguard/scenario.hpp"
#include "turretguard/simulate.hpp"
#include "turretguard/solver.hpp"
#include "turretguard/sweep.hpp"
#include "turretguard/trajectory_csv.hpp"

namespace turretguard::cli {

inline std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline int load_scenario(const std::string& path, ScenarioFile& sc, std::ostream& err) {
    const auto text = read_file(path);
    if (!text) {
        err << "error: cannot read " << path << "\n";
        return 1;
    }
    try {
        sc = parse_scenario(*text);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

inline nlohmann::json status_payload(const GameStatus& st) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["status"] = to_string(st.outcome);
    if (!st.detail.empty()) j["detail"] = st.detail;
    return j;
}

inline int cmd_solve(const std::string& path, std::ostream& out, std::ostream& err) {
    ScenarioFile sc;
    if (int rc = load_scenario(path, sc, err)) return rc;
    const GameStatus st = classify(sc.state, sc.params);
    if (st.outcome != GameOutcome::TeamWins) {
        out << status_payload(st).dump(2) << "\n";
        err << "note: " << to_string(st.outcome) << (st.detail.empty() ? "" : ": " + st.detail) << "\n";
        return st.outcome == GameOutcome::AttackerWins ? 2 : 3;
    }
    SolutionReport rep = make_report(*st.solution);
    out << to_json(rep).dump(2) << "\n";
    return 0;
}

struct SimulateOptions {
    bool feedback = false;
    TurnDirection guess = TurnDirection::CCW;
    std::string csv_path;
};

inline int cmd_simulate(const std::string& path, const SimulateOptions& opt, std::ostream& out,
                        std::ostream& err) {
    ScenarioFile sc;
    if (int rc = load_scenario(path, sc, err)) return rc;
    const GameStatus st = classify(sc.state, sc.params);
    if (st.outcome != GameOutcome::TeamWins) {
        out << status_payload(st).dump(2) << "\n";
        return st.outcome == GameOutcome::AttackerWins ? 2 : 3;
    }
    const FullSolution& full = *st.solution;
    const CaptureSolution& best = full.chosen == TurnDirection::CCW ? *full.ccw : *full.cw;
    SimConfig cfg = sc.sim.value_or(SimConfig{});

    const Trajectory tr = opt.feedback ? run_feedback(sc.state, sc.params, cfg, opt.guess)
                                       : run_open_loop(sc.state, sc.params, best, cfg);

    if (!opt.csv_path.empty()) {
        std::ofstream f(opt.csv_path, std::ios::binary);
        if (!f) {
            err << "error: cannot write " << opt.csv_path << "\n";
            return 1;
        }
        write_trajectory_csv(f, tr);
    }

    nlohmann::json j;
    j["schema_version"] = 1;
    j["status"] = "TeamWins";
    j["mode"] = opt.feedback ? "feedback" : "open-loop";
    j["outcome"] = to_string(tr.outcome);
    j["value"] = round_sig12(full.value);
    j["terminal_distance"] = round_sig12(tr.terminal_distance);
    j["t_f"] = round_sig12(tr.terminal_time);
    j["residual"] = round_sig12(std::abs(tr.terminal_distance - (full.value + 1.0)));
    if (!opt.csv_path.empty()) j["csv"] = opt.csv_path;
    out << j.dump(2) << "\n";
    return tr.outcome == SimOutcome::Timeout ? 4 : 0;
}

inline int cmd_sweep(const std::string& path, const std::string& out_path, std::ostream& err) {
    ScenarioFile sc;
    if (int rc = load_scenario(path, sc, err)) return rc;
    if (!sc.sweep) {
        err << "error: scenario.sweep: missing\n";
        return 1;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        err << "error: cannot write " << out_path << "\n";
        return 1;
    }
    run_sweep(f, sc);
    return 0;
}

inline int cmd_render(const std::string& path, const std::string& svg_path, std::ostream& err) {
    const auto text = read_file(path);
    if (!text) {
        err << "error: cannot read " << path << "\n";
        return 1;
    }
    std::string svg;
    // Trajectory CSV input renders paths; otherwise solve the scenario.
    if (text->rfind("t,x_D", 0) == 0) {
        try {
            svg = render_trajectory_svg(parse_trajectory_csv(*text));
        } catch (const ValidationError& e) {
            err << "error: " << e.what() << "\n";
            return 1;
        }
    } else {
        ScenarioFile sc;
        try {
            sc = parse_scenario(*text);
        } catch (const ValidationError& e) {
            err << "error: " << e.what() << "\n";
            return 1;
        }
        const GameStatus st = classify(sc.state, sc.params);
        if (st.outcome != GameOutcome::TeamWins) {
            err << "note: render skipped: " << to_string(st.outcome)
                << (st.detail.empty() ? "" : ": " + st.detail) << "\n";
            return st.outcome == GameOutcome::AttackerWins ? 2 : 3;
        }
        svg = render_solution_svg(sc.state, sc.params, *st.solution);
    }
    std::ofstream f(svg_path, std::ios::binary);
    if (!f) {
        err << "error: cannot write " << svg_path << "\n";
        return 1;
    }
    f << svg;
    return 0;
}

} // namespace turretguard::cli
