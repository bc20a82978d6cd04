#pragma once

// Parameter sweeps: classify the game over a 1- or 2-axis grid of states
// derived from a base scenario. Cells are computed in parallel (capped by
// TURRETGUARD_THREADS) into a preallocated row buffer, so output order is
// row-major and deterministic regardless of thread count.

#include <cstdlib>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "turretguard/scenario.hpp"
#include "turretguard/solver.hpp"
#include "turretguard/trajectory_csv.hpp"

namespace turretguard {

inline int sweep_thread_count() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("TURRETGUARD_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1 && cap < n) n = cap;
    }
    return n;
}

inline GameState sweep_cell_state(const ScenarioFile& sc, const std::vector<SweepAxis>& axes,
                                  const std::vector<double>& values) {
    GameState st = sc.state;
    double r = st.attacker.norm();
    double th = st.attacker.angle();
    bool polar_touched = false;
    for (size_t k = 0; k < axes.size(); ++k) {
        const auto& name = axes[k].name;
        if (name == "attacker_r") {
            r = values[k];
            polar_touched = true;
        } else if (name == "attacker_theta") {
            th = values[k];
            polar_touched = true;
        } else if (name == "defender_x") {
            st.defender.x = values[k];
        } else {
            st.defender.y = values[k];
        }
    }
    if (polar_touched) st.attacker = r * unit_dir(th);
    return st;
}

inline std::string sweep_row(const ScenarioFile& sc, const std::vector<SweepAxis>& axes,
                             const std::vector<double>& values) {
    std::string row;
    for (double v : values) row += format_g10(v) + ",";
    GameState st = sweep_cell_state(sc, axes, values);
    try {
        validate(st, sc.params);
    } catch (const ValidationError&) {
        return row + "Invalid,,";
    }
    const GameStatus status = classify(st, sc.params);
    if (status.outcome != GameOutcome::TeamWins) return row + std::string(to_string(status.outcome)) + ",,";
    const auto& full = *status.solution;
    const auto& best = full.chosen == TurnDirection::CCW ? *full.ccw : *full.cw;
    return row + std::string(to_string(best.termination)) + "," + format_g10(full.value) + "," +
           to_string(full.chosen);
}

/// Row-major sweep; one CSV row per cell.
inline void run_sweep(std::ostream& os, const ScenarioFile& sc) {
    if (!sc.sweep) throw ValidationError("scenario.sweep: missing");
    const auto& axes = sc.sweep->axes;

    os << axes[0].name;
    if (axes.size() == 2) os << ',' << axes[1].name;
    os << ",case,value,direction\n";

    const auto axis_value = [](const SweepAxis& ax, int i) {
        return ax.count == 1 ? ax.min : ax.min + (ax.max - ax.min) * i / (ax.count - 1);
    };
    const long long n0 = axes[0].count;
    const long long n1 = axes.size() == 2 ? axes[1].count : 1;
    const long long total = n0 * n1;

    std::vector<std::string> rows(static_cast<size_t>(total));
    const int n_threads = sweep_thread_count();
    std::vector<std::thread> pool;
    for (int tid = 0; tid < n_threads; ++tid) {
        pool.emplace_back([&, tid]() {
            for (long long idx = tid; idx < total; idx += n_threads) {
                const int i = static_cast<int>(idx / n1);
                const int j = static_cast<int>(idx % n1);
                std::vector<double> vals{axis_value(axes[0], i)};
                if (axes.size() == 2) vals.push_back(axis_value(axes[1], j));
                rows[static_cast<size_t>(idx)] = sweep_row(sc, axes, vals);
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& r : rows) os << r << '\n';
}

} // namespace turretguard
