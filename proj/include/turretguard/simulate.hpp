#pragma once

// Forward integration of the game kinematics under constant-speed heading
// controls, with capture detection and event-time refinement. Euler stepping
// is exact in direction for piecewise-constant controls, so the only
// discretization error is event timing; events are refined inside the final
// step (closest approach for defender capture, linear crossing for beam
// alignment and target entry).

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "turretguard/geometry.hpp"
#include "turretguard/solver.hpp"

namespace turretguard {

struct SimConfig {
    double dt = 1e-4;
    double capture_tol_dist = 5e-4;  // defender capture proximity threshold
    double capture_tol_angle = 5e-4; // turret alignment threshold (radians)
    double max_time = 50.0;
    int resolve_period = 100;        // steps between feedback re-solves (0 = open loop)
    int sample_stride = 1;           // record every n-th step; 0 = endpoints only
};

inline void validate(const SimConfig& c) {
    if (!(c.dt > 0.0)) throw ValidationError("sim.dt: must be > 0");
    if (!(c.capture_tol_dist > 0.0)) throw ValidationError("sim.capture_tol_dist: must be > 0");
    if (!(c.capture_tol_angle > 0.0)) throw ValidationError("sim.capture_tol_angle: must be > 0");
    if (!(c.max_time > 0.0)) throw ValidationError("sim.max_time: must be > 0");
    if (c.resolve_period < 0) throw ValidationError("sim.resolve_period: must be >= 0");
}

enum class SimOutcome { DefenderCapture, TurretCapture, SimultaneousCapture, AttackerReachedTarget, Timeout };

inline const char* to_string(SimOutcome o) {
    switch (o) {
        case SimOutcome::DefenderCapture: return "DefenderCapture";
        case SimOutcome::TurretCapture: return "TurretCapture";
        case SimOutcome::SimultaneousCapture: return "SimultaneousCapture";
        case SimOutcome::AttackerReachedTarget: return "AttackerReachedTarget";
        default: return "Timeout";
    }
}

struct Controls {
    double heading_D = 0.0;
    double heading_A = 0.0;
    double u_T = 0.0; // in [-1, 1]
};

struct TrajectorySample {
    double t = 0.0;
    GameState state;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    SimOutcome outcome = SimOutcome::Timeout;
    double terminal_distance = 0.0; // r_A at termination
    double terminal_time = 0.0;
};

inline GameState step(const GameState& s, const Controls& c, const GameParams& p, double dt) {
    GameState n = s;
    n.defender = s.defender + p.mu * dt * unit_dir(c.heading_D);
    n.attacker = s.attacker + p.nu * dt * unit_dir(c.heading_A);
    n.theta_T = s.theta_T + p.omega * c.u_T * dt;
    return n;
}

inline std::optional<SimOutcome> detect_capture(const GameState& s, const GameParams& p,
                                                const SimConfig& c) {
    const double rA = s.attacker.norm();
    if (rA <= GameParams::target_radius) return SimOutcome::AttackerReachedTarget;
    const bool by_defender = distance(s.defender, s.attacker) <= c.capture_tol_dist;
    const bool by_turret =
        std::abs(wrap_signed(s.attacker.angle() - s.theta_T)) <= c.capture_tol_angle;
    (void)p;
    if (by_defender && by_turret) return SimOutcome::SimultaneousCapture;
    if (by_defender) return SimOutcome::DefenderCapture;
    if (by_turret) return SimOutcome::TurretCapture;
    return std::nullopt;
}

using ControlPolicy = std::function<Controls(double t, const GameState&)>;

namespace detail {

// Refined event time measured from the pre-step state (controls constant
// across the refinement window, so extrapolating a little past the step that
// triggered is exact).
inline double refine_event_time(SimOutcome o, const GameState& before, const Controls& c,
                                const GameParams& p, double dt) {
    const GameState after = step(before, c, p, dt);
    switch (o) {
        case SimOutcome::DefenderCapture: {
            const Vec2 dp = after.defender - after.attacker;
            const Vec2 dv = p.mu * unit_dir(c.heading_D) - p.nu * unit_dir(c.heading_A);
            const double v2 = dv.norm2();
            const double delta = v2 > 0.0 ? -dp.dot(dv) / v2 : 0.0;
            return dt + std::clamp(delta, -dt, 10.0 * dt);
        }
        case SimOutcome::TurretCapture: {
            const double phi0 = wrap_signed(before.attacker.angle() - before.theta_T);
            double phi1 = wrap_signed(after.attacker.angle() - after.theta_T);
            if (phi1 - phi0 > kPi) phi1 -= kTwoPi;
            if (phi0 - phi1 > kPi) phi1 += kTwoPi;
            const double slope = (phi1 - phi0) / dt;
            if (slope == 0.0) return dt;
            return std::clamp(-phi0 / slope, 0.0, 10.0 * dt);
        }
        case SimOutcome::AttackerReachedTarget: {
            const double r0 = before.attacker.norm() - GameParams::target_radius;
            const double r1 = after.attacker.norm() - GameParams::target_radius;
            if (r1 >= r0) return dt;
            return std::clamp(dt * r0 / (r0 - r1), 0.0, dt);
        }
        default:
            return dt;
    }
}

} // namespace detail

/// Core loop: integrate under a control policy until capture, target entry,
/// or max_time.
inline Trajectory run_policy(GameState state, const GameParams& p, const SimConfig& cfg,
                             const ControlPolicy& policy) {
    validate(cfg);
    Trajectory out;
    double t = 0.0;
    long stepno = 0;
    const auto record = [&](double tt, const GameState& st) {
        if (cfg.sample_stride > 0 && stepno % cfg.sample_stride == 0) out.samples.push_back({tt, st});
    };
    const auto set_final = [&](double tt, const GameState& st) {
        if (!out.samples.empty() && out.samples.back().t == t)
            out.samples.back() = {tt, st};
        else
            out.samples.push_back({tt, st});
    };
    if (cfg.sample_stride == 0) out.samples.push_back({t, state});
    record(t, state);

    if (auto o = detect_capture(state, p, cfg)) {
        out.outcome = *o;
        out.terminal_distance = state.attacker.norm();
        out.terminal_time = 0.0;
        return out;
    }

    while (t < cfg.max_time) {
        const Controls c = policy(t, state);
        const GameState before = state;
        state = step(state, c, p, cfg.dt);
        t += cfg.dt;
        ++stepno;
        record(t, state);
        if (auto o = detect_capture(state, p, cfg)) {
            double tau;
            if (*o == SimOutcome::SimultaneousCapture) {
                const double td = detail::refine_event_time(SimOutcome::DefenderCapture, before, c, p, cfg.dt);
                const double tt = detail::refine_event_time(SimOutcome::TurretCapture, before, c, p, cfg.dt);
                tau = 0.5 * (td + tt);
            } else {
                tau = detail::refine_event_time(*o, before, c, p, cfg.dt);
            }
            const GameState final_state = step(before, c, p, tau);
            out.outcome = *o;
            out.terminal_distance = final_state.attacker.norm();
            out.terminal_time = t - cfg.dt + tau;
            set_final(out.terminal_time, final_state);
            return out;
        }
    }
    out.outcome = SimOutcome::Timeout;
    out.terminal_distance = state.attacker.norm();
    out.terminal_time = t;
    set_final(t, state);
    return out;
}

/// All agents hold the solution's constant controls.
inline Trajectory run_open_loop(const GameState& s, const GameParams& p, const CaptureSolution& sol,
                                const SimConfig& cfg) {
    const Controls c{sol.heading_D, sol.heading_A, sol.u_T};
    return run_policy(s, p, cfg, [c](double, const GameState&) { return c; });
}

/// Feedback play: the team re-solves every resolve_period steps and plays the
/// chosen direction; the attacker starts against its guessed turn direction
/// and re-adjusts to the observed one at the next re-solve.
inline Trajectory run_feedback(const GameState& s, const GameParams& p, const SimConfig& cfg,
                               TurnDirection attacker_guess) {
    if (cfg.resolve_period <= 0) throw ValidationError("run_feedback: resolve_period must be > 0");
    struct Shared {
        long next_update = 0;
        long stepno = 0;
        bool first = true;
        TurnDirection committed = TurnDirection::CCW;
        Controls current{};
    };
    auto sh = std::make_shared<Shared>();
    const TurnDirection guess = attacker_guess;
    const double dt = cfg.dt;

    ControlPolicy policy = [sh, &p, cfg, guess, dt](double t, const GameState& st) {
        const long stepno = std::lround(t / dt);
        if (stepno >= sh->next_update) {
            sh->next_update = stepno + cfg.resolve_period;
            try {
                const FullSolution full = solve(st, p);
                // The turret stays committed once it has started turning; the
                // re-solve only overrides when that side stopped existing.
                TurnDirection team_dir = sh->first ? full.chosen : sh->committed;
                const auto& side = team_dir == TurnDirection::CCW ? full.ccw : full.cw;
                if (!side) team_dir = full.chosen;
                const CaptureSolution& team =
                    team_dir == TurnDirection::CCW ? *full.ccw : *full.cw;
                sh->current.heading_D = team.heading_D;
                sh->current.u_T = team.u_T;
                // Attacker: guessed direction first, observed direction after.
                const TurnDirection a_dir = sh->first ? guess : team_dir;
                try {
                    sh->current.heading_A = solve_direction(st, p, a_dir).heading_A;
                } catch (const AttackerWinsError&) {
                    // terminal-phase numerics: hold heading
                }
                sh->committed = team_dir;
                sh->first = false;
            } catch (const AttackerWinsError&) {
                // keep previous controls
            }
        }
        return sh->current;
    };
    return run_policy(s, p, cfg, policy);
}

} // namespace turretguard
