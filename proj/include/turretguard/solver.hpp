#pragma once

// Equilibrium solution of the target-defense game. For one turret turn
// direction the termination case is decided by two dominance tests (is the
// defender's best capture point safe from the turret; is the turret's best
// capture point safe from the defender), falling back to a constrained grid
// search when the turret dominance region is not well defined. The full
// solution maximizes over the two turn directions; the CW direction is solved
// by mirroring the state about the look angle and un-mirroring the result.
//
// All public entry points take fixed-frame states; internals work in the look
// frame (look angle rotated onto +x) with the turret turning CCW.

#include <cmath>
#include <optional>
#include <string>

#include "turretguard/geometry.hpp"
#include "turretguard/rootfind.hpp"

namespace turretguard {

enum class TurnDirection { CCW, CW };

inline const char* to_string(TurnDirection d) { return d == TurnDirection::CCW ? "CCW" : "CW"; }

enum class TerminationCase { SoloDefender, SoloTurret, Simultaneous, FallbackPoint, AttackerWins };

inline const char* to_string(TerminationCase c) {
    switch (c) {
        case TerminationCase::SoloDefender: return "SoloDefender";
        case TerminationCase::SoloTurret: return "SoloTurret";
        case TerminationCase::Simultaneous: return "Simultaneous";
        case TerminationCase::FallbackPoint: return "FallbackPoint";
        default: return "AttackerWins";
    }
}

struct CaptureSolution {
    double value = 0.0;          // terminal attacker distance to the turret, minus 1
    Vec2 capture_point;          // fixed frame
    TerminationCase termination = TerminationCase::SoloDefender;
    TurnDirection direction = TurnDirection::CCW;
    double heading_A = 0.0;      // fixed-frame radians
    double heading_D = 0.0;
    double u_T = 1.0;            // +1 CCW, -1 CW
    double t_f = 0.0;            // capture time
    // Gap between the radial-path capture-angle model and the propagated
    // tangent-line angle, recorded when it exceeds 1e-6 (solo turret only).
    std::optional<double> capture_angle_model_gap;
};

struct FullSolution {
    double value = 0.0;                 // max over turn directions
    TurnDirection chosen = TurnDirection::CCW;
    std::optional<CaptureSolution> ccw; // absent when that direction is an attacker win
    std::optional<CaptureSolution> cw;
    bool dispersal = false;             // |V+ - V-| within tolerance: either direction optimal
};

inline constexpr double kDispersalTol = 1e-9;

namespace detail {

// Look-frame state: look angle on +x, turret turning CCW.
struct Frame {
    Vec2 a; // attacker
    Vec2 d; // defender
};

inline Frame to_frame(const GameState& s, TurnDirection dir) {
    Frame f{s.attacker.rotated(-s.theta_T), s.defender.rotated(-s.theta_T)};
    if (dir == TurnDirection::CW) {
        f.a = f.a.mirrored_y();
        f.d = f.d.mirrored_y();
    }
    return f;
}

inline CaptureSolution from_frame(CaptureSolution sol, const GameState& s, TurnDirection dir) {
    if (dir == TurnDirection::CW) {
        sol.capture_point = sol.capture_point.mirrored_y();
        sol.heading_A = -sol.heading_A;
        sol.heading_D = -sol.heading_D;
        sol.u_T = -1.0;
    }
    sol.capture_point = sol.capture_point.rotated(s.theta_T);
    sol.heading_A = wrap_signed(sol.heading_A + s.theta_T);
    sol.heading_D = wrap_signed(sol.heading_D + s.theta_T);
    sol.direction = dir;
    return sol;
}

inline double heading_to(Vec2 from, Vec2 to) {
    const Vec2 d = to - from;
    return (d.x == 0.0 && d.y == 0.0) ? 0.0 : d.angle();
}

// CCW turn the turret needs to aim at p, in [0, 2pi).
inline double ccw_angle(Vec2 p) { return wrap_ccw(p.angle()); }

// Attacker heading of the 1v1 game against a CCW turret (look frame): the
// straight line tangent to the rate-match circle, run with the sweep.
inline double evasion_heading(Vec2 a, const GameParams& p) {
    const double rA = a.norm();
    const double u_hat = std::asin(std::min(1.0, p.nu / (p.omega * rA)));
    return wrap_signed(wrap_ccw(a.angle()) - kPi - u_hat);
}

// Chord length from the attacker to its Apollonius circle along a heading at
// angle psi from the defender->attacker line of sight.
inline double apollonius_chord(double psi, double sep, const GameParams& p) {
    const double m = p.mu / p.nu;
    return p.alpha() * sep * (std::cos(psi) + std::sqrt(m * m - std::sin(psi) * std::sin(psi)));
}

// Point where the attacker's 1v1 evasion ray meets the Apollonius boundary.
inline Vec2 evasion_ray_circle_point(const Frame& f, const GameParams& p) {
    const double sep = distance(f.a, f.d);
    if (sep == 0.0) throw CoincidentAgentsError("evasion ray: attacker and defender coincide");
    const double uA = evasion_heading(f.a, p);
    const double psi = uA - (f.a - f.d).angle();
    return f.a + apollonius_chord(psi, sep, p) * unit_dir(uA);
}

// Nearest point of the Apollonius disk to the turret, with its feasibility.
struct SoloDefenderGeometry {
    ApolloniusCircle circle;
    Vec2 point;          // (c/|c|)(|c| - rho)
    bool feasible = false; // origin outside the disk and point outside target
};

inline SoloDefenderGeometry solo_defender_geometry(const Frame& f, const GameParams& p) {
    SoloDefenderGeometry g;
    g.circle = apollonius_circle(f.a, f.d, p);
    const double r = g.circle.r_c - g.circle.radius;
    g.point = (g.circle.r_c > 0.0) ? (r / g.circle.r_c) * g.circle.center : Vec2{};
    g.feasible = g.circle.r_c > g.circle.radius && r > GameParams::target_radius;
    return g;
}

// Lemma-style dominance test: the defender's capture point is reachable by
// the attacker before the CCW beam gets there. False when the solo-defender
// point does not exist.
inline bool defender_point_in_turret_region(const Frame& f, const GameParams& p) {
    const auto g = solo_defender_geometry(f, p);
    if (!g.feasible) return false;
    if (!(g.point.norm() > p.rate_match_radius())) return false;
    return distance(f.a, g.point) / p.nu <= ccw_angle(g.point) / p.omega;
}

// Surrogate test at the evasion-ray circle point: the beam wins the race to
// it, so the turret's capture point lies inside the defender-dominance disk.
inline bool turret_point_in_defender_region(const Frame& f, const GameParams& p) {
    const Vec2 pd = evasion_ray_circle_point(f, p);
    if (!(pd.norm() > p.rate_match_radius())) return false;
    return distance(f.a, pd) / p.nu > ccw_angle(pd) / p.omega;
}

inline CaptureSolution make_solution(const Frame& f, Vec2 capture, TerminationCase c, double value,
                                     double t_f, const GameParams&) {
    CaptureSolution s;
    s.value = value;
    s.capture_point = capture;
    s.termination = c;
    s.heading_A = heading_to(f.a, capture);
    s.heading_D = heading_to(f.d, capture);
    s.u_T = 1.0;
    s.t_f = t_f;
    return s;
}

// Guard shared by every branch: a non-positive value or a capture path that
// crosses the target means the attacker reaches the target first.
inline void check_capture_admissible(const Frame& f, const CaptureSolution& s) {
    if (s.value <= 0.0) throw AttackerWinsError("capture point inside the target");
    if (s.t_f > 0.0 && in_shadow(s.capture_point, f.a))
        throw AttackerWinsError("capture path crosses the target");
}

inline CaptureSolution solve_solo_defender_frame(const Frame& f, const GameParams& p) {
    const auto g = solo_defender_geometry(f, p);
    if (g.circle.r_c <= g.circle.radius)
        throw AttackerWinsError("solo defender: origin inside the dominance region");
    const double value = g.circle.r_c - g.circle.radius - GameParams::target_radius;
    if (value <= 0.0) throw AttackerWinsError("solo defender: capture point inside the target");
    auto s = make_solution(f, g.point, TerminationCase::SoloDefender, value,
                           distance(f.a, g.point) / p.nu, p);
    check_capture_admissible(f, s);
    return s;
}

inline CaptureSolution solve_solo_turret_frame(const Frame& f, const GameParams& p) {
    const double rA = f.a.norm();
    const double thA = wrap_ccw(f.a.angle());
    const double level = barrier_potential(rA, p) - thA;
    if (level < kPi / 2.0)
        throw std::domain_error("solo turret: attacker reaches the rate-match disk (outside solved regime)");
    const double rf = barrier_potential_inverse(level, p);

    // Propagate the straight tangent-line path to the alignment point.
    const double a = p.rate_match_radius();
    const double s_len = std::sqrt(std::max(0.0, rA * rA - a * a)) - std::sqrt(std::max(0.0, rf * rf - a * a));
    const Vec2 capture = f.a + s_len * unit_dir(evasion_heading(f.a, p));

    auto s = make_solution(f, capture, TerminationCase::SoloTurret, rf - GameParams::target_radius,
                           s_len / p.nu, p);
    const double angle_radial_model = p.omega * (rA - rf) / p.nu;
    const double angle_propagated = p.omega * s_len / p.nu;
    const double gap = std::abs(angle_radial_model - angle_propagated);
    if (gap > 1e-6) s.capture_angle_model_gap = gap;
    check_capture_admissible(f, s);
    return s;
}

inline CaptureSolution solve_simultaneous_frame(const Frame& f, const GameParams& p) {
    const double rA = f.a.norm();
    const PolarPoint polarA{rA, wrap_signed(f.a.angle())};
    const auto bounds = turret_region_bounds(polarA, p);
    const auto circle = apollonius_circle(f.a, f.d, p);

    // Lower boundary of the turret dominance region.
    const double thA = polarA.ccw_theta();
    const auto region_low = [&](double th) {
        const double beam = p.nu * th / p.omega;
        const double s = rA * std::sin(th - thA);
        return rA * std::cos(th - thA) - std::sqrt(std::max(0.0, beam * beam - s * s));
    };
    // Nearest Apollonius crossing along the ray at angle th.
    const bool origin_outside = circle.r_c > circle.radius;
    const double theta_c = thA + wrap_signed(circle.theta_c - thA);
    const auto circle_near = [&](double th) {
        const double d = th - theta_c;
        const double disc = circle.radius * circle.radius -
                            circle.r_c * circle.r_c * std::sin(d) * std::sin(d);
        const double root = std::sqrt(std::max(0.0, disc));
        return circle.r_c * std::cos(d) + (origin_outside ? -root : root);
    };

    double lo = bounds.theta_lo, hi = bounds.theta_hi;
    if (origin_outside) {
        const double half = std::asin(std::min(1.0, circle.radius / circle.r_c));
        lo = std::max(lo, theta_c - half);
        hi = std::min(hi, theta_c + half);
    }
    if (!(lo <= hi))
        throw NoIntersectionError("simultaneous capture: boundary domains do not overlap");

    const auto gap = [&](double th) { return region_low(th) - circle_near(th); };

    // Scan for sign changes; refine each and keep the crossing nearest the
    // turret (the equilibrium point when several intersections exist).
    constexpr int kScan = 512;
    double best_theta = 0.0, best_r = 0.0, min_abs = 0.0;
    double min_abs_theta = lo;
    bool have_root = false;
    double prev_th = lo, prev_g = gap(lo);
    min_abs = std::abs(prev_g);
    for (int i = 1; i <= kScan; ++i) {
        const double th = lo + (hi - lo) * i / kScan;
        const double gv = gap(th);
        if (std::abs(gv) < min_abs) {
            min_abs = std::abs(gv);
            min_abs_theta = th;
        }
        if (prev_g == 0.0 || prev_g * gv <= 0.0) {
            const double root_th = (prev_g == 0.0)
                                       ? prev_th
                                       : find_root(gap, Bracket{prev_th, th, prev_g, gv}, 1e-13);
            const double r = circle_near(root_th);
            if (!have_root || r < best_r) {
                have_root = true;
                best_r = r;
                best_theta = root_th;
            }
        }
        prev_th = th;
        prev_g = gv;
    }
    if (!have_root) {
        // Tangency: the curves touch without a sign change.
        if (min_abs <= 1e-9) {
            best_theta = min_abs_theta;
            best_r = circle_near(best_theta);
        } else {
            throw NoIntersectionError("simultaneous capture: no boundary intersection found");
        }
    }

    const Vec2 capture = best_r * unit_dir(best_theta);
    auto s = make_solution(f, capture, TerminationCase::Simultaneous,
                           best_r - GameParams::target_radius, distance(f.a, capture) / p.nu, p);
    check_capture_admissible(f, s);
    return s;
}

// Feasible set of the fallback: defender-dominance disk minus the target
// shadow, restricted to points the attacker reaches before the CCW beam.
inline CaptureSolution solve_fallback_frame(const Frame& f, const GameParams& p, const GridSpec& spec = {}) {
    const auto circle = apollonius_circle(f.a, f.d, p);
    const Rect domain{circle.center.x - circle.radius, circle.center.x + circle.radius,
                      circle.center.y - circle.radius, circle.center.y + circle.radius};
    const auto feasible = [&](double x, double y) {
        const Vec2 q{x, y};
        if (distance(q, circle.center) > circle.radius) return false;
        if (in_shadow(q, f.a)) return false;
        return distance(f.a, q) / p.nu <= ccw_angle(q) / p.omega;
    };
    const auto radius = [](double x, double y) { return std::hypot(x, y); };
    const auto best = grid_argmin(radius, feasible, domain, spec);
    if (!best) throw AttackerWinsError("fallback: no feasible capture point");
    const Vec2 capture{best->x, best->y};
    const double slack = grid_final_cell(domain, spec) * std::numbers::sqrt2;
    if (capture.norm() <= GameParams::target_radius + slack)
        throw AttackerWinsError("fallback: feasible set reaches the target rim");
    auto s = make_solution(f, capture, TerminationCase::FallbackPoint,
                           capture.norm() - GameParams::target_radius, distance(f.a, capture) / p.nu, p);
    check_capture_admissible(f, s);
    return s;
}

inline CaptureSolution solve_direction_frame(const Frame& f, const GameParams& p) {
    const double rA = f.a.norm();
    const double thA = wrap_ccw(f.a.angle());

    if (thA == 0.0) {
        // Already aligned: capture now at the attacker's position.
        CaptureSolution s;
        s.value = rA - GameParams::target_radius;
        s.capture_point = f.a;
        s.termination = TerminationCase::SoloTurret;
        s.heading_A = 0.0;
        s.heading_D = heading_to(f.d, f.a);
        s.u_T = 1.0;
        s.t_f = 0.0;
        return s;
    }
    if (thA > theta_barrier(rA, p)) return solve_fallback_frame(f, p);

    const bool solo_d = defender_point_in_turret_region(f, p);
    const bool solo_t = turret_point_in_defender_region(f, p);
    if (solo_d && solo_t) {
        // Boundary tie: report the larger value, preferring the defender.
        const auto sd = solve_solo_defender_frame(f, p);
        const auto st = solve_solo_turret_frame(f, p);
        return st.value > sd.value ? st : sd;
    }
    if (solo_d) return solve_solo_defender_frame(f, p);
    if (solo_t) return solve_solo_turret_frame(f, p);
    return solve_simultaneous_frame(f, p);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Public per-operation surface (fixed-frame states).

inline CaptureSolution solve_solo_defender(const GameState& s, const GameParams& p,
                                           TurnDirection dir = TurnDirection::CCW) {
    return detail::from_frame(detail::solve_solo_defender_frame(detail::to_frame(s, dir), p), s, dir);
}

inline CaptureSolution solve_solo_turret(const GameState& s, const GameParams& p, TurnDirection dir) {
    return detail::from_frame(detail::solve_solo_turret_frame(detail::to_frame(s, dir), p), s, dir);
}

inline Vec2 p_dagger(const GameState& s, const GameParams& p, TurnDirection dir) {
    const auto f = detail::to_frame(s, dir);
    Vec2 q = detail::evasion_ray_circle_point(f, p);
    if (dir == TurnDirection::CW) q = q.mirrored_y();
    return q.rotated(s.theta_T);
}

inline bool check_pD_in_RAT(const GameState& s, const GameParams& p, TurnDirection dir) {
    return detail::defender_point_in_turret_region(detail::to_frame(s, dir), p);
}

inline bool check_pT_in_RAD(const GameState& s, const GameParams& p, TurnDirection dir) {
    return detail::turret_point_in_defender_region(detail::to_frame(s, dir), p);
}

inline CaptureSolution solve_simultaneous(const GameState& s, const GameParams& p, TurnDirection dir) {
    return detail::from_frame(detail::solve_simultaneous_frame(detail::to_frame(s, dir), p), s, dir);
}

inline CaptureSolution solve_fallback(const GameState& s, const GameParams& p, TurnDirection dir) {
    return detail::from_frame(detail::solve_fallback_frame(detail::to_frame(s, dir), p), s, dir);
}

inline CaptureSolution solve_direction(const GameState& s, const GameParams& p, TurnDirection dir) {
    return detail::from_frame(detail::solve_direction_frame(detail::to_frame(s, dir), p), s, dir);
}

/// Full solution: both turn directions, value = max of the two. Throws
/// AttackerWinsError only when both directions report an attacker win.
inline FullSolution solve(const GameState& s, const GameParams& p) {
    validate(s, p);
    FullSolution full;
    std::string why_ccw, why_cw;
    try {
        full.ccw = solve_direction(s, p, TurnDirection::CCW);
    } catch (const AttackerWinsError& e) {
        why_ccw = e.what();
    }
    try {
        full.cw = solve_direction(s, p, TurnDirection::CW);
    } catch (const AttackerWinsError& e) {
        why_cw = e.what();
    }
    if (!full.ccw && !full.cw)
        throw AttackerWinsError("both turn directions: ccw: " + why_ccw + "; cw: " + why_cw);
    if (full.ccw && full.cw) {
        full.dispersal = std::abs(full.ccw->value - full.cw->value) <= kDispersalTol;
        full.chosen = full.cw->value > full.ccw->value ? TurnDirection::CW : TurnDirection::CCW;
    } else {
        full.chosen = full.ccw ? TurnDirection::CCW : TurnDirection::CW;
    }
    full.value = full.chosen == TurnDirection::CCW ? full.ccw->value : full.cw->value;
    return full;
}

// ---------------------------------------------------------------------------
// Game status classification.

enum class GameOutcome { TeamWins, AttackerWins, Unresolved };

inline const char* to_string(GameOutcome o) {
    switch (o) {
        case GameOutcome::TeamWins: return "TeamWins";
        case GameOutcome::AttackerWins: return "AttackerWins";
        default: return "Unresolved";
    }
}

struct GameStatus {
    GameOutcome outcome = GameOutcome::Unresolved;
    std::optional<FullSolution> solution;
    std::string detail;
};

/// TeamWins when solve succeeds. AttackerWins when the origin lies inside the
/// defender-dominance disk and the fallback search fails in both directions.
/// Unresolved otherwise (regimes the analysis leaves open).
inline GameStatus classify(const GameState& s, const GameParams& p) {
    validate(s, p);
    GameStatus st;
    try {
        st.solution = solve(s, p);
        st.outcome = GameOutcome::TeamWins;
        return st;
    } catch (const AttackerWinsError& e) {
        st.detail = e.what();
    }
    const auto circle = apollonius_circle(s.attacker, s.defender, p, s.theta_T);
    bool origin_inside = circle.r_c <= circle.radius;
    bool fallback_fails_both = true;
    for (auto dir : {TurnDirection::CCW, TurnDirection::CW}) {
        try {
            detail::solve_fallback_frame(detail::to_frame(s, dir), p);
            fallback_fails_both = false;
        } catch (const AttackerWinsError&) {
        }
    }
    st.outcome = (origin_inside && fallback_fails_both) ? GameOutcome::AttackerWins
                                                        : GameOutcome::Unresolved;
    return st;
}

/// Reflection of the state about the turret look angle (swaps turn directions).
inline GameState mirror_state(const GameState& s) {
    GameState m = s;
    m.attacker = s.attacker.rotated(-s.theta_T).mirrored_y().rotated(s.theta_T);
    m.defender = s.defender.rotated(-s.theta_T).mirrored_y().rotated(s.theta_T);
    return m;
}

} // namespace turretguard
