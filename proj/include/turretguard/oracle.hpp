#pragma once

// Independent slow verification of the solver: dominance-region masks and the
// brute-force capture-point search are built from raw time-to-go comparisons
// only (never the closed-form boundaries), the Hamiltonian check differentiates
// the solo-defender value numerically, and the monotonicity check samples the
// region inclusions along arbitrary attacker motion.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "turretguard/geometry.hpp"
#include "turretguard/rootfind.hpp"
#include "turretguard/solver.hpp"

namespace turretguard {

struct CostateVector {
    double lambda_xA = 0.0;
    double lambda_yA = 0.0;
    double lambda_xD = 0.0;
    double lambda_yD = 0.0;
    double lambda_thetaT = 0.0;
};

namespace oracle {

// Orient a fixed-frame point into the direction-adjusted look frame.
inline Vec2 orient(Vec2 p, const GameState& s, TurnDirection dir) {
    Vec2 q = p.rotated(-s.theta_T);
    return dir == TurnDirection::CW ? q.mirrored_y() : q;
}

// Raw time-to-go comparisons, evaluated in the oriented look frame.
inline bool attacker_beats_defender(Vec2 q, Vec2 a, Vec2 d, const GameParams& p) {
    return distance(q, a) / p.nu <= distance(q, d) / p.mu;
}
inline bool attacker_beats_beam(Vec2 q, Vec2 a, const GameParams& p) {
    return distance(q, a) / p.nu <= wrap_ccw(q.angle()) / p.omega;
}

struct RegionMasks {
    Rect bbox;
    int n = 0; // samples per axis
    std::vector<uint8_t> in_RAD;
    std::vector<uint8_t> in_RAT;
    double cell_x = 0.0, cell_y = 0.0;
};

/// Cell-center membership masks of both dominance regions over a bounding box
/// covering everything reachable before capture.
inline RegionMasks region_membership_grid(const GameState& s, const GameParams& p, TurnDirection dir,
                                          const GridSpec& spec = {}) {
    validate(spec);
    const Vec2 a = orient(s.attacker, s, dir);
    const Vec2 d = orient(s.defender, s, dir);
    const double R = a.norm() + distance(a, d) + 1.0;
    RegionMasks m;
    m.bbox = {-R, R, -R, R};
    m.n = spec.resolution;
    m.in_RAD.assign(static_cast<size_t>(m.n) * m.n, 0);
    m.in_RAT.assign(static_cast<size_t>(m.n) * m.n, 0);
    m.cell_x = 2.0 * R / m.n;
    m.cell_y = 2.0 * R / m.n;
    for (int i = 0; i < m.n; ++i) {
        const double x = m.bbox.x0 + (i + 0.5) * m.cell_x;
        for (int j = 0; j < m.n; ++j) {
            const double y = m.bbox.y0 + (j + 0.5) * m.cell_y;
            const Vec2 q{x, y};
            const size_t k = static_cast<size_t>(i) * m.n + j;
            m.in_RAD[k] = attacker_beats_defender(q, a, d, p) ? 1 : 0;
            m.in_RAT[k] = attacker_beats_beam(q, a, p) ? 1 : 0;
        }
    }
    return m;
}

/// Brute-force equilibrium capture point: the point of minimum distance to the
/// turret that the attacker reaches no later than either captor, excluding the
/// target shadow. Searched on a polar grid whose angular and radial windows
/// shrink around the incumbent; the radial window shrinks faster since the
/// radius is the objective.
inline Vec2 brute_capture_point(const GameState& s, const GameParams& p, TurnDirection dir,
                                int rounds = 7) {
    const Vec2 a = orient(s.attacker, s, dir);
    const Vec2 d = orient(s.defender, s, dir);
    const double R = a.norm() + distance(a, d) + 1.0;

    const auto feasible = [&](Vec2 q) {
        return attacker_beats_defender(q, a, d, p) && attacker_beats_beam(q, a, p) &&
               !in_shadow(q, a);
    };

    double phi_c = 0.0, phi_half = kPi;           // angular window center/half-width
    double r_lo = 0.0, r_hi = R;                  // radial window
    const int n_phi = 512, n_r = 512;
    bool found = false;
    double best_r = 0.0, best_phi = 0.0;

    for (int round = 0; round < rounds; ++round) {
        for (int i = 0; i < n_phi; ++i) {
            const double phi = wrap_ccw(phi_c - phi_half + 2.0 * phi_half * i / (n_phi - 1));
            for (int j = 0; j < n_r; ++j) {
                const double r = r_lo + (r_hi - r_lo) * j / (n_r - 1);
                if (found && r >= best_r) break; // radii ascend: nothing better on this ray
                if (feasible({r * std::cos(phi), r * std::sin(phi)})) {
                    found = true;
                    best_r = r;
                    best_phi = phi;
                    break;
                }
            }
        }
        if (!found) throw AttackerWinsError("brute oracle: no feasible capture point");
        const double dr = (r_hi - r_lo) / (n_r - 1);
        r_lo = std::max(0.0, best_r - 32.0 * dr / 4.0);
        r_hi = best_r + 32.0 * dr / 4.0;
        phi_c = best_phi;
        phi_half = std::max(phi_half / 4.0, 4.0 * std::sqrt(std::max(dr, 1e-15)));
        phi_half = std::min(phi_half, kPi);
    }
    Vec2 q{best_r * std::cos(best_phi), best_r * std::sin(best_phi)};
    if (dir == TurnDirection::CW) q = q.mirrored_y();
    return q.rotated(s.theta_T);
}

/// Solo-defender value (nearest Apollonius point to the turret, minus 1) as a
/// plain function of the four mobile coordinates.
inline double solo_defender_value(Vec2 attacker, Vec2 defender, const GameParams& p) {
    const double al = p.alpha();
    const Vec2 c = (1.0 + al) * attacker - al * defender;
    return c.norm() - p.mu * al / p.nu * distance(attacker, defender) - GameParams::target_radius;
}

inline CostateVector solo_defender_costates_fd(const GameState& s, const GameParams& p,
                                               double h = 1e-6) {
    CostateVector lam;
    const auto V = [&](Vec2 a, Vec2 d) { return solo_defender_value(a, d, p); };
    const Vec2 a = s.attacker, d = s.defender;
    lam.lambda_xA = (V({a.x + h, a.y}, d) - V({a.x - h, a.y}, d)) / (2.0 * h);
    lam.lambda_yA = (V({a.x, a.y + h}, d) - V({a.x, a.y - h}, d)) / (2.0 * h);
    lam.lambda_xD = (V(a, {d.x + h, d.y}) - V(a, {d.x - h, d.y})) / (2.0 * h);
    lam.lambda_yD = (V(a, {d.x, d.y + h}) - V(a, {d.x, d.y - h})) / (2.0 * h);
    lam.lambda_thetaT = 0.0;
    return lam;
}

inline CostateVector solo_defender_costates_analytic(const GameState& s, const GameParams& p) {
    const double al = p.alpha();
    const Vec2 a = s.attacker, d = s.defender;
    const Vec2 c = (1.0 + al) * a - al * d;
    const double rc = c.norm();
    const double sep = distance(a, d);
    const double k = p.mu * al / p.nu;
    CostateVector lam;
    lam.lambda_xA = c.x * (1.0 + al) / rc - k * (a.x - d.x) / sep;
    lam.lambda_yA = c.y * (1.0 + al) / rc - k * (a.y - d.y) / sep;
    lam.lambda_xD = -c.x * al / rc + k * (a.x - d.x) / sep;
    lam.lambda_yD = -c.y * al / rc + k * (a.y - d.y) / sep;
    lam.lambda_thetaT = 0.0;
    return lam;
}

/// |H| for the solo-defender candidate value, from finite-difference costates.
/// Zero is the saddle-point verification identity.
inline double hamiltonian_residual(const GameState& s, const GameParams& p) {
    const auto lam = solo_defender_costates_fd(s, p);
    const double nA = std::hypot(lam.lambda_xA, lam.lambda_yA);
    const double nD = std::hypot(lam.lambda_xD, lam.lambda_yD);
    return std::abs(-p.nu * nA + p.mu * nD);
}

// ---------------------------------------------------------------------------
// Dominance-region monotonicity along play.
//
// Membership is anchored at the sweep start: the CCW alignment budget for a
// point with initial CCW angle gamma is (gamma - omega t) and never re-wraps
// (once the beam has passed, the point is gone for that direction), while the
// CW budget is (2pi - gamma + omega t), growing as the turret winds on. Both
// reduce to the plain region definitions at t = 0.

struct MonotonicityReport {
    int checked = 0;
    int contract_violations = 0; // CCW region failed to shrink
    int expand_violations = 0;   // CW region failed to grow
};

/// Samples the two inclusions along an attacker trajectory given by a
/// position function of time, with the turret turning CCW from look angle 0.
template <typename MotionFn>
MonotonicityReport monotonicity_check(MotionFn&& attacker_at, const GameParams& p, double horizon,
                                      int n_samples, uint64_t seed) {
    MonotonicityReport rep;
    std::uint64_t z = seed ? seed : 0x9e3779b97f4a7c15ull;
    const auto next_u01 = [&z]() {
        z ^= z << 13;
        z ^= z >> 7;
        z ^= z << 17;
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    };

    const auto ccw_member = [&](Vec2 q, double t) {
        const double gamma = wrap_ccw(q.angle());
        const double budget = gamma - p.omega * t;
        if (budget < 0.0) return false;
        return distance(q, attacker_at(t)) / p.nu <= budget / p.omega;
    };
    const auto cw_member = [&](Vec2 q, double t) {
        const double gamma = wrap_ccw(q.angle());
        const double budget = kTwoPi - gamma + p.omega * t;
        return distance(q, attacker_at(t)) / p.nu <= budget / p.omega;
    };

    const double R = attacker_at(0.0).norm() + p.nu * horizon + kTwoPi * p.nu / p.omega + 2.0;
    for (int k = 0; k < n_samples; ++k) {
        const double t1 = horizon * next_u01();
        const double t2 = t1 + (horizon - t1) * next_u01();
        const double phi = kTwoPi * next_u01();
        const double r = R * std::sqrt(next_u01());
        const Vec2 q{r * std::cos(phi), r * std::sin(phi)};
        ++rep.checked;
        if (ccw_member(q, t2) && !ccw_member(q, t1)) ++rep.contract_violations;
        if (cw_member(q, t1) && !cw_member(q, t2)) ++rep.expand_violations;
    }
    return rep;
}

/// State-based variant: the attacker follows a seeded random-walk of
/// piecewise-constant headings starting from its current position (the
/// inclusions are motion-agnostic, so any trajectory is a valid probe).
inline MonotonicityReport monotonicity_check(const GameState& s, const GameParams& p, double horizon,
                                             int n_samples, uint64_t seed = 1) {
    constexpr int kSegments = 16;
    const double seg = horizon / kSegments;
    std::uint64_t z = seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull;
    const auto next_u01 = [&z]() {
        z ^= z << 13;
        z ^= z >> 7;
        z ^= z << 17;
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    };
    std::vector<double> headings(kSegments);
    for (auto& h : headings) h = kTwoPi * next_u01();
    std::vector<Vec2> knots(kSegments + 1);
    knots[0] = s.attacker.rotated(-s.theta_T);
    for (int k = 0; k < kSegments; ++k)
        knots[k + 1] = knots[k] + p.nu * seg * unit_dir(headings[k]);

    const auto attacker_at = [&](double t) {
        const int k = std::min(kSegments - 1, static_cast<int>(t / seg));
        return knots[k] + p.nu * (t - k * seg) * unit_dir(headings[k]);
    };
    return monotonicity_check(attacker_at, p, horizon, n_samples, seed);
}

} // namespace oracle
} // namespace turretguard
