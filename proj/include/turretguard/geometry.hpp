#pragma once

// Geometric primitives of the turret-and-defender target-defense game:
// polar conversion, the Apollonius circle bounding the attacker's dominance
// region over the defender, the attacker's dominance region over a CCW-turning
// turret, the barrier functions that separate the two regimes, and the shadow
// test for paths through the target disk.
//
// Conventions: the turret sits at the origin, the target circle has radius 1,
// and relative angles are measured from the turret look angle. PolarPoint
// angles are normalized to (-pi, pi]; turret-region computations re-express
// angles as the CCW turn the turret needs, in [0, 2pi).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "turretguard/rootfind.hpp"

namespace turretguard {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
    friend Vec2 operator*(Vec2 v, double s) { return {s * v.x, s * v.y}; }

    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::hypot(x, y); }
    double angle() const { return std::atan2(y, x); }

    Vec2 rotated(double phi) const {
        const double c = std::cos(phi), s = std::sin(phi);
        return {c * x - s * y, s * x + c * y};
    }
    Vec2 mirrored_y() const { return {x, -y}; }
};

inline Vec2 unit_dir(double heading) { return {std::cos(heading), std::sin(heading)}; }

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

/// Wrap an angle to (-pi, pi].
inline double wrap_signed(double a) {
    double r = std::fmod(a + kPi, kTwoPi);
    if (r <= 0.0) r += kTwoPi;
    return r - kPi;
}

/// Wrap an angle to [0, 2pi).
inline double wrap_ccw(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

// ---------------------------------------------------------------------------
// Errors

struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct AttackerWinsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Origin inside the attacker's Apollonius disk: the attacker beats the
// defender to the turret, so the solo-defender construction is void.
struct OriginInsideCircleError : AttackerWinsError {
    using AttackerWinsError::AttackerWinsError;
};

struct CoincidentAgentsError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// theta_A > theta_B(r_A): the turret dominance region is not well defined.
struct PremiseViolationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoIntersectionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Domain types

struct GameParams {
    double nu = 0.7;    // attacker speed
    double mu = 1.0;    // defender speed
    double omega = 1.0; // turret max turn rate (rad/time)

    static constexpr double target_radius = 1.0;

    // nu^2 / (mu^2 - nu^2)
    double alpha() const { return nu * nu / (mu * mu - nu * nu); }
    // Radius below which the attacker out-turns the turret.
    double rate_match_radius() const { return nu / omega; }
};

inline void validate(const GameParams& p) {
    if (!(p.nu > 0.0) || !std::isfinite(p.nu)) throw ValidationError("nu: must be finite and > 0");
    if (!(p.mu > 0.0) || !std::isfinite(p.mu)) throw ValidationError("mu: must be finite and > 0");
    if (!(p.omega > 0.0) || !std::isfinite(p.omega)) throw ValidationError("omega: must be finite and > 0");
    if (!(p.nu < p.mu)) throw ValidationError("nu: attacker must be slower than the defender (nu < mu)");
    if (!(p.nu < p.omega * GameParams::target_radius))
        throw ValidationError("nu: attacker must be slower than the turret (nu < omega * target_radius)");
}

struct GameState {
    Vec2 defender;
    Vec2 attacker;
    double theta_T = 0.0; // turret look angle, radians from +x axis
};

inline void validate(const GameState& s, const GameParams& p) {
    validate(p);
    for (double v : {s.defender.x, s.defender.y, s.attacker.x, s.attacker.y, s.theta_T})
        if (!std::isfinite(v)) throw ValidationError("state: coordinates must be finite");
    if (!(s.attacker.norm() > GameParams::target_radius))
        throw ValidationError("attacker: must start outside the target (r_A > 1)");
}

struct PolarPoint {
    double r = 0.0;
    double theta = 0.0; // relative to the look angle, in (-pi, pi]

    // The CCW turn the turret needs to aim at this point, in [0, 2pi).
    double ccw_theta() const { return wrap_ccw(theta); }
};

inline PolarPoint to_polar(Vec2 p, double theta_T) {
    return {p.norm(), wrap_signed(std::atan2(p.y, p.x) - theta_T)};
}

struct ApolloniusCircle {
    Vec2 center;
    double radius = 0.0;
    double r_c = 0.0;     // distance of the center to the turret
    double theta_c = 0.0; // polar angle of the center relative to the look angle
    double alpha = 0.0;
};

/// Boundary of the attacker's dominance region over the defender: the locus
/// of points p with |p - A|/nu = |p - D|/mu.
inline ApolloniusCircle apollonius_circle(Vec2 attacker, Vec2 defender, const GameParams& p,
                                          double look_angle = 0.0) {
    const double sep = distance(attacker, defender);
    if (sep == 0.0) throw CoincidentAgentsError("apollonius_circle: attacker and defender coincide");
    const double a = p.alpha();
    ApolloniusCircle c;
    c.alpha = a;
    c.center = (1.0 + a) * attacker - a * defender;
    c.radius = p.mu * a / p.nu * sep;
    c.r_c = c.center.norm();
    c.theta_c = wrap_signed(c.center.angle() - look_angle);
    return c;
}

enum class Branch { Lower, Upper };

/// Polar form of the Apollonius boundary as seen from the turret. Requires
/// the origin outside the circle; returns nothing for directions that miss it.
inline std::optional<double> apollonius_radius_at(const ApolloniusCircle& c, double theta, Branch branch) {
    if (c.r_c <= c.radius)
        throw OriginInsideCircleError("apollonius_radius_at: origin inside the dominance region");
    const double d = wrap_signed(theta - c.theta_c);
    if (std::abs(d) > std::asin(c.radius / c.r_c)) return std::nullopt;
    const double disc = c.radius * c.radius - c.r_c * c.r_c * std::sin(d) * std::sin(d);
    const double root = std::sqrt(std::max(0.0, disc));
    return c.r_c * std::cos(d) + (branch == Branch::Lower ? -root : root);
}

/// Radius at which a ray from the turret exits the Apollonius disk when the
/// origin lies inside it (every direction has exactly one positive crossing).
inline double apollonius_ray_exit(const ApolloniusCircle& c, double theta) {
    const double d = wrap_signed(theta - c.theta_c);
    const double disc = c.radius * c.radius - c.r_c * c.r_c * std::sin(d) * std::sin(d);
    return c.r_c * std::cos(d) + std::sqrt(std::max(0.0, disc));
}

// ---------------------------------------------------------------------------
// Barrier functions of the 1v1 attacker-turret game.
//
// barrier_potential is the monotone level function whose differences measure
// how much CCW sweep the turret gets while the attacker descends between two
// radii along its tangent-line evasion path. theta_barrier(r) =
// barrier_potential(r) - pi/2 is the relative angle below which the attacker
// cannot reach the rate-match disk uncaptured.

inline double barrier_potential(double r, const GameParams& p) {
    const double a = p.rate_match_radius();
    if (r < a) throw std::domain_error("barrier_potential: r below nu/omega");
    const double w = p.omega * r / p.nu;
    return std::sqrt(std::max(0.0, w * w - 1.0)) + std::asin(std::min(1.0, p.nu / (r * p.omega)));
}

inline double theta_barrier(double r, const GameParams& p) {
    const double a = p.rate_match_radius();
    if (r < a) throw std::domain_error("theta_barrier: r below nu/omega");
    const double w = p.omega * r / p.nu;
    return std::sqrt(std::max(0.0, w * w - 1.0)) - std::acos(std::min(1.0, p.nu / (r * p.omega)));
}

/// Inverse of barrier_potential, by bracketed root-finding (the function is
/// transcendental; there is no closed form).
inline double barrier_potential_inverse(double y, const GameParams& p) {
    const double a = p.rate_match_radius();
    if (y < kPi / 2.0 - 1e-12) throw std::domain_error("barrier_potential_inverse: y below pi/2 has no preimage");
    if (y <= kPi / 2.0) return a;
    double hi = a * 2.0;
    while (barrier_potential(hi, p) < y) hi *= 2.0;
    const auto f = [&](double r) { return barrier_potential(r, p) - y; };
    return find_root(f, make_bracket(f, a, hi), 1e-13);
}

// ---------------------------------------------------------------------------
// Attacker dominance region over a CCW-turning turret.

/// Membership test: can the attacker reach p before the turret, turning CCW,
/// aligns with it? Angles are taken as CCW turns in [0, 2pi).
inline bool in_turret_region(PolarPoint pt, PolarPoint attacker, const GameParams& p) {
    const double th = pt.ccw_theta();
    const double thA = attacker.ccw_theta();
    const double lhs = pt.r * pt.r + attacker.r * attacker.r -
                       2.0 * pt.r * attacker.r * std::cos(th - thA);
    const double beam = p.nu * th / p.omega;
    return th >= 0.0 && lhs <= beam * beam;
}

/// Boundary radii of the turret dominance region in direction theta (a CCW
/// turn angle). Nothing when the direction misses the region or the geometry
/// degenerates (a root would be negative).
inline std::optional<double> turret_region_radius_at(PolarPoint attacker, double theta, Branch branch,
                                                     const GameParams& p) {
    const double thA = attacker.ccw_theta();
    const double beam = p.nu * theta / p.omega;
    const double s = attacker.r * std::sin(theta - thA);
    const double disc = beam * beam - s * s;
    if (disc < 0.0) return std::nullopt;
    const double root = std::sqrt(disc);
    const double lower = attacker.r * std::cos(theta - thA) - root;
    if (lower < 0.0) return std::nullopt;
    return branch == Branch::Lower ? lower : lower + 2.0 * root;
}

struct TurretRegionBounds {
    double theta_lo = 0.0; // lower angular bound of the region
    double theta_hi = 0.0; // upper angular bound
    double theta_u = 0.0;  // tangency angle bounding theta_hi
};

/// Angular domain of the turret dominance region (CCW convention, theta_A in
/// (0, 2pi)). Requires theta_A <= theta_barrier(r_A); beyond that the region
/// is not well defined.
inline TurretRegionBounds turret_region_bounds(PolarPoint attacker, const GameParams& p) {
    const double thA = attacker.ccw_theta();
    const double rA = attacker.r;
    if (!(thA > 0.0)) throw std::domain_error("turret_region_bounds: theta_A must be positive");
    if (!(rA > p.rate_match_radius()))
        throw std::domain_error("turret_region_bounds: r_A must exceed nu/omega");
    if (thA > theta_barrier(rA, p) + 1e-12)
        throw PremiseViolationError("turret_region_bounds: theta_A exceeds theta_barrier(r_A)");

    TurretRegionBounds b;
    b.theta_u = std::acos(p.nu / (p.omega * rA)) + thA;
    const auto f = [&](double th) { return p.nu * th / p.omega - rA * std::abs(std::sin(th - thA)); };

    const double th_min = std::max(0.0, thA - kPi / 2.0);
    b.theta_lo = find_root(f, make_bracket(f, th_min, thA), 1e-12);
    b.theta_hi = find_root(f, make_bracket(f, std::nextafter(thA, b.theta_u), b.theta_u), 1e-12);
    return b;
}

// ---------------------------------------------------------------------------
// Shadow of the target disk.

/// Minimum distance from the origin to the closed segment [a, b].
inline double segment_min_dist_to_origin(Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = ab.norm2();
    if (len2 == 0.0) return a.norm();
    const double t = std::clamp(-(a.dot(ab)) / len2, 0.0, 1.0);
    return (a + t * ab).norm();
}

/// True when p lies in the target disk or the straight path from the attacker
/// to p would cross the open target disk. Grazing tangents do not shadow.
inline bool in_shadow(Vec2 p, Vec2 attacker) {
    if (p.norm() <= GameParams::target_radius) return true;
    return segment_min_dist_to_origin(attacker, p) < GameParams::target_radius;
}

} // namespace turretguard
