#pragma once

// SVG figures in the style used throughout this problem family: unit target
// circle, defender-dominance boundary in blue, turret-dominance boundary in
// green, the Value as a dashed purple ring, filled circles for initial
// positions and open circles for terminal ones. Output is byte-deterministic
// for a fixed input (fixed-precision formatting, sequential construction).

#include <cstdio>
#include <string>
#include <vector>

#include "turretguard/geometry.hpp"
#include "turretguard/solver.hpp"
#include "turretguard/trajectory_csv.hpp"

namespace turretguard {

namespace render_detail {

inline std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

struct Canvas {
    double scale = 1.0;    // px per world unit
    double half = 256.0;   // half viewport in px
    std::string body;

    double px(double wx) const { return half + scale * wx; }
    double py(double wy) const { return half - scale * wy; }

    void circle(Vec2 c, double r, const std::string& attrs) {
        body += "<circle cx=\"" + num(px(c.x)) + "\" cy=\"" + num(py(c.y)) + "\" r=\"" +
                num(scale * r) + "\" " + attrs + "/>\n";
    }
    void line(Vec2 a, Vec2 b, const std::string& attrs) {
        body += "<line x1=\"" + num(px(a.x)) + "\" y1=\"" + num(py(a.y)) + "\" x2=\"" +
                num(px(b.x)) + "\" y2=\"" + num(py(b.y)) + "\" " + attrs + "/>\n";
    }
    void polyline(const std::vector<Vec2>& pts, const std::string& attrs) {
        body += "<polyline points=\"";
        for (size_t i = 0; i < pts.size(); ++i) {
            if (i) body += ' ';
            body += num(px(pts[i].x)) + "," + num(py(pts[i].y));
        }
        body += "\" " + attrs + "/>\n";
    }
    void marker(Vec2 p, const std::string& color, bool filled) {
        body += "<circle cx=\"" + num(px(p.x)) + "\" cy=\"" + num(py(p.y)) +
                "\" r=\"4.0\" stroke=\"" + color + "\" stroke-width=\"1.5\" fill=\"" +
                (filled ? color : std::string("white")) + "\"/>\n";
    }
    std::string finish() const {
        std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"512\" height=\"512\" "
                          "viewBox=\"0 0 512 512\">\n<rect width=\"512\" height=\"512\" fill=\"white\"/>\n";
        out += body;
        out += "</svg>\n";
        return out;
    }
};

inline Canvas make_canvas(double world_extent) {
    Canvas c;
    c.scale = c.half / (world_extent * 1.1);
    return c;
}

} // namespace render_detail

/// Figure for a solved scenario: regions of the chosen direction, value ring,
/// straight equilibrium paths, initial (filled) and terminal (open) markers.
inline std::string render_solution_svg(const GameState& s, const GameParams& p, const FullSolution& full) {
    using namespace render_detail;
    const CaptureSolution& best = full.chosen == TurnDirection::CCW ? *full.ccw : *full.cw;

    double extent = GameParams::target_radius;
    for (double v : {s.attacker.norm(), s.defender.norm(), best.capture_point.norm(), full.value + 1.0})
        extent = std::max(extent, v);

    const auto f = detail::to_frame(s, full.chosen);
    const auto unorient = [&](Vec2 q) {
        if (full.chosen == TurnDirection::CW) q = q.mirrored_y();
        return q.rotated(s.theta_T);
    };

    // Defender-dominance boundary (a circle in the plane).
    const auto circle = apollonius_circle(f.a, f.d, p);

    // Turret-dominance boundary, when well defined: both radius branches over
    // the angular domain.
    std::vector<Vec2> turret_boundary;
    const PolarPoint polarA{f.a.norm(), wrap_signed(f.a.angle())};
    const double thA = polarA.ccw_theta();
    if (thA > 0.0 && thA <= theta_barrier(polarA.r, p)) {
        const auto b = turret_region_bounds(polarA, p);
        constexpr int kN = 256;
        std::vector<Vec2> lower, upper;
        for (int i = 0; i <= kN; ++i) {
            const double th = b.theta_lo + (b.theta_hi - b.theta_lo) * i / kN;
            if (auto rl = turret_region_radius_at(polarA, th, Branch::Lower, p))
                lower.push_back(unorient(*rl * unit_dir(th)));
            if (auto ru = turret_region_radius_at(polarA, th, Branch::Upper, p))
                upper.push_back(unorient(*ru * unit_dir(th)));
        }
        turret_boundary = lower;
        turret_boundary.insert(turret_boundary.end(), upper.rbegin(), upper.rend());
        if (!lower.empty()) turret_boundary.push_back(lower.front());
        for (const auto& q : turret_boundary) extent = std::max(extent, q.norm());
    }
    extent = std::max(extent, circle.center.norm() + circle.radius);

    Canvas c = make_canvas(extent);
    // target
    c.circle({0, 0}, GameParams::target_radius, "fill=\"#eeeeee\" stroke=\"#999999\" stroke-width=\"1\"");
    // look angle ray
    c.line({0, 0}, (extent * 1.05) * unit_dir(s.theta_T),
           "stroke=\"#bbbbbb\" stroke-width=\"1\" stroke-dasharray=\"2 3\"");
    // defender-dominance boundary (blue)
    c.circle(unorient(circle.center), circle.radius,
             "class=\"defender-region\" fill=\"none\" stroke=\"blue\" stroke-width=\"1.5\"");
    // turret-dominance boundary (green)
    if (!turret_boundary.empty())
        c.polyline(turret_boundary, "class=\"turret-region\" fill=\"none\" stroke=\"green\" stroke-width=\"1.5\"");
    // value ring (dashed purple)
    c.circle({0, 0}, full.value + GameParams::target_radius,
             "class=\"value-ring\" fill=\"none\" stroke=\"purple\" stroke-width=\"1.5\" stroke-dasharray=\"8 6\"");
    // straight equilibrium paths
    c.line(s.attacker, best.capture_point, "stroke=\"#cc4444\" stroke-width=\"1\"");
    const Vec2 d_end = s.defender + p.mu * best.t_f * unit_dir(best.heading_D);
    c.line(s.defender, d_end, "stroke=\"#dd8833\" stroke-width=\"1\"");
    // turret
    c.marker({0, 0}, "black", true);
    // initial filled, terminal open
    c.marker(s.attacker, "#cc4444", true);
    c.marker(s.defender, "#dd8833", true);
    c.body += "<g class=\"capture-marker\">\n";
    c.marker(best.capture_point, "#cc4444", false);
    c.body += "</g>\n";
    c.marker(d_end, "#dd8833", false);
    return c.finish();
}

/// Figure for a recorded trajectory: target, both paths, markers, final beam.
inline std::string render_trajectory_svg(const ParsedTrajectory& tr) {
    using namespace render_detail;
    double extent = GameParams::target_radius;
    for (const auto& s : tr.samples)
        extent = std::max({extent, s.state.attacker.norm(), s.state.defender.norm()});

    Canvas c = make_canvas(extent);
    c.circle({0, 0}, GameParams::target_radius, "fill=\"#eeeeee\" stroke=\"#999999\" stroke-width=\"1\"");

    const size_t stride = std::max<size_t>(1, tr.samples.size() / 2000);
    std::vector<Vec2> pa, pd;
    for (size_t i = 0; i < tr.samples.size(); i += stride) {
        pa.push_back(tr.samples[i].state.attacker);
        pd.push_back(tr.samples[i].state.defender);
    }
    pa.push_back(tr.samples.back().state.attacker);
    pd.push_back(tr.samples.back().state.defender);

    const auto& last = tr.samples.back().state;
    c.line({0, 0}, (extent * 1.05) * unit_dir(last.theta_T), "stroke=\"green\" stroke-width=\"1\"");
    c.polyline(pa, "fill=\"none\" stroke=\"#cc4444\" stroke-width=\"1\"");
    c.polyline(pd, "fill=\"none\" stroke=\"#dd8833\" stroke-width=\"1\"");
    c.marker({0, 0}, "black", true);
    c.marker(tr.samples.front().state.attacker, "#cc4444", true);
    c.marker(tr.samples.front().state.defender, "#dd8833", true);
    c.marker(last.attacker, "#cc4444", false);
    c.marker(last.defender, "#dd8833", false);
    return c.finish();
}

} // namespace turretguard
