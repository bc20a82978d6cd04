#pragma once

// Bracketed scalar root-finding and constrained grid minimization. The
// root-finder is bisection with a secant step taken whenever it stays safely
// inside the bracket, so convergence is deterministic and the bracket never
// breaks. The grid minimizer does a coarse scan plus local refinement passes
// that shrink the window around the incumbent.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>

namespace turretguard {

struct InvalidBracketError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
    double f_lo = 0.0;
    double f_hi = 0.0;
};

template <typename F>
Bracket make_bracket(F&& f, double lo, double hi) {
    if (!(lo < hi)) throw InvalidBracketError("make_bracket: lo must be < hi");
    Bracket b{lo, hi, f(lo), f(hi)};
    if (b.f_lo * b.f_hi > 0.0) throw InvalidBracketError("make_bracket: no sign change on [lo, hi]");
    return b;
}

/// Root of f in the bracket, to |f(x)| = 0 or interval width <= tol. Secant
/// steps are taken only when they land safely inside the bracket and every
/// other iteration bisects, so the width halves at least every two steps.
template <typename F>
double find_root(F&& f, Bracket b, double tol) {
    if (b.f_lo == 0.0) return b.lo;
    if (b.f_hi == 0.0) return b.hi;
    double lo = b.lo, hi = b.hi, flo = b.f_lo, fhi = b.f_hi;
    for (int it = 0; it < 400 && hi - lo > tol; ++it) {
        double x = 0.5 * (lo + hi);
        if (it % 2 == 0 && fhi != flo) {
            const double s = lo - flo * (hi - lo) / (fhi - flo);
            const double margin = 0.01 * (hi - lo);
            if (s > lo + margin && s < hi - margin) x = s;
        }
        const double fx = f(x);
        if (fx == 0.0) return x;
        if (flo * fx < 0.0) {
            hi = x;
            fhi = fx;
        } else {
            lo = x;
            flo = fx;
        }
    }
    return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

struct GridSpec {
    int resolution = 256;
    int refine_rounds = 3;
};

inline void validate(const GridSpec& g) {
    if (g.resolution < 16) throw std::invalid_argument("GridSpec: resolution must be >= 16");
    if (g.refine_rounds < 1) throw std::invalid_argument("GridSpec: refine_rounds must be >= 1");
}

struct Rect {
    double x0 = 0.0, x1 = 0.0;
    double y0 = 0.0, y1 = 0.0;
};

struct GridPoint {
    double x = 0.0, y = 0.0;
};

/// Feasible lattice sample minimizing the objective, refined refine_rounds
/// times around the incumbent with an 8x smaller window each round. Nothing
/// when no sample is feasible.
template <typename Obj, typename Feas>
std::optional<GridPoint> grid_argmin(Obj&& objective, Feas&& feasible, Rect domain, const GridSpec& spec) {
    validate(spec);
    const int n = spec.resolution;
    bool found = false;
    GridPoint best{};
    double best_val = 0.0;

    Rect window = domain;
    for (int round = 0; round < spec.refine_rounds; ++round) {
        for (int i = 0; i < n; ++i) {
            const double x = window.x0 + (window.x1 - window.x0) * i / (n - 1);
            for (int j = 0; j < n; ++j) {
                const double y = window.y0 + (window.y1 - window.y0) * j / (n - 1);
                if (!feasible(x, y)) continue;
                const double v = objective(x, y);
                if (!found || v < best_val) {
                    found = true;
                    best_val = v;
                    best = {x, y};
                }
            }
        }
        if (!found) return std::nullopt;
        const double hx = (window.x1 - window.x0) / 16.0;
        const double hy = (window.y1 - window.y0) / 16.0;
        window.x0 = std::max(domain.x0, best.x - hx);
        window.x1 = std::min(domain.x1, best.x + hx);
        window.y0 = std::max(domain.y0, best.y - hy);
        window.y1 = std::min(domain.y1, best.y + hy);
    }
    return best;
}

/// Side length of the final refinement round's grid cell.
inline double grid_final_cell(Rect domain, const GridSpec& spec) {
    const double ext = std::max(domain.x1 - domain.x0, domain.y1 - domain.y0);
    return ext / (spec.resolution - 1) / std::pow(8.0, spec.refine_rounds - 1);
}

} // namespace turretguard
