#pragma once

// Double-precision tiling oracle used to cross-check the exact kernel.
// Pieces must be convex (asserted); overlap and coverage are measured by
// Sutherland-Hodgman clipping.

#include <cmath>
#include <vector>

#include "dissect/dissection.hpp"

namespace oracle {

struct Pt {
    double x, y;
};

using Poly = std::vector<Pt>;

inline Poly to_floats(const dissect::Polygon& p) {
    Poly out;
    for (const auto& c : p.corners) out.push_back({c.x.approx(), c.y.approx()});
    return out;
}

inline double area(const Poly& p) {
    double a = 0;
    for (size_t i = 0; i < p.size(); i++) {
        const Pt& u = p[i];
        const Pt& v = p[(i + 1) % p.size()];
        a += u.x * v.y - v.x * u.y;
    }
    return a / 2;
}

inline bool convex_ccw(const Poly& p) {
    for (size_t i = 0; i < p.size(); i++) {
        const Pt& a = p[i];
        const Pt& b = p[(i + 1) % p.size()];
        const Pt& c = p[(i + 2) % p.size()];
        if ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x) < 0) return false;
    }
    return true;
}

// Clips subject against a convex clip polygon.
inline Poly clip(const Poly& subject, const Poly& clip_poly) {
    Poly out = subject;
    for (size_t i = 0; i < clip_poly.size() && !out.empty(); i++) {
        const Pt& a = clip_poly[i];
        const Pt& b = clip_poly[(i + 1) % clip_poly.size()];
        Poly in = out;
        out.clear();
        auto side = [&](const Pt& p) {
            return (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
        };
        for (size_t j = 0; j < in.size(); j++) {
            const Pt& cur = in[j];
            const Pt& nxt = in[(j + 1) % in.size()];
            double sc = side(cur), sn = side(nxt);
            if (sc >= 0) out.push_back(cur);
            if ((sc >= 0) != (sn >= 0)) {
                double t = sc / (sc - sn);
                out.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
            }
        }
    }
    return out;
}

inline double overlap_area(const Poly& a, const Poly& b) {
    Poly c = clip(a, b);
    return c.empty() ? 0.0 : std::abs(area(c));
}

struct Verdict {
    bool ok;
    double worst;  // largest area defect seen
};

// Checks: every placed piece convex and inside the target, pairwise overlap
// areas ~0, and the piece areas fill the target, all within tol.
inline Verdict check_tiling(const dissect::Dissection& d, dissect::WhichTarget which, double tol) {
    Poly target = to_floats(d.target(which));
    std::vector<Poly> placed;
    for (size_t i = 0; i < d.pieces.size(); i++)
        placed.push_back(to_floats(d.placed_piece(which, i)));
    double worst = 0;
    bool ok = true;
    double total = 0;
    for (const Poly& p : placed) {
        if (!convex_ccw(p)) return {false, 1e9};
        total += area(p);
        double outside = std::abs(area(p)) - overlap_area(p, target);
        worst = std::max(worst, outside);
        if (outside > tol) ok = false;
    }
    for (size_t i = 0; i < placed.size(); i++)
        for (size_t j = i + 1; j < placed.size(); j++) {
            double ov = overlap_area(placed[i], placed[j]);
            worst = std::max(worst, ov);
            if (ov > tol) ok = false;
        }
    double defect = std::abs(total - area(target));
    worst = std::max(worst, defect);
    if (defect > tol) ok = false;
    return {ok, worst};
}

}  // namespace oracle
