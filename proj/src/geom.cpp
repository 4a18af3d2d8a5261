#include "dissect/geom.hpp"

namespace dissect {

int compare_points(const Point& a, const Point& b) {
    int cx = a.x.compare(b.x);
    if (cx != 0) return cx;
    return a.y.compare(b.y);
}

Orient orientation(const Point& p, const Point& q, const Point& r) {
    int s = cross(q - p, r - p).sign();
    return s > 0 ? Orient::CCW : s < 0 ? Orient::CW : Orient::Collinear;
}

namespace {

// Rays from the corner: f points toward the next corner, r toward the
// previous one. The interior angle is the ccw angle from f to r.
struct Rays {
    Vec f, r;
    Scalar d, c;  // dot(f, r), cross(f, r)
};

Rays rays_of(const CornerAngle& a) {
    Rays out;
    out.f = a.outgoing;
    out.r = -a.incoming;
    out.d = dot(out.f, out.r);
    out.c = cross(out.f, out.r);
    return out;
}

}  // namespace

AngleClass classify(const CornerAngle& a) {
    Rays r = rays_of(a);
    int cs = r.c.sign();
    if (cs > 0) return AngleClass::Convex;
    if (cs < 0) return AngleClass::Reflex;
    if (r.d.sign() < 0) return AngleClass::Straight;
    throw domain_error("degenerate corner angle (0 or 2pi)");
}

namespace {

// Compares cos(u) vs cos(v) where cos = d/sqrt(m), m = |f|^2 |r|^2 > 0.
int compare_cosines(const Scalar& du, const Scalar& mu, const Scalar& dv, const Scalar& mv) {
    int su = du.sign(), sv = dv.sign();
    if (su >= 0 && sv < 0) return 1;
    if (su < 0 && sv >= 0) return -1;
    Scalar lhs = du * du * mv;
    Scalar rhs = dv * dv * mu;
    int c = lhs.compare(rhs);
    if (su >= 0) return c;  // both nonnegative: larger square => larger cosine
    return -c;              // both negative: larger square => smaller cosine
}

}  // namespace

int angle_cmp(const CornerAngle& u, const CornerAngle& v) {
    AngleClass cu = classify(u), cv = classify(v);
    if (cu != cv) return static_cast<int>(cu) < static_cast<int>(cv) ? -1 : 1;
    if (cu == AngleClass::Straight) return 0;
    Rays ru = rays_of(u), rv = rays_of(v);
    Scalar mu = norm2(ru.f) * norm2(ru.r);
    Scalar mv = norm2(rv.f) * norm2(rv.r);
    // In (0, pi) a larger cosine means a smaller angle; in (pi, 2pi) the
    // angle is 2pi - acos(cos), reversing the order.
    int cc = compare_cosines(ru.d, mu, rv.d, mv);
    return cu == AngleClass::Convex ? -cc : cc;
}

bool angle_is(const CornerAngle& a, int twelfths) {
    if (twelfths <= 0 || twelfths >= 12) throw domain_error("angle spec out of range");
    Rays r = rays_of(a);
    int cs = r.c.sign();
    int want_sin = twelfths < 6 ? 1 : twelfths == 6 ? 0 : -1;
    if (cs != want_sin) return false;
    if (twelfths == 6) return true;  // straight, cosine check redundant
    // cos(k pi/6) for k mod 12: squared value times 4 is 3, 1 or 0; sign below.
    static const int cos4sq[12] = {4, 3, 1, 0, 1, 3, 4, 3, 1, 0, 1, 3};
    static const int cos_sign[12] = {1, 1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};
    int k = twelfths % 12;
    if (r.d.sign() != cos_sign[k]) return false;
    Scalar m = norm2(r.f) * norm2(r.r);
    Scalar lhs = Scalar::from_int(4) * r.d * r.d;
    Scalar rhs = Scalar::from_int(cos4sq[k]) * m;
    return lhs.compare(rhs) == 0;
}

bool point_on_segment(const Point& p, const Segment& s) {
    if (orientation(s.a, s.b, p) != Orient::Collinear) return false;
    Vec d = s.b - s.a;
    Scalar t = dot(p - s.a, d);
    return t.sign() >= 0 && t.compare(norm2(d)) <= 0;
}

IntersectResult intersect(const Segment& s1, const Segment& s2) {
    IntersectResult res;
    Vec d1 = s1.b - s1.a, d2 = s2.b - s2.a;
    Scalar denom = cross(d1, d2);
    Vec w = s2.a - s1.a;
    if (denom.sign() != 0) {
        // Cross-multiplied bound checks; the division happens only for a
        // genuinely interior crossing.
        Scalar tn = cross(w, d2), un = cross(w, d1);
        int ds = denom.sign();
        Scalar t_lo = ds > 0 ? tn : -tn;       // sign of t vs 0
        Scalar t_hi = ds > 0 ? denom - tn : tn - denom;  // sign of 1 - t
        Scalar u_lo = ds > 0 ? un : -un;
        Scalar u_hi = ds > 0 ? denom - un : un - denom;
        if (t_lo.sign() < 0 || t_hi.sign() < 0 || u_lo.sign() < 0 || u_hi.sign() < 0) return res;
        res.kind = IntersectResult::Kind::Point;
        // Snap endpoint contacts to the original endpoint objects so that
        // coincident vertices merge by node identity downstream.
        if (t_lo.sign() == 0)
            res.point = s1.a;
        else if (t_hi.sign() == 0)
            res.point = s1.b;
        else if (u_lo.sign() == 0)
            res.point = s2.a;
        else if (u_hi.sign() == 0)
            res.point = s2.b;
        else
            res.point = s1.a + d1 * (tn / denom);
        return res;
    }
    if (cross(w, d1).sign() != 0) return res;  // parallel, distinct lines
    // Collinear: project s2 onto s1's parameterisation by dot products.
    Scalar len2 = norm2(d1);
    Scalar t0 = dot(s2.a - s1.a, d1), t1 = dot(s2.b - s1.a, d1);
    Point p0 = s2.a, p1 = s2.b;
    if (t0.compare(t1) > 0) {
        std::swap(t0, t1);
        std::swap(p0, p1);
    }
    Point plo = t0.sign() > 0 ? p0 : s1.a;
    Scalar lo = t0.sign() > 0 ? t0 : Scalar::from_int(0);
    Point phi = t1.compare(len2) < 0 ? p1 : s1.b;
    Scalar hi = t1.compare(len2) < 0 ? t1 : len2;
    int c = lo.compare(hi);
    if (c > 0) return res;
    if (c == 0) {
        res.kind = IntersectResult::Kind::Point;
        res.point = plo;
        return res;
    }
    res.kind = IntersectResult::Kind::Overlap;
    res.overlap = Segment(plo, phi);
    return res;
}

Containment point_in_polygon(const Point& p, const std::vector<Point>& corners) {
    bool inside = false;
    size_t n = corners.size();
    for (size_t i = 0; i < n; i++) {
        const Point& a = corners[i];
        const Point& b = corners[(i + 1) % n];
        if (point_on_segment(p, Segment(a, b))) return Containment::Boundary;
        int ay = a.y.compare(p.y), by = b.y.compare(p.y);
        if (ay <= 0 && by > 0) {
            if (orientation(a, b, p) == Orient::CCW) inside = !inside;
        } else if (by <= 0 && ay > 0) {
            if (orientation(a, b, p) == Orient::CW) inside = !inside;
        }
    }
    return inside ? Containment::Inside : Containment::Outside;
}

int compare_directions(const Vec& a, const Vec& b) {
    auto half = [](const Vec& v) {
        int ys = v.y.sign();
        if (ys != 0) return ys > 0 ? 0 : 1;
        return v.x.sign() > 0 ? 0 : 1;  // +x axis belongs to the upper half
    };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb ? -1 : 1;
    int c = cross(a, b).sign();
    return c > 0 ? -1 : c < 0 ? 1 : 0;
}

}  // namespace dissect
