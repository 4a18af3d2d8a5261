#pragma once

#include <vector>

#include "dissect/scalar.hpp"

namespace dissect {

struct Vec {
    Scalar x, y;
    Vec() = default;
    Vec(Scalar x_, Scalar y_) : x(std::move(x_)), y(std::move(y_)) {}
    Vec operator+(const Vec& o) const { return {x + o.x, y + o.y}; }
    Vec operator-(const Vec& o) const { return {x - o.x, y - o.y}; }
    Vec operator-() const { return {-x, -y}; }
    Vec operator*(const Scalar& k) const { return {x * k, y * k}; }
    bool is_zero() const { return x.sign() == 0 && y.sign() == 0; }
};

inline Scalar dot(const Vec& a, const Vec& b) { return a.x * b.x + a.y * b.y; }
inline Scalar cross(const Vec& a, const Vec& b) { return a.x * b.y - a.y * b.x; }
inline Scalar norm2(const Vec& a) { return dot(a, a); }

struct Point {
    Scalar x, y;
    Point() = default;
    Point(Scalar x_, Scalar y_) : x(std::move(x_)), y(std::move(y_)) {}
    Vec operator-(const Point& o) const { return {x - o.x, y - o.y}; }
    Point operator+(const Vec& v) const { return {x + v.x, y + v.y}; }
};

// Lexicographic (x, y) exact comparison; the basis for deterministic maps.
int compare_points(const Point& a, const Point& b);
inline bool points_equal(const Point& a, const Point& b) { return compare_points(a, b) == 0; }

struct PointLess {
    bool operator()(const Point& a, const Point& b) const { return compare_points(a, b) < 0; }
};

enum class Orient { CW = -1, Collinear = 0, CCW = 1 };

// Sign of (q - p) x (r - p), exactly.
Orient orientation(const Point& p, const Point& q, const Point& r);

// Interior angle at a polygon corner. `incoming` arrives at the corner from
// the previous corner, `outgoing` leaves toward the next one; the interior
// lies on the left of the traversal. The angle is in (0, 2pi).
struct CornerAngle {
    Vec incoming, outgoing;
};

enum class AngleClass { Convex, Straight, Reflex };  // <pi, =pi, >pi

AngleClass classify(const CornerAngle& a);

// Total order on interior angles: -1 if u < v, 0 if equal, +1 if u > v.
// No square roots are evaluated: everything reduces to sign tests on dot and
// cross products with squared cross-multiplication.
int angle_cmp(const CornerAngle& u, const CornerAngle& v);

// Exact test angle == twelfths * pi/6, twelfths in 1..11
// (pi/3 == 2, pi/2 == 3, 2pi/3 == 4, pi == 6, 4pi/3 == 8, ...).
bool angle_is(const CornerAngle& a, int twelfths);

struct Segment {
    Point a, b;
    Segment() = default;
    Segment(Point a_, Point b_) : a(std::move(a_)), b(std::move(b_)) {}
};

// Exact squared length.
inline Scalar length2(const Segment& s) { return norm2(s.b - s.a); }

struct IntersectResult {
    enum class Kind { Empty, Point, Overlap } kind = Kind::Empty;
    Point point;       // valid when kind == Point
    Segment overlap;   // valid when kind == Overlap
};

// Exact segment intersection. Shared endpoints of non-collinear segments
// report Kind::Point; collinear contact over a positive length reports
// Kind::Overlap.
IntersectResult intersect(const Segment& s1, const Segment& s2);

// Closed containment of a point on a segment.
bool point_on_segment(const Point& p, const Segment& s);

enum class Containment { Outside, Boundary, Inside };

// Exact point location against a simple polygon given as a corner list.
Containment point_in_polygon(const Point& p, const std::vector<Point>& corners);

// Orders direction vectors counterclockwise starting from the +x axis;
// used to build rotation systems. Returns -1/0/+1.
int compare_directions(const Vec& a, const Vec& b);

}  // namespace dissect
