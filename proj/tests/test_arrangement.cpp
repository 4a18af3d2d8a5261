#include <random>

#include "dissect/arrangement.hpp"
#include "doctest.h"

using namespace dissect;

namespace {
Point P(long x, long y) { return {Scalar::from_int(x), Scalar::from_int(y)}; }
Point P(const std::string& x, const std::string& y) { return {parse_scalar(x), parse_scalar(y)}; }
}

TEST_CASE("two crossing diagonals of a square") {
    std::vector<Segment> segs{
        Segment(P(0, 0), P(1, 0)), Segment(P(1, 0), P(1, 1)),
        Segment(P(1, 1), P(0, 1)), Segment(P(0, 1), P(0, 0)),
        Segment(P(0, 0), P(1, 1)), Segment(P(1, 0), P(0, 1)),
    };
    Arrangement arr = build_arrangement(segs);
    CHECK(arr.vertices.size() == 5);
    CHECK(arr.edges.size() == 8);
    CHECK(arr.bounded_face_count() == 4);
    CHECK(arr.components == 1);
    CHECK(arr.euler_ok());
}

TEST_CASE("empty input") {
    Arrangement arr = build_arrangement({});
    CHECK(arr.vertices.empty());
    CHECK(arr.edges.empty());
    CHECK(arr.bounded_face_count() == 0);
}

TEST_CASE("degenerate segment rejected") {
    CHECK_THROWS_AS(build_arrangement({Segment(P(1, 1), P(1, 1))}), domain_error);
}

TEST_CASE("collinear overlaps merge") {
    std::vector<Segment> segs{Segment(P(0, 0), P(4, 0)), Segment(P(2, 0), P(6, 0))};
    Arrangement arr = build_arrangement(segs);
    CHECK(arr.vertices.size() == 4);
    CHECK(arr.edges.size() == 3);
    CHECK(arr.euler_ok());
}

TEST_CASE("face samples land inside their faces") {
    std::vector<Segment> segs{
        Segment(P(0, 0), P(4, 0)), Segment(P(4, 0), P(4, 4)),
        Segment(P(4, 4), P(0, 4)), Segment(P(0, 4), P(0, 0)),
        Segment(P(1, 1), P(3, 1)), Segment(P(3, 1), P(3, 3)),
        Segment(P(3, 3), P(1, 3)), Segment(P(1, 3), P(1, 1)),
    };
    Arrangement arr = build_arrangement(segs);  // square with a hole: annulus + inner square
    CHECK(arr.bounded_face_count() == 2);
    std::vector<Point> inner{P(1, 1), P(3, 1), P(3, 3), P(1, 3)};
    int annulus_samples = 0, inner_samples = 0;
    for (size_t f = 0; f < arr.faces.size(); f++) {
        if (!arr.faces[f].bounded) continue;
        Point s = face_interior_sample(arr, static_cast<int>(f));
        Containment c = point_in_polygon(s, inner);
        CHECK(c != Containment::Boundary);
        if (c == Containment::Inside)
            inner_samples++;
        else
            annulus_samples++;
        std::vector<Point> outer{P(0, 0), P(4, 0), P(4, 4), P(0, 4)};
        CHECK(point_in_polygon(s, outer) == Containment::Inside);
    }
    // one bounded contour is the hole boundary, one is the outer square; the
    // outer square's face is the annulus, so its sample must avoid the hole
    CHECK(annulus_samples == 1);
    CHECK(inner_samples == 1);
}

TEST_CASE("euler formula on random arrangements") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> c(0, 6);
    for (int iter = 0; iter < 30; iter++) {
        std::vector<Segment> segs;
        for (int i = 0; i < 8; i++) {
            Point a = P(c(rng), c(rng)), b = P(c(rng), c(rng));
            if (points_equal(a, b)) continue;
            segs.push_back(Segment(a, b));
        }
        Arrangement arr = build_arrangement(segs);
        CHECK(arr.euler_ok());
    }
}

TEST_CASE("arrangement with irrational intersection points") {
    // triangle cut by a vertical chord through an irrational abscissa
    std::vector<Segment> segs{
        Segment(P(0, 0), P(2, 0)), Segment(P(2, 0), P("1", "sqrt(3)")),
        Segment(P("1", "sqrt(3)"), P(0, 0)),
        Segment(P("sqrt(2)", "0"), P("sqrt(2)", "2")),
    };
    Arrangement arr = build_arrangement(segs);
    CHECK(arr.euler_ok());
    CHECK(arr.bounded_face_count() == 2);
}
