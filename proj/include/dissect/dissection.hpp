#pragma once

#include <string>
#include <vector>

#include "dissect/arrangement.hpp"
#include "dissect/geom.hpp"

namespace dissect {

// Raised when an input file does not match the documented schema.
struct schema_error : std::runtime_error {
    explicit schema_error(const std::string& what) : std::runtime_error(what) {}
};

// A simple polygon with counterclockwise corners. Pinched or self-touching
// boundaries are rejected; holes are impossible by construction.
struct Polygon {
    std::vector<Point> corners;

    std::vector<Segment> sides() const;
    CornerAngle angle_at(size_t i) const;
    Scalar area() const;  // exact, positive
    Scalar squared_diameter() const;
};

// Validates simplicity, orientation and non-collinearity; throws domain_error.
Polygon make_polygon(std::vector<Point> corners);

// A rigid motion: rotation by the exact unit vector (c, s) followed by a
// translation. The determinant is c^2 + s^2 = +1, so flips cannot be
// represented at all.
struct Placement {
    Scalar c, s, tx, ty;

    Point apply(const Point& p) const;
    Polygon apply(const Polygon& poly) const;
};

// Throws domain_error unless c^2 + s^2 == 1 exactly.
Placement make_placement(Scalar c, Scalar s, Scalar tx, Scalar ty);

enum class WhichTarget { P, Pprime };
inline const char* target_name(WhichTarget t) { return t == WhichTarget::P ? "P" : "Pprime"; }

struct Dissection {
    std::vector<Polygon> pieces;
    Polygon target_p, target_pprime;
    std::vector<Placement> placements_p, placements_pprime;

    const Polygon& target(WhichTarget t) const {
        return t == WhichTarget::P ? target_p : target_pprime;
    }
    const std::vector<Placement>& placements(WhichTarget t) const {
        return t == WhichTarget::P ? placements_p : placements_pprime;
    }
    Polygon placed_piece(WhichTarget t, size_t i) const {
        return placements(t)[i].apply(pieces[i]);
    }
};

struct TilingViolation {
    enum class Kind { Overlap, Gap, BoundaryLeak, AreaMismatch };
    Kind kind;
    std::vector<int> pieces;  // pieces involved, empty for area mismatch
    bool has_witness = false;
    Point witness;
};

const char* violation_kind_name(TilingViolation::Kind k);

struct TilingReport {
    bool ok = false;
    std::vector<TilingViolation> violations;
    Arrangement arrangement;  // the overlay used for the verdict
};

// Overlays the placed piece boundaries with the target boundary and checks
// that every bounded face inside the target is covered by exactly one piece
// and nothing sticks out. Witnesses are face sample points.
TilingReport verify_tiling(const Dissection& d, WhichTarget which);

struct PieceCornerFinding {
    int piece;
    std::vector<int> contained_corners;   // target corner ids, closed containment
    std::vector<int> exclusive_corners;   // strictly interior ones
    bool diameter_ok;                     // squared diameter <= 2*sqrt(3)
};

struct CornerLemmaReport {
    bool ok = true;
    std::vector<PieceCornerFinding> findings;
    // rule ids: "corner-T" (a piece holds two corners of the triangle),
    // "corner-S-diagonal" (a piece holds two diagonal square corners),
    // "piece-diameter" (a piece is wider than the square diagonal)
    std::vector<std::string> violations;
};

// Necessary-condition checks for one target. A triangular target applies the
// two-corners rule, a quadrilateral target the diagonal-corners rule; the
// diameter precondition is checked for every piece.
CornerLemmaReport check_corner_lemmas(const Dissection& d, WhichTarget which);

// Both targets combined.
CornerLemmaReport check_corner_lemmas(const Dissection& d);

// JSON interchange (schema 1, all coordinates in ScalarText).
Dissection load_dissection(const std::string& path);
Dissection parse_dissection_text(const std::string& json_text);
std::string dissection_to_json(const Dissection& d);

}  // namespace dissect
