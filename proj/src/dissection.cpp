#include "dissect/dissection.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace dissect {

std::vector<Segment> Polygon::sides() const {
    std::vector<Segment> out;
    size_t n = corners.size();
    for (size_t i = 0; i < n; i++) out.emplace_back(corners[i], corners[(i + 1) % n]);
    return out;
}

CornerAngle Polygon::angle_at(size_t i) const {
    size_t n = corners.size();
    const Point& prev = corners[(i + n - 1) % n];
    const Point& cur = corners[i];
    const Point& next = corners[(i + 1) % n];
    return CornerAngle{cur - prev, next - cur};
}

Scalar Polygon::area() const {
    Scalar a2 = Scalar::from_int(0);
    size_t n = corners.size();
    for (size_t i = 0; i < n; i++) {
        const Point& p = corners[i];
        const Point& q = corners[(i + 1) % n];
        a2 = a2 + (p.x * q.y - q.x * p.y);
    }
    return a2 / Scalar::from_int(2);
}

Scalar Polygon::squared_diameter() const {
    Scalar best = Scalar::from_int(0);
    for (size_t i = 0; i < corners.size(); i++)
        for (size_t j = i + 1; j < corners.size(); j++) {
            Scalar d2 = norm2(corners[j] - corners[i]);
            if (d2.compare(best) > 0) best = d2;
        }
    return best;
}

Polygon make_polygon(std::vector<Point> corners) {
    size_t n = corners.size();
    if (n < 3) throw domain_error("polygon needs at least 3 corners");
    for (size_t i = 0; i < n; i++)
        for (size_t j = i + 1; j < n; j++)
            if (points_equal(corners[i], corners[j]))
                throw domain_error("polygon has a repeated corner (pinched boundaries are rejected)");
    for (size_t i = 0; i < n; i++) {
        const Point& prev = corners[(i + n - 1) % n];
        const Point& next = corners[(i + 1) % n];
        if (orientation(prev, corners[i], next) == Orient::Collinear)
            throw domain_error("consecutive polygon corners are collinear");
    }
    Polygon poly{std::move(corners)};
    // Non-adjacent sides must not meet at all; adjacent sides only at their
    // shared corner.
    auto sides = poly.sides();
    for (size_t i = 0; i < n; i++)
        for (size_t j = i + 1; j < n; j++) {
            IntersectResult r = intersect(sides[i], sides[j]);
            bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) {
                if (r.kind != IntersectResult::Kind::Point)
                    throw domain_error("polygon is not simple (adjacent sides overlap)");
            } else if (r.kind != IntersectResult::Kind::Empty) {
                throw domain_error("polygon is not simple");
            }
        }
    if (poly.area().sign() <= 0) throw domain_error("polygon corners must be counterclockwise");
    return poly;
}

Point Placement::apply(const Point& p) const {
    return Point(c * p.x - s * p.y + tx, s * p.x + c * p.y + ty);
}

Polygon Placement::apply(const Polygon& poly) const {
    Polygon out;
    out.corners.reserve(poly.corners.size());
    for (const Point& p : poly.corners) out.corners.push_back(apply(p));
    return out;
}

Placement make_placement(Scalar c, Scalar s, Scalar tx, Scalar ty) {
    Scalar unit = c * c + s * s - Scalar::from_int(1);
    if (unit.sign() != 0) throw domain_error("placement rotation (c, s) is not an exact unit vector");
    return Placement{std::move(c), std::move(s), std::move(tx), std::move(ty)};
}

const char* violation_kind_name(TilingViolation::Kind k) {
    switch (k) {
        case TilingViolation::Kind::Overlap: return "overlap";
        case TilingViolation::Kind::Gap: return "gap";
        case TilingViolation::Kind::BoundaryLeak: return "boundary-leak";
        case TilingViolation::Kind::AreaMismatch: return "area-mismatch";
    }
    return "?";
}

TilingReport verify_tiling(const Dissection& d, WhichTarget which) {
    TilingReport report;
    const Polygon& target = d.target(which);

    Scalar total = Scalar::from_int(0);
    for (const Polygon& p : d.pieces) total = total + p.area();
    if (total.compare(target.area()) != 0)
        report.violations.push_back({TilingViolation::Kind::AreaMismatch, {}, false, Point()});

    std::vector<Polygon> placed;
    std::vector<Segment> segments;
    for (const Segment& s : target.sides()) segments.push_back(s);
    for (size_t i = 0; i < d.pieces.size(); i++) {
        placed.push_back(d.placed_piece(which, i));
        for (const Segment& s : placed.back().sides()) segments.push_back(s);
    }

    report.arrangement = build_arrangement(segments);
    const Arrangement& arr = report.arrangement;
    for (size_t f = 0; f < arr.faces.size(); f++) {
        if (!arr.faces[f].bounded) continue;
        Point sample = face_interior_sample(arr, static_cast<int>(f));
        bool inside = point_in_polygon(sample, target.corners) == Containment::Inside;
        std::vector<int> covering;
        for (size_t i = 0; i < placed.size(); i++)
            if (point_in_polygon(sample, placed[i].corners) == Containment::Inside)
                covering.push_back(static_cast<int>(i));
        if (inside && covering.empty())
            report.violations.push_back({TilingViolation::Kind::Gap, {}, true, sample});
        else if (covering.size() >= 2)
            report.violations.push_back({TilingViolation::Kind::Overlap, covering, true, sample});
        else if (!inside && !covering.empty())
            report.violations.push_back({TilingViolation::Kind::BoundaryLeak, covering, true, sample});
    }
    report.ok = report.violations.empty();
    return report;
}

namespace {

// Squared diagonal of the square with area sqrt(3): 2 * sqrt(3).
Scalar diameter_cap() { return Scalar::from_int(2) * sqrt(Scalar::from_int(3)); }

}  // namespace

CornerLemmaReport check_corner_lemmas(const Dissection& d, WhichTarget which) {
    CornerLemmaReport report;
    const Polygon& target = d.target(which);
    size_t nc = target.corners.size();
    Scalar cap = diameter_cap();
    for (size_t i = 0; i < d.pieces.size(); i++) {
        Polygon placed = d.placed_piece(which, i);
        PieceCornerFinding f;
        f.piece = static_cast<int>(i);
        for (size_t c = 0; c < nc; c++) {
            Containment where = point_in_polygon(target.corners[c], placed.corners);
            if (where != Containment::Outside) f.contained_corners.push_back(static_cast<int>(c));
            if (where == Containment::Inside) f.exclusive_corners.push_back(static_cast<int>(c));
        }
        f.diameter_ok = d.pieces[i].squared_diameter().compare(cap) <= 0;
        if (!f.diameter_ok) {
            report.ok = false;
            report.violations.push_back("piece-diameter: piece " + std::to_string(i) +
                                        " is wider than the square diagonal");
        }
        if (nc == 3 && f.contained_corners.size() >= 2) {
            report.ok = false;
            report.violations.push_back("corner-T: piece " + std::to_string(i) +
                                        " contains two corners of the triangle");
        }
        if (nc == 4) {
            auto has = [&](int c) {
                return std::find(f.contained_corners.begin(), f.contained_corners.end(), c) !=
                       f.contained_corners.end();
            };
            if ((has(0) && has(2)) || (has(1) && has(3))) {
                report.ok = false;
                report.violations.push_back("corner-S-diagonal: piece " + std::to_string(i) +
                                            " contains two diagonal corners of the square");
            }
        }
        report.findings.push_back(std::move(f));
    }
    return report;
}

CornerLemmaReport check_corner_lemmas(const Dissection& d) {
    CornerLemmaReport a = check_corner_lemmas(d, WhichTarget::P);
    CornerLemmaReport b = check_corner_lemmas(d, WhichTarget::Pprime);
    CornerLemmaReport merged;
    merged.ok = a.ok && b.ok;
    merged.findings = a.findings;
    merged.findings.insert(merged.findings.end(), b.findings.begin(), b.findings.end());
    merged.violations = a.violations;
    merged.violations.insert(merged.violations.end(), b.violations.begin(), b.violations.end());
    return merged;
}

namespace {

using nlohmann::json;

Point parse_point(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
        throw schema_error("point must be a pair of ScalarText strings");
    return Point(parse_scalar(j[0].get<std::string>()), parse_scalar(j[1].get<std::string>()));
}

Polygon parse_polygon(const json& j) {
    if (!j.is_array()) throw schema_error("polygon must be an array of points");
    std::vector<Point> pts;
    for (const auto& e : j) pts.push_back(parse_point(e));
    return make_polygon(std::move(pts));
}

Placement parse_placement(const json& j) {
    for (const char* k : {"c", "s", "tx", "ty"})
        if (!j.contains(k) || !j[k].is_string())
            throw schema_error(std::string("placement needs ScalarText field '") + k + "'");
    return make_placement(parse_scalar(j["c"].get<std::string>()),
                          parse_scalar(j["s"].get<std::string>()),
                          parse_scalar(j["tx"].get<std::string>()),
                          parse_scalar(j["ty"].get<std::string>()));
}

json point_to_json(const Point& p) { return json::array({p.x.text(), p.y.text()}); }

json polygon_to_json(const Polygon& p) {
    json out = json::array();
    for (const Point& c : p.corners) out.push_back(point_to_json(c));
    return out;
}

}  // namespace

Dissection parse_dissection_text(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw schema_error(std::string("invalid JSON: ") + e.what());
    }
    try {
        if (!j.contains("pieces") || !j.contains("targets") || !j.contains("placements_P") ||
            !j.contains("placements_Pprime"))
            throw schema_error("dissection needs pieces, targets, placements_P, placements_Pprime");
        Dissection d;
        for (const auto& pj : j["pieces"]) d.pieces.push_back(parse_polygon(pj));
        if (!j["targets"].contains("P") || !j["targets"].contains("Pprime"))
            throw schema_error("targets must contain P and Pprime");
        d.target_p = parse_polygon(j["targets"]["P"]);
        d.target_pprime = parse_polygon(j["targets"]["Pprime"]);
        for (const auto& pj : j["placements_P"]) d.placements_p.push_back(parse_placement(pj));
        for (const auto& pj : j["placements_Pprime"])
            d.placements_pprime.push_back(parse_placement(pj));
        if (d.pieces.empty() || d.placements_p.size() != d.pieces.size() ||
            d.placements_pprime.size() != d.pieces.size())
            throw schema_error("piece and placement counts must match");
        return d;
    } catch (const domain_error& e) {
        throw schema_error(std::string("invalid dissection: ") + e.what());
    } catch (const parse_error& e) {
        throw schema_error(std::string("invalid ScalarText: ") + e.what());
    }
}

Dissection load_dissection(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw schema_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_dissection_text(ss.str());
}

std::string dissection_to_json(const Dissection& d) {
    json j;
    j["schema"] = 1;
    j["pieces"] = json::array();
    for (const Polygon& p : d.pieces) j["pieces"].push_back(polygon_to_json(p));
    j["targets"]["P"] = polygon_to_json(d.target_p);
    j["targets"]["Pprime"] = polygon_to_json(d.target_pprime);
    auto placements = [&](const std::vector<Placement>& ps) {
        json out = json::array();
        for (const Placement& p : ps)
            out.push_back({{"c", p.c.text()}, {"s", p.s.text()}, {"tx", p.tx.text()}, {"ty", p.ty.text()}});
        return out;
    };
    j["placements_P"] = placements(d.placements_p);
    j["placements_Pprime"] = placements(d.placements_pprime);
    return j.dump(2);
}

}  // namespace dissect
