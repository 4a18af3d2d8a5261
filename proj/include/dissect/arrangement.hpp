#pragma once

#include <utility>
#include <vector>

#include "dissect/geom.hpp"

namespace dissect {

// Planar subdivision of a set of segments. All pairwise intersections are
// materialised as vertices, collinear overlaps are merged, and faces are
// traced from the rotation system (interior on the left, so bounded face
// contours come out counterclockwise).
struct Arrangement {
    std::vector<Point> vertices;               // deterministic lexicographic ids
    std::vector<std::pair<int, int>> edges;    // undirected, a < b, sorted
    struct Face {
        std::vector<int> cycle;                // vertex ids along the contour
        std::vector<int> edge_ids;             // edge of each cycle step
        Scalar area2;                          // twice the signed area
        bool bounded = false;                  // signed area > 0
    };
    std::vector<Face> faces;                   // every traced contour
    int components = 0;

    size_t bounded_face_count() const {
        size_t n = 0;
        for (const auto& f : faces)
            if (f.bounded) n++;
        return n;
    }

    // V - E + F == 2C for the traced contours (== 2 when connected).
    bool euler_ok() const {
        return static_cast<long>(vertices.size()) - static_cast<long>(edges.size()) +
                   static_cast<long>(faces.size()) ==
               2L * components;
    }

    std::vector<int> vertex_neighbors(int v) const;
};

// Degenerate (zero-length) segments are rejected with domain_error.
Arrangement build_arrangement(const std::vector<Segment>& segments);

// A point strictly inside the face, found by stepping off the midpoint of one
// of its contour edges and shrinking the step until no other edge is hit.
// Valid for bounded faces.
Point face_interior_sample(const Arrangement& arr, int face_index);

}  // namespace dissect
