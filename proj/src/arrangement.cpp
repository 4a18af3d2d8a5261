#include "dissect/arrangement.hpp"

#include <algorithm>
#include <map>
#include <functional>
#include <numeric>
#include <set>

namespace dissect {

namespace {

struct VertexRegistry {
    std::map<Point, int, PointLess> ids;
    std::vector<Point> points;

    int intern(const Point& p) {
        auto it = ids.find(p);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(points.size());
        ids.emplace(p, id);
        points.push_back(p);
        return id;
    }
};

}  // namespace

std::vector<int> Arrangement::vertex_neighbors(int v) const {
    std::vector<int> out;
    for (const auto& [a, b] : edges) {
        if (a == v) out.push_back(b);
        if (b == v) out.push_back(a);
    }
    return out;
}

Arrangement build_arrangement(const std::vector<Segment>& segments) {
    for (const auto& s : segments)
        if (points_equal(s.a, s.b)) throw domain_error("zero-length segment in arrangement input");

    VertexRegistry reg;
    std::vector<std::vector<Point>> cuts(segments.size());
    for (size_t i = 0; i < segments.size(); i++) {
        cuts[i].push_back(segments[i].a);
        cuts[i].push_back(segments[i].b);
        for (size_t j = 0; j < segments.size(); j++) {
            if (i == j) continue;
            IntersectResult r = intersect(segments[i], segments[j]);
            if (r.kind == IntersectResult::Kind::Point)
                cuts[i].push_back(r.point);
            else if (r.kind == IntersectResult::Kind::Overlap) {
                cuts[i].push_back(r.overlap.a);
                cuts[i].push_back(r.overlap.b);
            }
        }
    }

    std::set<std::pair<int, int>> edge_set;
    for (size_t i = 0; i < segments.size(); i++) {
        Vec d = segments[i].b - segments[i].a;
        std::vector<std::pair<Scalar, int>> along;
        std::set<int> seen;
        for (const Point& p : cuts[i]) {
            int id = reg.intern(p);
            if (seen.insert(id).second) along.emplace_back(dot(p - segments[i].a, d), id);
        }
        std::sort(along.begin(), along.end(),
                  [](const auto& x, const auto& y) { return x.first.compare(y.first) < 0; });
        for (size_t k = 0; k + 1 < along.size(); k++) {
            int u = along[k].second, v = along[k + 1].second;
            edge_set.insert({std::min(u, v), std::max(u, v)});
        }
    }

    Arrangement arr;
    arr.vertices = reg.points;
    arr.edges.assign(edge_set.begin(), edge_set.end());

    // Rotation system: outgoing half-edges sorted counterclockwise per vertex.
    size_t ne = arr.edges.size();
    std::vector<std::vector<int>> out(arr.vertices.size());  // half-edge ids
    auto he_src = [&](int h) { return h < static_cast<int>(ne) ? arr.edges[h].first : arr.edges[h - ne].second; };
    auto he_dst = [&](int h) { return h < static_cast<int>(ne) ? arr.edges[h].second : arr.edges[h - ne].first; };
    auto he_twin = [&](int h) { return h < static_cast<int>(ne) ? h + static_cast<int>(ne) : h - static_cast<int>(ne); };
    for (int h = 0; h < static_cast<int>(2 * ne); h++) out[he_src(h)].push_back(h);
    for (size_t v = 0; v < out.size(); v++) {
        std::sort(out[v].begin(), out[v].end(), [&](int h1, int h2) {
            Vec d1 = arr.vertices[he_dst(h1)] - arr.vertices[he_src(h1)];
            Vec d2 = arr.vertices[he_dst(h2)] - arr.vertices[he_src(h2)];
            int c = compare_directions(d1, d2);
            if (c != 0) return c < 0;
            return h1 < h2;
        });
    }
    std::vector<int> pos(2 * ne);
    for (size_t v = 0; v < out.size(); v++)
        for (size_t k = 0; k < out[v].size(); k++) pos[out[v][k]] = static_cast<int>(k);

    // next(u->v) = the half-edge just clockwise of (v->u) around v,
    // which traces every face with its interior on the left.
    auto he_next = [&](int h) {
        int t = he_twin(h);
        int v = he_src(t);
        int k = static_cast<int>(out[v].size());
        return out[v][(pos[t] - 1 + k) % k];
    };

    std::vector<char> used(2 * ne, 0);
    for (int h0 = 0; h0 < static_cast<int>(2 * ne); h0++) {
        if (used[h0]) continue;
        Arrangement::Face face;
        int h = h0;
        do {
            used[h] = 1;
            face.cycle.push_back(he_src(h));
            face.edge_ids.push_back(h < static_cast<int>(ne) ? h : h - static_cast<int>(ne));
            h = he_next(h);
        } while (h != h0);
        Scalar a2 = Scalar::from_int(0);
        for (size_t k = 0; k < face.cycle.size(); k++) {
            const Point& p = arr.vertices[face.cycle[k]];
            const Point& q = arr.vertices[face.cycle[(k + 1) % face.cycle.size()]];
            a2 = a2 + cross(Vec{p.x, p.y}, Vec{q.x, q.y});
        }
        face.bounded = a2.sign() > 0;
        face.area2 = a2;
        arr.faces.push_back(std::move(face));
    }

    // Connected components over vertices.
    std::vector<int> uf(arr.vertices.size());
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
    for (const auto& [a, b] : arr.edges) uf[find(a)] = find(b);
    std::set<int> roots;
    for (size_t v = 0; v < uf.size(); v++) roots.insert(find(static_cast<int>(v)));
    arr.components = static_cast<int>(roots.size());
    return arr;
}

Point face_interior_sample(const Arrangement& arr, int face_index) {
    const auto& face = arr.faces.at(face_index);
    if (!face.bounded) throw domain_error("sampling an unbounded face");
    int u = face.cycle[0];
    int v = face.cycle[1 % face.cycle.size()];
    Point pu = arr.vertices[u], pv = arr.vertices[v];
    Vec d = pv - pu;
    Scalar half = Scalar::from_rational(Rational(1, 2));
    Point mid = pu + d * half;
    Vec normal{-d.y, d.x};  // left of u->v, toward the face

    Scalar step = half;
    for (int iter = 0; iter < 256; iter++, step = step * half) {
        Point cand = mid + normal * step;
        Segment probe(mid, cand);
        bool clean = true;
        for (size_t e = 0; e < arr.edges.size() && clean; e++) {
            Segment es(arr.vertices[arr.edges[e].first], arr.vertices[arr.edges[e].second]);
            if (point_on_segment(cand, es)) {
                clean = false;
                break;
            }
            IntersectResult r = intersect(probe, es);
            if (r.kind == IntersectResult::Kind::Overlap)
                clean = false;
            else if (r.kind == IntersectResult::Kind::Point && !points_equal(r.point, mid))
                clean = false;
        }
        if (clean) return cand;
    }
    throw domain_error("face sample search did not converge");
}

}  // namespace dissect
