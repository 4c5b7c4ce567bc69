#pragma once

// Measuring realizations: edge lengths, dihedral angles, and the hypothesis
// checks (convex faces, no partially-flat vertices, no collinear triples,
// flat edges, seven-coplanar sets).

#include <array>
#include <map>
#include <set>
#include <vector>

#include "polyrigid/geometry.hpp"
#include "polyrigid/graph.hpp"

namespace polyrigid {

struct Measurements {
    GeometryKind kind = GeometryKind::Euclidean;
    std::map<Edge, double> length;
    std::map<Edge, double> angle;  // dihedral angles in (0, 2pi)
    std::set<Edge> singular;       // edges whose dihedral sits in the singular guard band

    double length_at(Edge e) const {
        auto it = length.find(e);
        if (it == length.end()) throw StructuralError("missing edge length");
        return it->second;
    }
    double angle_at(Edge e) const {
        auto it = angle.find(e);
        if (it == angle.end()) throw StructuralError("missing dihedral angle");
        return it->second;
    }
};

inline void validate_measurements(const PolyhedralGraph& g, const Measurements& m) {
    std::vector<Edge> es = g.edges();
    if (m.length.size() != es.size() || m.angle.size() != es.size())
        throw StructuralError("measurement keys do not match the edge set");
    for (const Edge& e : es) {
        double l = m.length_at(e);
        double a = m.angle_at(e);
        if (!(l > 0)) throw StructuralError("nonpositive edge length");
        if (m.kind == GeometryKind::Spherical && !(l < kPi))
            throw StructuralError("spherical edge length must be < pi");
        if (!(a > 0 && a < kTwoPi)) throw StructuralError("dihedral angle outside (0, 2pi)");
    }
}

// Lengths via geodesic distance, dihedral angles via the oriented left/right
// face convention of dihedral_angle().
inline Measurements measure(const Realization& r, const PolyhedralGraph& g) {
    FaceStructure fs = trace_faces(g);
    Measurements m;
    m.kind = r.kind;
    for (const Edge& e : g.edges()) {
        auto [u, v] = e;
        m.length[e] = distance(r.kind, r.coords[u], r.coords[v]);
        const auto& left = fs.faces[fs.face_at(u, v)].vertices;
        const auto& right = fs.faces[fs.face_at(v, u)].vertices;
        double a = dihedral_angle(r.kind, r.coords, u, v, left, right);
        m.angle[e] = a;
        if (is_singular(a)) m.singular.insert(e);
    }
    return m;
}

namespace detail {

// Tangent vector at p orthogonal to both a and b (in the tangent metric).
inline Vec4 tangent_cross(GeometryKind g, const Point& p, const Vec4& a, const Vec4& b) {
    if (g == GeometryKind::Euclidean) {
        Vec3 v = cross({a.x, a.y, a.z}, {b.x, b.y, b.z});
        return {0, v.x, v.y, v.z};
    }
    return cross4(metric_flip(g, p), metric_flip(g, a), metric_flip(g, b));
}

inline bool collinear(GeometryKind g, const Point& p, const Point& q, const Point& r, double tolerance) {
    if (g == GeometryKind::Euclidean) {
        Vec3 a{q.x - p.x, q.y - p.y, q.z - p.z};
        Vec3 b{r.x - p.x, r.y - p.y, r.z - p.z};
        double na = norm(a);
        if (na < tolerance) return true;
        Vec3 an = a * (1.0 / na);
        return norm(b - an * dot(b, an)) < tolerance;
    }
    // Common geodesic means the three model points span only a 2-plane.
    Vec4 e0 = p * (1.0 / std::sqrt(dot(p, p)));
    Vec4 u = q - e0 * dot(q, e0);
    double nu = std::sqrt(dot(u, u));
    if (nu < tolerance) return true;
    Vec4 e1 = u * (1.0 / nu);
    Vec4 w = r - e0 * dot(r, e0) - e1 * dot(r, e1);
    return std::sqrt(dot(w, w)) < tolerance;
}

}  // namespace detail

// Interior angles of a planar face in boundary order. The face normal's sign
// is fixed by requiring the angle sum of a simple polygon; with the wrong
// sign the sum exceeds m*pi, with the right one it stays below.
inline std::vector<double> face_interior_angles(GeometryKind g, const std::vector<Point>& coords,
                                                const std::vector<int>& face) {
    int m = static_cast<int>(face.size());
    const Point& p0 = coords[face[0]];
    Vec4 t01 = direction(g, p0, coords[face[1]]);
    Vec4 axis{};
    double best = -1;
    for (int k = 2; k < m; ++k) {
        Vec4 u = direction(g, p0, coords[face[k]]);
        Vec4 cand = detail::tangent_cross(g, p0, t01, u);
        double n = tangent_norm(g, cand);
        if (n > best) {
            best = n;
            axis = cand * (1.0 / n);
        }
    }
    if (best < tol::model) throw DegenerateError("degenerate face");

    auto angles_with = [&](bool flipped) {
        std::vector<double> out;
        for (int i = 0; i < m; ++i) {
            const Point& pi = coords[face[i]];
            Vec4 tn = direction(g, pi, coords[face[(i + 1) % m]]);
            Vec4 tp = direction(g, pi, coords[face[(i - 1 + m) % m]]);
            // Transport the reference axis: use the face-plane normal at pi.
            Vec4 ax = detail::tangent_cross(g, pi, tn, tp);
            double n = tangent_norm(g, ax);
            if (n < tol::model) {
                out.push_back(kPi);  // straight vertex
                continue;
            }
            ax = ax * (1.0 / n);
            // Orient like the face axis: both lie along the same normal line.
            if ((dot(ax, axis) < 0) != flipped) ax = -ax;
            out.push_back(signed_angle_about(g, pi, ax, tn, tp));
        }
        return out;
    };
    std::vector<double> a = angles_with(false);
    double sum = 0;
    for (double t : a) sum += t;
    if (sum > m * kPi) a = angles_with(true);
    return a;
}

struct ConditionsReport {
    bool faces_convex = true;
    std::vector<int> nonconvex_faces;
    std::vector<int> partially_flat_vertices;
    std::vector<std::array<int, 3>> collinear_triples;
    std::vector<Edge> flat_edges;
    bool seven_coplanar = false;
    std::vector<int> seven_coplanar_witness;

    // The three hypotheses of the main uniqueness theorem.
    bool pass() const {
        return faces_convex && partially_flat_vertices.empty() && collinear_triples.empty();
    }
    bool pass_no_flat_variant() const {  // variant: no flat edges + no 7 coplanar
        return faces_convex && flat_edges.empty() && !seven_coplanar && collinear_triples.empty();
    }
};

inline ConditionsReport check_conditions(const Realization& r, const PolyhedralGraph& g) {
    FaceStructure fs = trace_faces(g);
    ConditionsReport rep;
    GeometryKind gk = r.kind;

    for (const FaceCycle& f : fs.faces) {
        std::vector<Point> pts;
        for (int v : f.vertices) pts.push_back(r.coords[v]);
        bool ok = planarity_defect(gk, pts) <= tol::planar;
        if (ok) {
            for (double a : face_interior_angles(gk, r.coords, f.vertices))
                if (a >= kPi - tol::singular_guard) ok = false;
        }
        if (!ok) {
            rep.faces_convex = false;
            rep.nonconvex_faces.push_back(f.id);
        }
    }

    for (const Edge& e : g.edges()) {
        const auto& left = fs.faces[fs.face_at(e.first, e.second)].vertices;
        const auto& right = fs.faces[fs.face_at(e.second, e.first)].vertices;
        double a = dihedral_angle(gk, r.coords, e.first, e.second, left, right);
        if (is_singular(a)) rep.flat_edges.push_back(e);
    }

    for (int v : g.vertex_ids()) {
        std::vector<int> inc = faces_at_vertex(g, fs, v);
        std::sort(inc.begin(), inc.end());
        inc.erase(std::unique(inc.begin(), inc.end()), inc.end());
        bool flat = false;
        for (size_t i = 0; i < inc.size() && !flat; ++i)
            for (size_t j = i + 1; j < inc.size() && !flat; ++j) {
                std::vector<Point> both;
                for (int w : fs.faces[inc[i]].vertices) both.push_back(r.coords[w]);
                for (int w : fs.faces[inc[j]].vertices) both.push_back(r.coords[w]);
                if (planarity_defect(gk, both) < 1e-8) flat = true;
            }
        if (flat) rep.partially_flat_vertices.push_back(v);
    }

    std::vector<int> ids = g.vertex_ids();
    for (size_t i = 0; i < ids.size(); ++i)
        for (size_t j = i + 1; j < ids.size(); ++j)
            for (size_t k = j + 1; k < ids.size(); ++k)
                if (detail::collinear(gk, r.coords[ids[i]], r.coords[ids[j]], r.coords[ids[k]], 1e-9))
                    rep.collinear_triples.push_back({ids[i], ids[j], ids[k]});

    // Planes spanned by vertex triples with at least seven incident vertices.
    for (size_t i = 0; i < ids.size() && !rep.seven_coplanar; ++i)
        for (size_t j = i + 1; j < ids.size() && !rep.seven_coplanar; ++j)
            for (size_t k = j + 1; k < ids.size() && !rep.seven_coplanar; ++k) {
                if (detail::collinear(gk, r.coords[ids[i]], r.coords[ids[j]], r.coords[ids[k]], 1e-9))
                    continue;
                std::vector<Point> plane{r.coords[ids[i]], r.coords[ids[j]], r.coords[ids[k]]};
                std::vector<int> on{ids[i], ids[j], ids[k]};
                for (int w : ids) {
                    if (w == ids[i] || w == ids[j] || w == ids[k]) continue;
                    std::vector<Point> test = plane;
                    test.push_back(r.coords[w]);
                    if (planarity_defect(gk, test) < 1e-8) on.push_back(w);
                }
                if (on.size() >= 7) {
                    rep.seven_coplanar = true;
                    rep.seven_coplanar_witness = on;
                }
            }
    return rep;
}

}  // namespace polyrigid
