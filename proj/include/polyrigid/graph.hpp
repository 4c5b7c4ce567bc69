#pragma once

// Polyhedral graphs as rotation systems: a combinatorial polyhedron is a
// 3-connected simple planar graph embedded on the oriented 2-sphere, stored
// as one counterclockwise neighbor cycle per vertex (as seen from outside).
// Faces are always derived from the rotation system, never stored.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polyrigid/error.hpp"

namespace polyrigid {

using Edge = std::pair<int, int>;  // normalized u < v

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

struct PolyhedralGraph {
    // Indexed by vertex id. A vertex with an empty neighbor list is absent;
    // reductions remove vertices without renumbering the survivors.
    std::vector<std::vector<int>> rotation;

    int capacity() const { return static_cast<int>(rotation.size()); }

    bool present(int v) const {
        return v >= 0 && v < capacity() && !rotation[v].empty();
    }

    int vertex_count() const {
        int n = 0;
        for (const auto& r : rotation) n += !r.empty();
        return n;
    }

    std::vector<int> vertex_ids() const {
        std::vector<int> ids;
        for (int v = 0; v < capacity(); ++v)
            if (present(v)) ids.push_back(v);
        return ids;
    }

    int degree(int v) const { return static_cast<int>(rotation[v].size()); }

    bool has_edge(int u, int v) const {
        if (!present(u)) return false;
        const auto& r = rotation[u];
        return std::find(r.begin(), r.end(), v) != r.end();
    }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (int v = 0; v < capacity(); ++v)
            for (int u : rotation[v])
                if (v < u) out.push_back({v, u});
        std::sort(out.begin(), out.end());
        return out;
    }

    int edge_count() const {
        int d = 0;
        for (const auto& r : rotation) d += static_cast<int>(r.size());
        return d / 2;
    }

    bool operator==(const PolyhedralGraph& o) const { return rotation == o.rotation; }
};

struct FaceCycle {
    int id = 0;
    std::vector<int> vertices;  // boundary order; directed edges v[i] -> v[i+1]

    int length() const { return static_cast<int>(vertices.size()); }
};

namespace detail {

inline int index_of(const std::vector<int>& cycle, int v) {
    auto it = std::find(cycle.begin(), cycle.end(), v);
    if (it == cycle.end()) throw StructuralError("rotation system inconsistent: missing back-reference");
    return static_cast<int>(it - cycle.begin());
}

}  // namespace detail

// Face cycles traced from the rotation system, plus the directed-edge-to-face
// lookup. With counterclockwise rotations, the face containing directed edge
// (u -> v) is the one on its left; the next directed edge is (v, w) where w
// immediately precedes u in rotation[v].
struct FaceStructure {
    std::vector<FaceCycle> faces;
    std::map<std::pair<int, int>, int> face_of_directed;  // directed edge (u,v) -> face id

    int face_at(int u, int v) const {
        auto it = face_of_directed.find({u, v});
        if (it == face_of_directed.end()) throw StructuralError("no face for directed edge");
        return it->second;
    }
};

inline FaceStructure trace_faces(const PolyhedralGraph& g) {
    FaceStructure fs;
    long long budget = 4LL * (g.edge_count() + 1);
    for (int v0 = 0; v0 < g.capacity(); ++v0) {
        for (int u0 : g.rotation[v0]) {
            if (fs.face_of_directed.count({v0, u0})) continue;
            FaceCycle f;
            f.id = static_cast<int>(fs.faces.size());
            int a = v0, b = u0;
            do {
                if (--budget < 0) throw StructuralError("face trace does not close");
                fs.face_of_directed[{a, b}] = f.id;
                f.vertices.push_back(a);
                const auto& rb = g.rotation[b];
                int i = detail::index_of(rb, a);
                int w = rb[(i - 1 + static_cast<int>(rb.size())) % rb.size()];
                a = b;
                b = w;
            } while (!(a == v0 && b == u0));
            fs.faces.push_back(std::move(f));
        }
    }
    return fs;
}

// Distinct faces incident to v, one per wedge in rotation order: entry i is
// the face between neighbors rotation[v][i] and rotation[v][i+1].
inline std::vector<int> faces_at_vertex(const PolyhedralGraph& g, const FaceStructure& fs, int v) {
    std::vector<int> out;
    for (int u : g.rotation[v]) out.push_back(fs.face_at(v, u));
    return out;
}

struct ValidationReport {
    bool structural_ok = true;
    std::vector<std::string> failures;
    std::vector<FaceCycle> faces;

    bool valid() const { return structural_ok && failures.empty(); }
};

namespace detail {

inline bool connected_without(const PolyhedralGraph& g, int skip_a, int skip_b) {
    std::vector<int> ids = g.vertex_ids();
    std::vector<char> removed(g.capacity(), 0);
    if (skip_a >= 0) removed[skip_a] = 1;
    if (skip_b >= 0) removed[skip_b] = 1;
    int start = -1, want = 0;
    for (int v : ids)
        if (!removed[v]) {
            if (start < 0) start = v;
            ++want;
        }
    if (want == 0) return true;
    std::vector<char> vis(g.capacity(), 0);
    std::vector<int> stack{start};
    vis[start] = 1;
    int got = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++got;
        for (int u : g.rotation[v])
            if (!removed[u] && !vis[u]) {
                vis[u] = 1;
                stack.push_back(u);
            }
    }
    return got == want;
}

}  // namespace detail

// Checks the polyhedral-graph invariants: simple, planar of genus 0 (via the
// Euler count of traced faces), 3-connected, and free of bigon faces.
// Malformed input (ids out of range) throws StructuralError instead of being
// reported, since no invariant can be evaluated on it.
inline ValidationReport validate(const PolyhedralGraph& g) {
    ValidationReport rep;
    for (int v = 0; v < g.capacity(); ++v)
        for (int u : g.rotation[v])
            if (u < 0 || u >= g.capacity() || !g.present(u))
                throw StructuralError("neighbor id out of range at vertex " + std::to_string(v));

    std::vector<int> ids = g.vertex_ids();
    if (static_cast<int>(ids.size()) < 4) rep.failures.push_back("fewer than 4 vertices");

    bool simple = true;
    for (int v : ids) {
        std::set<int> uniq(g.rotation[v].begin(), g.rotation[v].end());
        if (uniq.size() != g.rotation[v].size()) {
            rep.failures.push_back("repeated neighbor at vertex " + std::to_string(v));
            simple = false;
        }
        if (uniq.count(v)) {
            rep.failures.push_back("self-loop at vertex " + std::to_string(v));
            simple = false;
        }
        for (int u : g.rotation[v])
            if (!g.has_edge(u, v)) {
                rep.failures.push_back("asymmetric adjacency " + std::to_string(v) + "-" + std::to_string(u));
                simple = false;
            }
        if (g.degree(v) < 3) rep.failures.push_back("degree < 3 at vertex " + std::to_string(v));
    }
    if (!simple) return rep;

    if (!detail::connected_without(g, -1, -1)) {
        rep.failures.push_back("disconnected");
        return rep;
    }

    FaceStructure fs = trace_faces(g);
    rep.faces = fs.faces;
    int V = static_cast<int>(ids.size());
    int E = g.edge_count();
    int F = static_cast<int>(fs.faces.size());
    if (V - E + F != 2)
        rep.failures.push_back("Euler count V-E+F = " + std::to_string(V - E + F) + ", embedding is not genus 0");
    for (const auto& f : fs.faces) {
        if (f.length() < 3) rep.failures.push_back("bigon face " + std::to_string(f.id));
        std::set<int> uniq(f.vertices.begin(), f.vertices.end());
        if (uniq.size() != f.vertices.size())
            rep.failures.push_back("face " + std::to_string(f.id) + " revisits a vertex");
    }
    for (const auto& [u, v] : g.edges())
        if (fs.face_at(u, v) == fs.face_at(v, u))
            rep.failures.push_back("edge bounds a single face");

    for (size_t i = 0; i < ids.size() && rep.failures.empty(); ++i)
        for (size_t j = i + 1; j < ids.size(); ++j)
            if (!detail::connected_without(g, ids[i], ids[j])) {
                rep.failures.push_back("not 3-connected: cut pair {" + std::to_string(ids[i]) + "," +
                                       std::to_string(ids[j]) + "}");
                break;
            }
    return rep;
}

inline void require_valid(const PolyhedralGraph& g) {
    ValidationReport rep = validate(g);
    if (!rep.valid()) {
        std::string msg = "invalid polyhedral graph:";
        for (const auto& f : rep.failures) msg += " [" + f + "]";
        throw StructuralError(msg);
    }
}

// Non-triangular degree: the number of faces of length > 3 incident to v.
inline int tau(const PolyhedralGraph& g, const FaceStructure& fs, int v) {
    if (!g.present(v)) throw StructuralError("unknown vertex id " + std::to_string(v));
    std::set<int> nontri;
    for (int f : faces_at_vertex(g, fs, v))
        if (fs.faces[f].length() > 3) nontri.insert(f);
    return static_cast<int>(nontri.size());
}

inline int tau(const PolyhedralGraph& g, int v) { return tau(g, trace_faces(g), v); }

inline bool is_strongly_rigid(const PolyhedralGraph& g, const FaceStructure& fs, int v) {
    int d = g.degree(v);
    int t = tau(g, fs, v);
    return (d <= 4 && t <= 3) || (d >= 5 && t <= 1);
}

inline bool is_strongly_rigid(const PolyhedralGraph& g, int v) {
    return is_strongly_rigid(g, trace_faces(g), v);
}

// Smallest-id strongly-rigid vertex. One always exists for a valid
// polyhedral graph; failure indicates an invalid input slipped through.
inline int find_strongly_rigid_vertex(const PolyhedralGraph& g, const FaceStructure& fs) {
    for (int v : g.vertex_ids())
        if (is_strongly_rigid(g, fs, v)) return v;
    throw InternalContradictionError("no strongly-rigid vertex; input cannot be a valid polyhedral graph");
}

inline int find_strongly_rigid_vertex(const PolyhedralGraph& g) {
    return find_strongly_rigid_vertex(g, trace_faces(g));
}

// V3 + F3 - sum_{n>=5} (n-4)(Vn + Fn) - 8; identically zero for every
// polyhedral graph.
inline long long counting_identity_residual(const PolyhedralGraph& g) {
    FaceStructure fs = trace_faces(g);
    long long v3 = 0, f3 = 0, high = 0;
    for (int v : g.vertex_ids()) {
        int d = g.degree(v);
        if (d == 3) ++v3;
        if (d >= 5) high += (d - 4);
    }
    for (const auto& f : fs.faces) {
        int d = f.length();
        if (d == 3) ++f3;
        if (d >= 5) high += (d - 4);
    }
    return v3 + f3 - high - 8;
}

namespace detail {

// Insert the diagonal (a, b) into the rotation system, splitting the face
// whose counterclockwise cycle is `cycle`. Each endpoint's new neighbor goes
// immediately after that endpoint's successor in the cycle.
inline void insert_diagonal(PolyhedralGraph& g, const std::vector<int>& cycle, int a, int b) {
    auto place = [&](int from, int to) {
        int i = index_of(cycle, from);
        int succ = cycle[(i + 1) % cycle.size()];
        auto& rot = g.rotation[from];
        int j = index_of(rot, succ);
        rot.insert(rot.begin() + j + 1, to);
    };
    place(a, b);
    place(b, a);
}

}  // namespace detail

struct LocalTriangulation {
    PolyhedralGraph graph;                      // P_v
    std::vector<std::pair<int, int>> diagonals; // one per non-triangular face at v
};

// Adds one diagonal to each non-triangular face incident to v, connecting
// the two neighbors of v on that face, so that every face at v becomes a
// triangle.
inline LocalTriangulation local_triangulation(const PolyhedralGraph& g, int v) {
    if (!g.present(v)) throw StructuralError("unknown vertex id " + std::to_string(v));
    FaceStructure fs = trace_faces(g);
    LocalTriangulation out{g, {}};
    int d = g.degree(v);
    for (int i = 0; i < d; ++i) {
        int u = g.rotation[v][i];          // wedge face between u and the next neighbor
        int w = g.rotation[v][(i + 1) % d];
        const FaceCycle& f = fs.faces[fs.face_at(v, u)];
        if (f.length() == 3) continue;
        if (out.graph.has_edge(u, w))
            throw DegenerateTriangulationError("diagonal " + std::to_string(u) + "-" + std::to_string(w) +
                                               " duplicates an existing edge");
        detail::insert_diagonal(out.graph, f.vertices, u, w);
        out.diagonals.push_back({u, w});
    }
    return out;
}

namespace detail {

inline bool chords_cross(std::pair<int, int> a, std::pair<int, int> b) {
    if (a.first == b.first || a.first == b.second || a.second == b.first || a.second == b.second)
        return false;
    bool in1 = a.first < b.first && b.first < a.second;
    bool in2 = a.first < b.second && b.second < a.second;
    return in1 != in2;
}

}  // namespace detail

// Lazily enumerates the triangulations of an n-gon as sets of diagonals, in
// lexicographic order on the sorted lists of position pairs (so the fan at
// position 0 comes first). Diagonals whose endpoints are already adjacent in
// the ambient graph are banned outright, which drops every triangulation
// containing one.
class BoundaryTriangulations {
public:
    BoundaryTriangulations(std::vector<int> boundary, const PolyhedralGraph& ambient)
        : boundary_(std::move(boundary)) {
        int m = static_cast<int>(boundary_.size());
        need_ = m - 3;
        for (int i = 0; i < m; ++i)
            for (int j = i + 2; j < m; ++j) {
                if (i == 0 && j == m - 1) continue;  // polygon edge, not a chord
                if (ambient.has_edge(boundary_[i], boundary_[j])) continue;
                chords_.push_back({i, j});
            }
        std::sort(chords_.begin(), chords_.end());
    }

    std::optional<std::vector<Edge>> next() {
        if (need_ <= 0) {
            if (done_) return std::nullopt;
            done_ = true;
            return std::vector<Edge>{};
        }
        while (true) {
            if (static_cast<int>(chords_.size()) - cursor_ < need_ - static_cast<int>(chosen_.size())) {
                if (chosen_.empty()) return std::nullopt;
                cursor_ = chosen_.back() + 1;
                chosen_.pop_back();
                continue;
            }
            bool ok = true;
            for (int c : chosen_)
                if (detail::chords_cross(chords_[c], chords_[cursor_])) {
                    ok = false;
                    break;
                }
            if (ok) {
                chosen_.push_back(cursor_);
                ++cursor_;
                if (static_cast<int>(chosen_.size()) == need_) {
                    std::vector<Edge> out;
                    for (int c : chosen_)
                        out.push_back(make_edge(boundary_[chords_[c].first], boundary_[chords_[c].second]));
                    cursor_ = chosen_.back() + 1;
                    chosen_.pop_back();
                    return out;
                }
            } else {
                ++cursor_;
            }
        }
    }

    // Positions of a diagonal on the boundary cycle.
    std::pair<int, int> positions(Edge e) const {
        int i = detail::index_of(boundary_, e.first);
        int j = detail::index_of(boundary_, e.second);
        return i < j ? std::pair{i, j} : std::pair{j, i};
    }

private:
    std::vector<int> boundary_;
    std::vector<std::pair<int, int>> chords_;
    std::vector<int> chosen_;
    int cursor_ = 0;
    int need_ = 0;
    bool done_ = false;
};

// One vertex reduction record; P' is kept so the sequence can be replayed.
struct ReductionStep {
    int removed_vertex = -1;
    std::vector<std::pair<int, int>> local_diagonals;
    std::vector<Edge> boundary_diagonals;
    std::vector<int> boundary;  // the cycle of P_v-neighbors of v, in rotation order
    PolyhedralGraph reduced;    // P'
};

namespace detail {

// Removes v from P_v and glues a triangulation of the boundary n-gon into
// the hole. At each boundary vertex the new diagonals slot between its two
// boundary neighbors, ordered by cyclic distance.
inline PolyhedralGraph replace_star(const PolyhedralGraph& pv, int v, const std::vector<int>& boundary,
                                    const std::vector<Edge>& diagonals) {
    int m = static_cast<int>(boundary.size());
    if (static_cast<int>(diagonals.size()) != std::max(0, m - 3))
        throw ReductionInvalidError("triangulation has wrong diagonal count");

    std::vector<int> pos(pv.capacity(), -1);
    for (int i = 0; i < m; ++i) pos[boundary[i]] = i;

    std::vector<std::pair<int, int>> chords;
    for (const Edge& e : diagonals) {
        int i = pos[e.first], j = pos[e.second];
        if (i < 0 || j < 0) throw ReductionInvalidError("diagonal endpoint not on boundary");
        if (i > j) std::swap(i, j);
        if (j - i < 2 || (i == 0 && j == m - 1)) throw ReductionInvalidError("diagonal is a boundary edge");
        if (pv.has_edge(boundary[i], boundary[j]))
            throw ReductionInvalidError("diagonal duplicates an existing edge");
        chords.push_back({i, j});
    }
    for (size_t a = 0; a < chords.size(); ++a)
        for (size_t b = a + 1; b < chords.size(); ++b) {
            if (chords[a] == chords[b]) throw ReductionInvalidError("repeated diagonal");
            if (chords_cross(chords[a], chords[b])) throw ReductionInvalidError("crossing diagonals");
        }

    PolyhedralGraph out = pv;
    for (int u : out.rotation[v]) {
        auto& r = out.rotation[u];
        r.erase(std::remove(r.begin(), r.end(), v), r.end());
    }
    out.rotation[v].clear();

    std::vector<std::vector<int>> partners(m);
    for (auto [i, j] : chords) {
        partners[i].push_back(j);
        partners[j].push_back(i);
    }
    for (int i = 0; i < m; ++i) {
        if (partners[i].empty()) continue;
        std::sort(partners[i].begin(), partners[i].end(),
                  [&](int a, int b) { return (a - i + m) % m < (b - i + m) % m; });
        int bi = boundary[i];
        int succ = boundary[(i + 1) % m];
        auto& rot = out.rotation[bi];
        int at = index_of(rot, succ) + 1;
        for (int j : partners[i]) rot.insert(rot.begin() + at++, boundary[j]);
    }
    return out;
}

}  // namespace detail

// The vertex reduction P' := (P_v \ v) glued with a triangulation of the
// boundary of the star of v. Throws ReductionInvalid when the result fails
// the polyhedral-graph invariants; callers retry with the next candidate.
inline ReductionStep vertex_reduction(const PolyhedralGraph& g, int v, const std::vector<Edge>& diagonals) {
    LocalTriangulation lt = local_triangulation(g, v);
    ReductionStep step;
    step.removed_vertex = v;
    step.local_diagonals = lt.diagonals;
    step.boundary_diagonals = diagonals;
    step.boundary = lt.graph.rotation[v];
    step.reduced = detail::replace_star(lt.graph, v, step.boundary, diagonals);
    ValidationReport rep = validate(step.reduced);
    if (!rep.valid()) {
        std::string msg = "reduction at " + std::to_string(v) + " invalid:";
        for (const auto& f : rep.failures) msg += " [" + f + "]";
        throw ReductionInvalidError(msg);
    }
    return step;
}

struct ReductionSequence {
    std::vector<ReductionStep> steps;
    int terminal_vertex = -1;      // strongly-rigid vertex whose star covers P_N
    PolyhedralGraph terminal_graph;
};

// Builds the rotation system from a complete list of oriented face cycles
// (counterclockwise from outside, every directed edge in exactly one face).
inline PolyhedralGraph graph_from_oriented_faces(int vertex_count,
                                                 const std::vector<std::vector<int>>& faces) {
    // A face passing u -> v -> w pins w immediately before u around v.
    std::vector<std::map<int, int>> succ(vertex_count);  // at v: w -> u
    for (const auto& f : faces) {
        int m = static_cast<int>(f.size());
        for (int i = 0; i < m; ++i) {
            int u = f[i], v = f[(i + 1) % m], w = f[(i + 2) % m];
            if (v < 0 || v >= vertex_count) throw StructuralError("face vertex out of range");
            if (succ[v].count(w)) throw StructuralError("faces disagree around vertex " + std::to_string(v));
            succ[v][w] = u;
        }
    }
    PolyhedralGraph g;
    g.rotation.resize(vertex_count);
    for (int v = 0; v < vertex_count; ++v) {
        if (succ[v].empty()) continue;
        int start = succ[v].begin()->first;
        int cur = start;
        do {
            g.rotation[v].push_back(cur);
            auto it = succ[v].find(cur);
            if (it == succ[v].end()) throw StructuralError("face fan does not close around vertex");
            cur = it->second;
            if (g.rotation[v].size() > succ[v].size())
                throw StructuralError("face fan does not close around vertex");
        } while (cur != start);
        if (g.rotation[v].size() != succ[v].size())
            throw StructuralError("disconnected face fan around vertex " + std::to_string(v));
    }
    return g;
}

// Canonical polyhedral graphs. Rotation cycles are counterclockwise as seen
// from outside, matching the coordinate fixtures.
inline PolyhedralGraph tetrahedron_graph() {
    return {{{2, 3, 1}, {3, 2, 0}, {3, 0, 1}, {2, 1, 0}}};
}

inline PolyhedralGraph cube_graph() {
    return {{{4, 2, 1}, {0, 3, 5}, {0, 6, 3}, {2, 7, 1},
             {6, 0, 5}, {4, 1, 7}, {2, 4, 7}, {6, 5, 3}}};
}

inline PolyhedralGraph octahedron_graph() {
    return {{{3, 5, 2, 4}, {3, 4, 2, 5}, {1, 4, 0, 5},
             {1, 5, 0, 4}, {1, 3, 0, 2}, {1, 2, 0, 3}}};
}

inline PolyhedralGraph icosahedron_graph() {
    return {{{1, 2, 6, 8, 7},  {5, 2, 0, 7, 3},  {1, 5, 4, 6, 0},  {5, 1, 7, 11, 9},
             {2, 5, 9, 10, 6}, {4, 2, 1, 3, 9},  {2, 4, 10, 8, 0}, {3, 1, 0, 8, 11},
             {0, 6, 10, 11, 7}, {4, 5, 3, 11, 10}, {6, 4, 9, 11, 8}, {9, 3, 7, 8, 10}}};
}

inline PolyhedralGraph dodecahedron_graph() {
    return {{{10, 8, 9},  {15, 8, 16}, {10, 12, 14}, {14, 18, 16}, {13, 9, 11},
             {11, 15, 19}, {13, 17, 12}, {18, 17, 19}, {0, 14, 1},  {4, 0, 15},
             {0, 13, 2},  {4, 5, 17},  {2, 6, 18},   {4, 6, 10},  {2, 3, 8},
             {9, 1, 5},   {1, 3, 19},  {6, 11, 7},   {12, 7, 3},  {5, 16, 7}}};
}

// Bottom ring 0..n-1, top ring n..2n-1 with vertex n+i above i.
inline PolyhedralGraph prism_graph(int n) {
    if (n < 3) throw StructuralError("prism needs n >= 3");
    PolyhedralGraph g;
    g.rotation.resize(2 * n);
    for (int i = 0; i < n; ++i) {
        g.rotation[i] = {(i + 1) % n, n + i, (i + n - 1) % n};
        g.rotation[n + i] = {n + (i + 1) % n, n + (i + n - 1) % n, i};
    }
    return g;
}

// Bottom ring 0..n-1, top ring n..2n-1 rotated half a step; top vertex n+i
// sits between bottom vertices i and i+1.
inline PolyhedralGraph antiprism_graph(int n) {
    if (n < 3) throw StructuralError("antiprism needs n >= 3");
    PolyhedralGraph g;
    g.rotation.resize(2 * n);
    for (int i = 0; i < n; ++i) {
        g.rotation[i] = {(i + 1) % n, n + i, n + (i + n - 1) % n, (i + n - 1) % n};
        g.rotation[n + i] = {n + (i + 1) % n, n + (i + n - 1) % n, i, (i + 1) % n};
    }
    return g;
}

// Reduces at the smallest-id strongly-rigid vertex until some strongly-rigid
// vertex's closed neighborhood covers the whole graph. Candidate boundary
// triangulations are tried in canonical order; the paper guarantees a valid
// one exists, so exhaustion is a hard internal error.
inline ReductionSequence reduction_sequence(const PolyhedralGraph& input) {
    ReductionSequence seq;
    PolyhedralGraph g = input;
    while (true) {
        FaceStructure fs = trace_faces(g);
        int n = g.vertex_count();
        int reduce_at = -1;
        for (int v : g.vertex_ids()) {
            if (!is_strongly_rigid(g, fs, v)) continue;
            if (g.degree(v) == n - 1) {
                seq.terminal_vertex = v;
                seq.terminal_graph = g;
                return seq;
            }
            if (reduce_at < 0) reduce_at = v;
        }
        if (reduce_at < 0)
            throw InternalContradictionError("no strongly-rigid vertex in reduction sequence");

        LocalTriangulation lt = local_triangulation(g, reduce_at);
        BoundaryTriangulations cands(lt.graph.rotation[reduce_at], lt.graph);
        bool advanced = false;
        while (auto cand = cands.next()) {
            try {
                ReductionStep step = vertex_reduction(g, reduce_at, *cand);
                g = step.reduced;
                seq.steps.push_back(std::move(step));
                advanced = true;
                break;
            } catch (const ReductionInvalidError&) {
                continue;
            }
        }
        if (!advanced)
            throw InternalContradictionError("all boundary triangulations at vertex " +
                                             std::to_string(reduce_at) + " rejected");
    }
}

}  // namespace polyrigid
