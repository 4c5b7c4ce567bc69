#include "catch2/catch_amalgamated.hpp"

#include "polyrigid/graph.hpp"

using namespace polyrigid;

namespace {

int face_count(const PolyhedralGraph& g) { return static_cast<int>(trace_faces(g).faces.size()); }

// Degree-5 vertex 0 with two incident quads: a pentagonal wheel whose first
// two wedges are widened into quads, capped by an apex on the far side.
PolyhedralGraph deg5_two_quads() {
    std::vector<std::vector<int>> faces = {
        {0, 1, 6, 2}, {0, 2, 7, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
        {1, 5, 8},    {5, 4, 8},    {4, 3, 8}, {3, 7, 8}, {7, 2, 8},
        {2, 6, 8},    {6, 1, 8},
    };
    return graph_from_oriented_faces(9, faces);
}

}  // namespace

TEST_CASE("validate canonical solids") {
    struct Row {
        PolyhedralGraph g;
        int V, E, F;
    };
    std::vector<Row> rows = {
        {tetrahedron_graph(), 4, 6, 4},   {cube_graph(), 8, 12, 6},
        {octahedron_graph(), 6, 12, 8},   {dodecahedron_graph(), 20, 30, 12},
        {icosahedron_graph(), 12, 30, 20}, {prism_graph(5), 10, 15, 7},
        {antiprism_graph(5), 10, 20, 12},
    };
    for (const auto& row : rows) {
        ValidationReport rep = validate(row.g);
        CAPTURE(row.V);
        for (const auto& f : rep.failures) UNSCOPED_INFO(f);
        REQUIRE(rep.valid());
        REQUIRE(row.g.vertex_count() == row.V);
        REQUIRE(row.g.edge_count() == row.E);
        REQUIRE(static_cast<int>(rep.faces.size()) == row.F);
        // face-trace involution: total face length is 2E
        int total = 0;
        for (const auto& f : rep.faces) total += f.length();
        REQUIRE(total == 2 * row.E);
    }
}

TEST_CASE("cube faces are all quads") {
    FaceStructure fs = trace_faces(cube_graph());
    for (const auto& f : fs.faces) REQUIRE(f.length() == 4);
}

TEST_CASE("scrambled cube rotation fails validation") {
    PolyhedralGraph g = cube_graph();
    std::swap(g.rotation[0][0], g.rotation[0][1]);
    ValidationReport rep = validate(g);
    REQUIRE_FALSE(rep.valid());
    // the face trace no longer closes into 6 faces
    bool euler_broken = false;
    for (const auto& f : rep.failures)
        if (f.find("Euler") != std::string::npos) euler_broken = true;
    REQUIRE(euler_broken);
}

TEST_CASE("malformed input is a structural error") {
    PolyhedralGraph g = cube_graph();
    g.rotation[3][1] = 42;
    REQUIRE_THROWS_AS(validate(g), StructuralError);
}

TEST_CASE("tau counts non-triangular faces") {
    PolyhedralGraph cube = cube_graph();
    for (int v : cube.vertex_ids()) REQUIRE(tau(cube, v) == 3);
    PolyhedralGraph ico = icosahedron_graph();
    for (int v : ico.vertex_ids()) REQUIRE(tau(ico, v) == 0);
    PolyhedralGraph p5 = prism_graph(5);
    for (int v : p5.vertex_ids()) REQUIRE(tau(p5, v) == 3);  // two quads + one pentagon
    REQUIRE_THROWS_AS(tau(cube, 17), StructuralError);
}

TEST_CASE("strongly rigid vertices") {
    PolyhedralGraph cube = cube_graph();
    for (int v : cube.vertex_ids()) REQUIRE(is_strongly_rigid(cube, v));  // deg 3, tau 3
    PolyhedralGraph ico = icosahedron_graph();
    for (int v : ico.vertex_ids()) REQUIRE(is_strongly_rigid(ico, v));  // deg 5, tau 0

    PolyhedralGraph g = deg5_two_quads();
    REQUIRE(validate(g).valid());
    REQUIRE(g.degree(0) == 5);
    REQUIRE(tau(g, 0) == 2);
    REQUIRE_FALSE(is_strongly_rigid(g, 0));

    REQUIRE(find_strongly_rigid_vertex(cube) == 0);
    int v = find_strongly_rigid_vertex(dodecahedron_graph());
    REQUIRE(dodecahedron_graph().degree(v) == 3);
}

TEST_CASE("counting identity residual is exactly zero") {
    REQUIRE(counting_identity_residual(cube_graph()) == 0);
    REQUIRE(counting_identity_residual(icosahedron_graph()) == 0);
    REQUIRE(counting_identity_residual(dodecahedron_graph()) == 0);
    REQUIRE(counting_identity_residual(tetrahedron_graph()) == 0);
    REQUIRE(counting_identity_residual(prism_graph(7)) == 0);
    REQUIRE(counting_identity_residual(antiprism_graph(6)) == 0);
    REQUIRE(counting_identity_residual(deg5_two_quads()) == 0);
}

TEST_CASE("local triangulation") {
    SECTION("cube corner: three diagonals, star becomes three triangles") {
        PolyhedralGraph cube = cube_graph();
        LocalTriangulation lt = local_triangulation(cube, 0);
        REQUIRE(lt.diagonals.size() == 3);
        REQUIRE(validate(lt.graph).valid());
        FaceStructure fs = trace_faces(lt.graph);
        for (int f : faces_at_vertex(lt.graph, fs, 0)) REQUIRE(fs.faces[f].length() == 3);
        // boundary of the star is the 3-cycle of neighbors
        REQUIRE(lt.graph.degree(0) == 3);
    }
    SECTION("icosahedron corner: nothing to add") {
        LocalTriangulation lt = local_triangulation(icosahedron_graph(), 0);
        REQUIRE(lt.diagonals.empty());
    }
    SECTION("pentagonal prism corner: 3 diagonals") {
        LocalTriangulation lt = local_triangulation(prism_graph(5), 0);
        REQUIRE(lt.diagonals.size() == 3);
        REQUIRE(validate(lt.graph).valid());
    }
}

TEST_CASE("boundary triangulation enumeration is Catalan-counted and canonical") {
    auto count_for = [](int m) {
        // an m-cycle with no extra adjacencies
        PolyhedralGraph ring;
        ring.rotation.resize(m);
        for (int i = 0; i < m; ++i) ring.rotation[i] = {(i + 1) % m, (i + m - 1) % m};
        std::vector<int> boundary(m);
        for (int i = 0; i < m; ++i) boundary[i] = i;
        BoundaryTriangulations en(boundary, ring);
        int c = 0;
        std::vector<std::vector<Edge>> all;
        while (auto d = en.next()) {
            ++c;
            all.push_back(*d);
        }
        return std::pair{c, all};
    };
    REQUIRE(count_for(3).first == 1);
    REQUIRE(count_for(4).first == 2);
    REQUIRE(count_for(5).first == 5);
    REQUIRE(count_for(6).first == 14);
    REQUIRE(count_for(3).second[0].empty());

    // the first candidate is the fan at position 0
    auto [c5, all5] = count_for(5);
    std::vector<Edge> fan = {{0, 2}, {0, 3}};
    REQUIRE(all5[0] == fan);
}

TEST_CASE("vertex reduction") {
    SECTION("cube corner with empty boundary triangulation") {
        ReductionStep step = vertex_reduction(cube_graph(), 0, {});
        REQUIRE(step.reduced.vertex_count() == 7);
        REQUIRE(validate(step.reduced).valid());
        REQUIRE(step.local_diagonals.size() == 3);
        // the new face replacing the corner is the triangle of its neighbors
        FaceStructure fs = trace_faces(step.reduced);
        bool has_tri_of_neighbors = false;
        for (const auto& f : fs.faces) {
            if (f.length() != 3) continue;
            std::set<int> vs(f.vertices.begin(), f.vertices.end());
            if (vs == std::set<int>(step.boundary.begin(), step.boundary.end()))
                has_tri_of_neighbors = true;
        }
        REQUIRE(has_tri_of_neighbors);
    }
    SECTION("octahedron: both diagonal choices give valid 5-vertex graphs") {
        PolyhedralGraph octa = octahedron_graph();
        LocalTriangulation lt = local_triangulation(octa, 0);
        BoundaryTriangulations en(lt.graph.rotation[0], lt.graph);
        int accepted = 0;
        while (auto d = en.next()) {
            ReductionStep step = vertex_reduction(octa, 0, *d);
            REQUIRE(step.reduced.vertex_count() == 5);
            REQUIRE(validate(step.reduced).valid());
            ++accepted;
        }
        REQUIRE(accepted == 2);
    }
}

TEST_CASE("reduction sequences") {
    SECTION("tetrahedron is terminal immediately") {
        ReductionSequence seq = reduction_sequence(tetrahedron_graph());
        REQUIRE(seq.steps.empty());
        REQUIRE(seq.terminal_vertex >= 0);
    }
    SECTION("cube reduces with strictly decreasing vertex counts") {
        ReductionSequence seq = reduction_sequence(cube_graph());
        REQUIRE_FALSE(seq.steps.empty());
        int prev = 8;
        for (const auto& s : seq.steps) {
            REQUIRE(s.reduced.vertex_count() == prev - 1);
            prev = s.reduced.vertex_count();
            REQUIRE(validate(s.reduced).valid());
        }
        int tv = seq.terminal_vertex;
        REQUIRE(seq.terminal_graph.degree(tv) == seq.terminal_graph.vertex_count() - 1);
        REQUIRE(is_strongly_rigid(seq.terminal_graph, tv));
    }
    SECTION("dodecahedron: every intermediate passes validation") {
        ReductionSequence seq = reduction_sequence(dodecahedron_graph());
        for (const auto& s : seq.steps) REQUIRE(validate(s.reduced).valid());
        REQUIRE(seq.terminal_graph.vertex_count() >= 4);
    }
}
