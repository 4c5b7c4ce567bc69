#include "catch2/catch_amalgamated.hpp"

#include <random>

#include "polyrigid/geometry.hpp"
#include "polyrigid/graph.hpp"
#include "polyrigid/measure.hpp"

using namespace polyrigid;

namespace {

// Unit cube realization matching cube_graph()'s vertex numbering
// (bit 0 -> x, bit 1 -> y, bit 2 -> z).
Realization unit_cube() {
    Realization r;
    r.kind = GeometryKind::Euclidean;
    for (int i = 0; i < 8; ++i)
        r.coords.push_back(euclidean_point((i & 1) ? 0.5 : -0.5, (i & 2) ? 0.5 : -0.5,
                                           (i & 4) ? 0.5 : -0.5));
    return r;
}

Realization regular_tetrahedron() {
    Realization r;
    r.kind = GeometryKind::Euclidean;
    double s = 1.0 / (2.0 * std::sqrt(2.0));  // unit edges
    r.coords = {euclidean_point(s, s, s), euclidean_point(s, -s, -s), euclidean_point(-s, s, -s),
                euclidean_point(-s, -s, s)};
    return r;
}

struct SimpleRng {
    std::mt19937_64 eng;
    explicit SimpleRng(uint64_t seed) : eng(seed) {}
    double uniform() { return (eng() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
};

Vec4 random_tangent(GeometryKind g, const Point& p, SimpleRng& rng) {
    while (true) {
        Vec4 raw{g == GeometryKind::Euclidean ? 0.0 : rng.uniform(-1, 1), rng.uniform(-1, 1),
                 rng.uniform(-1, 1), rng.uniform(-1, 1)};
        Vec4 t = raw;
        if (g == GeometryKind::Spherical) t = raw - p * dot(raw, p);
        if (g == GeometryKind::Hyperbolic) t = raw + p * mdot(raw, p);
        double n = tangent_norm(g, t);
        if (n > 0.1) return t * (1.0 / n);
    }
}

Point random_point(GeometryKind g, SimpleRng& rng) {
    if (g == GeometryKind::Euclidean)
        return euclidean_point(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
    Point base = model_basepoint(g);
    Vec4 d = random_tangent(g, base, rng);
    return exp_map(g, base, d, rng.uniform(0.05, g == GeometryKind::Spherical ? 2.8 : 2.5));
}

}  // namespace

TEST_CASE("distance basics") {
    REQUIRE(distance(GeometryKind::Euclidean, euclidean_point(0, 0, 0), euclidean_point(1, 0, 0)) ==
            Catch::Approx(1.0));
    Point np{1, 0, 0, 0}, eq{0, 1, 0, 0};
    REQUIRE(distance(GeometryKind::Spherical, np, eq) == Catch::Approx(kPi / 2));
}

TEST_CASE("exp map and distance are consistent in all geometries") {
    for (GeometryKind g :
         {GeometryKind::Euclidean, GeometryKind::Spherical, GeometryKind::Hyperbolic}) {
        SimpleRng rng(7 + static_cast<int>(g));
        for (int i = 0; i < 200; ++i) {
            Point p = random_point(g, rng);
            Vec4 d = random_tangent(g, p, rng);
            double t = rng.uniform(0.01, g == GeometryKind::Spherical ? 3.0 : 3.0);
            if (g == GeometryKind::Spherical && t > kPi - 0.01) t = kPi - 0.01;
            Point q = exp_map(g, p, d, t);
            REQUIRE(model_defect(g, q) < 1e-10);
            REQUIRE(distance(g, p, q) == Catch::Approx(t).margin(1e-10));
            // direction recovers the tangent
            Vec4 d2 = direction(g, p, q);
            REQUIRE(tangent_norm(g, d2 - d) < 1e-8);
        }
    }
    Point np{1, 0, 0, 0};
    Point out = exp_map(GeometryKind::Spherical, np, {0, 1, 0, 0}, kPi / 2);
    REQUIRE(distance(GeometryKind::Spherical, out, Point{0, 1, 0, 0}) < 1e-12);
    REQUIRE_THROWS_AS(exp_map(GeometryKind::Euclidean, np, {0, 1, 0, 0}, 0.0), DegenerateError);
}

TEST_CASE("facial angles from sides") {
    auto e = facial_angles_from_sides(GeometryKind::Euclidean, 1, 1, 1);
    for (double a : e) REQUIRE(a == Catch::Approx(kPi / 3));

    auto s = facial_angles_from_sides(GeometryKind::Spherical, kPi / 2, kPi / 2, kPi / 2);
    for (double a : s) REQUIRE(a == Catch::Approx(kPi / 2));

    auto h = facial_angles_from_sides(GeometryKind::Hyperbolic, 1, 1, 1);
    double c1 = std::cosh(1.0);
    double expect = std::acos((c1 * c1 - c1) / (std::sinh(1.0) * std::sinh(1.0)));
    for (double a : h) {
        REQUIRE(a == Catch::Approx(expect));
        REQUIRE(a < kPi / 3);
    }

    // sum comparisons against pi
    SimpleRng rng(21);
    for (int i = 0; i < 100; ++i) {
        double l1 = rng.uniform(0.2, 1.2), l2 = rng.uniform(0.2, 1.2);
        double l3 = rng.uniform(std::abs(l1 - l2) + 0.05, std::min(l1 + l2 - 0.05, 1.4));
        if (l3 <= std::abs(l1 - l2) || l3 >= l1 + l2) continue;
        auto ae = facial_angles_from_sides(GeometryKind::Euclidean, l1, l2, l3);
        REQUIRE(ae[0] + ae[1] + ae[2] == Catch::Approx(kPi).margin(1e-9));
        auto as = facial_angles_from_sides(GeometryKind::Spherical, l1, l2, l3);
        REQUIRE(as[0] + as[1] + as[2] > kPi);
        auto ah = facial_angles_from_sides(GeometryKind::Hyperbolic, l1, l2, l3);
        REQUIRE(ah[0] + ah[1] + ah[2] < kPi);
    }

    REQUIRE_THROWS_AS(facial_angles_from_sides(GeometryKind::Euclidean, 1, 1, 3), UnrealizableError);
    REQUIRE_THROWS_AS(facial_angles_from_sides(GeometryKind::Euclidean, 1, 1, 2), CollinearViolationError);
}

TEST_CASE("dihedral angle orientation") {
    // Two triangles folded around the x-axis edge.
    std::vector<Point> pts = {euclidean_point(0, 0, 0), euclidean_point(1, 0, 0),
                              euclidean_point(0.5, 1, 0), euclidean_point(0.5, 0, 1),
                              euclidean_point(0.5, 0, -1)};
    std::vector<int> left = {0, 1, 2};  // contains directed edge 0->1
    SECTION("convex fold is pi/2") {
        std::vector<int> right = {1, 0, 4};
        REQUIRE(dihedral_angle(GeometryKind::Euclidean, pts, 0, 1, left, right) ==
                Catch::Approx(kPi / 2));
    }
    SECTION("reflex fold is 3pi/2") {
        std::vector<int> right = {1, 0, 3};
        REQUIRE(dihedral_angle(GeometryKind::Euclidean, pts, 0, 1, left, right) ==
                Catch::Approx(3 * kPi / 2));
    }
}

TEST_CASE("cube measures to unit lengths and right dihedral angles") {
    Realization cube = unit_cube();
    PolyhedralGraph g = cube_graph();
    Measurements m = measure(cube, g);
    for (const auto& [e, l] : m.length) REQUIRE(l == Catch::Approx(1.0));
    for (const auto& [e, a] : m.angle) REQUIRE(a == Catch::Approx(kPi / 2));
    REQUIRE(m.singular.empty());
}

TEST_CASE("tetrahedron dihedral angles match the normal-vector oracle") {
    Realization tet = regular_tetrahedron();
    PolyhedralGraph g = tetrahedron_graph();
    Measurements m = measure(tet, g);
    // oracle: angle between inward face normals across an edge
    auto p = [&](int i) { return Vec3{tet.coords[i].x, tet.coords[i].y, tet.coords[i].z}; };
    Vec3 n1 = cross(p(1) - p(0), p(2) - p(0));
    Vec3 n2 = cross(p(2) - p(0), p(3) - p(0));
    double oracle = kPi - std::acos(dot(n1, n2) / (norm(n1) * norm(n2)));
    REQUIRE(oracle == Catch::Approx(std::acos(1.0 / 3.0)));
    for (const auto& [e, l] : m.length) REQUIRE(l == Catch::Approx(1.0));
    for (const auto& [e, a] : m.angle) REQUIRE(a == Catch::Approx(oracle));
}

TEST_CASE("dihedral angle does not depend on the evaluation endpoint") {
    Realization tet = regular_tetrahedron();
    PolyhedralGraph g = tetrahedron_graph();
    FaceStructure fs = trace_faces(g);
    for (const Edge& e : g.edges()) {
        const auto& left = fs.faces[fs.face_at(e.first, e.second)].vertices;
        const auto& right = fs.faces[fs.face_at(e.second, e.first)].vertices;
        double a1 = dihedral_angle(tet.kind, tet.coords, e.first, e.second, left, right);
        // at the other endpoint the edge direction and the face roles swap
        double a2 = dihedral_angle(tet.kind, tet.coords, e.second, e.first, right, left);
        REQUIRE(a1 == Catch::Approx(a2).margin(1e-9));
    }
}

TEST_CASE("face planarity detection") {
    Realization cube = unit_cube();
    PolyhedralGraph g = cube_graph();
    cube.coords[0].z += 1e-3;
    REQUIRE_THROWS_AS(measure(cube, g), FaceNotPlanarError);
}

TEST_CASE("alignment recovers isometries") {
    Realization cube = unit_cube();
    std::vector<Point> src(cube.coords);

    SECTION("identity") {
        AlignResult r = align(GeometryKind::Euclidean, src, src, false);
        REQUIRE(r.residual < 1e-12);
    }
    SECTION("rotation plus translation") {
        std::vector<Point> tgt;
        double c = std::cos(0.7), s = std::sin(0.7);
        for (const Point& p : src)
            tgt.push_back(euclidean_point(c * p.x - s * p.y + 0.3, s * p.x + c * p.y - 1.1, p.z + 2.0));
        AlignResult r = align(GeometryKind::Euclidean, src, tgt, false);
        REQUIRE(r.residual < 1e-12);
        for (size_t i = 0; i < src.size(); ++i)
            REQUIRE(distance(GeometryKind::Euclidean, r.iso.apply(src[i]), tgt[i]) < 1e-12);
    }
    SECTION("mirror of a tetrahedron needs the reflection branch") {
        Realization tet = regular_tetrahedron();
        std::vector<Point> mirrored;
        for (const Point& p : tet.coords) mirrored.push_back(euclidean_point(-p.x, p.y, p.z));
        AlignResult direct = align(GeometryKind::Euclidean, tet.coords, mirrored, false);
        REQUIRE(direct.residual > 0.1);
        AlignResult refl = align(GeometryKind::Euclidean, tet.coords, mirrored, true);
        REQUIRE(refl.residual < 1e-12);
        REQUIRE(refl.iso.reflecting);
    }
    SECTION("spherical and hyperbolic frames") {
        for (GeometryKind g : {GeometryKind::Spherical, GeometryKind::Hyperbolic}) {
            SimpleRng rng(5);
            std::vector<Point> pts;
            for (int i = 0; i < 6; ++i) pts.push_back(random_point(g, rng));
            double c = std::cos(0.4), s = std::sin(0.4);
            std::vector<Point> tgt;
            for (const Point& p : pts) {
                Point q = p;
                if (g == GeometryKind::Spherical) {
                    q = {c * p.t - s * p.x, s * p.t + c * p.x, p.y, p.z};
                } else {
                    double ch = std::cosh(0.4), sh = std::sinh(0.4);
                    q = {ch * p.t + sh * p.x, sh * p.t + ch * p.x, p.y, p.z};
                }
                // also rotate the (y,z) plane
                q = {q.t, q.x, c * q.y - s * q.z, s * q.y + c * q.z};
                tgt.push_back(q);
            }
            AlignResult r = align(g, pts, tgt, false);
            REQUIRE(r.residual < 1e-10);
        }
    }
    SECTION("alignment preserves pairwise distances") {
        SimpleRng rng(11);
        for (GeometryKind g :
             {GeometryKind::Euclidean, GeometryKind::Spherical, GeometryKind::Hyperbolic}) {
            std::vector<Point> a, b;
            for (int i = 0; i < 5; ++i) a.push_back(random_point(g, rng));
            for (int i = 0; i < 5; ++i) b.push_back(random_point(g, rng));
            AlignResult r = align(g, a, b, true);
            for (size_t i = 0; i < a.size(); ++i)
                for (size_t j = i + 1; j < a.size(); ++j) {
                    Point ai = renormalize(g, r.iso.apply(a[i]));
                    Point aj = renormalize(g, r.iso.apply(a[j]));
                    REQUIRE(distance(g, ai, aj) ==
                            Catch::Approx(distance(g, a[i], a[j])).margin(1e-10));
                }
        }
    }
}

TEST_CASE("congruence decisions") {
    Realization cube = unit_cube();
    PolyhedralGraph g = cube_graph();
    std::vector<int> ids = g.vertex_ids();

    Realization moved = cube;
    for (Point& p : moved.coords) p = p + Vec4{0, 1.5, -0.25, 3.0};
    CongruenceResult same = congruent(cube, moved, ids);
    REQUIRE(same.kind == CongruenceKind::Direct);

    Realization scaled = cube;
    for (Point& p : scaled.coords) p = p * 1.1;
    CongruenceResult no = congruent(cube, scaled, ids);
    REQUIRE(no.kind == CongruenceKind::NotCongruent);
    REQUIRE(no.witness >= 0);
}

TEST_CASE("realization invariants") {
    Realization r;
    r.kind = GeometryKind::Spherical;
    r.coords = {{1, 0, 0, 0}, {-1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}};
    REQUIRE_THROWS_AS(check_realization(r, {0, 1, 2, 3}), DegenerateError);  // antipodal pair
    r.coords[1] = {0, 0, 0, 1};
    REQUIRE_NOTHROW(check_realization(r, {0, 1, 2, 3}));
}
