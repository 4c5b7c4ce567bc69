#include "catch2/catch_amalgamated.hpp"

#include <random>

#include "polyrigid/sphpolygon.hpp"

using namespace polyrigid;

namespace {

struct SimpleRng {
    std::mt19937_64 eng;
    explicit SimpleRng(uint64_t seed) : eng(seed) {}
    double uniform() { return (eng() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    Vec3 unit_vector() {
        while (true) {
            Vec3 v{uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
            double n2 = dot(v, v);
            if (n2 > 0.01 && n2 <= 1.0) return v * (1.0 / std::sqrt(n2));
        }
    }
};

// Random strictly-convex spherical polygon in an open hemisphere, by
// rejection: points around a cap, accepted when all interior angles are
// convex and no edges cross.
SphericalPolygonRealization random_convex_polygon(SimpleRng& rng, int n) {
    for (int attempt = 0; attempt < 5000; ++attempt) {
        Vec3 pole = rng.unit_vector();
        Vec3 seed = rng.unit_vector();
        if (std::abs(dot(seed, pole)) > 0.9) continue;
        Vec3 u = normalized(seed - pole * dot(seed, pole));
        Vec3 w = cross(pole, u);
        std::vector<double> phis;
        for (int i = 0; i < n; ++i) phis.push_back(rng.uniform(0, kTwoPi));
        std::sort(phis.begin(), phis.end());
        bool spaced = true;
        for (int i = 0; i < n; ++i) {
            double gap = (i + 1 < n ? phis[i + 1] : phis[0] + kTwoPi) - phis[i];
            if (gap < 0.15 || gap > kPi) spaced = false;
        }
        if (!spaced) continue;
        double base = rng.uniform(0.3, 1.0);
        SphericalPolygonRealization r;
        r.long_arc.assign(n, false);
        for (int i = 0; i < n; ++i) {
            double rad = base * rng.uniform(0.85, 1.15);
            Vec3 dir = u * std::cos(phis[i]) + w * std::sin(phis[i]);
            r.vertices.push_back(s2_exp(pole, dir, rad));
        }
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            double a = polygon_interior_angle(r, i);
            if (!(a > 0.05 && a < kPi - 0.05)) ok = false;
            if (polygon_edge_length(r, i) < 0.05) ok = false;
        }
        if (ok && !polygon_self_intersects(r)) return r;
    }
    throw std::runtime_error("could not sample a convex polygon");
}

}  // namespace

TEST_CASE("hemisphere containment") {
    SECTION("octant triangle is strictly inside") {
        SphericalPolygonRealization r;
        r.vertices = {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
        r.long_arc = {false, false, false};
        REQUIRE(hemisphere_containment(r) == Hemisphere::StrictlyInside);
    }
    SECTION("edge on a great circle reports the boundary edge") {
        // cap-boundary polygon hugging the equator with one edge exactly on it
        SphericalPolygonRealization r;
        double h = 0.12;
        auto lifted = [&](double lon) {
            return normalized(Vec3{std::cos(lon), std::sin(lon), h});
        };
        r.vertices = {{1, 0, 0}, {0, 1, 0}, lifted(2.6), lifted(3.85), lifted(5.1)};
        r.long_arc = {false, false, false, false, false};
        for (int i = 0; i < 5; ++i) REQUIRE(polygon_interior_angle(r, i) < kPi);
        REQUIRE(hemisphere_containment(r) == Hemisphere::OnBoundaryEdge);
    }
    SECTION("thin triangle hugging a great circle needs the rotated pole") {
        double eps = 2e-3;
        SphericalPolygonRealization r;
        r.vertices = {normalized(Vec3{1, 0, eps}), normalized(Vec3{std::cos(1.3), std::sin(1.3), 3 * eps}),
                      normalized(Vec3{std::cos(2.6), std::sin(2.6), eps})};
        r.long_arc = {false, false, false};
        for (int i = 0; i < 3; ++i) REQUIRE(polygon_interior_angle(r, i) < kPi);
        REQUIRE(hemisphere_containment(r) == Hemisphere::StrictlyInside);
    }
    SECTION("reflex polygons are rejected") {
        SphericalPolygonRealization r;
        r.vertices = {{0, 0, 1},
                      normalized(Vec3{1, 0, 1}),
                      normalized(Vec3{0.4, 0.02, 1}),
                      normalized(Vec3{0, 1, 1})};
        r.long_arc = {false, false, false, false};
        bool has_reflex = false;
        for (int i = 0; i < 4; ++i)
            if (polygon_interior_angle(r, i) > kPi) has_reflex = true;
        REQUIRE(has_reflex);
        REQUIRE(hemisphere_containment(r) == Hemisphere::NotContained);
    }
    SECTION("repeated vertices are degenerate") {
        SphericalPolygonRealization r;
        r.vertices = {{0, 0, 1}, {0, 0, 1}, {1, 0, 0}};
        r.long_arc = {false, false, false};
        REQUIRE_THROWS_AS(hemisphere_containment(r), DegenerateError);
    }
}

TEST_CASE("convex n-gon solver") {
    SECTION("octant base case") {
        SphericalPolygonSpec s;
        s.angles = {kPi / 2, kPi / 2, kPi / 2};
        s.lengths = {std::nullopt, std::nullopt, std::nullopt};
        SphericalPolygonRealization r = solve_convex_ngon(s);
        for (int i = 0; i < 3; ++i) REQUIRE(polygon_edge_length(r, i) == Catch::Approx(kPi / 2));
    }
    SECTION("random polygons are recovered from angles and n-3 lengths") {
        SimpleRng rng(77);
        for (int n : {4, 5, 6, 8}) {
            for (int rep = 0; rep < 25; ++rep) {
                SphericalPolygonRealization truth = random_convex_polygon(rng, n);
                SphericalPolygonSpec full = measure_polygon(truth);
                SphericalPolygonSpec given = full;
                for (int k = 0; k < 3; ++k) given.lengths[(2 * k + 1) % n] = std::nullopt;
                SphericalPolygonRealization sol = solve_convex_ngon(given);
                for (int i = 0; i < n; ++i) {
                    REQUIRE(polygon_edge_length(sol, i) ==
                            Catch::Approx(*full.lengths[i]).margin(1e-8));
                    REQUIRE(polygon_edge_length(sol, i) < kPi);
                }
                REQUIRE(hemisphere_containment(sol) != Hemisphere::NotContained);
            }
        }
    }
    SECTION("unrealizable angle sets are rejected") {
        SphericalPolygonSpec s;
        s.angles = {0.2, 0.2, 0.2};
        s.lengths = {std::nullopt, std::nullopt, std::nullopt};
        REQUIRE_THROWS_AS(solve_convex_ngon(s), UnrealizableError);
    }
}

TEST_CASE("chain solver with one unknown length") {
    SECTION("octant with the third side withheld") {
        SphericalPolygonSpec s;
        s.angles = {kPi / 2, kPi / 2, kPi / 2};
        s.lengths = {kPi / 2, kPi / 2, std::nullopt};
        SphericalPolygonRealization r = solve_ngon_one_unknown_length(s);
        REQUIRE(polygon_edge_length(r, 2) == Catch::Approx(kPi / 2));
    }
    SECTION("random convex polygons, one withheld length") {
        SimpleRng rng(123);
        for (int n : {4, 5, 7}) {
            for (int rep = 0; rep < 20; ++rep) {
                SphericalPolygonRealization truth = random_convex_polygon(rng, n);
                SphericalPolygonSpec full = measure_polygon(truth);
                SphericalPolygonSpec given = full;
                int hide = rep % n;
                given.lengths[hide] = std::nullopt;
                SphericalPolygonRealization sol = solve_ngon_one_unknown_length(given);
                REQUIRE(polygon_edge_length(sol, hide) ==
                        Catch::Approx(*full.lengths[hide]).margin(1e-8));
            }
        }
    }
    SECTION("flat vertex from a subdivided edge still closes") {
        SphericalPolygonRealization tri;
        tri.vertices = {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
        tri.long_arc = {false, false, false};
        Vec3 mid = s2_exp(tri.vertices[0], s2_tangent(tri.vertices[0], tri.vertices[1]), kPi / 5);
        SphericalPolygonRealization quad;
        quad.vertices = {tri.vertices[0], mid, tri.vertices[1], tri.vertices[2]};
        quad.long_arc = {false, false, false, false};
        SphericalPolygonSpec full = measure_polygon(quad);
        REQUIRE(*full.angles[1] == Catch::Approx(kPi));
        SphericalPolygonSpec given = full;
        given.lengths[2] = std::nullopt;
        SphericalPolygonRealization sol = solve_ngon_one_unknown_length(given);
        REQUIRE(polygon_edge_length(sol, 2) == Catch::Approx(*full.lengths[2]).margin(1e-8));
    }
    SECTION("inconsistent closure is rejected") {
        SphericalPolygonSpec s;
        s.angles = {kPi / 2, kPi / 2, kPi / 2};
        s.lengths = {kPi / 2, kPi / 3, kPi / 2};
        REQUIRE_THROWS_AS(solve_ngon_one_unknown_length(s), UnrealizableError);
    }
}

namespace {

// Random quadrilateral with all short arcs: every edge is below pi, so it
// lies in the theorem's hypothesis class whatever its shape turns out to be.
SphericalPolygonRealization random_quad(SimpleRng& rng) {
    while (true) {
        SphericalPolygonRealization r;
        r.long_arc = {false, false, false, false};
        for (int i = 0; i < 4; ++i) r.vertices.push_back(rng.unit_vector());
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i) {
            double l = polygon_edge_length(r, i);
            if (l < 0.1 || l > kPi - 0.1) ok = false;
            double a = polygon_interior_angle(r, i);
            if (singular_distance(a) < 0.05) ok = false;
        }
        for (int i = 0; i < 4 && ok; ++i)
            for (int j = i + 1; j < 4; ++j) {
                double d = s2_arc_length(r.vertices[i], r.vertices[j], false);
                if (d < 0.05 || d > kPi - 0.05) ok = false;
            }
        if (ok) return r;
    }
}

}  // namespace

TEST_CASE("quadrilateral rigidity") {
    SECTION("random quadrilaterals are recovered from one length and all angles") {
        SimpleRng rng(555);
        int case_counts[4] = {0, 0, 0, 0};
        for (int rep = 0; rep < 600; ++rep) {
            SphericalPolygonRealization truth = random_quad(rng);
            SphericalPolygonSpec full = measure_polygon(truth);
            SphericalPolygonSpec given = full;
            int keep = rep % 4;
            for (int i = 0; i < 4; ++i)
                if (i != keep) given.lengths[i] = std::nullopt;
            SphericalPolygonRealization sol = solve_quadrilateral(given);
            for (int i = 0; i < 4; ++i)
                REQUIRE(polygon_edge_length(sol, i) ==
                        Catch::Approx(*full.lengths[i]).margin(1e-8));
            SphericalPolygonRealization posed = normalize_pose([&] {
                SphericalPolygonRealization t = truth;
                std::rotate(t.vertices.begin(), t.vertices.begin() + keep, t.vertices.end());
                return t;
            }());
            SphericalPolygonRealization sol_posed = normalize_pose([&] {
                SphericalPolygonRealization t = sol;
                std::rotate(t.vertices.begin(), t.vertices.begin() + keep, t.vertices.end());
                return t;
            }());
            for (int i = 0; i < 4; ++i)
                REQUIRE(norm(posed.vertices[i] - sol_posed.vertices[i]) < 1e-7);

            std::array<double, 4> th{*full.angles[keep], *full.angles[(keep + 1) % 4],
                                     *full.angles[(keep + 2) % 4], *full.angles[(keep + 3) % 4]};
            if (th[0] > kPi) continue;
            case_counts[static_cast<int>(quad_case_of(th, polygon_self_intersects(truth)))]++;
        }
        REQUIRE(case_counts[0] > 0);
        REQUIRE(case_counts[1] + case_counts[2] + case_counts[3] > 0);
    }

    SECTION("exactly one case branch accepts a normalized instance") {
        SimpleRng rng(556);
        int tested = 0;
        while (tested < 200) {
            SphericalPolygonRealization truth = random_quad(rng);
            SphericalPolygonSpec full = measure_polygon(truth);
            if (*full.angles[0] >= kPi) continue;
            SphericalPolygonSpec given = full;
            for (int i = 1; i < 4; ++i) given.lengths[i] = std::nullopt;
            int accepted = 0;
            for (QuadCase c : {QuadCase::ConvexPair, QuadCase::Hemisphere, QuadCase::Split,
                               QuadCase::SelfIntersecting}) {
                if (attempt_quadrilateral_case(given, c)) ++accepted;
            }
            REQUIRE(accepted == 1);
            ++tested;
        }
    }

    SECTION("singular angles are routed away") {
        SphericalPolygonSpec s;
        s.angles = {kPi, kPi / 2, kPi / 2, kPi / 2};
        s.lengths = {1.0, std::nullopt, std::nullopt, std::nullopt};
        REQUIRE_THROWS_AS(solve_quadrilateral(s), SingularCaseError);
    }
}

TEST_CASE("flat-edge cases") {
    SECTION("isosceles flat triangle with one adjacent side known") {
        double theta = 1.1, a = 0.8;
        SphericalPolygonSpec s;
        s.angles = {theta, theta, kPi};
        s.lengths = {std::nullopt, a, std::nullopt};
        SphericalPolygonRealization r = solve_flat_edge_cases(s);
        REQUIRE(s2_arc_length(r.vertices[1], r.vertices[2], false) == Catch::Approx(a));
        REQUIRE(s2_arc_length(r.vertices[2], r.vertices[0], false) == Catch::Approx(kPi - a));
        REQUIRE(norm(r.vertices[0] + r.vertices[1]) < 1e-9);
        REQUIRE(polygon_interior_angle(r, 2) == Catch::Approx(kPi));
    }
    SECTION("zero-zero-pi triangle") {
        SphericalPolygonSpec s;
        s.angles = {0.0, 0.0, kPi};
        s.lengths = {1.3, std::nullopt, 0.4};
        SphericalPolygonRealization r = solve_flat_edge_cases(s);
        // the side joining the two zero-turn vertices is the sum of the others
        REQUIRE(s2_arc_length(r.vertices[1], r.vertices[2], false) ==
                Catch::Approx(1.3 - 0.4).margin(1e-9));
        REQUIRE(s2_arc_length(r.vertices[0], r.vertices[1], false) ==
                Catch::Approx(0.9 + 0.4).margin(1e-9));
    }
    SECTION("all-pi triangle") {
        SphericalPolygonSpec s;
        s.angles = {kPi, kPi, kPi};
        s.lengths = {2.0, 2.5, std::nullopt};
        SphericalPolygonRealization r = solve_flat_edge_cases(s);
        double l2 = s2_arc_length(r.vertices[2], r.vertices[0], kTwoPi - 4.5 > kPi);
        REQUIRE(l2 == Catch::Approx(kTwoPi - 4.5));
    }
    SECTION("quad with one flat edge reduces to a triangle") {
        SimpleRng rng(31);
        for (int rep = 0; rep < 40; ++rep) {
            SphericalPolygonRealization tri;
            tri.long_arc = {false, false, false};
            while (true) {
                tri.vertices.clear();
                for (int i = 0; i < 3; ++i) tri.vertices.push_back(rng.unit_vector());
                bool ok = true;
                for (int i = 0; i < 3; ++i) {
                    double l = polygon_edge_length(tri, i);
                    double a = polygon_interior_angle(tri, i);
                    if (l < 0.3 || l > kPi - 0.3 || singular_distance(a) < 0.1) ok = false;
                }
                if (ok) break;
            }
            double t = rng.uniform(0.2, 0.8);
            double l0 = polygon_edge_length(tri, 0);
            Vec3 mid = s2_exp(tri.vertices[0], s2_tangent(tri.vertices[0], tri.vertices[1]), t * l0);
            SphericalPolygonRealization quad;
            quad.vertices = {mid, tri.vertices[1], tri.vertices[2], tri.vertices[0]};
            quad.long_arc = {false, false, false, false};
            SphericalPolygonSpec full = measure_polygon(quad);
            REQUIRE(singular_distance(*full.angles[0]) < 1e-9);
            SphericalPolygonSpec given = full;
            given.lengths[1] = std::nullopt;
            given.lengths[2] = std::nullopt;
            SphericalPolygonRealization sol = solve_flat_edge_cases(given);
            for (int i = 0; i < 4; ++i)
                REQUIRE(polygon_edge_length(sol, i) ==
                        Catch::Approx(*full.lengths[i]).margin(1e-7));
        }
    }
    SECTION("alternating all-flat pattern is the partially-flat obstruction") {
        SphericalPolygonSpec s;
        s.angles = {kPi, kPi, kPi, kPi};
        s.lengths = {1.0, std::nullopt, 1.2, std::nullopt};
        REQUIRE_THROWS_AS(solve_flat_edge_cases(s), PartiallyFlatObstructionError);
    }
    SECTION("all-flat with three consecutive known sides") {
        SphericalPolygonSpec s;
        s.angles = {kPi, kPi, kPi, kPi};
        s.lengths = {1.0, 1.5, 2.0, std::nullopt};
        SphericalPolygonRealization r = solve_flat_edge_cases(s);
        double missing = kTwoPi - 4.5;
        REQUIRE(s2_arc_length(r.vertices[3], r.vertices[0], missing > kPi) ==
                Catch::Approx(missing));
    }
}
