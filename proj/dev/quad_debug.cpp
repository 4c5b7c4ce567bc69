#include "polyrigid/sphpolygon.hpp"
#include <cstdio>
#include <random>
using namespace polyrigid;

struct SimpleRng {
    std::mt19937_64 eng;
    explicit SimpleRng(uint64_t seed) : eng(seed) {}
    double uniform() { return (eng() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    Vec3 unit_vector() {
        while (true) {
            Vec3 v{uniform(-1,1), uniform(-1,1), uniform(-1,1)};
            double n2 = dot(v,v);
            if (n2 > 0.01 && n2 <= 1.0) return v * (1.0/std::sqrt(n2));
        }
    }
};

SphericalPolygonRealization random_quad(SimpleRng& rng) {
    while (true) {
        SphericalPolygonRealization r;
        r.long_arc = {false,false,false,false};
        r.vertices.clear();
        for (int i = 0; i < 4; ++i) r.vertices.push_back(rng.unit_vector());
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i) {
            double l = polygon_edge_length(r, i);
            if (l < 0.1 || l > kPi - 0.1) ok = false;
            double a = polygon_interior_angle(r, i);
            if (singular_distance(a) < 0.05) ok = false;
        }
        for (int i = 0; i < 4 && ok; ++i)
            for (int j = i+1; j < 4; ++j) {
                double d = s2_arc_length(r.vertices[i], r.vertices[j], false);
                if (d < 0.05 || d > kPi - 0.05) ok = false;
            }
        if (ok) return r;
    }
}

int main() {
    SimpleRng rng(555);
    int patterns[16] = {0};
    int alternating_found = 0;
    for (int rep = 0; rep < 20000; ++rep) {
        auto q = random_quad(rng);
        auto spec = measure_polygon(q);
        // classify raw pattern
        int code = 0;
        for (int i = 0; i < 4; ++i) code |= (*spec.angles[i] > kPi) << i;
        patterns[code]++;
        bool alt = (code == 0b0101) || (code == 0b1010);
        if (alt && alternating_found < 3) {
            ++alternating_found;
            printf("alternating quad found (rep %d):\n", rep);
            for (int i = 0; i < 4; ++i)
                printf("  v%d = (%.6f, %.6f, %.6f)  angle %.6f  len %.6f\n", i,
                       q.vertices[i].x, q.vertices[i].y, q.vertices[i].z,
                       *spec.angles[i], *spec.lengths[i]);
            // check crossing pairs
            bool c02 = detail::short_arcs_cross(q.vertices[0], q.vertices[1], q.vertices[2], q.vertices[3], 1e-10);
            bool c13 = detail::short_arcs_cross(q.vertices[1], q.vertices[2], q.vertices[3], q.vertices[0], 1e-10);
            printf("  crossings: e0xe2=%d e1xe3=%d   angle sum=%.6f\n", c02, c13,
                   *spec.angles[0]+*spec.angles[1]+*spec.angles[2]+*spec.angles[3]);
        }
    }
    printf("\npattern histogram (bit i = angle_i reflex):\n");
    for (int c = 0; c < 16; ++c) printf("  %x: %d\n", c, patterns[c]);
    return 0;
}
