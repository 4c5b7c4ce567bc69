#include "polyrigid/sphpolygon.hpp"
#include <cstdio>
using namespace polyrigid;
int main() {
    for (double h : {0.08, 0.12, 0.2, 0.3, 0.45}) {
      for (double l3 : {2.2, 2.4, 2.6}) {
        double l4 = l3 + (4.9 - 2.4), lmid = (l3 + l4) / 2;
        SphericalPolygonRealization r;
        auto lifted = [&](double lon) { return normalized(Vec3{std::cos(lon), std::sin(lon), h}); };
        r.vertices = {{1,0,0},{0,1,0},lifted(l3),lifted(lmid),lifted(l4)};
        r.long_arc = {false,false,false,false,false};
        bool convex = true; double worst = 0;
        for (int i = 0; i < 5; ++i) {
            double a = polygon_interior_angle(r, i);
            worst = std::max(worst, a);
            if (a >= kPi) convex = false;
        }
        int res = convex ? (int)hemisphere_containment(r) : -1;
        printf("h=%.2f l3=%.1f convex=%d worst=%.4f result=%d\n", h, l3, convex, worst, res);
      }
    }
    return 0;
}
