// Dev-only: derives rotation systems for the canonical solids from
// coordinates (counterclockwise around the outward vertex direction) and
// prints them as C++ tables. Not part of the build.
#include <cstdio>
#include <cmath>
#include <vector>
#include <array>
#include <algorithm>
#include <map>
#include <string>

struct V3 { double x,y,z; };
V3 operator-(V3 a, V3 b){return {a.x-b.x,a.y-b.y,a.z-b.z};}
V3 operator+(V3 a, V3 b){return {a.x+b.x,a.y+b.y,a.z+b.z};}
V3 operator*(V3 a, double s){return {a.x*s,a.y*s,a.z*s};}
double dot(V3 a, V3 b){return a.x*b.x+a.y*b.y+a.z*b.z;}
V3 cross(V3 a, V3 b){return {a.y*b.z-a.z*b.y,a.z*b.x-a.x*b.z,a.x*b.y-a.y*b.x};}
double nrm(V3 a){return std::sqrt(dot(a,a));}
V3 unit(V3 a){return a*(1.0/nrm(a));}

// neighbors = vertices at min pairwise distance (edge length)
std::vector<std::vector<int>> rotation_from_coords(const std::vector<V3>& p) {
    int n = p.size();
    double mind = 1e18;
    for (int i=0;i<n;i++) for (int j=i+1;j<n;j++) mind = std::min(mind, nrm(p[i]-p[j]));
    std::vector<std::vector<int>> rot(n);
    for (int v=0; v<n; v++) {
        std::vector<int> nb;
        for (int u=0;u<n;u++) if (u!=v && nrm(p[u]-p[v]) < mind*1.0001) nb.push_back(u);
        V3 axis = unit(p[v]);  // solids centered at origin
        // tangent frame (t1,t2,axis) right-handed
        V3 any = std::abs(axis.x) < 0.9 ? V3{1,0,0} : V3{0,1,0};
        V3 t1 = unit(cross(any, axis));  // hmm: cross(any,axis) gives vec perp to axis
        V3 t2 = cross(axis, t1);
        // check right-handedness: det[t1,t2,axis] = dot(cross(t1,t2),axis)
        if (dot(cross(t1,t2),axis) < 0) t2 = t2*-1.0;
        std::vector<std::pair<double,int>> ang;
        for (int u : nb) {
            V3 d = p[u]-p[v];
            double a = atan2(dot(d,t2), dot(d,t1));
            ang.push_back({a,u});
        }
        std::sort(ang.begin(), ang.end());
        for (auto& [a,u] : ang) rot[v].push_back(u);
    }
    return rot;
}

void print(const char* name, const std::vector<std::vector<int>>& rot) {
    printf("// %s\n{", name);
    for (size_t v=0; v<rot.size(); v++) {
        printf("{");
        for (size_t k=0;k<rot[v].size();k++) printf("%d%s",rot[v][k], k+1<rot[v].size()?", ":"");
        printf("}%s", v+1<rot.size()?",\n ":"}\n");
    }
}

int main() {
    double phi = (1+std::sqrt(5.0))/2;
    std::vector<V3> tet = {{1,1,1},{1,-1,-1},{-1,1,-1},{-1,-1,1}};
    std::vector<V3> cube;
    for (int i=0;i<8;i++) cube.push_back({(i&1)?0.5:-0.5,(i&2)?0.5:-0.5,(i&4)?0.5:-0.5});
    std::vector<V3> octa = {{1,0,0},{-1,0,0},{0,1,0},{0,-1,0},{0,0,1},{0,0,-1}};
    std::vector<V3> ico;
    for (int s1=-1;s1<=1;s1+=2) for (int s2=-1;s2<=1;s2+=2) {
        ico.push_back({0, (double)s1, s2*phi});
        ico.push_back({(double)s1, s2*phi, 0});
        ico.push_back({s1*phi, 0, (double)s2});
    }
    std::vector<V3> dod;
    for (int i=0;i<8;i++) dod.push_back({(i&1)?1.0:-1.0,(i&2)?1.0:-1.0,(i&4)?1.0:-1.0});
    for (int s1=-1;s1<=1;s1+=2) for (int s2=-1;s2<=1;s2+=2) {
        dod.push_back({0, s1/phi, s2*phi});
        dod.push_back({s1/phi, s2*phi, 0});
        dod.push_back({s1*phi, 0, s2/phi});
    }
    print("tetrahedron", rotation_from_coords(tet));
    print("cube", rotation_from_coords(cube));
    print("octahedron", rotation_from_coords(octa));
    print("icosahedron", rotation_from_coords(ico));
    print("dodecahedron", rotation_from_coords(dod));
    return 0;
}
