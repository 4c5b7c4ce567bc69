#include <cstdio>
#include <cmath>
#include <vector>
#include <algorithm>
struct V3 { double x,y,z; };
V3 operator-(V3 a, V3 b){return {a.x-b.x,a.y-b.y,a.z-b.z};}
V3 operator*(V3 a, double s){return {a.x*s,a.y*s,a.z*s};}
double dot(V3 a, V3 b){return a.x*b.x+a.y*b.y+a.z*b.z;}
V3 cross(V3 a, V3 b){return {a.y*b.z-a.z*b.y,a.z*b.x-a.x*b.z,a.x*b.y-a.y*b.x};}
double nrm(V3 a){return std::sqrt(dot(a,a));}
V3 unit(V3 a){return a*(1.0/nrm(a));}
int main(int argc, char** argv) {
    int n = 5; bool anti = argc > 1;
    std::vector<V3> p;
    double R = 1.0/(2*sin(M_PI/n));
    double h = anti ? std::sqrt(1.0 - 2*R*R*(1-cos(M_PI/n))) : 1.0;
    for (int i=0;i<n;i++) p.push_back({R*cos(2*M_PI*i/n), R*sin(2*M_PI*i/n), -h/2});
    for (int i=0;i<n;i++) {
        double a = anti ? 2*M_PI*i/n + M_PI/n : 2*M_PI*i/n;
        p.push_back({R*cos(a), R*sin(a), h/2});
    }
    int N = 2*n;
    std::vector<std::vector<int>> rot(N);
    for (int v=0; v<N; v++) {
        std::vector<int> nb;
        for (int u=0;u<N;u++) if (u!=v && nrm(p[u]-p[v]) < 1.0001) nb.push_back(u);
        V3 axis = unit({p[v].x, p[v].y, p[v].z * 0.3});  // outward-ish: radial + mild z
        V3 any = std::abs(axis.x) < 0.9 ? V3{1,0,0} : V3{0,1,0};
        V3 t1 = unit(cross(any, axis));
        V3 t2 = cross(axis, t1);
        std::vector<std::pair<double,int>> ang;
        for (int u : nb) { V3 d = p[u]-p[v]; ang.push_back({atan2(dot(d,t2),dot(d,t1)),u}); }
        std::sort(ang.begin(), ang.end());
        for (auto& [a,u] : ang) rot[v].push_back(u);
    }
    for (int v=0;v<N;v++){ printf("%d: ",v); for(int u:rot[v])printf("%d ",u); printf("\n"); }
    return 0;
}
