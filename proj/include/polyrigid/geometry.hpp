#pragma once

// Ambient geometry for the three constant-curvature model spaces. Euclidean
// points use the spatial components of a Vec4 (t = 0); spherical points are
// unit vectors in R^4; hyperbolic points live on the upper hyperboloid sheet
// of Minkowski R^{1,3} (mdot(p,p) = -1, t > 0). The hyperboloid and round
// models are used rather than Klein/gnomonic charts because distances,
// exponential maps and angles are exact inner-product formulas there.

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "polyrigid/error.hpp"
#include "polyrigid/vec.hpp"

namespace polyrigid {

enum class GeometryKind { Euclidean, Spherical, Hyperbolic };

inline std::string to_string(GeometryKind g) {
    switch (g) {
        case GeometryKind::Euclidean: return "euclidean";
        case GeometryKind::Spherical: return "spherical";
        case GeometryKind::Hyperbolic: return "hyperbolic";
    }
    return "?";
}

using Point = Vec4;

inline Point euclidean_point(double x, double y, double z) { return {0.0, x, y, z}; }

inline Point model_basepoint(GeometryKind g) {
    if (g == GeometryKind::Euclidean) return {0, 0, 0, 0};
    return {1, 0, 0, 0};
}

// Projects a nearly-valid point back onto the model manifold.
inline Point renormalize(GeometryKind g, const Point& p) {
    switch (g) {
        case GeometryKind::Euclidean:
            return {0.0, p.x, p.y, p.z};
        case GeometryKind::Spherical: {
            double n = std::sqrt(dot(p, p));
            if (n == 0) throw DegenerateError("zero spherical point");
            return p * (1.0 / n);
        }
        case GeometryKind::Hyperbolic: {
            double q = -mdot(p, p);
            if (q <= 0 || p.t <= 0) throw DegenerateError("point not on the upper hyperboloid");
            return p * (1.0 / std::sqrt(q));
        }
    }
    return p;
}

inline double model_defect(GeometryKind g, const Point& p) {
    switch (g) {
        case GeometryKind::Euclidean: return std::abs(p.t);
        case GeometryKind::Spherical: return std::abs(dot(p, p) - 1.0);
        case GeometryKind::Hyperbolic: return std::abs(mdot(p, p) + 1.0);
    }
    return 0;
}

// Inner product on the tangent space at a model point (positive definite in
// all three cases).
inline double tangent_dot(GeometryKind g, const Vec4& u, const Vec4& v) {
    return g == GeometryKind::Hyperbolic ? mdot(u, v) : dot(u, v);
}

inline double tangent_norm(GeometryKind g, const Vec4& u) {
    return std::sqrt(std::max(0.0, tangent_dot(g, u, u)));
}

inline double distance(GeometryKind g, const Point& p, const Point& q) {
    switch (g) {
        case GeometryKind::Euclidean: {
            Vec4 d = q - p;
            return std::sqrt(dot(d, d));
        }
        case GeometryKind::Spherical: {
            double c = dot(p, q);
            Vec4 perp = q - p * c;
            return std::atan2(std::sqrt(dot(perp, perp)), c);
        }
        case GeometryKind::Hyperbolic: {
            Vec4 u = q + p * mdot(q, p);
            return std::asinh(std::sqrt(std::max(0.0, mdot(u, u))));
        }
    }
    return 0;
}

// Unit tangent at p pointing toward q along the geodesic.
inline Vec4 direction(GeometryKind g, const Point& p, const Point& q) {
    Vec4 u;
    switch (g) {
        case GeometryKind::Euclidean:
            u = q - p;
            break;
        case GeometryKind::Spherical:
            u = q - p * dot(p, q);
            break;
        case GeometryKind::Hyperbolic:
            u = q + p * mdot(p, q);
            break;
    }
    double n = tangent_norm(g, u);
    if (n < tol::model) throw DegenerateError("direction between coincident or antipodal points");
    return u * (1.0 / n);
}

inline Point exp_map(GeometryKind g, const Point& p, const Vec4& unit_dir, double t) {
    if (t <= 0) throw DegenerateError("exp_map needs a positive length");
    switch (g) {
        case GeometryKind::Euclidean:
            return p + unit_dir * t;
        case GeometryKind::Spherical:
            return renormalize(g, p * std::cos(t) + unit_dir * std::sin(t));
        case GeometryKind::Hyperbolic:
            return renormalize(g, p * std::cosh(t) + unit_dir * std::sinh(t));
    }
    return p;
}

// Orientation volume of a tangent 3-frame (u, v, w) at p; positive for a
// right-handed frame. Used to give signed angles a consistent sense across
// the three models.
inline double oriented_volume(GeometryKind g, const Point& p, const Vec4& u, const Vec4& v, const Vec4& w) {
    if (g == GeometryKind::Euclidean) {
        Vec3 a{u.x, u.y, u.z}, b{v.x, v.y, v.z}, c{w.x, w.y, w.z};
        return dot(a, cross(b, c));
    }
    return det4(p, u, v, w);
}

// Signed angle from x to y around the unit tangent axis at p, in [0, 2pi).
// Components of x and y along the axis are projected away first.
inline double signed_angle_about(GeometryKind g, const Point& p, const Vec4& axis, Vec4 x, Vec4 y) {
    x = x - axis * tangent_dot(g, x, axis);
    y = y - axis * tangent_dot(g, y, axis);
    double nx = tangent_norm(g, x), ny = tangent_norm(g, y);
    if (nx < tol::model || ny < tol::model) throw DegenerateError("angle legs parallel to axis");
    double c = tangent_dot(g, x, y);
    double s = oriented_volume(g, p, axis, x, y);
    return lift_angle(std::atan2(s, c));
}

// Interior angles of a geodesic triangle from its side lengths; entry i is
// the angle opposite side i. Sides must be realizable and the triangle
// nondegenerate: an angle at 0 or pi means collinear vertices.
inline std::array<double, 3> facial_angles_from_sides(GeometryKind g, double l1, double l2, double l3) {
    std::array<double, 3> sides{l1, l2, l3};
    for (double s : sides) {
        if (s <= 0) throw UnrealizableError("nonpositive side length");
        if (g == GeometryKind::Spherical && s >= kPi)
            throw UnrealizableError("spherical side length must be < pi");
    }
    std::array<double, 3> angles{};
    for (int i = 0; i < 3; ++i) {
        double a = sides[i], b = sides[(i + 1) % 3], c = sides[(i + 2) % 3];
        double cosv = 0;
        switch (g) {
            case GeometryKind::Euclidean:
                cosv = (b * b + c * c - a * a) / (2 * b * c);
                break;
            case GeometryKind::Spherical:
                cosv = (std::cos(a) - std::cos(b) * std::cos(c)) / (std::sin(b) * std::sin(c));
                break;
            case GeometryKind::Hyperbolic:
                cosv = (std::cosh(b) * std::cosh(c) - std::cosh(a)) / (std::sinh(b) * std::sinh(c));
                break;
        }
        if (cosv > 1.0 + tol::clamp_slack || cosv < -1.0 - tol::clamp_slack)
            throw UnrealizableError("side lengths admit no triangle");
        angles[i] = clamped_acos(cosv);
        if (angles[i] < tol::singular_guard || angles[i] > kPi - tol::singular_guard)
            throw CollinearViolationError("triangle with collinear vertices");
    }
    return angles;
}

struct Realization {
    GeometryKind kind = GeometryKind::Euclidean;
    std::vector<Point> coords;  // indexed by vertex id
};

// Model constraints plus the no-coincident / no-antipodal-pair invariants.
inline void check_realization(const Realization& r, const std::vector<int>& ids) {
    for (int v : ids) {
        if (model_defect(r.kind, r.coords[v]) > 1e-9)
            throw StructuralError("vertex " + std::to_string(v) + " violates the model constraint");
    }
    for (size_t i = 0; i < ids.size(); ++i)
        for (size_t j = i + 1; j < ids.size(); ++j) {
            double d = distance(r.kind, r.coords[ids[i]], r.coords[ids[j]]);
            if (d < tol::singular_guard)
                throw DegenerateError("coincident vertices " + std::to_string(ids[i]) + "," +
                                      std::to_string(ids[j]));
            if (r.kind == GeometryKind::Spherical && d > kPi - tol::singular_guard)
                throw DegenerateError("antipodal vertex pair " + std::to_string(ids[i]) + "," +
                                      std::to_string(ids[j]));
        }
}

namespace detail {

// The vector orthogonal (in the plain R^4 inner product) to a, b, c.
inline Vec4 cross4(const Vec4& a, const Vec4& b, const Vec4& c) {
    Vec4 out;
    out.t = det4({1, 0, 0, 0}, a, b, c);
    out.x = det4({0, 1, 0, 0}, a, b, c);
    out.y = det4({0, 0, 1, 0}, a, b, c);
    out.z = det4({0, 0, 0, 1}, a, b, c);
    return out;
}

inline Vec4 metric_flip(GeometryKind g, const Vec4& v) {
    if (g == GeometryKind::Hyperbolic) return {-v.t, v.x, v.y, v.z};
    return v;
}

}  // namespace detail

// Subspace test for totally geodesic planes: Euclidean faces must have
// affine rank 2, spherical/hyperbolic faces must span a rank-3 linear
// subspace. Returns the largest out-of-plane residual.
inline double planarity_defect(GeometryKind g, const std::vector<Point>& pts) {
    if (pts.size() <= 3 && g != GeometryKind::Euclidean) return 0.0;
    std::vector<Vec4> basis;
    auto add = [&](Vec4 v) {
        for (const Vec4& b : basis) v = v - b * dot(v, b);
        double n = std::sqrt(dot(v, v));
        if (n > 1e-7) basis.push_back(v * (1.0 / n));
    };
    size_t need = 0;
    if (g == GeometryKind::Euclidean) {
        need = 2;
        for (size_t i = 1; i < pts.size(); ++i) add(pts[i] - pts[0]);
    } else {
        need = 3;
        for (const Point& p : pts) add(p);
    }
    double worst = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        Vec4 v = g == GeometryKind::Euclidean ? pts[i] - pts[0] : pts[i];
        for (size_t k = 0; k < std::min(need, basis.size()); ++k) v = v - basis[k] * dot(v, basis[k]);
        worst = std::max(worst, std::sqrt(dot(v, v)));
    }
    return worst;
}

// Dihedral angle at edge (a, b): the signed rotation taking the right face's
// in-face tangent to the left face's, around the edge direction, lifted to
// (0, 2pi). "Left" is the face whose counterclockwise cycle contains the
// directed edge a -> b; with convex faces this measures the wedge through
// the polyhedron's interior (pi/2 on a cube).
inline double dihedral_angle(GeometryKind g, const std::vector<Point>& coords, int a, int b,
                             const std::vector<int>& face_left, const std::vector<int>& face_right) {
    auto face_points = [&](const std::vector<int>& f) {
        std::vector<Point> ps;
        for (int v : f) ps.push_back(coords[v]);
        return ps;
    };
    for (const auto* f : {&face_left, &face_right}) {
        double defect = planarity_defect(g, face_points(*f));
        if (defect > tol::planar)
            throw FaceNotPlanarError("face is not planar (defect " + std::to_string(defect) + ")");
    }
    const Point& pa = coords[a];
    Vec4 axis = direction(g, pa, coords[b]);
    auto in_face_tangent = [&](const std::vector<int>& f) {
        Vec4 best{};
        double best_norm = -1;
        for (int v : f) {
            if (v == a || v == b) continue;
            Vec4 u = direction(g, pa, coords[v]);
            Vec4 perp = u - axis * tangent_dot(g, u, axis);
            double n = tangent_norm(g, perp);
            if (n > best_norm) {
                best_norm = n;
                best = perp * (1.0 / n);
            }
        }
        if (best_norm <= tol::model) throw DegenerateError("face degenerate along the edge");
        return best;
    };
    Vec4 t_left = in_face_tangent(face_left);
    Vec4 t_right = in_face_tangent(face_right);
    double ang = signed_angle_about(g, pa, axis, t_right, t_left);
    return ang;
}

struct Isometry {
    GeometryKind kind = GeometryKind::Euclidean;
    std::array<std::array<double, 4>, 4> m{};  // linear part (rows)
    Vec4 shift{};                              // Euclidean translation part
    bool reflecting = false;

    Point apply(const Point& p) const {
        Vec4 in = p;
        Vec4 out{};
        out.t = m[0][0] * in.t + m[0][1] * in.x + m[0][2] * in.y + m[0][3] * in.z;
        out.x = m[1][0] * in.t + m[1][1] * in.x + m[1][2] * in.y + m[1][3] * in.z;
        out.y = m[2][0] * in.t + m[2][1] * in.x + m[2][2] * in.y + m[2][3] * in.z;
        out.z = m[3][0] * in.t + m[3][1] * in.x + m[3][2] * in.y + m[3][3] * in.z;
        return out + shift;
    }
};

struct AlignResult {
    Isometry iso;
    double residual = 0;  // max point distance after alignment
};

namespace detail {

// Adapted orthonormal frame (w.r.t. the model's bilinear form) whose first
// vectors are pinned by the anchor points; the last column's sign carries
// the orientation.
struct Frame {
    std::array<Vec4, 4> cols;
};

inline Frame build_frame(GeometryKind g, const Point& p0, const Point& p1, const Point& p2, bool flip) {
    Frame f;
    if (g == GeometryKind::Euclidean) {
        Vec3 a{p1.x - p0.x, p1.y - p0.y, p1.z - p0.z};
        Vec3 b{p2.x - p0.x, p2.y - p0.y, p2.z - p0.z};
        Vec3 e1 = normalized(a);
        Vec3 e2raw = b - e1 * dot(b, e1);
        if (norm(e2raw) < 1e-9) throw CollinearViolationError("collinear anchor points");
        Vec3 e2 = normalized(e2raw);
        Vec3 e3 = cross(e1, e2);
        if (flip) e3 = -e3;
        f.cols = {Vec4{0, e1.x, e1.y, e1.z}, Vec4{0, e2.x, e2.y, e2.z}, Vec4{0, e3.x, e3.y, e3.z},
                  Vec4{1, 0, 0, 0}};
        return f;
    }
    auto mdotg = [&](const Vec4& u, const Vec4& v) {
        return g == GeometryKind::Hyperbolic ? mdot(u, v) : dot(u, v);
    };
    Vec4 e0 = p0;
    Vec4 u1 = p1 - e0 * (mdotg(p1, e0) / mdotg(e0, e0));
    double n1 = std::sqrt(std::max(0.0, mdotg(u1, u1)));
    if (n1 < 1e-9) throw CollinearViolationError("coincident anchor points");
    Vec4 e1 = u1 * (1.0 / n1);
    Vec4 u2 = p2 - e0 * (mdotg(p2, e0) / mdotg(e0, e0)) - e1 * mdotg(p2, e1);
    double n2 = std::sqrt(std::max(0.0, mdotg(u2, u2)));
    if (n2 < 1e-9) throw CollinearViolationError("collinear anchor points");
    Vec4 e2 = u2 * (1.0 / n2);
    Vec4 e3 = cross4(metric_flip(g, e0), metric_flip(g, e1), metric_flip(g, e2));
    e3 = e3 * (1.0 / std::sqrt(std::max(tol::model, mdotg(e3, e3))));
    if (det4(e0, e1, e2, e3) < 0) e3 = -e3;
    if (flip) e3 = -e3;
    f.cols = {e0, e1, e2, e3};
    return f;
}

inline Isometry frame_transport(GeometryKind g, const Frame& src, const Frame& tgt, const Point& src0,
                                const Point& tgt0, bool reflected) {
    Isometry iso;
    iso.kind = g;
    iso.reflecting = reflected;
    if (g == GeometryKind::Euclidean) {
        // rows of R = tgt frame columns times transposed src frame columns
        double R[3][3];
        auto col3 = [](const Vec4& v) { return Vec3{v.x, v.y, v.z}; };
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                double s = 0;
                for (int k = 0; k < 3; ++k) {
                    Vec3 tk = col3(tgt.cols[k]);
                    Vec3 sk = col3(src.cols[k]);
                    double tv = r == 0 ? tk.x : (r == 1 ? tk.y : tk.z);
                    double sv = c == 0 ? sk.x : (c == 1 ? sk.y : sk.z);
                    s += tv * sv;
                }
                R[r][c] = s;
            }
        iso.m = {{{1, 0, 0, 0},
                  {0, R[0][0], R[0][1], R[0][2]},
                  {0, R[1][0], R[1][1], R[1][2]},
                  {0, R[2][0], R[2][1], R[2][2]}}};
        Vec4 rotated{0,
                     R[0][0] * src0.x + R[0][1] * src0.y + R[0][2] * src0.z,
                     R[1][0] * src0.x + R[1][1] * src0.y + R[1][2] * src0.z,
                     R[2][0] * src0.x + R[2][1] * src0.y + R[2][2] * src0.z};
        iso.shift = tgt0 - rotated;
        return iso;
    }
    // M = F_tgt * F_src^{-1} with F^{-1} = eta F^T eta (signature-orthonormal
    // columns); for the sphere eta is the identity.
    std::array<double, 4> sig{1, 1, 1, 1};
    if (g == GeometryKind::Hyperbolic) sig = {-1, 1, 1, 1};
    auto comp = [](const Vec4& v, int i) {
        switch (i) {
            case 0: return v.t;
            case 1: return v.x;
            case 2: return v.y;
            default: return v.z;
        }
    };
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            double s = 0;
            for (int k = 0; k < 4; ++k)
                s += comp(tgt.cols[k], r) * sig[k] * comp(src.cols[k], c) * sig[c];
            iso.m[r][c] = s;
        }
    iso.shift = {0, 0, 0, 0};
    return iso;
}

}  // namespace detail

// Best isometry (by adapted frames over well-separated anchors) mapping the
// source points onto the target points under the index correspondence.
inline AlignResult align(GeometryKind g, const std::vector<Point>& src, const std::vector<Point>& tgt,
                         bool allow_reflection) {
    if (src.size() != tgt.size() || src.size() < 3)
        throw StructuralError("align needs >= 3 corresponding points");
    size_t n = src.size();
    size_t i0 = 0, i1 = 0, i2 = 0;
    double best = -1;
    for (size_t i = 1; i < n; ++i) {
        double d = distance(g, src[i0], src[i]);
        if (d > best) {
            best = d;
            i1 = i;
        }
    }
    if (best < 1e-9) throw CollinearViolationError("all points coincide");
    Vec4 axis = direction(g, src[i0], src[i1]);
    best = -1;
    for (size_t i = 0; i < n; ++i) {
        if (i == i0 || i == i1) continue;
        Vec4 u;
        try {
            u = direction(g, src[i0], src[i]);
        } catch (const DegenerateError&) {
            continue;
        }
        Vec4 perp = u - axis * tangent_dot(g, u, axis);
        double d = tangent_norm(g, perp) * distance(g, src[i0], src[i]);
        if (d > best) {
            best = d;
            i2 = i;
        }
    }
    if (best < 1e-9) throw CollinearViolationError("anchor points are collinear");

    AlignResult out;
    out.residual = std::numeric_limits<double>::infinity();
    for (int flip = 0; flip <= (allow_reflection ? 1 : 0); ++flip) {
        detail::Frame fs = detail::build_frame(g, src[i0], src[i1], src[i2], flip != 0);
        detail::Frame ft = detail::build_frame(g, tgt[i0], tgt[i1], tgt[i2], false);
        Isometry iso = detail::frame_transport(g, fs, ft, src[i0], tgt[i0], flip != 0);
        double resid = 0;
        for (size_t i = 0; i < n; ++i)
            resid = std::max(resid, distance(g, renormalize(g, iso.apply(src[i])), tgt[i]));
        if (resid < out.residual) {
            out.residual = resid;
            out.iso = iso;
        }
    }
    return out;
}

enum class CongruenceKind { Direct, Reflected, NotCongruent };

struct CongruenceResult {
    CongruenceKind kind = CongruenceKind::NotCongruent;
    double residual = 0;
    int witness = -1;  // first vertex exceeding the tolerance, if any

    bool congruent() const { return kind != CongruenceKind::NotCongruent; }
};

inline CongruenceResult congruent(const Realization& r1, const Realization& r2, const std::vector<int>& ids,
                                  double tolerance = tol::congruence) {
    if (r1.kind != r2.kind) throw StructuralError("congruence across different geometries");
    std::vector<Point> a, b;
    for (int v : ids) {
        a.push_back(r1.coords[v]);
        b.push_back(r2.coords[v]);
    }
    AlignResult direct = align(r1.kind, a, b, false);
    AlignResult any = align(r1.kind, a, b, true);
    CongruenceResult out;
    out.residual = any.residual;
    if (any.residual <= tolerance) {
        out.kind = direct.residual <= tolerance ? CongruenceKind::Direct : CongruenceKind::Reflected;
        return out;
    }
    out.kind = CongruenceKind::NotCongruent;
    for (size_t i = 0; i < ids.size(); ++i)
        if (distance(r1.kind, renormalize(r1.kind, any.iso.apply(a[i])), b[i]) > tolerance) {
            out.witness = ids[i];
            break;
        }
    return out;
}

}  // namespace polyrigid
