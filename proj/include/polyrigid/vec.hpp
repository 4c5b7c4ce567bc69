#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "polyrigid/error.hpp"

namespace polyrigid {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Tolerance ladder. Values grow with the amount of accumulated arithmetic
// they must absorb.
namespace tol {
inline constexpr double model = 1e-12;        // model constraints (unit norm etc.)
inline constexpr double clamp_slack = 1e-12;  // |cos| may exceed 1 by this much
inline constexpr double step = 1e-9;          // per-step consistency checks
inline constexpr double residual = 1e-9;      // trigonometric identities
inline constexpr double planar = 1e-9;        // face planarity
inline constexpr double arc_cross = 1e-10;    // great-arc intersection test
inline constexpr double measure = 1e-8;       // measurement round trips
inline constexpr double congruence = 1e-6;    // end-to-end congruence residual
inline constexpr double singular_guard = 1e-6;  // distance to {0, pi, 2pi}
}  // namespace tol

struct Vec3 {
    double x = 0, y = 0, z = 0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) {
    double n = norm(v);
    if (n == 0.0) throw DegenerateError("cannot normalize zero vector");
    return v * (1.0 / n);
}

inline double dist(const Vec3& a, const Vec3& b) { return norm(a - b); }

// Rodrigues rotation of v about the unit axis by angle (right-hand rule).
inline Vec3 rotate_about(const Vec3& v, const Vec3& unit_axis, double angle) {
    double c = std::cos(angle), s = std::sin(angle);
    return v * c + cross(unit_axis, v) * s + unit_axis * (dot(unit_axis, v) * (1.0 - c));
}

struct Vec4 {
    double t = 0, x = 0, y = 0, z = 0;

    Vec4 operator+(const Vec4& o) const { return {t + o.t, x + o.x, y + o.y, z + o.z}; }
    Vec4 operator-(const Vec4& o) const { return {t - o.t, x - o.x, y - o.y, z - o.z}; }
    Vec4 operator*(double s) const { return {t * s, x * s, y * s, z * s}; }
    Vec4 operator-() const { return {-t, -x, -y, -z}; }
};

inline Vec4 operator*(double s, const Vec4& v) { return v * s; }

inline double dot(const Vec4& a, const Vec4& b) {
    return a.t * b.t + a.x * b.x + a.y * b.y + a.z * b.z;
}

// Minkowski form of signature (-,+,+,+) with t the timelike coordinate.
inline double mdot(const Vec4& a, const Vec4& b) {
    return -a.t * b.t + a.x * b.x + a.y * b.y + a.z * b.z;
}

inline double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
    const double m[4][4] = {{a.t, b.t, c.t, d.t},
                            {a.x, b.x, c.x, d.x},
                            {a.y, b.y, c.y, d.y},
                            {a.z, b.z, c.z, d.z}};
    auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
        return m[r0][c0] * (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) -
               m[r0][c1] * (m[r1][c0] * m[r2][c2] - m[r1][c2] * m[r2][c0]) +
               m[r0][c2] * (m[r1][c0] * m[r2][c1] - m[r1][c1] * m[r2][c0]);
    };
    return m[0][0] * det3(1, 2, 3, 1, 2, 3) - m[0][1] * det3(1, 2, 3, 0, 2, 3) +
           m[0][2] * det3(1, 2, 3, 0, 1, 3) - m[0][3] * det3(1, 2, 3, 0, 1, 2);
}

// acos with the documented clamping policy: values inside the slack band are
// clamped, values beyond it are infeasible.
inline double checked_acos(double c) {
    if (c > 1.0 + tol::clamp_slack || c < -1.0 - tol::clamp_slack)
        throw UnrealizableError("cosine out of range: " + std::to_string(c));
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    return std::acos(c);
}

inline double clamped_acos(double c) {
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    return std::acos(c);
}

// Lift an angle into [0, 2pi).
inline double lift_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0) a += kTwoPi;
    return a;
}

// Distance from a to the nearest of {0, pi, 2pi} after lifting.
inline double singular_distance(double a) {
    a = lift_angle(a);
    return std::min({a, std::abs(a - kPi), kTwoPi - a});
}

inline bool is_singular(double a, double guard = tol::singular_guard) {
    return singular_distance(a) < guard;
}

}  // namespace polyrigid
