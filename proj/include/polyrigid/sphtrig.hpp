#pragma once

// Generalized spherical trigonometry on the unit 2-sphere: the sine, cosine
// and dual cosine rules hold for triangles that may self-intersect or have
// edge lengths in (0, 2pi) and interior angles in [0, 2pi]. Each congruence
// datum (SSS, SAS, ASA, AAA) determines exactly two triangles; the solvers
// return the pair together with the exact involution relating them.

#include <array>
#include <optional>

#include "polyrigid/error.hpp"
#include "polyrigid/vec.hpp"

namespace polyrigid {

struct SphericalTriangleTuple {
    double a = 0, b = 0, c = 0;  // arc lengths, (0, 2pi)
    double A = 0, B = 0, C = 0;  // opposite interior angles, [0, 2pi]
};

// Which edges take the long (> pi) arc; the four essentially distinct types.
enum class TriangleClass { ShortShortShort, LongShortShort, LongLongShort, LongLongLong };

inline TriangleClass classify_triangle(const SphericalTriangleTuple& t) {
    int longs = (t.a > kPi) + (t.b > kPi) + (t.c > kPi);
    switch (longs) {
        case 0: return TriangleClass::ShortShortShort;
        case 1: return TriangleClass::LongShortShort;
        case 2: return TriangleClass::LongLongShort;
        default: return TriangleClass::LongLongLong;
    }
}

// Left-minus-right differences of the three sine rules, three cosine rules,
// and three dual cosine rules.
inline std::array<double, 9> trig_residuals(const SphericalTriangleTuple& t) {
    double sa = std::sin(t.a), sb = std::sin(t.b), sc = std::sin(t.c);
    double ca = std::cos(t.a), cb = std::cos(t.b), cc = std::cos(t.c);
    double sA = std::sin(t.A), sB = std::sin(t.B), sC = std::sin(t.C);
    double cA = std::cos(t.A), cB = std::cos(t.B), cC = std::cos(t.C);
    return {
        sa * sB - sA * sb,
        sb * sC - sB * sc,
        sc * sA - sC * sa,
        ca - (cb * cc + sb * sc * cA),
        cb - (cc * ca + sc * sa * cB),
        cc - (ca * cb + sa * sb * cC),
        cA - (-cB * cC + sB * sC * ca),
        cB - (-cC * cA + sC * sA * cb),
        cC - (-cA * cB + sA * sB * cc),
    };
}

inline double max_residual(const SphericalTriangleTuple& t) {
    double m = 0;
    for (double r : trig_residuals(t)) m = std::max(m, std::abs(r));
    return m;
}

// The three substitutions that move a valid tuple between the arc classes.
inline SphericalTriangleTuple with_long_a(const SphericalTriangleTuple& t) {
    return {lift_angle(kTwoPi - t.a), t.b, t.c,
            lift_angle(kTwoPi - t.A), lift_angle(kPi - t.B), lift_angle(kPi - t.C)};
}
inline SphericalTriangleTuple with_long_bc(const SphericalTriangleTuple& t) {
    return {t.a, lift_angle(kTwoPi - t.b), lift_angle(kTwoPi - t.c),
            lift_angle(kTwoPi - t.A), lift_angle(kPi - t.B), lift_angle(kPi - t.C)};
}
inline SphericalTriangleTuple with_long_abc(const SphericalTriangleTuple& t) {
    return {lift_angle(kTwoPi - t.a), lift_angle(kTwoPi - t.b), lift_angle(kTwoPi - t.c),
            lift_angle(kTwoPi - t.A), lift_angle(kTwoPi - t.B), lift_angle(kTwoPi - t.C)};
}

struct TrianglePair {
    SphericalTriangleTuple first;
    SphericalTriangleTuple second;
};

// Exact involutions pairing the two solutions of each congruence datum.
inline SphericalTriangleTuple sss_mate(const SphericalTriangleTuple& t) {
    return {t.a, t.b, t.c, lift_angle(kTwoPi - t.A), lift_angle(kTwoPi - t.B), lift_angle(kTwoPi - t.C)};
}
inline SphericalTriangleTuple sas_mate(const SphericalTriangleTuple& t) {
    // given (b, A, c): flips a to its complement and shifts B, C by pi
    return {lift_angle(kTwoPi - t.a), t.b, t.c, t.A, lift_angle(t.B + kPi), lift_angle(t.C + kPi)};
}
inline SphericalTriangleTuple asa_mate(const SphericalTriangleTuple& t) {
    // given (A, c, B): shifts the derived sides by pi and flips C
    return {lift_angle(t.a + kPi), lift_angle(t.b + kPi), t.c, t.A, t.B, lift_angle(kTwoPi - t.C)};
}
inline SphericalTriangleTuple aaa_mate(const SphericalTriangleTuple& t) {
    return {lift_angle(kTwoPi - t.a), lift_angle(kTwoPi - t.b), lift_angle(kTwoPi - t.c), t.A, t.B, t.C};
}

namespace detail {

inline void require_nonsingular(double v, const char* what) {
    if (is_singular(v)) throw SingularCaseError(std::string(what) + " within the singular guard band");
}

inline void require_in_range(double v, const char* what) {
    if (!(v > 0 && v < kTwoPi)) throw UnrealizableError(std::string(what) + " outside (0, 2pi)");
}

inline int sgn(double x) { return x < 0 ? -1 : 1; }

// Resolve theta from cos(theta) plus the required sign of sin(theta).
inline double angle_from_cos(double cosv, int sin_sign, const char* what) {
    double base;
    try {
        base = checked_acos(cosv);
    } catch (const UnrealizableError&) {
        throw UnrealizableError(std::string("no spherical triangle: cos(") + what + ") out of range");
    }
    double v = sin_sign >= 0 ? base : kTwoPi - base;
    return lift_angle(v);
}

inline SphericalTriangleTuple finish(SphericalTriangleTuple t, const char* mode) {
    for (double v : {t.a, t.b, t.c, t.A, t.B, t.C})
        if (is_singular(v))
            throw SingularCaseError(std::string(mode) + " solution has a singular entry");
    if (max_residual(t) > 100 * tol::residual)
        throw UnrealizableError(std::string(mode) + " data is inconsistent");
    return t;
}

}  // namespace detail

// SSS: the cosine rule pins every angle cosine; the sine rules pin the sign
// pattern once one representative is chosen. No triangle inequality is
// needed. The two solutions complement all three angles.
inline TrianglePair solve_sss(double a, double b, double c) {
    for (auto [v, n] : {std::pair{a, "a"}, {b, "b"}, {c, "c"}}) {
        detail::require_in_range(v, n);
        detail::require_nonsingular(v, n);
    }
    double sa = std::sin(a), sb = std::sin(b), sc = std::sin(c);
    double ca = std::cos(a), cb = std::cos(b), cc = std::cos(c);
    double cosA = (ca - cb * cc) / (sb * sc);
    double cosB = (cb - cc * ca) / (sc * sa);
    double cosC = (cc - ca * cb) / (sa * sb);
    SphericalTriangleTuple t;
    t.a = a;
    t.b = b;
    t.c = c;
    t.A = detail::angle_from_cos(cosA, +1, "A");
    t.B = detail::angle_from_cos(cosB, detail::sgn(sa) * detail::sgn(sb), "B");
    t.C = detail::angle_from_cos(cosC, detail::sgn(sa) * detail::sgn(sc), "C");
    t = detail::finish(t, "SSS");
    return {t, sss_mate(t)};
}

// SAS: sides b, c with the included angle A (opposite the solved side a).
inline TrianglePair solve_sas(double b, double A, double c) {
    detail::require_in_range(b, "b");
    detail::require_in_range(c, "c");
    detail::require_nonsingular(b, "b");
    detail::require_nonsingular(c, "c");
    detail::require_nonsingular(A, "A");
    double sb = std::sin(b), sc = std::sin(c), cb = std::cos(b), cc = std::cos(c);
    double cA = std::cos(A), sA = std::sin(A);
    double cosa = cb * cc + sb * sc * cA;
    SphericalTriangleTuple t;
    t.b = b;
    t.c = c;
    t.A = lift_angle(A);
    t.a = detail::angle_from_cos(cosa, +1, "a");
    double sa = std::sin(t.a), ca = std::cos(t.a);
    t.B = detail::angle_from_cos((cb - cc * ca) / (sc * sa), detail::sgn(sA) * detail::sgn(sb), "B");
    t.C = detail::angle_from_cos((cc - ca * cb) / (sa * sb), detail::sgn(sA) * detail::sgn(sc), "C");
    t = detail::finish(t, "SAS");
    return {t, sas_mate(t)};
}

// ASA: angles A, B at the two ends of the included side c.
inline TrianglePair solve_asa(double A, double c, double B) {
    detail::require_in_range(c, "c");
    detail::require_nonsingular(c, "c");
    detail::require_nonsingular(A, "A");
    detail::require_nonsingular(B, "B");
    double cA = std::cos(A), sA = std::sin(A), cB = std::cos(B), sB = std::sin(B);
    double cosC = -cA * cB + sA * sB * std::cos(c);
    SphericalTriangleTuple t;
    t.A = lift_angle(A);
    t.B = lift_angle(B);
    t.c = c;
    t.C = detail::angle_from_cos(cosC, +1, "C");
    double cC = std::cos(t.C), sC = std::sin(t.C);
    double sc = std::sin(c);
    t.a = detail::angle_from_cos((cA + cB * cC) / (sB * sC), detail::sgn(sc) * detail::sgn(sA), "a");
    t.b = detail::angle_from_cos((cB + cC * cA) / (sC * sA), detail::sgn(sB) * detail::sgn(sc), "b");
    t = detail::finish(t, "ASA");
    return {t, asa_mate(t)};
}

// AAA: all three angles; the dual cosine rule pins every side cosine.
inline TrianglePair solve_aaa(double A, double B, double C) {
    detail::require_nonsingular(A, "A");
    detail::require_nonsingular(B, "B");
    detail::require_nonsingular(C, "C");
    double cA = std::cos(A), sA = std::sin(A);
    double cB = std::cos(B), sB = std::sin(B);
    double cC = std::cos(C), sC = std::sin(C);
    SphericalTriangleTuple t;
    t.A = lift_angle(A);
    t.B = lift_angle(B);
    t.C = lift_angle(C);
    t.a = detail::angle_from_cos((cA + cB * cC) / (sB * sC), +1, "a");
    t.b = detail::angle_from_cos((cB + cC * cA) / (sC * sA), detail::sgn(sB) * detail::sgn(sA), "b");
    t.c = detail::angle_from_cos((cC + cA * cB) / (sA * sB), detail::sgn(sC) * detail::sgn(sA), "c");
    t = detail::finish(t, "AAA");
    return {t, aaa_mate(t)};
}

// Singular triangles: the only possible angle combinations, up to placement
// of the pi slot.
enum class SingularClass { AllPi, ZeroZeroPi, TwoPiTwoPiPi, IsoscelesPi };

struct SingularInfo {
    SingularClass cls = SingularClass::AllPi;
    int pi_slot = -1;      // index of the angle equal to pi (-1 when all are)
    double theta = 0;      // the free angle of the isosceles class, if known
    bool theta_known = false;
};

// Classifies a partial angle assignment (unknown entries are wildcards)
// against the admissible singular patterns. Values are taken literally,
// since 0 and 2pi are distinct patterns here.
inline SingularInfo classify_singular(const std::array<std::optional<double>, 3>& angles) {
    auto near = [&](int i, double value) {
        return !angles[i] || std::abs(*angles[i] - value) < tol::singular_guard;
    };
    SingularInfo info;
    if (near(0, kPi) && near(1, kPi) && near(2, kPi)) {
        info.cls = SingularClass::AllPi;
        return info;
    }
    for (int p = 0; p < 3; ++p) {
        int i = (p + 1) % 3, j = (p + 2) % 3;
        if (!near(p, kPi)) continue;
        if (near(i, 0.0) && near(j, 0.0)) {
            info.cls = SingularClass::ZeroZeroPi;
            info.pi_slot = p;
            return info;
        }
        if (near(i, kTwoPi) && near(j, kTwoPi)) {
            info.cls = SingularClass::TwoPiTwoPiPi;
            info.pi_slot = p;
            return info;
        }
        bool ok = true;
        double theta = 0;
        bool known = false;
        for (int k : {i, j}) {
            if (!angles[k]) continue;
            double v = *angles[k];
            if (is_singular(v)) {
                ok = false;
                break;
            }
            if (known && std::abs(v - theta) > tol::singular_guard) ok = false;
            theta = v;
            known = true;
        }
        if (ok) {
            info.cls = SingularClass::IsoscelesPi;
            info.pi_slot = p;
            info.theta = theta;
            info.theta_known = known;
            return info;
        }
    }
    throw UnrealizableError("angles match no singular triangle pattern");
}

// ---- coordinate realizations on S^2 ----------------------------------------

inline Vec3 s2_exp(const Vec3& p, const Vec3& unit_dir, double t) {
    return p * std::cos(t) + unit_dir * std::sin(t);
}

// Unit tangent at p toward q along the short arc.
inline Vec3 s2_tangent(const Vec3& p, const Vec3& q) {
    Vec3 u = q - p * dot(p, q);
    double n = norm(u);
    if (n < tol::model) throw DegenerateError("tangent between coincident or antipodal points");
    return u * (1.0 / n);
}

// Counterclockwise angle from x to y around p (seen from outside), [0, 2pi).
inline double s2_ccw_angle(const Vec3& p, const Vec3& x, const Vec3& y) {
    return lift_angle(std::atan2(dot(p, cross(x, y)), dot(x, y)));
}

inline double s2_arc_length(const Vec3& p, const Vec3& q, bool long_arc) {
    Vec3 perp = q - p * dot(p, q);
    double d = std::atan2(norm(perp), dot(p, q));
    return long_arc ? kTwoPi - d : d;
}

// Tangent at p of the chosen arc toward q.
inline Vec3 s2_arc_tangent(const Vec3& p, const Vec3& q, bool long_arc) {
    Vec3 t = s2_tangent(p, q);
    return long_arc ? -t : t;
}

// Measures the tuple of a coordinate triangle with the given arc choices
// (interior on the left of A -> B -> C).
inline SphericalTriangleTuple measure_triangle(const Vec3& pa, const Vec3& pb, const Vec3& pc,
                                               bool long_a, bool long_b, bool long_c) {
    SphericalTriangleTuple t;
    t.a = s2_arc_length(pb, pc, long_a);
    t.b = s2_arc_length(pc, pa, long_b);
    t.c = s2_arc_length(pa, pb, long_c);
    t.A = s2_ccw_angle(pa, s2_arc_tangent(pa, pb, long_c), s2_arc_tangent(pa, pc, long_b));
    t.B = s2_ccw_angle(pb, s2_arc_tangent(pb, pc, long_a), s2_arc_tangent(pb, pa, long_c));
    t.C = s2_ccw_angle(pc, s2_arc_tangent(pc, pa, long_b), s2_arc_tangent(pc, pb, long_a));
    return t;
}

// Unique triangle realizing a valid non-singular tuple, in the normalized
// pose: vertex A at the north pole, B reached along the prime meridian.
inline std::array<Vec3, 3> triangle_from_tuple(const SphericalTriangleTuple& t) {
    for (double v : {t.a, t.b, t.c, t.A, t.B, t.C})
        if (is_singular(v)) throw SingularCaseError("singular tuple has no generic realization");
    if (max_residual(t) > 100 * tol::residual)
        throw RejectedTupleError("tuple violates the trigonometric identities");
    Vec3 pa{0, 0, 1};
    Vec3 t_ab{1, 0, 0};
    Vec3 pb = s2_exp(pa, t_ab, t.c);
    Vec3 t_ac = rotate_about(t_ab, pa, t.A);
    Vec3 pc = s2_exp(pa, t_ac, t.b);
    SphericalTriangleTuple back = measure_triangle(pa, pb, pc, t.a > kPi, t.b > kPi, t.c > kPi);
    auto close = [](double u, double v) { return std::abs(lift_angle(u) - lift_angle(v)) < 1e-7; };
    if (!(close(back.a, t.a) && close(back.b, t.b) && close(back.c, t.c) && close(back.A, t.A) &&
          close(back.B, t.B) && close(back.C, t.C)))
        throw RejectedTupleError("tuple does not close into a triangle");
    return {pa, pb, pc};
}

}  // namespace polyrigid
