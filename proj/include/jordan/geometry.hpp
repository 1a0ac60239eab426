#pragma once

// Planar primitives shared by the curve, index and connectivity layers.
// Points double as complex numbers x + iy; see to_complex().

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>

#include "jordan/errors.hpp"

namespace jordan {

struct Point {
    double x = 0.0;
    double y = 0.0;

    constexpr Point() = default;
    constexpr Point(double x_, double y_) : x(x_), y(y_) {}

    constexpr Point& operator+=(const Point& o) { x += o.x; y += o.y; return *this; }
    constexpr Point& operator-=(const Point& o) { x -= o.x; y -= o.y; return *this; }
    constexpr Point& operator*=(double s) { x *= s; y *= s; return *this; }

    friend constexpr Point operator+(Point a, const Point& b) { return a += b; }
    friend constexpr Point operator-(Point a, const Point& b) { return a -= b; }
    friend constexpr Point operator-(const Point& a) { return {-a.x, -a.y}; }
    friend constexpr Point operator*(Point a, double s) { return a *= s; }
    friend constexpr Point operator*(double s, Point a) { return a *= s; }
    friend constexpr Point operator/(const Point& a, double s) { return {a.x / s, a.y / s}; }
    friend constexpr bool operator==(const Point&, const Point&) = default;

    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

/// Vectors share the point representation.
using Vec2 = Point;

inline constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline constexpr double norm2(const Vec2& a) { return dot(a, a); }
inline double distance(const Point& a, const Point& b) { return norm(a - b); }
inline constexpr Point lerp(const Point& a, const Point& b, double t) { return a + (b - a) * t; }
/// Rotation by +pi/2 (multiplication by i).
inline constexpr Vec2 perp(const Vec2& a) { return {-a.y, a.x}; }
inline Vec2 rotate(const Vec2& a, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * a.x - s * a.y, s * a.x + c * a.y};
}
inline std::complex<double> to_complex(const Point& p) { return {p.x, p.y}; }
inline Point from_complex(const std::complex<double>& z) { return {z.real(), z.imag()}; }

inline Vec2 normalized(const Vec2& v) {
    const double n = norm(v);
    if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("cannot normalize a zero or non-finite vector");
    return v / n;
}

/// Axis-aligned box; default constructed empty.
struct BoundingBox {
    Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Point hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

    bool empty() const { return lo.x > hi.x || lo.y > hi.y; }
    void expand(const Point& p) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    void expand(const BoundingBox& b) {
        if (b.empty()) return;
        expand(b.lo);
        expand(b.hi);
    }
    BoundingBox inflated(double margin) const {
        BoundingBox b = *this;
        b.lo -= Point{margin, margin};
        b.hi += Point{margin, margin};
        return b;
    }
    Point center() const { return (lo + hi) / 2.0; }
    double width() const { return hi.x - lo.x; }
    double height() const { return hi.y - lo.y; }
    double diagonal() const { return norm(hi - lo); }
    bool contains(const Point& p) const { return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y; }
    /// Distance from p to the box (0 inside).
    double distance_to(const Point& p) const {
        const double dx = std::max({lo.x - p.x, 0.0, p.x - hi.x});
        const double dy = std::max({lo.y - p.y, 0.0, p.y - hi.y});
        return std::hypot(dx, dy);
    }
};

enum class SegmentClosure { Closed, StartOnly, EndOnly, Open };

/// Straight segment [start, end] with the endpoint inclusion recorded.
class Segment {
public:
    Segment(Point start, Point end, SegmentClosure closure = SegmentClosure::Closed)
        : start_(start), end_(end), closure_(closure) {
        if (!start.finite() || !end.finite()) throw InvalidArgument("segment endpoints must be finite");
        if (start == end) throw InvalidArgument("degenerate segment: start == end");
    }

    const Point& start() const { return start_; }
    const Point& end() const { return end_; }
    SegmentClosure closure() const { return closure_; }
    double length() const { return distance(start_, end_); }
    Point at(double t) const { return lerp(start_, end_, t); }

    /// Parameter of the closest point on the closed segment.
    double project(const Point& z) const {
        const Vec2 d = end_ - start_;
        return std::clamp(dot(z - start_, d) / norm2(d), 0.0, 1.0);
    }

private:
    Point start_;
    Point end_;
    SegmentClosure closure_;
};

/// Distance from z to the closed segment; the infimum ignores endpoint inclusion.
inline double dist_point_segment(const Point& z, const Segment& s) { return distance(z, s.at(s.project(z))); }

/// Same as above without constructing a Segment; a == b degrades to point distance.
inline double dist_point_segment(const Point& z, const Point& a, const Point& b) {
    const Vec2 d = b - a;
    const double len2 = norm2(d);
    if (len2 == 0.0) return distance(z, a);
    const double t = std::clamp(dot(z - a, d) / len2, 0.0, 1.0);
    return distance(z, a + d * t);
}

struct SegmentPairDistance {
    double distance;
    double s;  ///< parameter of the closest point on [a, b]
    double u;  ///< parameter of the closest point on [c, d]
};

/// Distance between the closed segments [a, b] and [c, d] with the closest parameters.
inline SegmentPairDistance segment_pair_distance(const Point& a, const Point& b, const Point& c, const Point& d) {
    const Vec2 r = b - a, q = d - c;
    const double den = cross(r, q);
    if (den != 0.0) {
        const double s = cross(c - a, q) / den, u = cross(c - a, r) / den;
        if (s >= 0.0 && s <= 1.0 && u >= 0.0 && u <= 1.0) return {0.0, s, u};
    }
    auto proj = [](const Point& z, const Point& p0, const Vec2& v) {
        const double l2 = norm2(v);
        return l2 > 0.0 ? std::clamp(dot(z - p0, v) / l2, 0.0, 1.0) : 0.0;
    };
    SegmentPairDistance best{INFINITY, 0.0, 0.0};
    auto consider = [&](double s, double u) {
        const double dist = distance(a + r * s, c + q * u);
        if (dist < best.distance) best = {dist, s, u};
    };
    consider(0.0, proj(a, c, q));
    consider(1.0, proj(b, c, q));
    consider(proj(c, a, r), 0.0);
    consider(proj(d, a, r), 1.0);
    return best;
}

/// Acute angle in [0, pi/2] between the lines spanned by u and v.
inline double acute_angle(const Vec2& u, const Vec2& v) {
    if (norm2(u) == 0.0 || norm2(v) == 0.0) throw InvalidArgument("acute_angle: zero vector");
    return std::atan2(std::abs(cross(u, v)), std::abs(dot(u, v)));
}

class Line {
public:
    static constexpr double kDirectionTolerance = 1e-12;

    Line(Point anchor, Vec2 direction) : anchor_(anchor), direction_(normalized(direction)) {}
    static Line through(const Point& a, const Point& b) { return Line(a, b - a); }

    const Point& anchor() const { return anchor_; }
    const Vec2& direction() const { return direction_; }
    Vec2 normal() const { return perp(direction_); }
    Point at(double s) const { return anchor_ + direction_ * s; }
    /// Signed distance; positive on the left of the direction.
    double signed_distance(const Point& z) const { return cross(direction_, z - anchor_); }

private:
    Point anchor_;
    Vec2 direction_;
};

struct LineIntersection {
    Point point;
    double angle;  ///< acute angle between the two lines
};

inline constexpr double kDefaultAngleTolerance = 1e-9;

/// Intersection point of two lines meeting at an acute angle above angle_tol.
/// Throws NotUnique otherwise. The result is bitwise symmetric in (l1, l2).
inline LineIntersection line_unique_intersection(const Line& l1, const Line& l2,
                                                 double angle_tol = kDefaultAngleTolerance) {
    if (!(angle_tol > 0.0)) throw InvalidArgument("angle_tol must be positive");
    const double angle = acute_angle(l1.direction(), l2.direction());
    if (angle <= angle_tol) throw NotUnique("lines are parallel within angle tolerance");
    const Vec2 d1 = l1.direction(), d2 = l2.direction();
    const Vec2 w = l2.anchor() - l1.anchor();
    const double den = cross(d1, d2);
    const double s = cross(w, d2) / den;
    const double u = cross(w, d1) / den;
    const Point p = (l1.at(s) + l2.at(u)) / 2.0;
    return {p, angle};
}

/// Closed cone with vertex, unit axis, and sides making `tangent_angle` with
/// the line through the vertex perpendicular to the axis. The aperture
/// half-angle measured from the axis is pi/2 - tangent_angle.
class Cone {
public:
    Cone(Point vertex, Vec2 axis, double tangent_angle)
        : vertex_(vertex), axis_(normalized(axis)), tangent_angle_(tangent_angle) {
        if (!(tangent_angle > 0.0 && tangent_angle < std::numbers::pi / 2))
            throw InvalidArgument("cone angle must lie in (0, pi/2)");
    }

    const Point& vertex() const { return vertex_; }
    const Vec2& axis() const { return axis_; }
    double tangent_angle() const { return tangent_angle_; }
    double aperture_half_angle() const { return std::numbers::pi / 2 - tangent_angle_; }

    /// Unit directions of the two boundary rays.
    std::pair<Vec2, Vec2> sides() const {
        const double a = aperture_half_angle();
        return {rotate(axis_, a), rotate(axis_, -a)};
    }

    /// Closed membership (boundary rays included).
    bool contains(const Point& z) const {
        const Vec2 v = z - vertex_;
        return dot(v, axis_) >= norm(v) * std::sin(tangent_angle_) - 1e-15 * norm(v);
    }
    /// Strict interior membership.
    bool interior_contains(const Point& z) const {
        const Vec2 v = z - vertex_;
        return norm2(v) > 0.0 && dot(v, axis_) > norm(v) * std::sin(tangent_angle_);
    }

private:
    Point vertex_;
    Vec2 axis_;
    double tangent_angle_;
};

/// Distance from z to the complement of the cone: zero outside or on the
/// boundary, otherwise the distance to the nearer side ray.
inline double cone_interior_distance(const Point& z, const Cone& k) {
    if (!k.interior_contains(z)) return 0.0;
    const auto [s1, s2] = k.sides();
    const Vec2 v = z - k.vertex();
    auto ray_distance = [&](const Vec2& dir) {
        const double t = std::max(0.0, dot(v, dir));
        return norm(v - dir * t);
    };
    return std::min(ray_distance(s1), ray_distance(s2));
}

}  // namespace jordan
