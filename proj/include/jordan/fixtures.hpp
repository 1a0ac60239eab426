#pragma once

// Reference curves used by the test suites, the CLI samples and fixtures/.

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "jordan/curve.hpp"

namespace jordan::fixtures {

/// Unit circle as a single counterclockwise arc on [0, 1].
inline CurveSpec circle() { return CurveSpec({SegmentPiece::arc({0.0, 0.0}, 1.0, 0.0, kTwoPi)}); }

/// Arc through a, m, b (counterclockwise if a, m, b turn left).
inline SegmentPiece arc_through(const Point& a, const Point& m, const Point& b) {
    const Vec2 u = m - a, v = b - a;
    const double d = 2.0 * cross(u, v);
    const Point c = a + Vec2{(v.y * norm2(u) - u.y * norm2(v)) / d, (u.x * norm2(v) - v.x * norm2(u)) / d};
    const double r = distance(c, a);
    const double t0 = std::atan2(a.y - c.y, a.x - c.x);
    const double t1 = std::atan2(b.y - c.y, b.x - c.x);
    double sweep = std::fmod(t1 - t0, kTwoPi);
    const bool ccw = cross(m - a, b - m) > 0;
    if (ccw && sweep <= 0) sweep += kTwoPi;
    if (!ccw && sweep >= 0) sweep -= kTwoPi;
    return SegmentPiece::arc(c, r, t0, sweep);
}

/// Ellipse with semi-axes 2 and 1 rotated by 30 degrees, approximated by 8
/// circular arcs through consecutive ellipse points and their midpoints.
inline CurveSpec rotated_ellipse() {
    const double rot = std::numbers::pi / 6;
    auto e = [&](double phi) { return Point{0.25, -0.1} + rotate({2.0 * std::cos(phi), std::sin(phi)}, rot); };
    std::vector<SegmentPiece> pieces;
    for (int k = 0; k < 8; ++k) {
        const double p0 = kTwoPi * k / 8, p1 = kTwoPi * (k + 1) / 8;
        pieces.push_back(arc_through(e(p0), e(0.5 * (p0 + p1)), e(p1)));
    }
    return CurveSpec(std::move(pieces));
}

/// Square [-1, 1]^2 with corners rounded to radius 0.3: 4 lines + 4 quarter arcs.
inline CurveSpec rounded_square() {
    const double r = 0.3, s = 1.0 - r;
    const double q = std::numbers::pi / 2;
    return CurveSpec({
        SegmentPiece::line({1.0, -s}, {1.0, s}),
        SegmentPiece::arc({s, s}, r, 0.0, q),
        SegmentPiece::line({s, 1.0}, {-s, 1.0}),
        SegmentPiece::arc({-s, s}, r, q, q),
        SegmentPiece::line({-1.0, s}, {-1.0, -s}),
        SegmentPiece::arc({-s, -s}, r, 2 * q, q),
        SegmentPiece::line({-s, -1.0}, {s, -1.0}),
        SegmentPiece::arc({s, -s}, r, 3 * q, q),
    });
}

/// Closed C1 Catmull-Rom spline through `pts`, converted to cubic Bezier pieces.
inline CurveSpec catmull_rom_loop(const std::vector<Point>& pts) {
    const std::size_t n = pts.size();
    std::vector<SegmentPiece> pieces;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p0 = pts[(i + n - 1) % n];
        const Point& p1 = pts[i];
        const Point& p2 = pts[(i + 1) % n];
        const Point& p3 = pts[(i + 2) % n];
        pieces.push_back(SegmentPiece::cubic({p1, p1 + (p2 - p0) / 6.0, p2 - (p3 - p1) / 6.0, p2}));
    }
    return CurveSpec(std::move(pieces));
}

inline std::vector<Point> polar_samples(int n, const std::function<double(double)>& radius) {
    std::vector<Point> pts;
    for (int k = 0; k < n; ++k) {
        const double th = kTwoPi * k / n;
        pts.push_back(Point{std::cos(th), std::sin(th)} * radius(th));
    }
    return pts;
}

/// Convex-ish smooth blob made of 8 cubic pieces.
inline CurveSpec cubic_blob() {
    return catmull_rom_loop(
        polar_samples(8, [](double th) { return 1.0 + 0.2 * std::cos(3 * th) + 0.1 * std::sin(2 * th); }));
}

/// Non-convex bean with a notch on top, 12 cubic pieces.
inline CurveSpec kidney() {
    return catmull_rom_loop(polar_samples(12, [](double th) {
        double d = th - std::numbers::pi / 2;
        d = std::remainder(d, kTwoPi);
        return 1.0 + 0.15 * std::cos(th) - 0.45 * std::exp(-d * d / 0.3);
    }));
}

/// Two tangent unit circles traversed as one closed path (not a Jordan curve).
inline CurveSpec figure_eight() {
    return CurveSpec({SegmentPiece::arc({-1.0, 0.0}, 1.0, 0.0, kTwoPi),
                      SegmentPiece::arc({1.0, 0.0}, 1.0, std::numbers::pi, -kTwoPi)});
}

/// Half circle; not closed.
inline CurveSpec open_arc() { return CurveSpec({SegmentPiece::arc({0.0, 0.0}, 1.0, 0.0, std::numbers::pi)}); }

struct Named {
    std::string name;
    CurveSpec spec;
};

/// The five Jordan fixtures; the circle uses the angle parametrization on [0, 2 pi].
inline std::vector<Named> jordan_fixtures() {
    return {{"circle", unit_circular_path()},
            {"ellipse8", rotated_ellipse()},
            {"rounded_square", rounded_square()},
            {"blob", cubic_blob()},
            {"kidney", kidney()}};
}

}  // namespace jordan::fixtures
