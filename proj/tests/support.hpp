#pragma once

// Independent reference computations used by the test suites. Nothing here
// calls the library's distance, winding or crossing code.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "jordan/jordan.hpp"

namespace testing_support {

using jordan::Point;

inline constexpr double kPi = std::numbers::pi;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20261018);
    return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline Point uniform_in(const jordan::BoundingBox& box) {
    return {uniform(box.lo.x, box.hi.x), uniform(box.lo.y, box.hi.y)};
}

inline Point uniform_in_disk(const Point& c, double r) {
    const double rho = r * std::sqrt(uniform(0.0, 1.0));
    const double th = uniform(0.0, 2 * kPi);
    return c + Point{rho * std::cos(th), rho * std::sin(th)};
}

/// Brute-force distance from z to segment [a, b] over n + 1 equally spaced samples.
inline double sampled_segment_distance(const Point& z, const Point& a, const Point& b, int n) {
    double best = INFINITY;
    for (int i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / n;
        best = std::min(best, std::hypot(a.x + t * (b.x - a.x) - z.x, a.y + t * (b.y - a.y) - z.y));
    }
    return best;
}

/// Piece evaluation from first principles (Bernstein form, explicit arc formula).
inline Point piece_point(const jordan::SegmentPiece& piece, double u) {
    switch (piece.kind()) {
    case jordan::PieceKind::Line: {
        const auto& l = piece.as<jordan::LinePiece>();
        return {(1 - u) * l.from.x + u * l.to.x, (1 - u) * l.from.y + u * l.to.y};
    }
    case jordan::PieceKind::Arc: {
        const auto& a = piece.as<jordan::ArcPiece>();
        const double th = a.start_angle + u * a.sweep;
        return {a.center.x + a.radius * std::cos(th), a.center.y + a.radius * std::sin(th)};
    }
    case jordan::PieceKind::Cubic: {
        const auto& c = piece.as<jordan::CubicPiece>().ctrl;
        const double v = 1 - u;
        const double b0 = v * v * v, b1 = 3 * v * v * u, b2 = 3 * v * u * u, b3 = u * u * u;
        return {b0 * c[0].x + b1 * c[1].x + b2 * c[2].x + b3 * c[3].x,
                b0 * c[0].y + b1 * c[1].y + b2 * c[2].y + b3 * c[3].y};
    }
    }
    return {};
}

/// Closed polyline with `per_piece` samples per piece (last point not repeated).
inline std::vector<Point> dense_polyline(const jordan::CurveSpec& spec, int per_piece) {
    std::vector<Point> pts;
    for (const auto& piece : spec.pieces())
        for (int i = 0; i < per_piece; ++i) pts.push_back(piece_point(piece, static_cast<double>(i) / per_piece));
    return pts;
}

/// Largest chord of a closed polyline.
inline double max_chord(const std::vector<Point>& pts) {
    double m = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Point& p = pts[i];
        const Point& q = pts[(i + 1) % pts.size()];
        m = std::max(m, std::hypot(p.x - q.x, p.y - q.y));
    }
    return m;
}

/// Distance from z to a closed polyline (exact per edge, by projection).
inline double polyline_distance(const std::vector<Point>& pts, const Point& z) {
    double best = INFINITY;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Point& a = pts[i];
        const Point& b = pts[(i + 1) % pts.size()];
        const double dx = b.x - a.x, dy = b.y - a.y;
        const double l2 = dx * dx + dy * dy;
        double t = l2 > 0 ? ((z.x - a.x) * dx + (z.y - a.y) * dy) / l2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        best = std::min(best, std::hypot(a.x + t * dx - z.x, a.y + t * dy - z.y));
    }
    return best;
}

/// Minimum over samples of |sample - z|.
inline double sampled_distance(const std::vector<Point>& pts, const Point& z) {
    double best = INFINITY;
    for (const auto& p : pts) best = std::min(best, std::hypot(p.x - z.x, p.y - z.y));
    return best;
}

/// Total turning of the polyline around z divided by 2 pi.
inline double polyline_winding(const std::vector<Point>& pts, const Point& z) {
    double total = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Point u = pts[i] - z;
        const Point v = pts[(i + 1) % pts.size()] - z;
        total += std::atan2(u.x * v.y - u.y * v.x, u.x * v.x + u.y * v.y);
    }
    return total / (2 * kPi);
}

/// Even-odd rule on the horizontal ray to +x.
inline int polyline_parity(const std::vector<Point>& pts, const Point& z) {
    int inside = 0;
    for (std::size_t i = 0, j = pts.size() - 1; i < pts.size(); j = i++) {
        const Point& a = pts[i];
        const Point& b = pts[j];
        if ((a.y > z.y) != (b.y > z.y) && z.x < (b.x - a.x) * (z.y - a.y) / (b.y - a.y) + a.x) inside ^= 1;
    }
    return inside;
}

/// Composite 5-point Gauss-Legendre quadrature of dz / (z - zeta) along [a, b].
inline std::complex<double> gauss_line_integral(const Point& a, const Point& b, const Point& zeta, int panels) {
    static constexpr std::array<double, 5> x{0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                                              0.9061798459386640};
    static constexpr std::array<double, 5> w{0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                              0.2369268850561891, 0.2369268850561891};
    const std::complex<double> za(a.x, a.y), zb(b.x, b.y), z0(zeta.x, zeta.y);
    const std::complex<double> dz = zb - za;
    std::complex<double> sum = 0;
    for (int p = 0; p < panels; ++p) {
        const double lo = static_cast<double>(p) / panels, hi = static_cast<double>(p + 1) / panels;
        for (int k = 0; k < 5; ++k) {
            const double t = 0.5 * (lo + hi) + 0.5 * (hi - lo) * x[k];
            sum += 0.5 * (hi - lo) * w[k] * dz / (za + t * dz - z0);
        }
    }
    return sum;
}

}  // namespace testing_support
