#pragma once

// Closed piecewise-analytic paths built from lines, circular arcs and cubic
// Bezier pieces. Piece k is parametrized over [knots[k], knots[k+1]].

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "jordan/errors.hpp"
#include "jordan/geometry.hpp"

namespace jordan {

inline constexpr double kJointTolerance = 1e-9;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class Side { Left, Right };

struct LinePiece {
    Point from;
    Point to;

    Point point(double u) const { return lerp(from, to, u); }
    Vec2 derivative(double) const { return to - from; }
    Point start() const { return from; }
    Point end() const { return to; }
    double speed_sup() const { return norm(to - from); }
    double speed_inf() const { return norm(to - from); }
    BoundingBox bbox() const {
        BoundingBox b;
        b.expand(from);
        b.expand(to);
        return b;
    }
    double max_modulus() const { return std::max(norm(from), norm(to)); }
};

struct ArcPiece {
    Point center;
    double radius = 1.0;
    double start_angle = 0.0;
    double sweep = kTwoPi;  ///< signed; positive is counterclockwise

    double angle_at(double u) const { return start_angle + sweep * u; }
    Point point(double u) const {
        const double a = angle_at(u);
        return center + Point{std::cos(a), std::sin(a)} * radius;
    }
    Vec2 derivative(double u) const {
        const double a = angle_at(u);
        return Vec2{-std::sin(a), std::cos(a)} * (radius * sweep);
    }
    Point start() const { return point(0.0); }
    Point end() const { return point(1.0); }
    double speed_sup() const { return radius * std::abs(sweep); }
    double speed_inf() const { return radius * std::abs(sweep); }

    /// True when the direction `angle` (any branch) is covered by the arc.
    bool covers_angle(double angle) const {
        const double lo = std::min(start_angle, start_angle + sweep);
        const double width = std::abs(sweep);
        double rel = std::fmod(angle - lo, kTwoPi);
        if (rel < 0) rel += kTwoPi;
        return rel <= width;
    }
    BoundingBox bbox() const {
        BoundingBox b;
        b.expand(start());
        b.expand(end());
        for (int q = 0; q < 4; ++q) {
            const double a = q * std::numbers::pi / 2;
            if (covers_angle(a)) b.expand(center + Point{std::cos(a), std::sin(a)} * radius);
        }
        return b;
    }
    double max_modulus() const {
        double m = std::max(norm(start()), norm(end()));
        const double cn = norm(center);
        if (cn == 0.0) return radius;
        if (covers_angle(std::atan2(center.y, center.x))) m = std::max(m, cn + radius);
        return m;
    }
};

struct CubicPiece {
    std::array<Point, 4> ctrl;

    Point point(double u) const {
        const double v = 1.0 - u;
        return ctrl[0] * (v * v * v) + ctrl[1] * (3 * v * v * u) + ctrl[2] * (3 * v * u * u) +
               ctrl[3] * (u * u * u);
    }
    std::array<Vec2, 3> hodograph() const {
        return {(ctrl[1] - ctrl[0]) * 3.0, (ctrl[2] - ctrl[1]) * 3.0, (ctrl[3] - ctrl[2]) * 3.0};
    }
    Vec2 derivative(double u) const {
        const auto h = hodograph();
        const double v = 1.0 - u;
        return h[0] * (v * v) + h[1] * (2 * v * u) + h[2] * (u * u);
    }
    Point start() const { return ctrl[0]; }
    Point end() const { return ctrl[3]; }
    /// Upper bound on |B'| from the hodograph hull.
    double speed_sup() const {
        const auto h = hodograph();
        return std::max({norm(h[0]), norm(h[1]), norm(h[2])});
    }
    /// Certified lower bound on |B'|, or nullopt if 0 is not excluded from the
    /// hodograph hull after `max_depth` levels of subdivision.
    std::optional<double> speed_lower_bound(int max_depth = 20) const;
    double speed_inf() const { return speed_lower_bound().value_or(0.0); }
    BoundingBox bbox() const {
        BoundingBox b;
        for (const auto& p : ctrl) b.expand(p);
        return b;
    }
    double max_modulus() const {
        return std::max({norm(ctrl[0]), norm(ctrl[1]), norm(ctrl[2]), norm(ctrl[3])});
    }
    /// De Casteljau split of the sub-curve on [u0, u1].
    CubicPiece sub(double u0, double u1) const;
};

namespace detail {

inline std::pair<std::array<Point, 4>, std::array<Point, 4>> split_cubic(const std::array<Point, 4>& p,
                                                                         double t) {
    const Point a = lerp(p[0], p[1], t), b = lerp(p[1], p[2], t), c = lerp(p[2], p[3], t);
    const Point d = lerp(a, b, t), e = lerp(b, c, t);
    const Point f = lerp(d, e, t);
    return {{p[0], a, d, f}, {f, e, c, p[3]}};
}

/// Distance from the origin to the triangle hull(a, b, c); 0 if inside.
inline double origin_to_triangle(const Point& a, const Point& b, const Point& c) {
    const Point o{0.0, 0.0};
    const double d1 = cross(b - a, o - a), d2 = cross(c - b, o - b), d3 = cross(a - c, o - c);
    const bool has_neg = d1 < 0 || d2 < 0 || d3 < 0;
    const bool has_pos = d1 > 0 || d2 > 0 || d3 > 0;
    if (!(has_neg && has_pos)) return 0.0;
    return std::min({dist_point_segment(o, a, b), dist_point_segment(o, b, c), dist_point_segment(o, c, a)});
}

inline void hodograph_bound(const std::array<Point, 3>& q, int depth, int max_depth, int min_depth, double& out,
                            bool& ok) {
    if (!ok) return;
    const double d = origin_to_triangle(q[0], q[1], q[2]);
    if (d > 0.0 && depth >= min_depth) {
        out = std::min(out, d);
        return;
    }
    if (depth >= max_depth) {
        ok = false;
        return;
    }
    const Point a = lerp(q[0], q[1], 0.5), b = lerp(q[1], q[2], 0.5), m = lerp(a, b, 0.5);
    hodograph_bound({q[0], a, m}, depth + 1, max_depth, min_depth, out, ok);
    hodograph_bound({m, b, q[2]}, depth + 1, max_depth, min_depth, out, ok);
}

}  // namespace detail

inline std::optional<double> CubicPiece::speed_lower_bound(int max_depth) const {
    const auto h = hodograph();
    double out = std::numeric_limits<double>::infinity();
    bool ok = true;
    detail::hodograph_bound({h[0], h[1], h[2]}, 0, max_depth, std::min(5, max_depth), out, ok);
    if (!ok) return std::nullopt;
    return out;
}

inline CubicPiece CubicPiece::sub(double u0, double u1) const {
    if (u0 >= 1.0) return CubicPiece{{ctrl[3], ctrl[3], ctrl[3], ctrl[3]}};
    const auto right = detail::split_cubic(ctrl, u0).second;
    const double t = (u1 - u0) / (1.0 - u0);
    return CubicPiece{detail::split_cubic(right, std::clamp(t, 0.0, 1.0)).first};
}

enum class PieceKind { Line, Arc, Cubic };

/// One analytic piece on the unit parameter interval.
class SegmentPiece {
public:
    using Storage = std::variant<LinePiece, ArcPiece, CubicPiece>;

    static SegmentPiece line(Point from, Point to) {
        if (!from.finite() || !to.finite()) throw InvalidArgument("line piece: non-finite endpoint");
        if (from == to) throw InvalidArgument("line piece: coincident endpoints");
        return SegmentPiece(LinePiece{from, to});
    }
    static SegmentPiece arc(Point center, double radius, double start_angle, double sweep) {
        if (!center.finite() || !std::isfinite(start_angle) || !std::isfinite(sweep))
            throw InvalidArgument("arc piece: non-finite data");
        if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("arc piece: radius must be positive");
        if (!(std::abs(sweep) > 0.0 && std::abs(sweep) <= kTwoPi * (1.0 + 1e-15)))
            throw InvalidArgument("arc piece: |sweep| must lie in (0, 2pi]");
        return SegmentPiece(ArcPiece{center, radius, start_angle, sweep});
    }
    static SegmentPiece cubic(const std::array<Point, 4>& ctrl) {
        for (const auto& p : ctrl)
            if (!p.finite()) throw InvalidArgument("cubic piece: non-finite control point");
        if (ctrl[0] == ctrl[1] && ctrl[1] == ctrl[2] && ctrl[2] == ctrl[3])
            throw InvalidArgument("cubic piece: all control points coincide");
        return SegmentPiece(CubicPiece{ctrl});
    }

    PieceKind kind() const { return static_cast<PieceKind>(data_.index()); }
    const Storage& data() const { return data_; }
    template <class T>
    const T& as() const { return std::get<T>(data_); }
    template <class F>
    decltype(auto) visit(F&& f) const { return std::visit(std::forward<F>(f), data_); }

    Point point(double u) const { return visit([u](const auto& p) { return p.point(u); }); }
    Vec2 derivative(double u) const { return visit([u](const auto& p) { return p.derivative(u); }); }
    Point start() const { return visit([](const auto& p) { return p.start(); }); }
    Point end() const { return visit([](const auto& p) { return p.end(); }); }
    double speed_sup() const { return visit([](const auto& p) { return p.speed_sup(); }); }
    BoundingBox bbox() const { return visit([](const auto& p) { return p.bbox(); }); }
    double max_modulus() const { return visit([](const auto& p) { return p.max_modulus(); }); }
    /// Lower bound on |derivative| over the piece; nullopt when not certified.
    std::optional<double> speed_lower_bound() const {
        if (const auto* c = std::get_if<CubicPiece>(&data_)) return c->speed_lower_bound();
        return visit([](const auto& p) { return p.speed_inf(); });
    }

private:
    explicit SegmentPiece(Storage s) : data_(std::move(s)) {}

    Storage data_;
};

/// Position of a global parameter inside the piece list.
struct PieceLocation {
    std::size_t piece;
    double u;
};

/// An ordered, continuous chain of pieces with its parameter knots.
class CurveSpec {
public:
    explicit CurveSpec(std::vector<SegmentPiece> pieces) : pieces_(std::move(pieces)) {
        knots_.resize(pieces_.size() + 1);
        for (std::size_t k = 0; k < knots_.size(); ++k) knots_[k] = static_cast<double>(k);
        check();
    }
    CurveSpec(std::vector<SegmentPiece> pieces, std::vector<double> knots)
        : pieces_(std::move(pieces)), knots_(std::move(knots)) {
        check();
    }

    const std::vector<SegmentPiece>& pieces() const { return pieces_; }
    const std::vector<double>& knots() const { return knots_; }
    std::size_t size() const { return pieces_.size(); }
    double a() const { return knots_.front(); }
    double b() const { return knots_.back(); }
    double span() const { return b() - a(); }
    Point start() const { return pieces_.front().start(); }
    Point end() const { return pieces_.back().end(); }
    bool closed(double tol = kJointTolerance) const { return distance(start(), end()) <= tol; }

    /// dt -> du scale factor of piece k.
    double speed_factor(std::size_t k) const { return 1.0 / (knots_[k + 1] - knots_[k]); }
    /// Global parameter of local coordinate u on piece k.
    double global_parameter(std::size_t k, double u) const { return knots_[k] + u * (knots_[k + 1] - knots_[k]); }

    /// Piece containing t; at an interior knot, Right picks the following piece.
    PieceLocation locate(double t, Side side = Side::Right) const {
        if (!(t >= a() && t <= b())) throw RangeError("parameter outside the path interval");
        auto it = side == Side::Right ? std::upper_bound(knots_.begin(), knots_.end(), t)
                                      : std::lower_bound(knots_.begin(), knots_.end(), t);
        std::size_t k = static_cast<std::size_t>(std::distance(knots_.begin(), it));
        k = k == 0 ? 0 : k - 1;
        k = std::min(k, pieces_.size() - 1);
        const double u = (t - knots_[k]) / (knots_[k + 1] - knots_[k]);
        return {k, std::clamp(u, 0.0, 1.0)};
    }

    Point eval(double t) const {
        const auto loc = locate(t);
        return pieces_[loc.piece].point(loc.u);
    }

    /// One-sided derivative with respect to the global parameter.
    Vec2 deriv(double t, Side side) const {
        if (side == Side::Left && t <= a()) throw RangeError("left derivative undefined at the start");
        if (side == Side::Right && t >= b()) throw RangeError("right derivative undefined at the end");
        const auto loc = locate(t, side);
        return pieces_[loc.piece].derivative(loc.u) * speed_factor(loc.piece);
    }

    BoundingBox bbox() const {
        BoundingBox box;
        for (const auto& p : pieces_) box.expand(p.bbox());
        return box;
    }

private:
    void check() const {
        if (pieces_.empty()) throw InvalidArgument("curve needs at least one piece");
        if (knots_.size() != pieces_.size() + 1) throw InvalidArgument("knot count must be piece count + 1");
        for (std::size_t k = 0; k + 1 < knots_.size(); ++k)
            if (!(knots_[k] < knots_[k + 1]) || !std::isfinite(knots_[k + 1]))
                throw InvalidArgument("knots must be finite and strictly increasing");
        for (std::size_t k = 0; k + 1 < pieces_.size(); ++k) {
            if (distance(pieces_[k].end(), pieces_[k + 1].start()) > kJointTolerance)
                throw InvalidArgument("pieces " + std::to_string(k) + " and " + std::to_string(k + 1) +
                                      " do not share an endpoint");
        }
    }

    std::vector<SegmentPiece> pieces_;
    std::vector<double> knots_;
};

/// Linear path t -> (1-t) z0 + t z1 on [0, 1].
inline CurveSpec lin(Point z0, Point z1) {
    if (z0 == z1) throw InvalidArgument("lin: coincident endpoints");
    return CurveSpec({SegmentPiece::line(z0, z1)});
}

/// Sum of two paths: the second block is shifted so that it starts where the first ends.
inline CurveSpec path_sum(const CurveSpec& p1, const CurveSpec& p2) {
    if (distance(p1.end(), p2.start()) > kJointTolerance) throw InvalidArgument("path_sum: endpoint mismatch");
    std::vector<SegmentPiece> pieces = p1.pieces();
    pieces.insert(pieces.end(), p2.pieces().begin(), p2.pieces().end());
    std::vector<double> knots = p1.knots();
    const double shift = p1.b() - p2.a();
    for (std::size_t k = 1; k < p2.knots().size(); ++k) knots.push_back(p2.knots()[k] + shift);
    return CurveSpec(std::move(pieces), std::move(knots));
}

/// Affine change of parameter onto [c, d]; the carrier is untouched.
inline CurveSpec reparametrize(const CurveSpec& curve, double c, double d) {
    if (!(c < d) || !std::isfinite(c) || !std::isfinite(d)) throw InvalidArgument("reparametrize: empty interval");
    const double a = curve.a(), scale = (d - c) / curve.span();
    std::vector<double> knots;
    knots.reserve(curve.knots().size());
    for (double t : curve.knots()) knots.push_back(c + (t - a) * scale);
    knots.front() = c;
    knots.back() = d;
    return CurveSpec(curve.pieces(), std::move(knots));
}

/// theta -> exp(i theta) on [0, 2pi].
inline CurveSpec unit_circular_path() {
    return CurveSpec({SegmentPiece::arc({0.0, 0.0}, 1.0, 0.0, kTwoPi)}, {0.0, kTwoPi});
}

/// z -> linear * z + offset.
class AffineMap {
public:
    AffineMap(double m00, double m01, double m10, double m11, Point offset = {})
        : m_{m00, m01, m10, m11}, offset_(offset) {}

    static AffineMap identity() { return {1, 0, 0, 1}; }
    static AffineMap translation(Point t) { return {1, 0, 0, 1, t}; }
    static AffineMap scaling(double s) { return {s, 0, 0, s}; }
    static AffineMap rotation(double angle, Point about = {}) {
        const double c = std::cos(angle), s = std::sin(angle);
        return AffineMap(c, -s, s, c, about - Point{c * about.x - s * about.y, s * about.x + c * about.y});
    }
    /// Reflection across the x-axis.
    static AffineMap reflection_x() { return {1, 0, 0, -1}; }

    double det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
    Vec2 linear(const Vec2& v) const { return {m_[0] * v.x + m_[1] * v.y, m_[2] * v.x + m_[3] * v.y}; }
    Point operator()(const Point& p) const { return linear(p) + offset_; }

    /// Composition: (*this)(other(z)).
    AffineMap then_after(const AffineMap& other) const {
        const Vec2 c0 = linear({other.m_[0], other.m_[2]});
        const Vec2 c1 = linear({other.m_[1], other.m_[3]});
        return AffineMap(c0.x, c1.x, c0.y, c1.y, (*this)(other.offset_));
    }
    AffineMap inverse() const {
        const double d = det();
        if (std::abs(d) <= 1e-12) throw InvalidArgument("affine map is singular");
        AffineMap inv(m_[3] / d, -m_[1] / d, -m_[2] / d, m_[0] / d);
        inv.offset_ = -inv.linear(offset_);
        return inv;
    }
    /// True when the linear part is a scaled rotation or a scaled reflection.
    bool conformal(double rel_tol = 1e-12) const {
        const double scale = std::max({std::abs(m_[0]), std::abs(m_[1]), std::abs(m_[2]), std::abs(m_[3])});
        const double tol = rel_tol * scale;
        const bool rot = std::abs(m_[0] - m_[3]) <= tol && std::abs(m_[1] + m_[2]) <= tol;
        const bool refl = std::abs(m_[0] + m_[3]) <= tol && std::abs(m_[1] - m_[2]) <= tol;
        return rot || refl;
    }
    const std::array<double, 4>& matrix() const { return m_; }
    const Point& offset() const { return offset_; }

private:
    std::array<double, 4> m_;
    Point offset_;
};

/// Image of a single piece. Arcs require a conformal linear part.
inline SegmentPiece transform_piece(const SegmentPiece& piece, const AffineMap& map) {
    switch (piece.kind()) {
    case PieceKind::Line: {
        const auto& l = piece.as<LinePiece>();
        return SegmentPiece::line(map(l.from), map(l.to));
    }
    case PieceKind::Cubic: {
        const auto& c = piece.as<CubicPiece>();
        return SegmentPiece::cubic({map(c.ctrl[0]), map(c.ctrl[1]), map(c.ctrl[2]), map(c.ctrl[3])});
    }
    case PieceKind::Arc: {
        if (!map.conformal())
            throw InvalidArgument("circular arcs map to circular arcs only under similarity transforms");
        const auto& a = piece.as<ArcPiece>();
        const Vec2 e0 = map.linear({1.0, 0.0});
        const double scale = norm(e0);
        const double rot = std::atan2(e0.y, e0.x);
        const bool flips = map.det() < 0;
        const double start = flips ? rot - a.start_angle : rot + a.start_angle;
        return SegmentPiece::arc(map(a.center), a.radius * scale, start, flips ? -a.sweep : a.sweep);
    }
    }
    throw InvalidArgument("unknown piece kind");
}

/// Piecewise image of a path; the knots are kept.
inline CurveSpec transform_spec(const CurveSpec& curve, const AffineMap& map) {
    if (std::abs(map.det()) <= 1e-12) throw InvalidArgument("affine map is singular");
    std::vector<SegmentPiece> pieces;
    pieces.reserve(curve.size());
    for (const auto& p : curve.pieces()) pieces.push_back(transform_piece(p, map));
    return CurveSpec(std::move(pieces), curve.knots());
}

}  // namespace jordan
