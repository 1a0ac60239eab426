#pragma once

// Bounding-volume hierarchy over the carrier of a path, answering certified
// distance enclosures lower <= rho(z, car) <= upper.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "jordan/curve.hpp"
#include "jordan/geometry.hpp"

namespace jordan {

struct DistanceBounds {
    double lower = std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();

    double width() const { return upper - lower; }
    bool contains(double v, double slack = 0.0) const { return v >= lower - slack && v <= upper + slack; }
};

struct CarrierSample {
    double t;
    Point point;
};

namespace detail {

/// Sub-arc with nonnegative angular width.
struct ArcChunk {
    Point center;
    double radius;
    double angle_lo;
    double width;

    Point at(double a) const { return center + Point{std::cos(a), std::sin(a)} * radius; }
    double distance(const Point& z) const {
        const Vec2 v = z - center;
        const double r = norm(v);
        if (r == 0.0) return radius;
        double rel = std::fmod(std::atan2(v.y, v.x) - angle_lo, kTwoPi);
        if (rel < 0) rel += kTwoPi;
        if (rel <= width) return std::abs(r - radius);
        return std::min(jordan::distance(z, at(angle_lo)), jordan::distance(z, at(angle_lo + width)));
    }
    BoundingBox bbox() const { return ArcPiece{center, radius, angle_lo, width}.bbox(); }
};

inline double cubic_chord_deviation(const std::array<Point, 4>& p) {
    const Point l1 = lerp(p[0], p[3], 1.0 / 3.0), l2 = lerp(p[0], p[3], 2.0 / 3.0);
    return std::max(jordan::distance(p[1], l1), jordan::distance(p[2], l2));
}

/// Branch-and-bound distance enclosure for a cubic chunk.
inline void cubic_distance_bounds(const std::array<Point, 4>& p, const Point& z, double target, int depth,
                                  double& lower, double& best_upper) {
    const double dev = cubic_chord_deviation(p);
    const Vec2 chord = p[3] - p[0];
    const double len2 = norm2(chord);
    const double lam = len2 > 0 ? std::clamp(dot(z - p[0], chord) / len2, 0.0, 1.0) : 0.0;
    const double d = jordan::distance(z, p[0] + chord * lam);
    const double node_lower = std::max(0.0, d - dev);
    if (node_lower >= best_upper) {
        lower = std::min(lower, node_lower);
        return;
    }
    best_upper = std::min(best_upper, jordan::distance(z, CubicPiece{p}.point(lam)));
    if (dev <= target || depth >= 48) {
        lower = std::min(lower, node_lower);
        return;
    }
    auto [left, right] = split_cubic(p, 0.5);
    const double dl = dist_point_segment(z, left[0], left[3]);
    const double dr = dist_point_segment(z, right[0], right[3]);
    if (dl <= dr) {
        cubic_distance_bounds(left, z, target, depth + 1, lower, best_upper);
        cubic_distance_bounds(right, z, target, depth + 1, lower, best_upper);
    } else {
        cubic_distance_bounds(right, z, target, depth + 1, lower, best_upper);
        cubic_distance_bounds(left, z, target, depth + 1, lower, best_upper);
    }
}

}  // namespace detail

/// Spatial index over the carrier of a CurveSpec.
class CarrierIndex {
public:
    static constexpr int kArcChunksPerTurn = 16;
    static constexpr int kCubicChunks = 8;

    explicit CarrierIndex(const CurveSpec& curve, std::size_t samples_per_piece = 512) {
        const BoundingBox box = curve.bbox();
        diameter_ = std::max(box.diagonal(), std::numeric_limits<double>::min());
        target_width_ = 1e-10 * diameter_;
        piece_boxes_.reserve(curve.size());
        for (std::size_t k = 0; k < curve.size(); ++k) {
            const auto& piece = curve.pieces()[k];
            piece_boxes_.push_back(piece.bbox());
            lipschitz_.push_back(piece.speed_sup() * curve.speed_factor(k));
            add_primitives(piece);
        }
        sample_spacing_ = 0.0;
        for (std::size_t k = 0; k < curve.size(); ++k) {
            const double dt = (curve.knots()[k + 1] - curve.knots()[k]) / static_cast<double>(samples_per_piece);
            sample_spacing_ = std::max(sample_spacing_, dt);
            for (std::size_t i = 0; i < samples_per_piece; ++i) {
                const double u = static_cast<double>(i) / static_cast<double>(samples_per_piece);
                samples_.push_back({curve.global_parameter(k, u), curve.pieces()[k].point(u)});
            }
        }
        samples_.push_back({curve.b(), curve.pieces().back().end()});
        build();
    }

    /// Certified enclosure of the distance from z to the carrier.
    DistanceBounds distance(const Point& z) const {
        DistanceBounds out;
        if (nodes_.empty()) return out;
        query(0, z, out);
        out.lower = std::min(out.lower, out.upper);
        return out;
    }

    const std::vector<BoundingBox>& piece_boxes() const { return piece_boxes_; }
    const std::vector<double>& lipschitz() const { return lipschitz_; }
    const std::vector<CarrierSample>& samples() const { return samples_; }
    double sample_spacing() const { return sample_spacing_; }
    double diameter() const { return diameter_; }
    BoundingBox bbox() const { return nodes_.empty() ? BoundingBox{} : nodes_.front().box; }

private:
    enum class PrimKind : std::uint8_t { Line, Arc, Cubic };
    struct Primitive {
        PrimKind kind;
        std::array<Point, 4> pts;  // line: 2 endpoints, cubic: control points
        detail::ArcChunk arc;
        BoundingBox box;
    };
    struct Node {
        BoundingBox box;
        std::uint32_t left = 0, right = 0;  // children when count == 0
        std::uint32_t first = 0, count = 0;  // leaf range into order_
    };

    void add_primitives(const SegmentPiece& piece) {
        switch (piece.kind()) {
        case PieceKind::Line: {
            const auto& l = piece.as<LinePiece>();
            Primitive p{PrimKind::Line, {l.from, l.to, {}, {}}, {}, l.bbox()};
            prims_.push_back(p);
            break;
        }
        case PieceKind::Arc: {
            const auto& a = piece.as<ArcPiece>();
            const double lo = std::min(a.start_angle, a.start_angle + a.sweep);
            const double width = std::abs(a.sweep);
            const int n = std::max(1, static_cast<int>(std::ceil(width / (kTwoPi / kArcChunksPerTurn))));
            for (int i = 0; i < n; ++i) {
                detail::ArcChunk c{a.center, a.radius, lo + width * i / n, width / n};
                prims_.push_back(Primitive{PrimKind::Arc, {}, c, c.bbox()});
            }
            break;
        }
        case PieceKind::Cubic: {
            const auto& c = piece.as<CubicPiece>();
            for (int i = 0; i < kCubicChunks; ++i) {
                const CubicPiece s = c.sub(static_cast<double>(i) / kCubicChunks, static_cast<double>(i + 1) / kCubicChunks);
                prims_.push_back(Primitive{PrimKind::Cubic, s.ctrl, {}, s.bbox()});
            }
            break;
        }
        }
    }

    void build() {
        order_.resize(prims_.size());
        std::iota(order_.begin(), order_.end(), 0u);
        nodes_.reserve(2 * prims_.size());
        build_node(0, static_cast<std::uint32_t>(order_.size()));
    }

    std::uint32_t build_node(std::uint32_t first, std::uint32_t last) {
        const auto id = static_cast<std::uint32_t>(nodes_.size());
        nodes_.push_back({});
        BoundingBox box;
        for (auto i = first; i < last; ++i) box.expand(prims_[order_[i]].box);
        nodes_[id].box = box;
        if (last - first <= 4) {
            nodes_[id].first = first;
            nodes_[id].count = last - first;
            return id;
        }
        const bool split_x = box.width() >= box.height();
        const auto mid = first + (last - first) / 2;
        std::nth_element(order_.begin() + first, order_.begin() + mid, order_.begin() + last,
                         [&](std::uint32_t a, std::uint32_t b) {
                             const Point ca = prims_[a].box.center(), cb = prims_[b].box.center();
                             return split_x ? ca.x < cb.x : ca.y < cb.y;
                         });
        const auto l = build_node(first, mid);
        const auto r = build_node(mid, last);
        nodes_[id].left = l;
        nodes_[id].right = r;
        return id;
    }

    void leaf_bounds(const Primitive& p, const Point& z, DistanceBounds& out) const {
        switch (p.kind) {
        case PrimKind::Line: {
            const double d = dist_point_segment(z, p.pts[0], p.pts[1]);
            out.lower = std::min(out.lower, d);
            out.upper = std::min(out.upper, d);
            break;
        }
        case PrimKind::Arc: {
            const double d = p.arc.distance(z);
            out.lower = std::min(out.lower, d);
            out.upper = std::min(out.upper, d);
            break;
        }
        case PrimKind::Cubic:
            detail::cubic_distance_bounds(p.pts, z, target_width_, 0, out.lower, out.upper);
            break;
        }
    }

    void query(std::uint32_t id, const Point& z, DistanceBounds& out) const {
        const Node& n = nodes_[id];
        if (n.count > 0) {
            for (auto i = n.first; i < n.first + n.count; ++i) leaf_bounds(prims_[order_[i]], z, out);
            return;
        }
        const double dl = nodes_[n.left].box.distance_to(z);
        const double dr = nodes_[n.right].box.distance_to(z);
        const auto first = dl <= dr ? n.left : n.right;
        const auto second = dl <= dr ? n.right : n.left;
        if (std::min(dl, dr) < out.upper) query(first, z, out);
        if (std::max(dl, dr) < out.upper) query(second, z, out);
    }

    std::vector<Primitive> prims_;
    std::vector<std::uint32_t> order_;
    std::vector<Node> nodes_;
    std::vector<BoundingBox> piece_boxes_;
    std::vector<double> lipschitz_;
    std::vector<CarrierSample> samples_;
    double sample_spacing_ = 0.0;
    double diameter_ = 0.0;
    double target_width_ = 0.0;
};

}  // namespace jordan
