#pragma once

// Ray-crossing parity: the index of zeta is the parity of the number of
// transversal crossings of a ray from zeta with the carrier, since the far
// end of the ray lies in the unbounded component (index 0) and every smooth
// transversal crossing flips the index.

#include <algorithm>
#include <cmath>
#include <vector>

#include "jordan/curve.hpp"
#include "jordan/errors.hpp"
#include "jordan/geometry.hpp"
#include "jordan/jordan_curve.hpp"

namespace jordan {

enum class HitQuality { Transversal, Degenerate };

struct CrossingRecord {
    double t = 0.0;             ///< curve parameter of the hit
    Point point;                ///< hit point on the carrier
    double ray_distance = 0.0;  ///< distance from the ray origin
    Vec2 tangent;               ///< tangent direction (right side at joints)
    double angle = 0.0;         ///< acute angle between ray and tangent (min over sides at joints)
    bool at_joint = false;
    HitQuality quality = HitQuality::Transversal;
};

struct RayCrossingResult {
    Vec2 direction;
    int index = 0;  ///< crossing count mod 2
    std::vector<CrossingRecord> crossings;
};

class DegenerateRay : public Error {
public:
    DegenerateRay(const std::string& what, CrossingRecord record) : Error(what), record_(record) {}
    const CrossingRecord& record() const { return record_; }

private:
    CrossingRecord record_;
};

struct RayOptions {
    double angle_floor = 1e-4;        ///< radians
    double isolation_relative = 1e-6;  ///< isolation window as a fraction of the curve diameter
};

namespace detail {

inline constexpr double kJointParamTolerance = 1e-9;

struct RawHit {
    std::size_t piece;
    double u;
    bool degenerate = false;
};

inline void line_hits(const LinePiece& l, std::size_t k, const Point& zeta, const Vec2& d, std::vector<RawHit>& out) {
    const Vec2 e = l.to - l.from;
    const double den = cross(d, e);
    const double scale = norm(e);
    if (std::abs(den) <= 1e-14 * scale) {
        // Parallel: only a collinear overlap lying ahead of zeta matters.
        if (std::abs(cross(d, l.from - zeta)) <= 1e-12 * (scale + norm(l.from - zeta)) &&
            std::max(dot(d, l.from - zeta), dot(d, l.to - zeta)) > 0.0)
            out.push_back({k, 0.5, true});
        return;
    }
    const double u = cross(d, zeta - l.from) / den;
    const double s = cross(l.from - zeta, e) / den;
    if (s > 0.0 && u >= -kJointParamTolerance && u <= 1.0 + kJointParamTolerance) out.push_back({k, u});
}

inline void arc_hits(const ArcPiece& a, std::size_t k, const Point& zeta, const Vec2& d, std::vector<RawHit>& out) {
    const Vec2 w = zeta - a.center;
    const double bq = dot(d, w);
    const double disc = bq * bq - (norm2(w) - a.radius * a.radius);
    if (disc < 0.0) return;
    const double sq = std::sqrt(disc);
    const double roots[2] = {-bq - sq, -bq + sq};
    const double width = std::abs(a.sweep);
    const double dir = a.sweep > 0 ? 1.0 : -1.0;
    for (int i = 0; i < (disc == 0.0 ? 1 : 2); ++i) {
        const double s = roots[i];
        if (!(s > 0.0)) continue;
        const Point p = zeta + d * s;
        double rel = std::fmod(dir * (std::atan2(p.y - a.center.y, p.x - a.center.x) - a.start_angle), kTwoPi);
        if (rel < 0) rel += kTwoPi;
        double u = rel / width;
        if (u > 1.0 + kJointParamTolerance) u = (rel - kTwoPi) / width;  // just before the start
        if (u >= -kJointParamTolerance && u <= 1.0 + kJointParamTolerance) out.push_back({k, u});
    }
}

inline double bernstein_eval(const std::array<double, 4>& c, double u) {
    const double v = 1.0 - u;
    return c[0] * v * v * v + 3 * c[1] * v * v * u + 3 * c[2] * v * u * u + c[3] * u * u * u;
}

inline void cubic_hits_rec(const std::array<double, 4>& f, const std::array<double, 4>& g, double u0, double u1,
                           int depth, const std::array<double, 4>& f_full, std::size_t k, std::vector<RawHit>& out) {
    // f: signed offset from the ray line, g: signed distance along the ray, both in Bernstein form.
    const bool all_pos = f[0] > 0 && f[1] > 0 && f[2] > 0 && f[3] > 0;
    const bool all_neg = f[0] < 0 && f[1] < 0 && f[2] < 0 && f[3] < 0;
    if (all_pos || all_neg) return;
    if (g[0] <= 0 && g[1] <= 0 && g[2] <= 0 && g[3] <= 0) return;  // entirely behind the ray origin
    const double d0 = f[1] - f[0], d1 = f[2] - f[1], d2 = f[3] - f[2];
    const bool monotone = (d0 > 0 && d1 > 0 && d2 > 0) || (d0 < 0 && d1 < 0 && d2 < 0);
    if (monotone) {
        if (f[0] * f[3] > 0) return;
        double lo = u0, hi = u1;
        const double flo = bernstein_eval(f_full, lo);
        for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = bernstein_eval(f_full, mid);
            if ((fm > 0) == (flo > 0) && fm != 0.0) lo = mid;
            else hi = mid;
        }
        out.push_back({k, 0.5 * (lo + hi)});
        return;
    }
    if (depth >= 50) {
        out.push_back({k, 0.5 * (u0 + u1), true});
        return;
    }
    auto split = [](const std::array<double, 4>& c) {
        const double a = 0.5 * (c[0] + c[1]), b = 0.5 * (c[1] + c[2]), e = 0.5 * (c[2] + c[3]);
        const double ab = 0.5 * (a + b), be = 0.5 * (b + e), m = 0.5 * (ab + be);
        return std::pair<std::array<double, 4>, std::array<double, 4>>{{c[0], a, ab, m}, {m, be, e, c[3]}};
    };
    const auto [fl, fr] = split(f);
    const auto [gl, gr] = split(g);
    const double um = 0.5 * (u0 + u1);
    cubic_hits_rec(fl, gl, u0, um, depth + 1, f_full, k, out);
    cubic_hits_rec(fr, gr, um, u1, depth + 1, f_full, k, out);
}

inline void cubic_hits(const CubicPiece& c, std::size_t k, const Point& zeta, const Vec2& d, std::vector<RawHit>& out) {
    std::array<double, 4> f{}, g{};
    for (int i = 0; i < 4; ++i) {
        f[i] = cross(d, c.ctrl[i] - zeta);
        g[i] = dot(d, c.ctrl[i] - zeta);
    }
    const std::size_t before = out.size();
    cubic_hits_rec(f, g, 0.0, 1.0, 0, f, k, out);
    // Drop roots behind the origin and duplicates at subdivision boundaries.
    std::vector<RawHit> kept;
    for (std::size_t i = before; i < out.size(); ++i) {
        const RawHit h = out[i];
        if (!(dot(d, c.point(h.u) - zeta) > 0.0)) continue;
        if (!kept.empty() && std::abs(kept.back().u - h.u) <= 1e-11) {
            kept.back().degenerate = kept.back().degenerate || h.degenerate;
            continue;
        }
        kept.push_back(h);
    }
    out.resize(before);
    out.insert(out.end(), kept.begin(), kept.end());
}

}  // namespace detail

/// Parity of transversal crossings along the ray zeta + s * direction, s > 0.
/// Throws DegenerateRay on tangencies, ambiguous joint hits, or hits closer
/// together than the isolation window.
inline RayCrossingResult ray_crossing_index(const JordanCurve& jc, const Point& zeta, const Vec2& direction,
                                            const RayOptions& opts = {}) {
    if (!(jc.carrier_distance(zeta).lower > 0.0)) throw PointTooClose("ray origin is not bounded away from the carrier");
    const Vec2 d = normalized(direction);
    const CurveSpec& spec = jc.spec();
    const std::size_t n = spec.size();

    std::vector<detail::RawHit> raw;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& piece = spec.pieces()[k];
        switch (piece.kind()) {
        case PieceKind::Line: detail::line_hits(piece.as<LinePiece>(), k, zeta, d, raw); break;
        case PieceKind::Arc: detail::arc_hits(piece.as<ArcPiece>(), k, zeta, d, raw); break;
        case PieceKind::Cubic: detail::cubic_hits(piece.as<CubicPiece>(), k, zeta, d, raw); break;
        }
    }

    RayCrossingResult result;
    result.direction = d;
    std::vector<std::size_t> joints_seen;
    for (const auto& h : raw) {
        CrossingRecord rec;
        const bool near_start = h.u <= detail::kJointParamTolerance;
        const bool near_end = h.u >= 1.0 - detail::kJointParamTolerance;
        if (!h.degenerate && (near_start || near_end)) {
            // Joint j sits between piece j-1 (left) and piece j (right), cyclically.
            const std::size_t joint = near_start ? h.piece : (h.piece + 1) % n;
            if (std::find(joints_seen.begin(), joints_seen.end(), joint) != joints_seen.end()) continue;
            joints_seen.push_back(joint);
            const std::size_t left = (joint + n - 1) % n, right = joint;
            const Vec2 tl = spec.pieces()[left].derivative(1.0);
            const Vec2 tr = spec.pieces()[right].derivative(0.0);
            rec.at_joint = true;
            rec.t = spec.knots()[joint];
            rec.point = spec.pieces()[right].start();
            rec.tangent = tr;
            rec.angle = std::min(acute_angle(d, tl), acute_angle(d, tr));
            const bool same_side = (cross(d, tl) > 0) == (cross(d, tr) > 0);
            rec.quality = rec.angle >= opts.angle_floor && same_side ? HitQuality::Transversal : HitQuality::Degenerate;
        } else {
            const auto& piece = spec.pieces()[h.piece];
            rec.t = spec.global_parameter(h.piece, std::clamp(h.u, 0.0, 1.0));
            rec.point = piece.point(std::clamp(h.u, 0.0, 1.0));
            rec.tangent = piece.derivative(std::clamp(h.u, 0.0, 1.0));
            rec.angle = norm2(rec.tangent) > 0 ? acute_angle(d, rec.tangent) : 0.0;
            rec.quality = !h.degenerate && rec.angle >= opts.angle_floor ? HitQuality::Transversal
                                                                        : HitQuality::Degenerate;
        }
        rec.ray_distance = dot(d, rec.point - zeta);
        result.crossings.push_back(rec);
    }

    std::sort(result.crossings.begin(), result.crossings.end(),
              [](const CrossingRecord& a, const CrossingRecord& b) { return a.ray_distance < b.ray_distance; });
    const double window = opts.isolation_relative * jc.diameter();
    for (std::size_t i = 0; i < result.crossings.size(); ++i) {
        auto& rec = result.crossings[i];
        if (i + 1 < result.crossings.size() &&
            result.crossings[i + 1].ray_distance - rec.ray_distance < window) {
            rec.quality = HitQuality::Degenerate;
            result.crossings[i + 1].quality = HitQuality::Degenerate;
        }
        if (rec.quality == HitQuality::Degenerate) throw DegenerateRay("degenerate ray hit", rec);
    }
    result.index = static_cast<int>(result.crossings.size() % 2);
    return result;
}

}  // namespace jordan
