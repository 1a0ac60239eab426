#pragma once

// Point classification by two independent oracles (winding integral and
// ray-crossing parity) plus the region queries built on top of it.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <queue>
#include <sstream>
#include <vector>

#include "jordan/jordan_curve.hpp"
#include "jordan/ray_crossing.hpp"
#include "jordan/winding.hpp"

namespace jordan {

enum class Verdict { Inside, Outside, NearCarrier };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Inside: return "Inside";
    case Verdict::Outside: return "Outside";
    case Verdict::NearCarrier: return "NearCarrier";
    }
    return "?";
}

/// Grid code: 1 Inside, 0 Outside, -1 NearCarrier.
inline int verdict_code(Verdict v) { return v == Verdict::Inside ? 1 : v == Verdict::Outside ? 0 : -1; }

inline constexpr double kDefaultBandRelative = 1e-6;
inline constexpr double kDefaultClassifyTol = 1e-2;
inline constexpr int kMaxRayRetries = 32;
/// pi (3 - sqrt 5)
inline constexpr double kGoldenAngle = 2.39996322972865332223;

struct ClassifyOptions {
    double eps_band = -1.0;  ///< negative selects kDefaultBandRelative * diameter
    double tol = kDefaultClassifyTol;
    Vec2 direction{1.0, 0.0};
    int max_retries = kMaxRayRetries;
    RayOptions ray;
};

struct Classification {
    Verdict verdict = Verdict::NearCarrier;
    DistanceBounds carrier;
    std::optional<WindingResult> winding;
    std::optional<RayCrossingResult> crossing;
    int ray_attempts = 0;
};

inline double default_band(const JordanCurve& jc) { return kDefaultBandRelative * jc.diameter(); }

inline Classification classify(const JordanCurve& jc, const Point& zeta, const ClassifyOptions& opts = {}) {
    Classification out;
    out.carrier = jc.carrier_distance(zeta);
    const double band = opts.eps_band >= 0.0 ? opts.eps_band : default_band(jc);
    if (out.carrier.upper < band || !(out.carrier.lower > 0.0)) {
        out.verdict = Verdict::NearCarrier;
        return out;
    }

    try {
        out.winding = winding_number(jc, zeta, opts.tol);
    } catch (const BudgetNotMet&) {
    }

    Vec2 dir = normalized(opts.direction);
    for (int attempt = 0; attempt <= opts.max_retries && !out.crossing; ++attempt) {
        out.ray_attempts = attempt + 1;
        try {
            out.crossing = ray_crossing_index(jc, zeta, dir, opts.ray);
        } catch (const DegenerateRay&) {
            dir = rotate(dir, kGoldenAngle);
        }
    }

    if (out.winding && out.crossing) {
        if (std::abs(out.winding->rounded) != out.crossing->index) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "oracle disagreement at (" << zeta.x << ", " << zeta.y << "): winding " << out.winding->rounded
                << ", crossing parity " << out.crossing->index;
            throw OracleDisagreement(msg.str());
        }
    } else if (!out.winding && !out.crossing) {
        throw OracleDisagreement("neither oracle produced an index");
    }
    const int index = out.winding ? std::abs(out.winding->rounded) : out.crossing->index;
    if (index > 1) throw OracleDisagreement("winding magnitude exceeds 1 on a validated curve");
    out.verdict = index == 1 ? Verdict::Inside : Verdict::Outside;
    return out;
}

inline Classification classify(const JordanCurve& jc, const Point& zeta, double eps_band, double tol) {
    ClassifyOptions o;
    o.eps_band = eps_band;
    o.tol = tol;
    return classify(jc, zeta, o);
}

/// Radius beyond which every point has winding number 0:
/// max |z| on the carrier plus (b - a)(1 + M) / (2 pi).
inline double outer_radius(const JordanCurve& jc) {
    double reach = 0.0;
    for (const auto& p : jc.spec().pieces()) reach = std::max(reach, p.max_modulus());
    return reach + jc.spec().span() * (1.0 + jc.deriv_sup()) / kTwoPi;
}

/// Radius of an open ball around zeta on which the classification is constant.
inline double constant_index_radius(const JordanCurve& jc, const Point& zeta) {
    const double r = jc.carrier_distance(zeta).lower;
    if (!(r > 0.0)) throw PointTooClose("point is not bounded away from the carrier");
    return r;
}

enum class Region { In, Out };

/// Distance from z to the nearest lattice point of spacing diameter / n_samples
/// (lattice anchored at z) classified into `region`. Approaches rho(z, region) from above.
inline double region_distance(const JordanCurve& jc, const Point& z, Region region, int n_samples,
                              const ClassifyOptions& opts = {}) {
    if (n_samples < 2) throw InvalidArgument("n_samples must be at least 2");
    const double h = jc.diameter() / n_samples;
    const Verdict want = region == Region::In ? Verdict::Inside : Verdict::Outside;
    const BoundingBox box = jc.carrier().bbox();
    const double reach = box.distance_to(z) + box.diagonal() + 2.0 * h;
    const long max_ring = static_cast<long>(std::ceil(reach / h)) + 1;

    struct Cand {
        double dist;
        long i, j;
        bool operator>(const Cand& o) const { return dist > o.dist; }
    };
    std::priority_queue<Cand, std::vector<Cand>, std::greater<>> heap;
    long next_ring = 0;
    auto push_ring = [&](long r) {
        auto push = [&](long i, long j) { heap.push({h * std::hypot(double(i), double(j)), i, j}); };
        if (r == 0) {
            push(0, 0);
            return;
        }
        for (long i = -r; i <= r; ++i) {
            push(i, -r);
            push(i, r);
        }
        for (long j = -r + 1; j <= r - 1; ++j) {
            push(-r, j);
            push(r, j);
        }
    };
    while (true) {
        while (next_ring <= max_ring && (heap.empty() || static_cast<double>(next_ring) * h <= heap.top().dist))
            push_ring(next_ring++);
        if (heap.empty()) break;
        const Cand c = heap.top();
        heap.pop();
        const Point p = z + Point{c.i * h, c.j * h};
        if (classify(jc, p, opts).verdict == want) return c.dist;
    }
    throw EmptyRegion("no sampled point of the requested region");
}

struct BoundaryWitnesses {
    Point inside;
    Point outside;
    double offset = 0.0;  ///< distance of both witnesses from gamma(t) along the normal
    Classification inside_class;
    Classification outside_class;
};

/// Walks the normal at a smooth point gamma(t) on both sides, halving the
/// step from delta_max, until one side is Inside and the other Outside.
inline BoundaryWitnesses boundary_witnesses(const JordanCurve& jc, double t, double delta_max,
                                            const ClassifyOptions& opts = {}, int max_halvings = 60) {
    if (!(delta_max > 0.0)) throw InvalidArgument("delta_max must be positive");
    const CurveSpec& spec = jc.spec();
    const auto loc = spec.locate(t);
    if (!jc.smooth()[loc.piece].smooth) throw InvalidArgument("gamma(t) is not a smooth point");
    Vec2 tangent = spec.deriv(t < spec.b() ? t : spec.a(), Side::Right);
    const bool at_knot = std::find(spec.knots().begin(), spec.knots().end(), t) != spec.knots().end();
    if (at_knot) {
        const Vec2 left = spec.deriv(t > spec.a() ? t : spec.b(), Side::Left);
        if (!(acute_angle(left, tangent) < 1e-9 && dot(left, tangent) > 0.0))
            throw InvalidArgument("gamma(t) is a corner, not a smooth point");
    }
    const Vec2 normal = perp(normalized(tangent));
    const Point base = spec.eval(t);
    double delta = delta_max;
    for (int i = 0; i <= max_halvings; ++i, delta /= 2.0) {
        const Point a = base + normal * delta, b = base - normal * delta;
        const Classification ca = classify(jc, a, opts);
        const Classification cb = classify(jc, b, opts);
        if (ca.verdict == Verdict::Inside && cb.verdict == Verdict::Outside) return {a, b, delta, ca, cb};
        if (ca.verdict == Verdict::Outside && cb.verdict == Verdict::Inside) return {b, a, delta, cb, ca};
    }
    throw WitnessNotFound("normal walk found no Inside/Outside pair");
}

}  // namespace jordan
