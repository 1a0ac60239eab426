#pragma once

// Sample-scale validation of the Jordan conditions:
//   J1  the path is injective off the identification of its endpoints,
//   J2  the inverse is continuous on images of interior compacta.
// Both are certified on a finite parameter skeleton of resolution h; the
// certificates record exactly what was checked.

#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "jordan/carrier_index.hpp"
#include "jordan/curve.hpp"
#include "jordan/errors.hpp"

namespace jordan {

/// What the sampled injectivity check established. The skeleton is the
/// closed polygon through gamma(a + i * step), i < samples.
struct J1Certificate {
    double resolution = 0.0;      ///< requested parameter step h
    std::size_t samples = 0;
    double sample_spacing = 0.0;  ///< largest chord between consecutive samples
    double min_gap = 0.0;         ///< smallest chord between distinct samples
    double gap_t = 0.0;           ///< parameters attaining min_gap
    double gap_s = 0.0;
    double edge_clearance = 0.0;  ///< lower bound on the distance between skeleton edges sharing no vertex
    double edge_threshold = 0.0;  ///< edge_clearance below this is a J1 failure
    double edge_t = 0.0;          ///< parameters of the closest points attaining edge_clearance
    double edge_s = 0.0;
};

/// One row of the inverse modulus of continuity: for t, t' in
/// [a + eps/2, b - eps/2] with |t - t'| >= eps, |gamma(t) - gamma(t')| >= delta.
struct J2Entry {
    double epsilon;
    double delta;
};

struct SmoothBound {
    bool smooth = false;
    double lower = 0.0;  ///< m_k: lower bound of |gamma'| on the piece (global parameter)
    double upper = 0.0;  ///< sup bound of |gamma'| on the piece (global parameter)
};

enum class ValidationFailureKind { Closure, J1, NonSmoothPiece };

class ValidationFailure : public Error {
public:
    ValidationFailure(ValidationFailureKind kind, const std::string& what) : Error(what), kind_(kind) {}

    ValidationFailureKind kind() const { return kind_; }
    /// Parameters (t, t') of the offending pair for J1 failures.
    std::optional<std::pair<double, double>> witness;
    double chord = 0.0;
    std::size_t piece = 0;

private:
    ValidationFailureKind kind_;
};

inline const char* to_string(ValidationFailureKind k) {
    switch (k) {
    case ValidationFailureKind::Closure: return "ClosureFailure";
    case ValidationFailureKind::J1: return "J1Failure";
    case ValidationFailureKind::NonSmoothPiece: return "NonSmoothPiece";
    }
    return "?";
}

/// A closed path that passed validate_jordan, with its certificates and carrier index.
class JordanCurve {
public:
    /// Safety factor applied to the derivative sup so that |gamma'| < M strictly.
    static constexpr double kDerivativeMargin = 1.01;
    /// Non-adjacent skeleton edges must stay this many sample spacings apart.
    static constexpr double kEdgeClearanceFactor = 0.125;

    const CurveSpec& spec() const { return spec_; }
    const J1Certificate& j1() const { return j1_; }
    const std::vector<J2Entry>& j2() const { return j2_; }
    const std::vector<SmoothBound>& smooth() const { return smooth_; }
    double deriv_sup() const { return deriv_sup_; }
    const CarrierIndex& carrier() const { return *index_; }
    double diameter() const { return index_->diameter(); }
    bool require_smooth() const { return require_smooth_; }

    DistanceBounds carrier_distance(const Point& z) const { return index_->distance(z); }

private:
    friend JordanCurve validate_jordan(const CurveSpec&, double, bool);
    explicit JordanCurve(CurveSpec spec) : spec_(std::move(spec)) {}

    CurveSpec spec_;
    J1Certificate j1_;
    std::vector<J2Entry> j2_;
    std::vector<SmoothBound> smooth_;
    double deriv_sup_ = 0.0;
    bool require_smooth_ = true;
    std::shared_ptr<const CarrierIndex> index_;
};

inline JordanCurve validate_jordan(const CurveSpec& spec, double h, bool require_smooth = true) {
    if (!(h > 0.0)) throw InvalidArgument("sample resolution must be positive");
    if (!spec.closed()) {
        ValidationFailure f(ValidationFailureKind::Closure, "closure failure: gamma(a) != gamma(b)");
        f.chord = distance(spec.start(), spec.end());
        throw f;
    }

    JordanCurve jc(spec);
    jc.require_smooth_ = require_smooth;

    double sup = 0.0;
    for (std::size_t k = 0; k < spec.size(); ++k) {
        const auto& piece = spec.pieces()[k];
        const double factor = spec.speed_factor(k);
        SmoothBound sb;
        sb.upper = piece.speed_sup() * factor;
        if (const auto m = piece.speed_lower_bound(); m && *m > 0.0) {
            sb.smooth = true;
            sb.lower = *m * factor;
        } else if (require_smooth) {
            ValidationFailure f(ValidationFailureKind::NonSmoothPiece,
                                "piece " + std::to_string(k) + " has no positive derivative lower bound");
            f.piece = k;
            throw f;
        }
        sup = std::max(sup, sb.upper);
        jc.smooth_.push_back(sb);
    }
    jc.deriv_sup_ = JordanCurve::kDerivativeMargin * sup;

    // Parameter skeleton t_i = a + i * span / n, i < n (t = b is identified with t = a).
    const double span = spec.span();
    const auto n = static_cast<std::size_t>(std::max(8.0, std::ceil(span / h)));
    const double step = span / static_cast<double>(n);
    std::vector<double> ts(n);
    std::vector<Point> ps(n);
    for (std::size_t i = 0; i < n; ++i) {
        ts[i] = spec.a() + step * static_cast<double>(i);
        ps[i] = spec.eval(ts[i]);
    }
    double spacing = 0.0;
    for (std::size_t i = 0; i < n; ++i) spacing = std::max(spacing, distance(ps[i], ps[(i + 1) % n]));
    const double threshold = JordanCurve::kEdgeClearanceFactor * spacing;
    // Skeleton arc length; edges joined by under 1.5 spacings of skeleton are neighbours.
    std::vector<double> arc(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) arc[i + 1] = arc[i] + distance(ps[i], ps[(i + 1) % n]);
    auto neighbours = [&](std::size_t i, std::size_t j) {
        const double forward = arc[j] - arc[i + 1];
        const double backward = arc[n] - arc[j + 1] + arc[i];
        return std::min(forward, backward) < 1.5 * spacing;
    };
    // Edges whose start points are 4 spacings apart are at least 2 spacings apart; they are not measured.
    const double near2 = 16.0 * spacing * spacing;

    // J2 grid: eps_k = span / 2^k for k >= 2 while eps_k >= 8 steps.
    std::vector<double> eps;
    for (double e = span / 4.0; e >= 8.0 * step && eps.size() < 12; e /= 2.0) eps.push_back(e);
    std::vector<double> bucket(eps.size(), std::numeric_limits<double>::infinity());

    double best2 = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    SegmentPairDistance edge{std::numeric_limits<double>::infinity(), 0.0, 0.0};
    std::size_t ei = 0, ej = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d2 = norm2(ps[i] - ps[j]);
            if (d2 < best2) {
                best2 = d2;
                bi = i;
                bj = j;
            }
            if (d2 < near2 && !neighbours(i, j)) {
                const auto e = segment_pair_distance(ps[i], ps[(i + 1) % n], ps[j], ps[(j + 1) % n]);
                if (e.distance < edge.distance) {
                    edge = e;
                    ei = i;
                    ej = j;
                }
            }
            const double e_max = std::min({ts[j] - ts[i], 2.0 * (ts[i] - spec.a()), 2.0 * (spec.b() - ts[j])});
            for (std::size_t k = 0; k < eps.size(); ++k) {
                if (e_max >= eps[k]) {
                    if (d2 < bucket[k]) bucket[k] = d2;
                    break;
                }
            }
        }
    }

    J1Certificate& j1 = jc.j1_;
    j1.resolution = h;
    j1.samples = n;
    j1.sample_spacing = spacing;
    j1.min_gap = std::sqrt(best2);
    j1.gap_t = ts[bi];
    j1.gap_s = ts[bj];
    j1.edge_clearance = std::min(edge.distance, 2.0 * spacing);
    j1.edge_threshold = threshold;
    j1.edge_t = ts[ei] + edge.s * step;
    j1.edge_s = ts[ej] + edge.u * step;
    if (!(j1.min_gap > 0.0) || !(j1.edge_clearance >= threshold)) {
        const bool coincide = !(j1.min_gap > 0.0);
        const double t = coincide ? j1.gap_t : j1.edge_t, s = coincide ? j1.gap_s : j1.edge_s;
        const double chord = coincide ? j1.min_gap : j1.edge_clearance;
        std::ostringstream msg;
        msg << "J1 failure: gamma(" << t << ") and gamma(" << s << ") are " << chord
            << " apart, below the sample-scale threshold " << threshold;
        ValidationFailure f(ValidationFailureKind::J1, msg.str());
        f.witness = std::make_pair(t, s);
        f.chord = chord;
        throw f;
    }

    // Smaller eps admits more pairs, so delta is a running minimum from the largest eps down.
    double running = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < eps.size(); ++k) {
        running = std::min(running, bucket[k]);
        if (std::isfinite(running)) jc.j2_.push_back({eps[k], std::sqrt(running)});
    }
    std::reverse(jc.j2_.begin(), jc.j2_.end());

    jc.index_ = std::make_shared<CarrierIndex>(jc.spec_);
    return jc;
}

/// Image of a validated curve under an invertible affine map, revalidated at the same resolution.
inline JordanCurve transform_curve(const JordanCurve& jc, const AffineMap& map) {
    if (std::abs(map.det()) <= 1e-12) throw InvalidArgument("transform_curve: singular map");
    return validate_jordan(transform_spec(jc.spec(), map), jc.j1().resolution, jc.require_smooth());
}

}  // namespace jordan
