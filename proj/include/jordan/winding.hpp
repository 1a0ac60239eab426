#pragma once

// Winding number j(gamma, zeta) = (1 / 2 pi i) \oint dz / (z - zeta).
//
// Lines and arcs contribute exact logarithm increments. Cubic pieces are
// replaced by chords; each replacement is charged the integral-difference
// bound
//   |\int_g1 f - \int_g2 f| <= ||f||_K ||g1' - g2'|| + ||g2'|| ||f o g1 - f o g2||
// with f = 1/(z - zeta), ||f||_K <= 1/rho and ||f o g1 - f o g2|| <= ||g1 - g2|| / rho^2.

#include <cmath>
#include <complex>
#include <numbers>

#include "jordan/curve.hpp"
#include "jordan/errors.hpp"
#include "jordan/jordan_curve.hpp"

namespace jordan {

inline constexpr double kRoundingAcceptance = 0.25;

struct WindingResult {
    std::complex<double> integral;  ///< (1/2 pi i) \oint dz/(z - zeta)
    int rounded = 0;
    double residual = 0.0;      ///< |integral - rounded|
    double error_budget = 0.0;  ///< certified bound on |integral - computed value|
    std::size_t chords = 0;     ///< chords used for cubic pieces

    bool accepted() const { return residual + error_budget < kRoundingAcceptance; }
};

/// \int_{lin(a,b)} dz / (z - zeta), exact. The segment must avoid zeta.
inline std::complex<double> line_integral(const Point& a, const Point& b, const Point& zeta) {
    return std::log(to_complex(b - zeta) / to_complex(a - zeta));
}

/// Difference bound for two linear paths in a compact K with rho = rho(zeta, K) > 0:
/// ||g1 - g2|| / rho * (2 + |g2(1) - g2(0)| / rho).
inline double linear_path_difference_bound(const Point& a1, const Point& b1, const Point& a2, const Point& b2,
                                           double rho) {
    const double sup = std::max(distance(a1, a2), distance(b1, b2));
    return sup / rho * (2.0 + distance(a2, b2) / rho);
}

/// General form for piecewise differentiable g1, g2 on [0, 1] with sup-norm data supplied.
inline double path_difference_bound(double sup_deriv_diff, double sup_deriv_g2, double sup_diff, double rho) {
    return sup_deriv_diff / rho + sup_deriv_g2 * sup_diff / (rho * rho);
}

namespace detail {

/// Exact \int dz/(z - zeta) along an arc.
inline std::complex<double> arc_integral(const ArcPiece& arc, const Point& zeta) {
    const Vec2 w = zeta - arc.center;
    const double rho = norm(w);
    const double alpha = std::atan2(w.y, w.x);
    const double t0 = arc.start_angle, t1 = arc.start_angle + arc.sweep;
    double darg;
    if (rho <= arc.radius) {
        const double q = rho / arc.radius;
        auto branch = [&](double theta) { return std::arg(1.0 - q * std::polar(1.0, alpha - theta)); };
        darg = arc.sweep + branch(t1) - branch(t0);
    } else {
        const double q = arc.radius / rho;
        auto branch = [&](double theta) { return std::arg(1.0 - q * std::polar(1.0, theta - alpha)); };
        darg = branch(t1) - branch(t0);
    }
    const double dlog = std::log(distance(arc.point(1.0), zeta) / distance(arc.point(0.0), zeta));
    return {dlog, darg};
}

struct CubicQuadrature {
    std::complex<double> sum;
    double budget = 0.0;
    std::size_t chords = 0;
    bool ok = true;
};

inline void cubic_integral(const std::array<Point, 4>& p, const Point& zeta, double tol_density, double width,
                           int depth, CubicQuadrature& acc) {
    const Vec2 chord = p[3] - p[0];
    const double dev = cubic_chord_deviation(p);
    const std::array<Vec2, 3> hodo{(p[1] - p[0]) * 3.0, (p[2] - p[1]) * 3.0, (p[3] - p[2]) * 3.0};
    const double deriv_dev = std::max({norm(hodo[0] - chord), norm(hodo[1] - chord), norm(hodo[2] - chord)});
    const double rho = dist_point_segment(zeta, p[0], p[3]) - dev;
    if (rho > 0.0) {
        const double err = path_difference_bound(deriv_dev, norm(chord), dev, rho) / kTwoPi;
        if (err <= tol_density * width) {
            acc.sum += line_integral(p[0], p[3], zeta);
            acc.budget += err;
            ++acc.chords;
            return;
        }
    }
    if (depth >= 40) {
        acc.ok = false;
        return;
    }
    const auto [l, r] = split_cubic(p, 0.5);
    cubic_integral(l, zeta, tol_density, width / 2, depth + 1, acc);
    if (acc.ok) cubic_integral(r, zeta, tol_density, width / 2, depth + 1, acc);
}

}  // namespace detail

/// Winding number of a closed path around zeta; the path must avoid zeta.
/// Throws BudgetNotMet when the cubic quadrature cannot reach `tol` or the
/// rounded value is not accepted.
inline WindingResult winding_number(const CurveSpec& curve, const Point& zeta, double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
    std::size_t cubics = 0;
    for (const auto& p : curve.pieces()) cubics += p.kind() == PieceKind::Cubic;

    std::complex<double> total;
    WindingResult out;
    for (const auto& piece : curve.pieces()) {
        switch (piece.kind()) {
        case PieceKind::Line: {
            const auto& l = piece.as<LinePiece>();
            total += line_integral(l.from, l.to, zeta);
            break;
        }
        case PieceKind::Arc:
            total += detail::arc_integral(piece.as<ArcPiece>(), zeta);
            break;
        case PieceKind::Cubic: {
            detail::CubicQuadrature acc;
            detail::cubic_integral(piece.as<CubicPiece>().ctrl, zeta, tol / static_cast<double>(cubics), 1.0, 0,
                                   acc);
            if (!acc.ok) throw BudgetNotMet("cubic quadrature reached its depth cap before the error budget");
            total += acc.sum;
            out.error_budget += acc.budget;
            out.chords += acc.chords;
            break;
        }
        }
    }
    out.integral = total / std::complex<double>(0.0, kTwoPi);
    out.rounded = static_cast<int>(std::lround(out.integral.real()));
    out.residual = std::abs(out.integral - std::complex<double>(out.rounded, 0.0));
    if (!out.accepted()) throw BudgetNotMet("winding integral is not within the rounding acceptance of an integer");
    return out;
}

/// Winding number around zeta for a validated curve; zeta must have a positive carrier-distance lower bound.
inline WindingResult winding_number(const JordanCurve& jc, const Point& zeta, double tol) {
    if (!(jc.carrier_distance(zeta).lower > 0.0)) throw PointTooClose("query point is not bounded away from the carrier");
    return winding_number(jc.spec(), zeta, tol);
}

}  // namespace jordan
