#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace jordan;
using Catch::Matchers::WithinAbs;
using testing_support::kPi;

namespace {

CurveSpec unit_square() {
    return CurveSpec({SegmentPiece::line({0, 0}, {1, 0}), SegmentPiece::line({1, 0}, {1, 1}),
                      SegmentPiece::line({1, 1}, {0, 1}), SegmentPiece::line({0, 1}, {0, 0})});
}

void check_same_point(const Point& p, const Point& q, double tol) {
    CHECK_THAT(p.x, WithinAbs(q.x, tol));
    CHECK_THAT(p.y, WithinAbs(q.y, tol));
}

}  // namespace

TEST_CASE("eval examples") {
    const CurveSpec circle = fixtures::circle();
    check_same_point(circle.eval(0.0), {1, 0}, 1e-15);
    check_same_point(circle.eval(0.5), {-1, 0}, 1e-15);
    check_same_point(unit_square().eval(0.5), {0.5, 0}, 1e-15);
    CHECK_THROWS_AS(circle.eval(1.5), RangeError);
    CHECK_THROWS_AS(circle.eval(-1e-9), RangeError);
}

TEST_CASE("eval agrees with first-principles piece formulas") {
    for (const auto& [name, spec] : fixtures::jordan_fixtures()) {
        for (std::size_t k = 0; k < spec.size(); ++k)
            for (double u : {0.0, 0.1, 0.37, 0.5, 0.9}) {
                const Point p = spec.eval(spec.global_parameter(k, u));
                check_same_point(p, testing_support::piece_point(spec.pieces()[k], u), 1e-12);
            }
    }
}

TEST_CASE("one-sided derivatives") {
    const CurveSpec circle = fixtures::circle();
    const Vec2 d = circle.deriv(0.0, Side::Right);
    CHECK_THAT(d.x, WithinAbs(0.0, 1e-12));
    CHECK_THAT(d.y, WithinAbs(2 * kPi, 1e-12));
    CHECK_THROWS_AS(circle.deriv(0.0, Side::Left), RangeError);
    CHECK_THROWS_AS(circle.deriv(1.0, Side::Right), RangeError);

    const CurveSpec sq = unit_square();
    const Vec2 left = sq.deriv(1.0, Side::Left), right = sq.deriv(1.0, Side::Right);
    CHECK(left == Vec2{1, 0});
    CHECK(right == Vec2{0, 1});

    // Endpoint derivative of a cubic is 3 (p1 - p0), scaled by the knot map.
    const std::array<Point, 4> c{Point{0, 0}, Point{1, 2}, Point{3, 2}, Point{4, 0}};
    const CurveSpec cubic = reparametrize(CurveSpec({SegmentPiece::cubic(c)}), 2.0, 6.0);
    const Vec2 dc = cubic.deriv(2.0, Side::Right);
    CHECK_THAT(dc.x, WithinAbs(3.0 * 1 / 4, 1e-15));
    CHECK_THAT(dc.y, WithinAbs(3.0 * 2 / 4, 1e-15));
}

TEST_CASE("derivatives match central differences") {
    for (const auto& [name, spec] : fixtures::jordan_fixtures()) {
        const double h = 1e-6 * spec.span();
        for (int i = 1; i < 50; ++i) {
            const double t = spec.a() + spec.span() * (i + 0.123) / 50;
            const Vec2 fd = (spec.eval(t + h) - spec.eval(t - h)) / (2 * h);
            const Vec2 d = spec.deriv(t, Side::Right);
            CHECK(norm(fd - d) < 1e-5 * (1 + norm(d)));
        }
    }
}

TEST_CASE("lin examples") {
    const CurveSpec l = lin({0, 0}, {1, 1});
    check_same_point(l.eval(0.5), {0.5, 0.5}, 1e-15);
    CHECK(l.eval(0.0) == Point{0, 0});
    CHECK(l.eval(1.0) == Point{1, 1});
    CHECK(CarrierIndex(lin({0, 0}, {2, 0})).distance({1, 1}).lower == 1.0);
    CHECK_THROWS_AS(lin({1, 1}, {1, 1}), InvalidArgument);
}

TEST_CASE("path sum examples") {
    const CurveSpec two = path_sum(lin({0, 0}, {1, 0}), lin({1, 0}, {1, 1}));
    CHECK(two.size() == 2);
    CHECK(two.eval(1.0) == Point{1, 0});
    const CurveSpec sq =
        path_sum(path_sum(path_sum(lin({0, 0}, {1, 0}), lin({1, 0}, {1, 1})), lin({1, 1}, {0, 1})), lin({0, 1}, {0, 0}));
    CHECK(sq.closed());
    CHECK_NOTHROW(validate_jordan(sq, 1e-2));
    CHECK_THROWS_AS(path_sum(lin({0, 0}, {1, 0}), lin({2, 0}, {3, 0})), InvalidArgument);
}

TEST_CASE("path sum follows the shifted time map") {
    const CurveSpec p1 = reparametrize(fixtures::cubic_blob(), -1.0, 2.5);
    const CurveSpec p2 = reparametrize(lin(p1.end(), {3, 3}), 10.0, 11.0);
    const CurveSpec s = path_sum(p1, p2);
    CHECK(s.a() == p1.a());
    CHECK(s.b() == p1.b() + p2.span());
    const double shift = p1.b() - p2.a();
    for (int i = 0; i <= 200; ++i) {
        const double t = s.a() + s.span() * i / 200;
        const Point expected = t <= p1.b() ? p1.eval(t) : p2.eval(t - shift);
        check_same_point(s.eval(t), expected, 1e-12);
    }
}

TEST_CASE("path sum is associative up to reparametrization") {
    const CurveSpec a = lin({0, 0}, {1, 0});
    const CurveSpec b = reparametrize(lin({1, 0}, {1, 2}), 0, 3);
    const CurveSpec c = lin({1, 2}, {-1, 1});
    const CurveSpec left = path_sum(path_sum(a, b), c);
    const CurveSpec right = path_sum(a, path_sum(b, c));
    const CurveSpec right_on_left = reparametrize(right, left.a(), left.b());
    for (int i = 0; i <= 100; ++i) {
        const double t = left.a() + left.span() * i / 100;
        check_same_point(left.eval(t), right_on_left.eval(t), 1e-12);
    }
}

TEST_CASE("reparametrize examples") {
    const CurveSpec circle = unit_circular_path();
    const CurveSpec unit = reparametrize(circle, 0, 1);
    check_same_point(unit.eval(0.25), circle.eval(kPi / 2), 1e-12);

    const CurveSpec blob = fixtures::cubic_blob();
    const CurveSpec there = reparametrize(blob, -3, 7.5);
    const CurveSpec back = reparametrize(there, blob.a(), blob.b());
    for (int i = 0; i <= 300; ++i) {
        const double t = blob.a() + blob.span() * i / 300;
        check_same_point(back.eval(t), blob.eval(t), 1e-12);
    }
    CHECK_THROWS_AS(reparametrize(blob, 1, 1), InvalidArgument);
    CHECK_THROWS_AS(reparametrize(blob, 2, 1), InvalidArgument);
}

TEST_CASE("reparametrization keeps carrier-distance enclosures") {
    const CurveSpec kidney = fixtures::kidney();
    const CarrierIndex a(kidney), b(reparametrize(kidney, 5, 6));
    for (int i = 0; i < 100; ++i) {
        const Point z = testing_support::uniform_in({{-2, -2}, {2, 2}});
        const auto da = a.distance(z), db = b.distance(z);
        CHECK(da.lower == db.lower);
        CHECK(da.upper == db.upper);
    }
}

TEST_CASE("unit circular path") {
    const CurveSpec u = unit_circular_path();
    check_same_point(u.eval(kPi / 2), {0, 1}, 1e-15);
    CHECK(u.a() == 0.0);
    CHECK(u.b() == 2 * kPi);
    const JordanCurve jc = validate_jordan(u, 1e-3);
    CHECK_THAT(jc.deriv_sup(), WithinAbs(1.01, 1e-12));
}

TEST_CASE("inverse modulus on the circle matches 2 sin(eps/2)") {
    // For theta, theta' in [eps/2, 2pi - eps/2] with |theta - theta'| >= eps the
    // smallest chord is 2 sin(eps/2); sampling can only overestimate it, by at most one step.
    const JordanCurve jc = validate_jordan(unit_circular_path(), 1e-3);
    const double step = 2 * kPi / static_cast<double>(jc.j1().samples);
    REQUIRE(jc.j2().size() >= 5);
    for (const auto& e : jc.j2()) {
        CHECK(e.delta >= 2 * std::sin(e.epsilon / 2) - 1e-12);
        CHECK(e.delta <= 2 * std::sin((e.epsilon + step) / 2) + 1e-12);
    }
}

TEST_CASE("validate_jordan examples") {
    const JordanCurve circle = validate_jordan(fixtures::circle(), 1e-3);
    CHECK_THAT(circle.deriv_sup(), WithinAbs(1.01 * 2 * kPi, 1e-12));

    try {
        validate_jordan(fixtures::figure_eight(), 1e-3);
        FAIL("figure eight validated");
    } catch (const ValidationFailure& f) {
        CHECK(f.kind() == ValidationFailureKind::J1);
        REQUIRE(f.witness);
        const CurveSpec fig = fixtures::figure_eight();
        CHECK(norm(fig.eval(f.witness->first)) < 0.05);
        CHECK(norm(fig.eval(f.witness->second)) < 0.05);
    }

    try {
        validate_jordan(fixtures::open_arc(), 1e-3);
        FAIL("open arc validated");
    } catch (const ValidationFailure& f) {
        CHECK(f.kind() == ValidationFailureKind::Closure);
    }
    CHECK_THROWS_AS(validate_jordan(fixtures::circle(), 0.0), InvalidArgument);
}

TEST_CASE("non-smooth cubic pieces") {
    // The first cubic has a vanishing derivative at its start.
    const CurveSpec cusp({SegmentPiece::cubic({Point{0, 0}, Point{0, 0}, Point{1, 1}, Point{1, 0}}),
                          SegmentPiece::line({1, 0}, {0, 0})});
    try {
        validate_jordan(cusp, 1e-3);
        FAIL("cusp validated as smooth");
    } catch (const ValidationFailure& f) {
        CHECK(f.kind() == ValidationFailureKind::NonSmoothPiece);
        CHECK(f.piece == 0);
    }
    const JordanCurve loose = validate_jordan(cusp, 1e-3, false);
    CHECK_FALSE(loose.smooth()[0].smooth);
    CHECK(loose.smooth()[1].smooth);
}

TEST_CASE("sampled injectivity certificate holds on an independent skeleton") {
    for (const auto& [name, spec] : fixtures::jordan_fixtures()) {
        const JordanCurve jc = validate_jordan(spec, 2e-3);
        const auto& cert = jc.j1();
        INFO(name);
        CHECK(cert.min_gap > 0.0);
        CHECK(cert.edge_clearance >= cert.edge_threshold);
        CHECK(cert.edge_threshold == cert.sample_spacing / 8);

        // Recompute the skeleton from first principles and measure every pair.
        const std::size_t n = cert.samples;
        std::vector<Point> pts(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto loc = spec.locate(spec.a() + spec.span() * static_cast<double>(i) / static_cast<double>(n));
            pts[i] = testing_support::piece_point(spec.pieces()[loc.piece], loc.u);
        }
        double perimeter = 0.0;
        for (std::size_t i = 0; i < n; ++i) perimeter += distance(pts[i], pts[(i + 1) % n]);
        // Skeleton length strictly between edge i and edge j, walking forward from i.
        auto between = [&](std::size_t i, std::size_t j) {
            double len = 0.0;
            for (std::size_t k = i + 1; k < j; ++k) len += distance(pts[k], pts[k + 1]);
            return len;
        };
        double chord = INFINITY, edges = INFINITY;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                chord = std::min(chord, distance(pts[i], pts[j]));
                if (distance(pts[i], pts[j]) > 4 * cert.sample_spacing) continue;
                const double fwd = between(i, j);
                const double back = perimeter - fwd - distance(pts[i], pts[i + 1]) - distance(pts[j], pts[(j + 1) % n]);
                if (std::min(fwd, back) < 1.5 * cert.sample_spacing) continue;
                // Dense sampling of both edges bounds the edge distance from above.
                for (int a = 0; a <= 8; ++a)
                    for (int b = 0; b <= 8; ++b)
                        edges = std::min(edges, distance(lerp(pts[i], pts[(i + 1) % n], a / 8.0),
                                                         lerp(pts[j], pts[(j + 1) % n], b / 8.0)));
            }
        CHECK(chord >= cert.min_gap * (1 - 1e-9));
        CHECK(edges >= cert.edge_clearance * (1 - 1e-9));
    }
}

TEST_CASE("sharp corners are not self-intersections") {
    for (double angle : {0.3, 0.6, 1.0}) {
        const CurveSpec wedge({SegmentPiece::line({0, 0}, {1, 0}),
                               SegmentPiece::line({1, 0}, {std::cos(angle), std::sin(angle)}),
                               SegmentPiece::line({std::cos(angle), std::sin(angle)}, {0, 0})});
        CHECK_NOTHROW(validate_jordan(wedge, 1e-3));
    }
    // A bow tie crosses itself.
    const CurveSpec bow({SegmentPiece::line({0, 0}, {1, 1}), SegmentPiece::line({1, 1}, {1, 0}),
                         SegmentPiece::line({1, 0}, {0, 1}), SegmentPiece::line({0, 1}, {0, 0})});
    try {
        validate_jordan(bow, 1e-3);
        FAIL("bow tie validated");
    } catch (const ValidationFailure& f) {
        CHECK(f.kind() == ValidationFailureKind::J1);
        REQUIRE(f.witness);
        CHECK(distance(bow.eval(f.witness->first), {0.5, 0.5}) < 0.01);
        CHECK(distance(bow.eval(f.witness->second), {0.5, 0.5}) < 0.01);
    }
}

TEST_CASE("inverse-modulus table is positive and monotone") {
    for (const auto& [name, spec] : fixtures::jordan_fixtures()) {
        const JordanCurve jc = validate_jordan(spec, 1e-3);
        INFO(name);
        REQUIRE_FALSE(jc.j2().empty());
        for (std::size_t k = 0; k < jc.j2().size(); ++k) {
            CHECK(jc.j2()[k].delta > 0.0);
            if (k) {
                CHECK(jc.j2()[k].epsilon > jc.j2()[k - 1].epsilon);
                CHECK(jc.j2()[k].delta >= jc.j2()[k - 1].delta);
            }
        }
    }
}

TEST_CASE("smooth bounds enclose sampled speeds") {
    for (const auto& [name, spec] : fixtures::jordan_fixtures()) {
        const JordanCurve jc = validate_jordan(spec, 1e-3);
        INFO(name);
        for (std::size_t k = 0; k < spec.size(); ++k) {
            const auto& sb = jc.smooth()[k];
            REQUIRE(sb.smooth);
            CHECK(sb.lower > 0.0);
            CHECK(sb.lower <= sb.upper);
            CHECK(jc.deriv_sup() > sb.upper);
            const double dt = spec.knots()[k + 1] - spec.knots()[k];
            for (int i = 0; i <= 400; ++i) {
                const double u0 = std::min(i / 400.0, 1.0 - 1e-7);
                const Point p0 = testing_support::piece_point(spec.pieces()[k], u0);
                const Point p1 = testing_support::piece_point(spec.pieces()[k], u0 + 1e-7);
                const double speed = distance(p0, p1) / (1e-7 * dt);
                CHECK(speed >= sb.lower * (1 - 1e-5));
                CHECK(speed <= sb.upper * (1 + 1e-5));
            }
        }
    }
}

TEST_CASE("carrier distance examples") {
    const CarrierIndex idx(fixtures::circle());
    auto d = idx.distance({0, 0});
    CHECK_THAT(d.lower, WithinAbs(1.0, 1e-15));
    CHECK_THAT(d.upper, WithinAbs(1.0, 1e-15));
    d = idx.distance({3, 0});
    CHECK_THAT(d.lower, WithinAbs(2.0, 1e-15));
    CHECK_THAT(d.upper, WithinAbs(2.0, 1e-15));
}

TEST_CASE("carrier distance encloses a dense-sampling oracle") {
    // 10^6 parameter samples; the sampled minimum is >= the true distance and
    // exceeds it by at most half the largest chord.
    for (const auto& [name, spec] : fixtures::jordan_fixtures()) {
        const auto pts = testing_support::dense_polyline(spec, static_cast<int>(1000000 / spec.size()));
        const double slack = testing_support::max_chord(pts);
        const CarrierIndex idx(spec);
        const double max_lip = *std::max_element(idx.lipschitz().begin(), idx.lipschitz().end());
        const BoundingBox box = spec.bbox().inflated(0.5);
        INFO(name);
        for (int i = 0; i < 60; ++i) {
            const Point z = i < 10 ? testing_support::piece_point(spec.pieces()[i % spec.size()], 0.3) + Point{1e-3, 0}
                                   : testing_support::uniform_in(box);
            const double oracle = testing_support::sampled_distance(pts, z);
            const auto d = idx.distance(z);
            CHECK(d.lower <= oracle + 1e-12);
            CHECK(d.upper >= oracle - slack);
            CHECK(d.width() <= max_lip * idx.sample_spacing());
        }
    }
}

TEST_CASE("exact pieces give zero-width enclosures") {
    const CarrierIndex idx(fixtures::rounded_square());
    for (int i = 0; i < 200; ++i) {
        const auto d = idx.distance(testing_support::uniform_in({{-3, -3}, {3, 3}}));
        CHECK(d.width() <= 1e-12);
    }
}

TEST_CASE("transform_curve examples") {
    const JordanCurve circle = validate_jordan(fixtures::circle(), 1e-3);

    const JordanCurve big = transform_curve(circle, AffineMap::scaling(2));
    CHECK_THAT(big.carrier_distance({0, 0}).lower, WithinAbs(2.0, 1e-12));

    // Reflection reverses orientation: the signed area flips sign.
    auto signed_area = [](const CurveSpec& s) {
        const auto pts = testing_support::dense_polyline(s, 2000);
        double a = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) a += cross(pts[i], pts[(i + 1) % pts.size()]);
        return a / 2;
    };
    const JordanCurve mirrored = transform_curve(circle, AffineMap::reflection_x());
    CHECK(signed_area(circle.spec()) > 3.1);
    CHECK(signed_area(mirrored.spec()) < -3.1);

    const JordanCurve sq = validate_jordan(reparametrize(unit_square(), 0, 4), 1e-3);
    const AffineMap rot = AffineMap::rotation(kPi / 4);
    const JordanCurve diamond = transform_curve(sq, rot);
    for (int i = 0; i <= 100; ++i) {
        const double t = 4.0 * i / 100;
        check_same_point(diamond.spec().eval(t), rot(sq.spec().eval(t)), 1e-15);
    }
    check_same_point(diamond.spec().eval(2.0), {0, std::sqrt(2.0)}, 1e-15);
}

TEST_CASE("transform_curve maps carrier samples on every fixture") {
    const AffineMap shear(1.3, 0.4, -0.2, 0.9, {0.5, -1});
    const AffineMap similar = AffineMap::rotation(0.7, {1, 2}).then_after(AffineMap::scaling(1.7));
    for (const auto& [name, spec] : fixtures::jordan_fixtures()) {
        const JordanCurve jc = validate_jordan(spec, 1e-3);
        bool has_arc = false;
        for (const auto& p : spec.pieces()) has_arc |= p.kind() == PieceKind::Arc;
        const AffineMap& m = has_arc ? similar : shear;
        const JordanCurve image = transform_curve(jc, m);
        INFO(name);
        for (int i = 0; i <= 200; ++i) {
            const double t = spec.a() + spec.span() * i / 200;
            CHECK(distance(image.spec().eval(t), m(spec.eval(t))) < 1e-12 * (1 + norm(m(spec.eval(t)))));
        }
        if (has_arc) CHECK_THROWS_AS(transform_curve(jc, shear), InvalidArgument);
    }
    const JordanCurve circle = validate_jordan(fixtures::circle(), 1e-3);
    CHECK_THROWS_AS(transform_curve(circle, AffineMap(1, 2, 2, 4)), InvalidArgument);
}

TEST_CASE("affine map algebra") {
    const AffineMap m(1.3, 0.4, -0.2, 0.9, {0.5, -1});
    const AffineMap inv = m.inverse();
    const Point p{0.3, -2.2};
    check_same_point(inv(m(p)), p, 1e-14);
    check_same_point(m.then_after(inv)(p), p, 1e-14);
    CHECK(AffineMap::rotation(0.3).conformal());
    CHECK(AffineMap::reflection_x().conformal());
    CHECK_FALSE(m.conformal());
    CHECK(AffineMap::reflection_x().det() == -1.0);
}

TEST_CASE("curve construction invariants") {
    CHECK_THROWS_AS(CurveSpec(std::vector<SegmentPiece>{}), InvalidArgument);
    CHECK_THROWS_AS(CurveSpec({SegmentPiece::line({0, 0}, {1, 0}), SegmentPiece::line({1, 1e-6}, {0, 0})}),
                    InvalidArgument);
    CHECK_NOTHROW(CurveSpec({SegmentPiece::line({0, 0}, {1, 0}), SegmentPiece::line({1, 1e-10}, {0, 0})}));
    CHECK_THROWS_AS(SegmentPiece::arc({0, 0}, -1, 0, 1), InvalidArgument);
    CHECK_THROWS_AS(SegmentPiece::arc({0, 0}, 1, 0, 7), InvalidArgument);
    CHECK_THROWS_AS(SegmentPiece::arc({0, 0}, 1, 0, 0), InvalidArgument);
    CHECK_THROWS_AS(CurveSpec({SegmentPiece::line({0, 0}, {1, 0})}, {1.0, 1.0}), InvalidArgument);
}
