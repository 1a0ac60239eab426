#pragma once

// SVG output. Curve pieces map to native path commands (L, A, C); the
// source curve-spec JSON is retained in <metadata> so a drawing can be
// re-ingested without loss.

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "jordan/curve_json.hpp"
#include "jordan/grid.hpp"

namespace jordan {

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

inline std::string pt(const Point& p) { return fmt(p.x) + "," + fmt(p.y); }

inline const char* kMetadataOpen = "<metadata id=\"curve-spec\"><![CDATA[";
inline const char* kMetadataClose = "]]></metadata>";

}  // namespace detail

/// Path data for the carrier in curve coordinates (y up); one subpath.
inline std::string svg_path_data(const CurveSpec& curve) {
    std::ostringstream d;
    d << "M " << detail::pt(curve.start());
    for (const auto& piece : curve.pieces()) {
        switch (piece.kind()) {
        case PieceKind::Line:
            d << " L " << detail::pt(piece.end());
            break;
        case PieceKind::Arc: {
            // SVG arcs are endpoint-based; split so each part sweeps at most pi.
            const auto& a = piece.as<ArcPiece>();
            const int parts = std::max(1, static_cast<int>(std::ceil(std::abs(a.sweep) / std::numbers::pi - 1e-12)));
            for (int k = 1; k <= parts; ++k) {
                const Point end = a.point(static_cast<double>(k) / parts);
                d << " A " << detail::fmt(a.radius) << ' ' << detail::fmt(a.radius) << " 0 0 " << (a.sweep > 0 ? 1 : 0)
                  << ' ' << detail::pt(end);
            }
            break;
        }
        case PieceKind::Cubic: {
            const auto& c = piece.as<CubicPiece>();
            d << " C " << detail::pt(c.ctrl[1]) << ' ' << detail::pt(c.ctrl[2]) << ' ' << detail::pt(c.ctrl[3]);
            break;
        }
        }
    }
    if (curve.closed()) d << " Z";
    return d.str();
}

struct SvgOverlays {
    std::optional<GridResult> grid;
    std::vector<std::vector<Point>> joins;
    std::vector<Point> inside_points;
    std::vector<Point> outside_points;
};

inline std::string render_svg(const CurveSpec& curve, const SvgOverlays& overlays = {}) {
    BoundingBox view = curve.bbox();
    if (overlays.grid) view.expand(overlays.grid->request.box);
    for (const auto& j : overlays.joins)
        for (const auto& p : j) view.expand(p);
    const double margin = 0.05 * std::max(view.width(), view.height());
    view = view.inflated(margin);
    const double stroke = 0.004 * std::max(view.width(), view.height());

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << detail::fmt(view.lo.x) << ' '
       << detail::fmt(-view.hi.y) << ' ' << detail::fmt(view.width()) << ' ' << detail::fmt(view.height())
       << "\" width=\"800\" height=\"" << static_cast<int>(800 * view.height() / view.width()) << "\">\n";
    os << detail::kMetadataOpen << curve_to_json(curve).dump() << detail::kMetadataClose << "\n";
    os << "<g transform=\"scale(1,-1)\">\n";
    if (overlays.grid) {
        const auto& g = *overlays.grid;
        const auto& r = g.request;
        const double w = r.box.width() / r.nx, h = r.box.height() / r.ny;
        os << "<g id=\"classification\" stroke=\"none\">\n";
        for (int j = 0; j < r.ny; ++j)
            for (int i = 0; i < r.nx; ++i) {
                const int code = g.code(i, j);
                const char* fill = code == 1 ? "#9ecae1" : code == 0 ? "#f0f0f0" : "#e6550d";
                os << "<rect x=\"" << detail::fmt(r.box.lo.x + i * w) << "\" y=\"" << detail::fmt(r.box.lo.y + j * h)
                   << "\" width=\"" << detail::fmt(w) << "\" height=\"" << detail::fmt(h) << "\" fill=\"" << fill
                   << "\"/>\n";
            }
        os << "</g>\n";
    }
    os << "<path id=\"curve\" fill=\"none\" stroke=\"#08306b\" stroke-width=\"" << detail::fmt(stroke) << "\" d=\""
       << svg_path_data(curve) << "\"/>\n";
    for (const auto& join : overlays.joins) {
        os << "<polyline class=\"join\" fill=\"none\" stroke=\"#31a354\" stroke-width=\"" << detail::fmt(stroke)
           << "\" points=\"";
        for (std::size_t k = 0; k < join.size(); ++k) os << (k ? " " : "") << detail::pt(join[k]);
        os << "\"/>\n";
    }
    for (const auto& p : overlays.inside_points)
        os << "<circle class=\"witness-in\" cx=\"" << detail::fmt(p.x) << "\" cy=\"" << detail::fmt(p.y) << "\" r=\""
           << detail::fmt(2 * stroke) << "\" fill=\"#3182bd\"/>\n";
    for (const auto& p : overlays.outside_points)
        os << "<circle class=\"witness-out\" cx=\"" << detail::fmt(p.x) << "\" cy=\"" << detail::fmt(p.y) << "\" r=\""
           << detail::fmt(2 * stroke) << "\" fill=\"#de2d26\"/>\n";
    os << "</g>\n</svg>\n";
    return os.str();
}

/// Recovers the curve spec retained in an SVG produced by render_svg.
inline CurveSpec curve_from_svg(const std::string& svg) {
    const auto open = svg.find(detail::kMetadataOpen);
    if (open == std::string::npos) throw ParseError("SVG carries no curve-spec metadata", "metadata");
    const auto start = open + std::string(detail::kMetadataOpen).size();
    const auto close = svg.find(detail::kMetadataClose, start);
    if (close == std::string::npos) throw ParseError("unterminated curve-spec metadata", "metadata");
    return parse_curve_spec(svg.substr(start, close - start));
}

}  // namespace jordan
