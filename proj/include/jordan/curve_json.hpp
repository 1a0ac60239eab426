#pragma once

// Curve-spec JSON:
//   {"pieces": [
//     {"type": "line", "from": [x, y], "to": [x, y]},
//     {"type": "arc", "center": [x, y], "radius": r, "start_angle": a0, "sweep": s},
//     {"type": "cubic", "points": [[x, y], [x, y], [x, y], [x, y]]}]}
// Angles are radians; piece k is parametrized on [k, k + 1].

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "jordan/curve.hpp"
#include "jordan/errors.hpp"

namespace jordan {

/// Malformed curve-spec text; `position` is a byte offset or a JSON pointer.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::string position) : Error(what), position_(std::move(position)) {}
    const std::string& position() const { return position_; }

private:
    std::string position_;
};

namespace detail {

using nlohmann::json;

inline double json_number(const json& j, const std::string& where) {
    if (!j.is_number()) throw ParseError("expected a number", where);
    return j.get<double>();
}

inline Point json_point(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) throw ParseError("expected [x, y]", where);
    return {json_number(j[0], where + "/0"), json_number(j[1], where + "/1")};
}

inline const json& json_field(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(std::string("missing field \"") + key + "\"", where);
    return *it;
}

}  // namespace detail

inline CurveSpec curve_from_json(const nlohmann::json& doc) {
    using detail::json_field;
    if (!doc.is_object()) throw ParseError("curve spec must be a JSON object", "");
    const auto& arr = json_field(doc, "pieces", "");
    if (!arr.is_array() || arr.empty()) throw ParseError("\"pieces\" must be a non-empty array", "/pieces");
    std::vector<SegmentPiece> pieces;
    for (std::size_t k = 0; k < arr.size(); ++k) {
        const std::string at = "/pieces/" + std::to_string(k);
        const auto& p = arr[k];
        if (!p.is_object()) throw ParseError("piece must be an object", at);
        const auto& type = json_field(p, "type", at);
        if (!type.is_string()) throw ParseError("\"type\" must be a string", at + "/type");
        const std::string t = type.get<std::string>();
        try {
            if (t == "line") {
                pieces.push_back(SegmentPiece::line(detail::json_point(json_field(p, "from", at), at + "/from"),
                                                    detail::json_point(json_field(p, "to", at), at + "/to")));
            } else if (t == "arc") {
                pieces.push_back(SegmentPiece::arc(
                    detail::json_point(json_field(p, "center", at), at + "/center"),
                    detail::json_number(json_field(p, "radius", at), at + "/radius"),
                    detail::json_number(json_field(p, "start_angle", at), at + "/start_angle"),
                    detail::json_number(json_field(p, "sweep", at), at + "/sweep")));
            } else if (t == "cubic") {
                const auto& pts = json_field(p, "points", at);
                if (!pts.is_array() || pts.size() != 4) throw ParseError("cubic needs 4 points", at + "/points");
                std::array<Point, 4> ctrl;
                for (std::size_t i = 0; i < 4; ++i)
                    ctrl[i] = detail::json_point(pts[i], at + "/points/" + std::to_string(i));
                pieces.push_back(SegmentPiece::cubic(ctrl));
            } else {
                throw ParseError("unknown piece type \"" + t + "\"", at + "/type");
            }
        } catch (const InvalidArgument& e) {
            throw ParseError(e.what(), at);
        }
    }
    try {
        return CurveSpec(std::move(pieces));
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what(), "/pieces");
    }
}

inline CurveSpec parse_curve_spec(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), "byte " + std::to_string(e.byte));
    }
    return curve_from_json(doc);
}

inline CurveSpec load_curve_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_curve_spec(ss.str());
}

inline nlohmann::json curve_to_json(const CurveSpec& curve) {
    nlohmann::json pieces = nlohmann::json::array();
    auto pt = [](const Point& p) { return nlohmann::json::array({p.x, p.y}); };
    for (const auto& piece : curve.pieces()) {
        switch (piece.kind()) {
        case PieceKind::Line: {
            const auto& l = piece.as<LinePiece>();
            pieces.push_back({{"type", "line"}, {"from", pt(l.from)}, {"to", pt(l.to)}});
            break;
        }
        case PieceKind::Arc: {
            const auto& a = piece.as<ArcPiece>();
            pieces.push_back({{"type", "arc"},
                              {"center", pt(a.center)},
                              {"radius", a.radius},
                              {"start_angle", a.start_angle},
                              {"sweep", a.sweep}});
            break;
        }
        case PieceKind::Cubic: {
            const auto& c = piece.as<CubicPiece>();
            pieces.push_back({{"type", "cubic"},
                              {"points", nlohmann::json::array({pt(c.ctrl[0]), pt(c.ctrl[1]), pt(c.ctrl[2]), pt(c.ctrl[3])})}});
            break;
        }
        }
    }
    return {{"pieces", pieces}};
}

}  // namespace jordan
