#pragma once

// jordan command-line front end. Exit codes: 0 ok, 1 usage or runtime
// error, 2 validation failure, 3 parse error, 4 oracle disagreement.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jordan/jordan.hpp"

namespace jordan::cli {

enum ExitCode : int { kOk = 0, kError = 1, kValidation = 2, kParse = 3, kDisagreement = 4 };

inline std::vector<double> parse_numbers(const std::string& text, std::size_t count, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw InvalidArgument(std::string("bad number in ") + what + ": '" + tok + "'");
        }
    }
    if (out.size() != count)
        throw InvalidArgument(std::string(what) + " expects " + std::to_string(count) + " comma-separated numbers");
    return out;
}

inline Point parse_point(const std::string& text) {
    const auto v = parse_numbers(text, 2, "point");
    return {v[0], v[1]};
}

inline GridRequest parse_grid(const std::string& box, const std::string& size, double eps_band, double tol) {
    const auto b = parse_numbers(box, 4, "grid box");
    GridRequest req;
    req.box.expand(Point{b[0], b[1]});
    req.box.expand(Point{b[2], b[3]});
    const auto x = size.find_first_of("xX");
    if (x == std::string::npos) throw InvalidArgument("grid size must look like NxM");
    try {
        req.nx = std::stoi(size.substr(0, x));
        req.ny = std::stoi(size.substr(x + 1));
    } catch (const std::exception&) {
        throw InvalidArgument("grid size must look like NxM");
    }
    req.eps_band = eps_band;
    req.tol = tol;
    req.check();
    return req;
}

inline std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

inline nlohmann::json classification_json(const Point& p, const Classification& c) {
    nlohmann::json j{{"point", {p.x, p.y}},
                     {"verdict", to_string(c.verdict)},
                     {"carrier_distance", {c.carrier.lower, c.carrier.upper}}};
    if (c.winding)
        j["winding"] = {{"rounded", c.winding->rounded},
                        {"integral", {c.winding->integral.real(), c.winding->integral.imag()}},
                        {"residual", c.winding->residual},
                        {"error_budget", c.winding->error_budget}};
    if (c.crossing) j["parity"] = {{"index", c.crossing->index}, {"crossings", c.crossing->crossings.size()}};
    return j;
}

inline void print_validation(std::ostream& out, const JordanCurve& jc) {
    const auto& j1 = jc.j1();
    out << "closure: ok\n";
    out << "pieces: " << jc.spec().size() << ", parameter interval [" << jc.spec().a() << ", " << jc.spec().b()
        << "]\n";
    out << "J1: resolution " << j1.resolution << ", samples " << j1.samples << ", sample spacing "
        << j1.sample_spacing << ", min gap " << j1.min_gap << " (t = " << j1.gap_t << ", t' = " << j1.gap_s
        << "), edge clearance " << j1.edge_clearance << " >= " << j1.edge_threshold << "\n";
    out << "J2: eps -> delta\n";
    for (const auto& e : jc.j2()) out << "  " << e.epsilon << " -> " << e.delta << "\n";
    for (std::size_t k = 0; k < jc.smooth().size(); ++k) {
        const auto& s = jc.smooth()[k];
        out << "piece " << k << ": " << (s.smooth ? "smooth" : "not certified smooth") << ", m_k = " << s.lower
            << ", sup |gamma'| <= " << s.upper << "\n";
    }
    out << "M: " << jc.deriv_sup() << "\n";
    out << "outer radius: " << outer_radius(jc) << "\n";
}

class Runner {
public:
    Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int run(int argc, const char* const* argv) {
        CLI::App app{"Jordan curve classification: validation, winding numbers, ray parity, joins, rendering"};
        app.require_subcommand(1);

        std::string spec_path;
        double resolution = 1e-3;
        bool allow_nonsmooth = false;
        double eps_band = -1.0, tol = kDefaultClassifyTol;
        std::string point, grid_box, grid_size = "100x100", out_path, format = "csv";
        std::string from, to;
        double clearance = 0.05, cell = 0.02;
        std::string svg_path;
        int witnesses = 0;

        auto add_common = [&](CLI::App* sub) {
            sub->add_option("spec", spec_path, "curve-spec JSON file")->required();
            sub->add_option("--resolution", resolution, "parameter sample resolution h for validation");
            sub->add_flag("--allow-nonsmooth", allow_nonsmooth, "accept pieces without a derivative lower bound");
        };

        auto* validate = app.add_subcommand("validate", "check the Jordan conditions and print the certificates");
        add_common(validate);

        auto* classify_cmd = app.add_subcommand(
            "classify", "classify a point or a grid; grid CSV is row-major from ymin with header x,y,verdict,winding");
        add_common(classify_cmd);
        auto* point_opt = classify_cmd->add_option("--point", point, "x,y");
        auto* grid_opt = classify_cmd->add_option("--grid", grid_box, "xmin,ymin,xmax,ymax");
        point_opt->excludes(grid_opt);
        classify_cmd->add_option("--size", grid_size, "grid resolution NxM (columns x rows)");
        classify_cmd->add_option("--out", out_path, "output file (default stdout)");
        classify_cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        classify_cmd->add_option("--eps-band", eps_band, "near-carrier band (default 1e-6 * diameter)");
        classify_cmd->add_option("--tol", tol, "winding quadrature tolerance");

        auto* winding_cmd = app.add_subcommand("winding", "evaluate the winding-number integral");
        add_common(winding_cmd);
        winding_cmd->add_option("--point", point, "x,y")->required();
        winding_cmd->add_option("--tol", tol, "quadrature tolerance");

        auto* join_cmd = app.add_subcommand("join", "polygonal join bounded away from the carrier");
        add_common(join_cmd);
        join_cmd->add_option("--from", from, "x,y")->required();
        join_cmd->add_option("--to", to, "x,y")->required();
        join_cmd->add_option("--clearance", clearance, "minimum carrier distance along the join");
        join_cmd->add_option("--cell", cell, "grid cell size");

        auto* render_cmd = app.add_subcommand("render", "write an SVG drawing of the curve");
        add_common(render_cmd);
        render_cmd->add_option("--svg", svg_path, "output SVG path")->required();
        render_cmd->add_option("--grid", grid_box, "classification underlay box xmin,ymin,xmax,ymax");
        render_cmd->add_option("--size", grid_size, "underlay resolution NxM");
        render_cmd->add_option("--join-from", from, "join overlay start x,y");
        render_cmd->add_option("--join-to", to, "join overlay end x,y");
        render_cmd->add_option("--clearance", clearance, "join clearance");
        render_cmd->add_option("--cell", cell, "join grid cell size");
        render_cmd->add_option("--witnesses", witnesses, "number of boundary witness pairs to overlay");

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e, out_, err_);
            return code == 0 ? kOk : kError;
        }

        std::optional<CurveSpec> spec;
        try {
            spec = load_curve_spec(spec_path);
        } catch (const ParseError& e) {
            err_ << "parse error at " << e.position() << ": " << e.what() << "\n";
            return kParse;
        } catch (const Error& e) {
            err_ << e.what() << "\n";
            return kError;
        }

        try {
            const JordanCurve jc = validate_jordan(*spec, resolution, !allow_nonsmooth);
            if (*validate) {
                print_validation(out_, jc);
                return kOk;
            }
            if (*classify_cmd) return classify(jc, point, grid_box, grid_size, out_path, format, eps_band, tol);
            if (*winding_cmd) {
                const WindingResult w = winding_number(jc, parse_point(point), tol);
                out_ << "integral: " << fmt(w.integral.real()) << " + " << fmt(w.integral.imag()) << "i\n"
                     << "rounded: " << w.rounded << "\nresidual: " << w.residual << "\nerror_budget: "
                     << w.error_budget << "\nchords: " << w.chords << "\n";
                return kOk;
            }
            if (*join_cmd) {
                const JoinResult r = polygonal_join(jc, parse_point(from), parse_point(to), clearance, cell);
                nlohmann::json j{{"found", r.found()},
                                 {"from_verdict", to_string(r.from.verdict)},
                                 {"to_verdict", to_string(r.to.verdict)}};
                if (r.join) {
                    nlohmann::json verts = nlohmann::json::array();
                    for (const auto& v : r.join->vertices) verts.push_back({v.x, v.y});
                    j["vertices"] = verts;
                    j["gap"] = r.join->gap;
                    j["clearance"] = r.join->clearance;
                } else {
                    j["result"] = "NoPathAtResolution";
                }
                out_ << j.dump(2) << "\n";
                return kOk;
            }
            if (*render_cmd) return render(jc, svg_path, grid_box, grid_size, from, to, clearance, cell, witnesses, tol);
        } catch (const ValidationFailure& e) {
            err_ << to_string(e.kind()) << ": " << e.what() << "\n";
            if (e.witness)
                err_ << "witness: t = " << fmt(e.witness->first) << ", t' = " << fmt(e.witness->second)
                     << ", chord = " << e.chord << "\n";
            return kValidation;
        } catch (const OracleDisagreement& e) {
            err_ << "OracleDisagreement: " << e.what() << "\n";
            return kDisagreement;
        } catch (const PointTooClose& e) {
            err_ << "NearCarrier: " << e.what() << "\n";
            return kError;
        } catch (const Error& e) {
            err_ << e.what() << "\n";
            return kError;
        }
        return kError;
    }

private:
    int classify(const JordanCurve& jc, const std::string& point, const std::string& grid_box,
                 const std::string& grid_size, const std::string& out_path, const std::string& format,
                 double eps_band, double tol) {
        if (point.empty() == grid_box.empty()) throw InvalidArgument("classify needs exactly one of --point or --grid");
        std::ofstream file;
        if (!out_path.empty()) {
            file.open(out_path);
            if (!file) throw Error("cannot write " + out_path);
        }
        std::ostream& dst = out_path.empty() ? out_ : file;
        if (!point.empty()) {
            const Point p = parse_point(point);
            const Classification c = jordan::classify(jc, p, eps_band, tol);
            if (format == "json") {
                dst << classification_json(p, c).dump(2) << "\n";
            } else {
                dst << "verdict: " << to_string(c.verdict) << "\n";
                dst << "carrier distance: [" << fmt(c.carrier.lower) << ", " << fmt(c.carrier.upper) << "]\n";
                if (c.winding) dst << "winding: " << c.winding->rounded << "\n";
                if (c.crossing) dst << "parity: " << c.crossing->index << "\n";
            }
            return kOk;
        }
        const GridResult g = classify_grid(jc, parse_grid(grid_box, grid_size, eps_band, tol));
        if (format == "json") dst << grid_to_json(g).dump() << "\n";
        else write_grid_csv(dst, g);
        return kOk;
    }

    int render(const JordanCurve& jc, const std::string& svg_path, const std::string& grid_box,
               const std::string& grid_size, const std::string& from, const std::string& to, double clearance,
               double cell, int witnesses, double tol) {
        SvgOverlays overlays;
        if (!grid_box.empty()) overlays.grid = classify_grid(jc, parse_grid(grid_box, grid_size, -1.0, tol));
        if (!from.empty() || !to.empty()) {
            const JoinResult r = polygonal_join(jc, parse_point(from), parse_point(to), clearance, cell);
            if (r.join) overlays.joins.push_back(r.join->vertices);
            else err_ << "join: NoPathAtResolution\n";
        }
        for (int k = 0; k < witnesses; ++k) {
            const auto& spec = jc.spec();
            const std::size_t piece = static_cast<std::size_t>(k) % spec.size();
            const double u = (0.5 + static_cast<double>(k / static_cast<int>(spec.size()))) /
                             (1.0 + static_cast<double>((witnesses - 1) / static_cast<int>(spec.size())));
            const auto w = boundary_witnesses(jc, spec.global_parameter(piece, u), 0.05 * jc.diameter());
            overlays.inside_points.push_back(w.inside);
            overlays.outside_points.push_back(w.outside);
        }
        std::ofstream file(svg_path);
        if (!file) throw Error("cannot write " + svg_path);
        file << render_svg(jc.spec(), overlays);
        return kOk;
    }

    std::ostream& out_;
    std::ostream& err_;
};

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    return Runner(out, err).run(argc, argv);
}

}  // namespace jordan::cli
