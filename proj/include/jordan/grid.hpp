#pragma once

// Raster classification over a box, sampled at cell centers, row-major from ymin.

#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "jordan/classify.hpp"
#include "jordan/parallel.hpp"

namespace jordan {

struct GridRequest {
    BoundingBox box;
    int nx = 2;  ///< columns (x)
    int ny = 2;  ///< rows (y)
    double eps_band = -1.0;
    double tol = kDefaultClassifyTol;

    void check() const {
        if (nx < 2 || ny < 2) throw InvalidArgument("grid resolution must be at least 2x2");
        if (box.empty() || !(box.width() > 0.0) || !(box.height() > 0.0)) throw InvalidArgument("grid box is degenerate");
    }
    Point cell_center(int i, int j) const {
        return {box.lo.x + (i + 0.5) * box.width() / nx, box.lo.y + (j + 0.5) * box.height() / ny};
    }
};

struct GridResult {
    GridRequest request;
    std::vector<int> codes;                  ///< 1 Inside, 0 Outside, -1 NearCarrier
    std::vector<std::optional<int>> winding;  ///< signed winding where computed

    int code(int i, int j) const { return codes[static_cast<std::size_t>(j) * request.nx + i]; }
    double inside_fraction() const {
        std::size_t in = 0;
        for (int c : codes) in += c == 1;
        return static_cast<double>(in) / static_cast<double>(codes.size());
    }
};

/// Cells are classified in parallel; results land in fixed slots so the
/// output does not depend on the thread count.
inline GridResult classify_grid(const JordanCurve& jc, const GridRequest& req, unsigned threads = 0) {
    req.check();
    GridResult out;
    out.request = req;
    const std::size_t n = static_cast<std::size_t>(req.nx) * req.ny;
    out.codes.resize(n);
    out.winding.resize(n);
    ClassifyOptions opts;
    opts.eps_band = req.eps_band;
    opts.tol = req.tol;

    parallel_for(
        n,
        [&](std::size_t k) {
            const int i = static_cast<int>(k % req.nx), j = static_cast<int>(k / req.nx);
            const Classification c = classify(jc, req.cell_center(i, j), opts);
            out.codes[k] = verdict_code(c.verdict);
            if (c.winding) out.winding[k] = c.winding->rounded;
        },
        threads);
    return out;
}

inline void write_grid_csv(std::ostream& os, const GridResult& g) {
    os << "x,y,verdict,winding\n";
    os << std::setprecision(17);
    for (int j = 0; j < g.request.ny; ++j)
        for (int i = 0; i < g.request.nx; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * g.request.nx + i;
            const Point p = g.request.cell_center(i, j);
            os << p.x << ',' << p.y << ',' << g.codes[k] << ',';
            if (g.winding[k]) os << *g.winding[k];
            os << '\n';
        }
}

inline nlohmann::json grid_to_json(const GridResult& g) {
    nlohmann::json w = nlohmann::json::array();
    for (const auto& v : g.winding) w.push_back(v ? nlohmann::json(*v) : nlohmann::json(nullptr));
    const auto& r = g.request;
    return {{"box", {r.box.lo.x, r.box.lo.y, r.box.hi.x, r.box.hi.y}},
            {"nx", r.nx},
            {"ny", r.ny},
            {"order", "row-major from ymin"},
            {"verdict", g.codes},
            {"winding", w}};
}

}  // namespace jordan
