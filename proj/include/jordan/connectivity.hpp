#pragma once

// Polygonal joins bounded away from the carrier. A found join certifies that
// both endpoints lie in the same component; NoPathAtResolution is only
// evidence, the index oracles decide the other branch.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "jordan/classify.hpp"
#include "jordan/jordan_curve.hpp"
#include "jordan/parallel.hpp"

namespace jordan {

/// Minimum carrier-distance lower bound over `n_samples` evenly spaced points per edge.
inline double path_carrier_gap(const JordanCurve& jc, std::span<const Point> polyline, int n_samples) {
    if (polyline.empty()) throw InvalidArgument("path_carrier_gap: empty polyline");
    n_samples = std::max(n_samples, 2);
    double gap = jc.carrier_distance(polyline.front()).lower;
    for (std::size_t e = 0; e + 1 < polyline.size(); ++e) {
        for (int i = 1; i < n_samples; ++i) {
            const Point p = lerp(polyline[e], polyline[e + 1], static_cast<double>(i) / (n_samples - 1));
            gap = std::min(gap, jc.carrier_distance(p).lower);
        }
    }
    return gap;
}

/// True when every point of [a, b] is certified at carrier distance >= clearance,
/// using that the distance function is 1-Lipschitz.
inline bool segment_clear(const JordanCurve& jc, const Point& a, const Point& b, double clearance, int depth = 0) {
    const Point m = lerp(a, b, 0.5);
    const double half = distance(a, b) / 2.0;
    const double lower = jc.carrier_distance(m).lower;
    if (lower >= clearance + half) return true;
    if (lower < clearance || depth >= 30) return false;
    return segment_clear(jc, a, m, clearance, depth + 1) && segment_clear(jc, m, b, clearance, depth + 1);
}

/// Cells whose whole closed area is certified at carrier distance >= clearance.
class ClearanceGrid {
public:
    ClearanceGrid(const JordanCurve& jc, const BoundingBox& box, double clearance, double h)
        : box_(box), clearance_(clearance), h_(h) {
        if (!(h > 0.0) || !(clearance > 0.0)) throw InvalidArgument("clearance and cell size must be positive");
        if (box.empty() || !(box.width() > 0.0) || !(box.height() > 0.0))
            throw InvalidArgument("clearance grid box is degenerate");
        nx_ = static_cast<int>(std::ceil(box.width() / h));
        ny_ = static_cast<int>(std::ceil(box.height() / h));
        free_.assign(static_cast<std::size_t>(nx_) * ny_, 0);
        const double need = clearance + h * std::numbers::sqrt2 / 2.0;
        parallel_for(free_.size(), [&](std::size_t k) {
            const int i = static_cast<int>(k % nx_), j = static_cast<int>(k / nx_);
            free_[k] = jc.carrier_distance(center(i, j)).lower >= need;
        });
    }

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double cell_size() const { return h_; }
    double clearance() const { return clearance_; }
    const BoundingBox& box() const { return box_; }
    Point center(int i, int j) const { return box_.lo + Point{(i + 0.5) * h_, (j + 0.5) * h_}; }
    bool inside(int i, int j) const { return i >= 0 && j >= 0 && i < nx_ && j < ny_; }
    bool free(int i, int j) const { return inside(i, j) && free_[index(i, j)]; }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx_ + i; }
    std::optional<std::pair<int, int>> cell_of(const Point& p) const {
        const int i = static_cast<int>(std::floor((p.x - box_.lo.x) / h_));
        const int j = static_cast<int>(std::floor((p.y - box_.lo.y) / h_));
        if (!inside(i, j)) return std::nullopt;
        return std::make_pair(i, j);
    }

    /// Conservative traversal: true only if every cell the segment meets is free.
    bool segment_free(const Point& a, const Point& b) const {
        const double ax = (a.x - box_.lo.x) / h_, ay = (a.y - box_.lo.y) / h_;
        const double bx = (b.x - box_.lo.x) / h_, by = (b.y - box_.lo.y) / h_;
        int i = static_cast<int>(std::floor(ax)), j = static_cast<int>(std::floor(ay));
        const int ie = static_cast<int>(std::floor(bx)), je = static_cast<int>(std::floor(by));
        const int di = bx > ax ? 1 : bx < ax ? -1 : 0;
        const int dj = by > ay ? 1 : by < ay ? -1 : 0;
        constexpr double inf = std::numeric_limits<double>::infinity();
        const double tdx = di ? 1.0 / std::abs(bx - ax) : inf;
        const double tdy = dj ? 1.0 / std::abs(by - ay) : inf;
        double tx = di > 0 ? (i + 1 - ax) * tdx : di < 0 ? (ax - i) * tdx : inf;
        double ty = dj > 0 ? (j + 1 - ay) * tdy : dj < 0 ? (ay - j) * tdy : inf;
        for (int guard = 0; guard < 4 * (nx_ + ny_) + 8; ++guard) {
            if (!free(i, j)) return false;
            if (i == ie && j == je) return true;
            if (std::abs(tx - ty) <= 1e-12) {
                if (!free(i + di, j) || !free(i, j + dj)) return false;
                i += di;
                j += dj;
                tx += tdx;
                ty += tdy;
            } else if (tx < ty) {
                i += di;
                tx += tdx;
            } else {
                j += dj;
                ty += tdy;
            }
            if (std::min(tx, ty) > 1.0 + 1e-12 && (i != ie || j != je)) return free(ie, je) && free(i, j);
        }
        return false;
    }

private:
    BoundingBox box_;
    double clearance_;
    double h_;
    int nx_ = 0, ny_ = 0;
    std::vector<std::uint8_t> free_;
};

struct PolygonalJoin {
    std::vector<Point> vertices;
    double clearance = 0.0;
    double gap = 0.0;  ///< path_carrier_gap of the vertices at construction
};

struct JoinResult {
    std::optional<PolygonalJoin> join;  ///< empty: NoPathAtResolution
    Classification from;
    Classification to;

    bool found() const { return join.has_value(); }
    bool same_verdict() const { return from.verdict == to.verdict; }
};

inline constexpr int kGapSamplesPerEdge = 64;

namespace detail {

/// Free cells near z reachable from z by a certified straight segment.
inline std::vector<std::pair<int, int>> anchor_cells(const JordanCurve& jc, const ClearanceGrid& grid, const Point& z) {
    std::vector<std::pair<int, int>> out;
    const auto home = grid.cell_of(z);
    if (!home) return out;
    if (grid.free(home->first, home->second)) {
        out.push_back(*home);
        return out;
    }
    for (int dj = -2; dj <= 2; ++dj)
        for (int di = -2; di <= 2; ++di) {
            const int i = home->first + di, j = home->second + dj;
            if (grid.free(i, j) && segment_clear(jc, z, grid.center(i, j), grid.clearance())) out.emplace_back(i, j);
        }
    return out;
}

}  // namespace detail

/// Breadth-first search over 8-connected free cells, then greedy string pulling.
inline JoinResult polygonal_join(const JordanCurve& jc, const ClearanceGrid& grid, const Point& z1, const Point& z2,
                                 const ClassifyOptions& opts = {}) {
    const double c = grid.clearance(), h = grid.cell_size();
    for (const Point& z : {z1, z2})
        if (jc.carrier_distance(z).lower < c + h)
            throw InvalidArgument("join endpoints must have carrier distance >= clearance + cell size");

    JoinResult result;
    result.from = classify(jc, z1, opts);
    result.to = classify(jc, z2, opts);

    const auto starts = detail::anchor_cells(jc, grid, z1);
    const auto goals = detail::anchor_cells(jc, grid, z2);
    if (starts.empty() || goals.empty()) return result;

    const std::size_t cells = static_cast<std::size_t>(grid.nx()) * grid.ny();
    constexpr std::uint32_t kUnseen = 0xffffffffu, kRoot = 0xfffffffeu;
    std::vector<std::uint32_t> parent(cells, kUnseen);
    std::vector<std::uint8_t> goal(cells, 0);
    for (const auto& [i, j] : goals) goal[grid.index(i, j)] = 1;
    std::deque<std::uint32_t> queue;
    for (const auto& [i, j] : starts) {
        parent[grid.index(i, j)] = kRoot;
        queue.push_back(static_cast<std::uint32_t>(grid.index(i, j)));
    }
    std::optional<std::uint32_t> hit;
    while (!queue.empty() && !hit) {
        const std::uint32_t cur = queue.front();
        queue.pop_front();
        if (goal[cur]) {
            hit = cur;
            break;
        }
        const int ci = static_cast<int>(cur % grid.nx()), cj = static_cast<int>(cur / grid.nx());
        for (int dj = -1; dj <= 1; ++dj)
            for (int di = -1; di <= 1; ++di) {
                if (!di && !dj) continue;
                const int ni = ci + di, nj = cj + dj;
                if (!grid.free(ni, nj)) continue;
                const auto id = static_cast<std::uint32_t>(grid.index(ni, nj));
                if (parent[id] != kUnseen) continue;
                parent[id] = cur;
                queue.push_back(id);
            }
    }
    if (!hit) return result;

    std::vector<Point> chain;
    for (std::uint32_t cur = *hit; cur != kRoot; cur = parent[cur])
        chain.push_back(grid.center(static_cast<int>(cur % grid.nx()), static_cast<int>(cur / grid.nx())));
    std::reverse(chain.begin(), chain.end());

    // String pulling over cell centers; every kept edge stays inside free cells.
    std::vector<Point> pulled{chain.front()};
    constexpr std::size_t kLookahead = 64;
    for (std::size_t i = 0; i + 1 < chain.size();) {
        std::size_t best = i + 1;
        for (std::size_t j = i + 2; j < chain.size() && j <= i + kLookahead; ++j)
            if (grid.segment_free(chain[i], chain[j])) best = j;
        pulled.push_back(chain[best]);
        i = best;
    }

    PolygonalJoin join;
    join.clearance = c;
    join.vertices.push_back(z1);
    join.vertices.insert(join.vertices.end(), pulled.begin(), pulled.end());
    join.vertices.push_back(z2);
    join.gap = path_carrier_gap(jc, join.vertices, kGapSamplesPerEdge);
    result.join = std::move(join);
    return result;
}

/// Builds a grid over the carrier box and both endpoints, margin 4 cells + clearance.
inline JoinResult polygonal_join(const JordanCurve& jc, const Point& z1, const Point& z2, double clearance, double h,
                                 const ClassifyOptions& opts = {}) {
    BoundingBox box = jc.carrier().bbox();
    box.expand(z1);
    box.expand(z2);
    const ClearanceGrid grid(jc, box.inflated(clearance + 4.0 * h), clearance, h);
    return polygonal_join(jc, grid, z1, z2, opts);
}

}  // namespace jordan
