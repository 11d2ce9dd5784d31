#include <algorithm>
#include <random>

#include "vortexball/construction.hpp"

namespace vortexball {

bool ThresholdRule::passes(double m) const {
    switch (kind) {
        case ThresholdKind::far_from_unity: return std::abs(m - 1.0) >= value;
        case ThresholdKind::sublevel: return m <= value;
        case ThresholdKind::outside_band: return m <= 0.5 || m >= 1.5;
    }
    return false;
}

RegionMask threshold_mask(const ComplexField& field, const ThresholdRule& rule) {
    RegionMask m = empty_mask(field.grid);
    for (std::size_t k = 0; k < field.u.size(); ++k) m.cells[k] = rule.passes(std::abs(field.u[k])) ? 1 : 0;
    return m;
}

namespace {

struct Circle {
    Vec2 c;
    double r;
    bool holds(Vec2 p) const { return distance(c, p) <= r * (1.0 + 1e-12) + 1e-15; }
};

Circle from_two(Vec2 a, Vec2 b) { return {(a + b) * 0.5, 0.5 * distance(a, b)}; }

Circle from_three(Vec2 a, Vec2 b, Vec2 c) {
    const Vec2 ab = b - a, ac = c - a;
    const double d = 2.0 * (ab.x * ac.y - ab.y * ac.x);
    if (std::abs(d) < 1e-300) {
        // Collinear: the widest pair spans all three.
        Circle best = from_two(a, b);
        for (const Circle& cand : {from_two(a, c), from_two(b, c)})
            if (cand.r > best.r) best = cand;
        return best;
    }
    const double b2 = ab.norm2(), c2 = ac.norm2();
    const Vec2 off{(ac.y * b2 - ab.y * c2) / d, (ab.x * c2 - ac.x * b2) / d};
    return {a + off, off.norm()};
}

}  // namespace

Ball smallest_enclosing_ball(std::vector<Vec2> pts) {
    if (pts.empty()) throw PreconditionError("smallest_enclosing_ball: no points");
    std::mt19937_64 rng(0x5eedULL);
    std::shuffle(pts.begin(), pts.end(), rng);
    Circle c{pts[0], 0.0};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (c.holds(pts[i])) continue;
        c = {pts[i], 0.0};
        for (std::size_t j = 0; j < i; ++j) {
            if (c.holds(pts[j])) continue;
            c = from_two(pts[i], pts[j]);
            for (std::size_t k = 0; k < j; ++k)
                if (!c.holds(pts[k])) c = from_three(pts[i], pts[j], pts[k]);
        }
    }
    return Ball{c.c, c.r, std::nullopt};
}

std::vector<std::vector<std::size_t>> connected_components(const RegionMask& mask) {
    const GridSpec& g = mask.grid;
    std::vector<int> label(g.size(), -1);
    std::vector<std::vector<std::size_t>> comps;
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < g.size(); ++start) {
        if (!mask.cells[start] || label[start] >= 0) continue;
        const int id = static_cast<int>(comps.size());
        comps.emplace_back();
        label[start] = id;
        stack.assign(1, start);
        while (!stack.empty()) {
            const std::size_t k = stack.back();
            stack.pop_back();
            comps.back().push_back(k);
            const std::size_t i = k % g.nx, j = k / g.nx;
            auto visit = [&](std::size_t q) {
                if (mask.cells[q] && label[q] < 0) {
                    label[q] = id;
                    stack.push_back(q);
                }
            };
            if (i > 0) visit(k - 1);
            if (i + 1 < g.nx) visit(k + 1);
            if (j > 0) visit(k - g.nx);
            if (j + 1 < g.ny) visit(k + g.nx);
        }
        std::sort(comps.back().begin(), comps.back().end());
    }
    return comps;
}

BallCollection cover_mask(const RegionMask& mask) {
    const GridSpec& g = mask.grid;
    if (mask.cells.size() != g.size()) throw PreconditionError("mask does not match its grid");
    std::vector<Ball> balls;
    for (const auto& comp : connected_components(mask)) {
        // Interior cells cannot be extreme points; keep only cells with an outside 4-neighbour.
        std::vector<Vec2> pts;
        for (std::size_t k : comp) {
            const std::size_t i = k % g.nx, j = k / g.nx;
            const bool interior = i > 0 && i + 1 < g.nx && j > 0 && j + 1 < g.ny && mask.cells[k - 1] &&
                                  mask.cells[k + 1] && mask.cells[k - g.nx] && mask.cells[k + g.nx];
            if (!interior) pts.push_back(g.center(i, j));
        }
        Ball b = smallest_enclosing_ball(std::move(pts));
        b.radius += g.cell_diagonal();
        balls.push_back(b);
    }
    return BallCollection{merge_until_disjoint(std::move(balls))};
}

BallCollection sublevel_covering(const ComplexField& field, const ThresholdRule& rule, const RegionMask& domain) {
    return cover_mask(mask_and(threshold_mask(field, rule), domain));
}

double radius_of_set_estimate(const RegionMask& mask) { return cover_mask(mask).total_radius(); }

}  // namespace vortexball
