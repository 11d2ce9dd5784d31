#pragma once

// Independent reference implementations used only by the tests.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include "vortexball/geometry.hpp"

namespace vortexball::oracle {

using LeafSet = std::vector<int>;

struct BruteBall {
    Ball ball;
    LeafSet leaves;
};

struct BruteMerge {
    double time = 0.0;
    LeafSet leaves;
};

struct BruteResult {
    std::vector<BruteBall> balls;
    std::vector<BruteMerge> merges;
};

inline void brute_cascade(std::vector<BruteBall>& bs, std::vector<BruteMerge>& merges, double t) {
    for (bool again = true; again;) {
        again = false;
        for (std::size_t i = 0; i < bs.size() && !again; ++i)
            for (std::size_t j = i + 1; j < bs.size() && !again; ++j) {
                const Ball &a = bs[i].ball, &b = bs[j].ball;
                if (distance(a.center, b.center) > a.radius + b.radius) continue;
                const double r = a.radius + b.radius;
                Ball m{(a.center * a.radius + b.center * b.radius) / r, r, std::nullopt};
                if (a.degree && b.degree) m.degree = *a.degree + *b.degree;
                LeafSet l = bs[i].leaves;
                l.insert(l.end(), bs[j].leaves.begin(), bs[j].leaves.end());
                std::sort(l.begin(), l.end());
                bs[i] = {m, l};
                bs.erase(bs.begin() + static_cast<std::ptrdiff_t>(j));
                merges.push_back({t, l});
                again = true;
            }
    }
}

inline std::vector<BruteBall> leaves_of(const std::vector<Ball>& balls) {
    std::vector<BruteBall> out;
    for (std::size_t i = 0; i < balls.size(); ++i) out.push_back({balls[i], {static_cast<int>(i)}});
    return out;
}

/// Uniform growth by explicit time stepping.
inline BruteResult brute_grow(const std::vector<Ball>& balls, double s, double dt = 1e-5) {
    BruteResult r{leaves_of(balls), {}};
    brute_cascade(r.balls, r.merges, 0.0);
    const long steps = std::lround(std::ceil(s / dt));
    const double h = s / static_cast<double>(steps);
    const double f = std::exp(h);
    for (long n = 1; n <= steps; ++n) {
        for (auto& b : r.balls) b.ball.radius *= f;
        brute_cascade(r.balls, r.merges, static_cast<double>(n) * h);
    }
    return r;
}

/// Jerrard growth by time stepping: each step grows the balls whose r/|d| is within one step of the minimum.
inline BruteResult brute_grow_jerrard(const std::vector<Ball>& balls, double sigma, double dt = 1e-5) {
    BruteResult r{leaves_of(balls), {}};
    brute_cascade(r.balls, r.merges, 0.0);
    auto sval = [](const Ball& b) {
        const int d = b.degree.value_or(0);
        return d == 0 ? std::numeric_limits<double>::infinity() : b.radius / std::abs(d);
    };
    const double f = std::exp(dt);
    double t = 0.0;
    for (;;) {
        double smin = std::numeric_limits<double>::infinity();
        for (const auto& b : r.balls) smin = std::min(smin, sval(b.ball));
        if (smin >= sigma) break;
        const double g = std::min(f, sigma / smin);
        for (auto& b : r.balls)
            if (sval(b.ball) < smin * f) b.ball.radius *= g;
        t += dt;
        brute_cascade(r.balls, r.merges, t);
    }
    return r;
}

/// Leaf sets of every merge recorded by a GrowthHistory, in initial-input indices.
inline std::set<LeafSet> merge_leaf_sets(const GrowthHistory& h) {
    const std::size_t n0 = h.initial_balls().size();
    std::set<LeafSet> out;
    for (const auto& m : h.merges) {
        LeafSet l;
        for (std::size_t id = 0; id < n0; ++id) {
            int cur = static_cast<int>(id);
            while (cur >= 0 && cur != m.result_id) cur = h.parent[static_cast<std::size_t>(cur)];
            if (cur == m.result_id) l.push_back(static_cast<int>(id));
        }
        out.insert(l);
    }
    return out;
}

inline std::set<LeafSet> merge_leaf_sets(const BruteResult& r) {
    std::set<LeafSet> out;
    for (const auto& m : r.merges) out.insert(m.leaves);
    return out;
}

/// Random collection of n balls in a 10 x 10 box; overlaps allowed.
inline std::vector<Ball> random_balls(std::mt19937_64& rng, int n, bool with_degrees = false) {
    std::uniform_real_distribution<double> pos(0.0, 10.0), rad(0.02, 0.3);
    std::uniform_int_distribution<int> deg(-2, 2);
    std::vector<Ball> out;
    for (int i = 0; i < n; ++i) {
        Ball b{{pos(rng), pos(rng)}, rad(rng), std::nullopt};
        if (with_degrees) {
            int d = deg(rng);
            if (d == 0 && i % 3 != 0) d = 1;
            b.degree = d;
        }
        out.push_back(b);
    }
    return out;
}

/// Brute-force minimum of pi m^2 d^2 / r + (1 - m)^2 / (c eps) over m in [0, 1].
inline double brute_lambda(double r, int d, double c, double eps, int samples = 200001) {
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) {
        const double m = static_cast<double>(k) / (samples - 1);
        best = std::min(best, 3.14159265358979323846 * m * m * d * d / r + (1 - m) * (1 - m) / (c * eps));
    }
    return best;
}

}  // namespace vortexball::oracle
