#include "vortexball/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace vortexball {

double BallCollection::total_radius() const {
    double s = 0.0;
    for (const Ball& b : balls) s += b.radius;
    return s;
}

bool balls_touch(const Ball& a, const Ball& b) {
    const double sum = a.radius + b.radius;
    return distance(a.center, b.center) <= sum * (1.0 + kTangencyTolerance);
}

bool pairwise_disjoint(const std::vector<Ball>& balls) {
    for (std::size_t i = 0; i < balls.size(); ++i)
        for (std::size_t j = i + 1; j < balls.size(); ++j)
            if (distance(balls[i].center, balls[j].center) <= balls[i].radius + balls[j].radius) return false;
    return true;
}

Ball merge_balls(const Ball& b1, const Ball& b2) {
    if (!balls_touch(b1, b2)) throw PreconditionError("merge_balls: balls are disjoint");
    const double r = b1.radius + b2.radius;
    Ball out;
    out.center = (b1.center * b1.radius + b2.center * b2.radius) / r;
    out.radius = r;
    if (b1.degree && b2.degree) out.degree = *b1.degree + *b2.degree;
    return out;
}

std::optional<Contact> next_contact_time(const BallCollection& coll) {
    std::optional<Contact> best;
    const auto& b = coll.balls;
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j) {
            const double dist = distance(b[i].center, b[j].center);
            const double dt = std::max(0.0, std::log(dist / (b[i].radius + b[j].radius)));
            if (!best || dt < best->dt) best = Contact{dt, i, j};
        }
    return best;
}

namespace {

struct Tracker {
    GrowthHistory* h;
    int next_id = 0;

    int fresh() {
        h->parent.push_back(-1);
        return next_id++;
    }

    // Repeatedly merges the lowest touching pair; survivors keep the lower slot.
    void cascade(std::vector<Ball>& balls, std::vector<int>& ids, double time) {
        for (;;) {
            bool merged = false;
            for (std::size_t i = 0; i < balls.size() && !merged; ++i)
                for (std::size_t j = i + 1; j < balls.size() && !merged; ++j) {
                    if (!balls_touch(balls[i], balls[j])) continue;
                    const Ball m = merge_balls(balls[i], balls[j]);
                    const int id = fresh();
                    h->parent[static_cast<std::size_t>(ids[i])] = id;
                    h->parent[static_cast<std::size_t>(ids[j])] = id;
                    h->merges.push_back(MergeEvent{time, {ids[i], ids[j]}, id, m});
                    balls[i] = m;
                    ids[i] = id;
                    balls.erase(balls.begin() + static_cast<std::ptrdiff_t>(j));
                    ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(j));
                    merged = true;
                }
            if (!merged) return;
        }
    }
};

void validate_input(const BallCollection& coll) {
    for (const Ball& b : coll.balls)
        if (!(b.radius > 0.0) || !std::isfinite(b.radius) || !std::isfinite(b.center.x) || !std::isfinite(b.center.y))
            throw PreconditionError("balls need finite centers and positive radii");
}

GenerationSnapshot initial_snapshot(const BallCollection& coll, Tracker& tr, GrowthHistory& h) {
    GenerationSnapshot g;
    g.before = coll.balls;
    for (std::size_t i = 0; i < coll.size(); ++i) g.before_ids.push_back(tr.fresh());
    g.after = g.before;
    g.after_ids = g.before_ids;
    tr.cascade(g.after, g.after_ids, 0.0);
    (void)h;
    return g;
}

void record_annuli(GrowthHistory& h, const GenerationSnapshot& prev, const std::vector<Ball>& grown, double tau, int k) {
    for (std::size_t i = 0; i < grown.size(); ++i) {
        const Ball& a = prev.after[i];
        if (!(grown[i].radius > a.radius)) continue;
        AnnulusRecord rec;
        rec.center = a.center;
        rec.inner = a.radius;
        rec.outer = grown[i].radius;
        rec.tau = tau;
        rec.degree = a.degree;
        rec.generation = k;
        rec.index = static_cast<int>(i);
        rec.ball_id = prev.after_ids[i];
        h.annuli.push_back(rec);
    }
}

void finish_lineage(GrowthHistory& h) {
    const auto& fin = h.generations.back().after_ids;
    h.final_lineage.assign(h.parent.size(), -1);
    for (std::size_t id = 0; id < h.parent.size(); ++id) {
        int cur = static_cast<int>(id);
        while (h.parent[static_cast<std::size_t>(cur)] >= 0) cur = h.parent[static_cast<std::size_t>(cur)];
        const auto it = std::find(fin.begin(), fin.end(), cur);
        if (it != fin.end()) h.final_lineage[id] = static_cast<int>(it - fin.begin());
    }
    for (auto& a : h.annuli) a.lineage = h.final_lineage[static_cast<std::size_t>(a.ball_id)];
}

double jerrard_s(const Ball& b) {
    if (!b.degree || *b.degree == 0) return std::numeric_limits<double>::infinity();
    return b.radius / std::abs(*b.degree);
}

}  // namespace

int GrowthHistory::ancestor_in(int id, std::size_t k) const {
    const auto& ids = generations.at(k).after_ids;
    int cur = id;
    for (;;) {
        if (std::find(ids.begin(), ids.end(), cur) != ids.end()) return cur;
        const int p = parent.at(static_cast<std::size_t>(cur));
        if (p < 0) return -1;
        cur = p;
    }
}

GrowthHistory grow(const BallCollection& coll, double s_target) {
    if (!(s_target >= 0.0) || !std::isfinite(s_target)) throw PreconditionError("grow: s_target must be finite and >= 0");
    validate_input(coll);
    GrowthHistory h;
    h.kind = GrowthKind::uniform;
    Tracker tr{&h};
    h.generations.push_back(initial_snapshot(coll, tr, h));

    double t = 0.0;
    while (t < s_target) {
        const GenerationSnapshot& prev = h.generations.back();
        const auto contact = next_contact_time(BallCollection{prev.after});
        const double remaining = s_target - t;
        const bool last = !contact || contact->dt >= remaining;
        const double step = last ? remaining : contact->dt;
        const double factor = std::exp(step);

        GenerationSnapshot g;
        g.before = prev.after;
        for (Ball& b : g.before) b.radius *= factor;
        g.before_ids = prev.after_ids;
        t = last ? s_target : t + step;
        g.time = t;
        g.parameter = t;
        record_annuli(h, prev, g.before, step, static_cast<int>(h.generations.size()));
        g.after = g.before;
        g.after_ids = g.before_ids;
        tr.cascade(g.after, g.after_ids, t);
        h.generations.push_back(std::move(g));
        if (last) break;
    }
    finish_lineage(h);
    return h;
}

GrowthHistory grow_jerrard(const BallCollection& coll, double sigma_target) {
    if (!(sigma_target > 0.0) || !std::isfinite(sigma_target))
        throw PreconditionError("grow_jerrard: sigma must be positive and finite");
    validate_input(coll);
    for (const Ball& b : coll.balls)
        if (!b.degree) throw PreconditionError("grow_jerrard: every ball needs a degree");
    if (std::all_of(coll.balls.begin(), coll.balls.end(), [](const Ball& b) { return *b.degree == 0; }))
        throw PreconditionError("no growth parameter defined");

    GrowthHistory h;
    h.kind = GrowthKind::jerrard;
    Tracker tr{&h};
    h.generations.push_back(initial_snapshot(coll, tr, h));
    constexpr double kRel = 1e-12;
    const double inf = std::numeric_limits<double>::infinity();

    double t = 0.0;
    for (;;) {
        const GenerationSnapshot& prev = h.generations.back();
        const auto& balls = prev.after;
        std::vector<double> s(balls.size());
        std::transform(balls.begin(), balls.end(), s.begin(), jerrard_s);
        const double smin = *std::min_element(s.begin(), s.end());
        h.generations.back().parameter = smin;
        if (smin >= sigma_target * (1.0 - kRel)) {
            h.stopped_above_target = smin > sigma_target * (1.0 + kRel);
            break;
        }
        std::vector<char> active(balls.size());
        double s_next = inf;
        for (std::size_t i = 0; i < balls.size(); ++i) {
            active[i] = s[i] <= smin * (1.0 + kRel);
            if (!active[i]) s_next = std::min(s_next, s[i]);
        }
        double step = std::log(sigma_target / smin);
        bool reaches_target = true;
        if (s_next < inf && std::log(s_next / smin) < step) {
            step = std::log(s_next / smin);
            reaches_target = false;
        }
        for (std::size_t i = 0; i < balls.size(); ++i)
            for (std::size_t j = i + 1; j < balls.size(); ++j) {
                if (!active[i] && !active[j]) continue;
                const double dist = distance(balls[i].center, balls[j].center);
                double dt;
                if (active[i] && active[j]) {
                    dt = std::log(dist / (balls[i].radius + balls[j].radius));
                } else {
                    const std::size_t g = active[i] ? i : j, o = active[i] ? j : i;
                    const double room = dist - balls[o].radius;
                    dt = room > 0.0 ? std::log(room / balls[g].radius) : 0.0;
                }
                dt = std::max(0.0, dt);
                if (dt < step) {
                    step = dt;
                    reaches_target = false;
                }
            }

        GenerationSnapshot g;
        g.before = balls;
        const double factor = std::exp(step);
        for (std::size_t i = 0; i < balls.size(); ++i)
            if (active[i]) g.before[i].radius *= factor;
        g.before_ids = prev.after_ids;
        t += step;
        g.time = t;
        record_annuli(h, prev, g.before, step, static_cast<int>(h.generations.size()));
        g.after = g.before;
        g.after_ids = g.before_ids;
        tr.cascade(g.after, g.after_ids, t);
        g.parameter = reaches_target ? sigma_target : smin * factor;
        h.generations.push_back(std::move(g));
        if (reaches_target) {
            // A merge at the final instant can only raise min s.
            double smin_after = inf;
            for (const Ball& b : h.generations.back().after) smin_after = std::min(smin_after, jerrard_s(b));
            h.generations.back().parameter = smin_after;
            h.stopped_above_target = smin_after > sigma_target * (1.0 + kRel);
            break;
        }
    }
    finish_lineage(h);
    return h;
}

std::vector<Ball> merge_until_disjoint(std::vector<Ball> balls, std::vector<std::vector<std::size_t>>* origin) {
    std::vector<std::vector<std::size_t>> from(balls.size());
    for (std::size_t i = 0; i < balls.size(); ++i) from[i] = {i};
    for (;;) {
        bool merged = false;
        for (std::size_t i = 0; i < balls.size() && !merged; ++i)
            for (std::size_t j = i + 1; j < balls.size() && !merged; ++j) {
                if (!balls_touch(balls[i], balls[j])) continue;
                balls[i] = merge_balls(balls[i], balls[j]);
                from[i].insert(from[i].end(), from[j].begin(), from[j].end());
                balls.erase(balls.begin() + static_cast<std::ptrdiff_t>(j));
                from.erase(from.begin() + static_cast<std::ptrdiff_t>(j));
                merged = true;
            }
        if (!merged) break;
    }
    if (origin) *origin = std::move(from);
    return balls;
}

namespace {

template <class Eval>
double sum_over(const std::vector<Ball>& balls, Eval F) {
    double s = 0.0;
    for (const Ball& b : balls) s += F(b.center, b.radius);
    return s;
}

template <class Eval>
AccountingTerms boundary_terms(const GrowthHistory& h, Eval F) {
    AccountingTerms out;
    out.lhs = sum_over(h.final_balls(), F) - sum_over(h.initial_balls(), F);
    for (const auto& g : h.generations) out.jumps += sum_over(g.after, F) - sum_over(g.before, F);
    return out;
}

double polynomial_value(const std::vector<double>& c, double r) {
    double v = 0.0, p = 1.0;
    for (double ck : c) {
        v += ck * p;
        p *= r;
    }
    return v;
}

template <class G>
double simpson(G& g, double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = g(lm), frm = g(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
    return simpson(g, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson(g, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

AccountingTerms accounting_terms(const GrowthHistory& h, const RadialPolynomial& F) {
    auto eval = [&](Vec2 x, double r) { return polynomial_value(F.coefficients(x), r); };
    AccountingTerms out = boundary_terms(h, eval);
    for (const AnnulusRecord& a : h.annuli) {
        const auto c = F.coefficients(a.center);
        double rp = 1.0;
        for (std::size_t p = 0; p < c.size(); ++p) {
            if (p > 0) out.growth_integral += c[p] * rp * std::expm1(static_cast<double>(p) * a.tau);
            rp *= a.inner;
        }
    }
    return out;
}

AccountingTerms accounting_terms(const GrowthHistory& h, const BallFunction& F, double rel_tol) {
    AccountingTerms out = boundary_terms(h, F);
    for (const AnnulusRecord& a : h.annuli) {
        auto integrand = [&](double t) {
            const double r = a.inner * std::exp(t);
            const double dr = 1e-5 * r;
            return r * (F(a.center, r + dr) - F(a.center, r - dr)) / (2.0 * dr);
        };
        const double f0 = integrand(0.0), fm = integrand(0.5 * a.tau), f1 = integrand(a.tau);
        const double whole = a.tau / 6.0 * (f0 + 4.0 * fm + f1);
        const double scale = std::max(std::abs(whole), 1e-300);
        out.growth_integral += simpson(integrand, 0.0, a.tau, f0, fm, f1, whole, rel_tol * scale, 30);
    }
    return out;
}

double accounting_residual(const GrowthHistory& h, const RadialPolynomial& F) { return accounting_terms(h, F).residual(); }

double accounting_residual(const GrowthHistory& h, const BallFunction& F, double rel_tol) {
    return accounting_terms(h, F, rel_tol).residual();
}

}  // namespace vortexball
