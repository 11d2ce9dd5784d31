#include "vortexball/construction.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace vortexball {

double default_eta() { return (5.0 + std::sqrt(2785.0)) / 60.0; }

void ConstructionParams::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0, 1)");
    if (!(eps > 0.0) || !std::isfinite(eps)) throw ParameterError("eps must be positive");
    if (!(r > 0.0 && r < 1.0)) throw ParameterError("final radius r must lie in (0, 1)");
    const double e = eta_value();
    if (!(e > 0.5 && e < 1.0)) throw ParameterError("eta must lie in (1/2, 1)");
}

double TwoPhaseResult::final_total_radius() const {
    double s = 0.0;
    for (const Ball& b : final_balls) s += b.radius;
    return s;
}

bool ball_inside_inset(const GridSpec& grid, const Ball& b, double eps) {
    return grid.boundary_distance(b.center) - b.radius > eps;
}

std::optional<int> ball_degree(const ComplexField& field, const Ball& b) {
    if (!circle_in_sampled_region(field.grid, b.center, b.radius)) return std::nullopt;
    try {
        return degree_on_circle(field, b.center, b.radius, suggested_circle_samples(field.grid, b.radius));
    } catch (const EvaluationError&) {
        return std::nullopt;
    }
}

namespace {

int index_of(const std::vector<int>& ids, int id) {
    const auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end()) throw ConsistencyError("lineage lookup failed");
    return static_cast<int>(it - ids.begin());
}

// Appends the generations of one growth phase. `last_into` maps indices of the phase's
// final `after` list to the next stage's ball indices.
void append_phase(std::vector<FamilyGeneration>& fam, const GrowthHistory& h, double t_offset, bool core,
                  const std::vector<int>& last_into) {
    for (std::size_t k = 1; k < h.generations.size(); ++k) {
        const auto& prev = h.generations[k - 1];
        const auto& cur = h.generations[k];
        FamilyGeneration g;
        g.k = static_cast<int>(fam.size()) + 1;
        g.t_start = t_offset + prev.time;
        g.t_end = t_offset + cur.time;
        g.core_phase = core;
        for (std::size_t i = 0; i < prev.after.size(); ++i) {
            g.start.push_back({prev.after[i], -1});
            g.end.push_back({cur.before[i], -1});
            const int anc = h.ancestor_in(cur.before_ids[i], k);
            int idx = index_of(cur.after_ids, anc);
            if (k + 1 == h.generations.size()) idx = last_into[static_cast<std::size_t>(idx)];
            g.into.push_back(idx);
        }
        fam.push_back(std::move(g));
    }
}

void attach_degree(const ComplexField& field, Ball& b) { b.degree = ball_degree(field, b); }

}  // namespace

TwoPhaseResult two_phase_construct(const ComplexField& field, const ConstructionParams& params) {
    params.validate();
    field.validate();
    if (std::abs(field.eps - params.eps) > 1e-12 * params.eps)
        throw ParameterError("field eps and construction eps differ");

    TwoPhaseResult res;
    res.params = params;
    const GridSpec& grid = field.grid;
    res.modulus_energy = modulus_energy(field, full_mask(grid));
    res.energy_threshold = std::pow(params.eps, params.alpha - 1.0);
    if (res.modulus_energy > res.energy_threshold) throw HypothesisError(res.modulus_energy, res.energy_threshold);

    const RegionMask inset = inset_mask(grid, params.eps);
    res.far_covering = sublevel_covering(field, ThresholdRule::far_from_unity(params.delta()), inset);
    res.core_initial = sublevel_covering(field, ThresholdRule::outside_band(), inset);
    res.R = std::max(res.far_covering.total_radius(), res.core_initial.total_radius());

    if (res.R == 0.0) {
        res.core_history = grow(BallCollection{}, 0.0);
        res.main_history = grow(BallCollection{}, 0.0);
        return res;
    }

    // Phase 1: grow the core covering to 3R.
    res.sigma = res.core_initial.empty() ? 0.0 : std::log(3.0 * res.R / res.core_initial.total_radius());
    res.core_history = grow(res.core_initial, res.sigma);

    // Phase boundary: disjoint cover of C(sigma) and the far covering, padded to 8R.
    std::vector<Ball> joint = res.core_history.final_balls();
    const std::size_t n_core = joint.size();
    joint.insert(joint.end(), res.far_covering.balls.begin(), res.far_covering.balls.end());
    std::vector<std::vector<std::size_t>> origin;
    res.merged_cover = BallCollection{merge_until_disjoint(joint, &origin)};
    const GrowthHistory pad = grow(res.merged_cover, std::log(8.0 * res.R / res.merged_cover.total_radius()));
    res.initial = BallCollection{pad.final_balls()};
    for (Ball& b : res.initial.balls) b.degree.reset();

    const double r0 = res.initial.total_radius();
    res.effective_c0 = r0 / std::pow(params.eps, params.alpha / 2.0);
    if (!(params.r > r0)) {
        std::ostringstream os;
        os.precision(10);
        os << "final radius r = " << params.r << " must exceed r(B_0) = " << r0;
        throw ParameterError(os.str());
    }
    res.s = std::log(params.r / r0);
    res.main_history = grow(res.initial, res.s);

    // C(sigma) index -> B(0) post-cascade index.
    const auto& main0 = res.main_history.generations.front();
    std::vector<int> core_to_main(n_core, -1);
    for (std::size_t m = 0; m < origin.size(); ++m)
        for (std::size_t src : origin[m]) {
            if (src >= n_core) continue;
            const int b0 = pad.final_lineage[m];
            core_to_main[src] = index_of(main0.after_ids, res.main_history.ancestor_in(main0.before_ids[b0], 0));
        }
    std::vector<int> identity(res.main_history.final_balls().size());
    for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = static_cast<int>(i);

    append_phase(res.family, res.core_history, 0.0, true, core_to_main);
    append_phase(res.family, res.main_history, res.sigma, false, identity);

    res.final_balls = res.main_history.final_balls();
    for (Ball& b : res.final_balls) attach_degree(field, b);
    res.final_inside.resize(res.final_balls.size());
    for (std::size_t n = 0; n < res.final_balls.size(); ++n)
        res.final_inside[n] = ball_inside_inset(grid, res.final_balls[n], params.eps) ? 1 : 0;

    // Lineage indices, last generation first.
    for (std::size_t g = res.family.size(); g-- > 0;) {
        auto& gen = res.family[g];
        for (std::size_t i = 0; i < gen.end.size(); ++i) {
            const int target = gen.into[i];
            const int fin = (g + 1 == res.family.size())
                                ? target
                                : res.family[g + 1].start[static_cast<std::size_t>(target)].final_index;
            gen.end[i].final_index = fin;
            gen.start[i].final_index = fin;
        }
    }

    for (auto& gen : res.family) {
        for (auto& fb : gen.start) attach_degree(field, fb.ball);
        for (auto& fb : gen.end) attach_degree(field, fb.ball);
    }

    for (std::size_t n = 0; n < res.final_balls.size(); ++n) {
        if (!res.final_inside[n]) continue;
        if (!res.final_balls[n].degree) ++res.degree_failures;
        res.D += std::abs(res.final_balls[n].degree.value_or(0));
    }
    for (const auto& gen : res.family)
        for (const auto& fb : gen.end)
            if (fb.final_index >= 0 && res.final_inside[static_cast<std::size_t>(fb.final_index)] && !fb.ball.degree)
                ++res.degree_failures;
    return res;
}

VorticityMasses vorticity_masses(const TwoPhaseResult& result) {
    VorticityMasses m;
    m.generations = static_cast<int>(result.family.size());
    const std::size_t nf = result.final_balls.size();
    m.D.resize(nf);
    for (std::size_t n = 0; n < nf; ++n) m.D[n] = result.final_balls[n].degree.value_or(0);
    m.mass.assign(nf, std::vector<MassEntry>(result.family.size()));
    for (std::size_t g = 0; g < result.family.size(); ++g)
        for (const auto& fb : result.family[g].end) {
            if (fb.final_index < 0) continue;
            MassEntry& e = m.mass[static_cast<std::size_t>(fb.final_index)][g];
            e.present = true;
            const int d = fb.ball.degree.value_or(0);
            if (d < 0) e.N += -d;
            if (d > 0) e.P += d;
            e.sum_sq += d * d;
        }
    return m;
}

TransitionTable transition_generation(const VorticityMasses& masses, double eta,
                                      const std::vector<double>& times) {
    TransitionTable tt;
    tt.eta = eta;
    for (std::size_t n = 0; n < masses.mass.size(); ++n) {
        const int Dn = masses.D[n];
        auto holds = [&](const MassEntry& e) {
            return Dn >= 0 ? e.N <= eta * e.P : e.P <= eta * e.N;
        };
        Transition tr;
        for (int k = 1; k <= masses.generations; ++k) {
            const MassEntry& e = masses.at(static_cast<int>(n), k);
            if (!e.present) continue;
            if (tr.k == 0) {
                if (holds(e)) {
                    tr.k = k;
                    tr.time = times.empty() ? 0.0 : times[static_cast<std::size_t>(k - 1)];
                }
            } else if (!holds(e)) {
                std::ostringstream os;
                os << "transition persistence violated for final ball " << n << " at generation " << k;
                throw ConsistencyError(os.str());
            }
        }
        tt.per_final.push_back(tr);
    }
    return tt;
}

TransitionTable transition_generation(const TwoPhaseResult& result, const VorticityMasses& masses) {
    std::vector<double> times;
    for (const auto& g : result.family) times.push_back(g.t_start);
    return transition_generation(masses, result.params.eta_value(), times);
}

const BetaEntry* BetaTable::find(int k, int i) const {
    for (const auto& e : entries)
        if (e.k == k && e.i == i) return &e;
    return nullptr;
}

BetaTable beta_table(const TwoPhaseResult& result, const TransitionTable& transitions) {
    const VorticityMasses masses = vorticity_masses(result);
    BetaTable bt;
    for (const auto& gen : result.family)
        for (std::size_t i = 0; i < gen.end.size(); ++i) {
            const int n = gen.end[i].final_index;
            if (n < 0 || !result.final_inside[static_cast<std::size_t>(n)]) continue;
            BetaEntry e;
            e.k = gen.k;
            e.i = static_cast<int>(i);
            e.n = n;
            e.degree = gen.end[i].ball.degree.value_or(0);
            const int kn = transitions.per_final.at(static_cast<std::size_t>(n)).k;
            if (kn > 0 && gen.k >= kn) {
                const MassEntry& me = masses.at(n, gen.k);
                if (me.sum_sq == 0) {
                    e.num = 0;
                    e.den = 1;
                    e.beta = 0.0;
                } else {
                    e.num = std::abs(masses.D[static_cast<std::size_t>(n)]);
                    e.den = me.sum_sq;
                    e.beta = std::sqrt(static_cast<double>(e.num) / static_cast<double>(e.den));
                }
            }
            bt.entries.push_back(e);
        }
    return bt;
}

bool beta_normalization_exact(const TwoPhaseResult& result, const BetaTable& betas, const TransitionTable& tr) {
    std::map<std::pair<int, int>, std::vector<const BetaEntry*>> groups;
    for (const auto& e : betas.entries) {
        const int kn = tr.per_final.at(static_cast<std::size_t>(e.n)).k;
        if (kn > 0 && e.k >= kn) groups[{e.n, e.k}].push_back(&e);
    }
    for (const auto& [key, group] : groups) {
        const std::int64_t D = std::abs(result.final_balls.at(static_cast<std::size_t>(key.first)).degree.value_or(0));
        // sum d_i^2 num_i / den_i == D, cross-multiplied over the common denominator.
        const std::int64_t den = group.front()->den;
        std::int64_t acc = 0;
        for (const BetaEntry* e : group) {
            if (e->den != den) return false;
            acc += static_cast<std::int64_t>(e->degree) * e->degree * e->num;
        }
        const bool all_zero = group.front()->num == 0;
        if (all_zero ? D != 0 || acc != 0 : acc != D * den) return false;
    }
    return true;
}

std::vector<int> effective_merge_counts(const TwoPhaseResult& result, const TransitionTable& tr) {
    std::vector<int> count(result.final_balls.size(), 0);
    for (const auto& gen : result.family) {
        std::map<std::pair<int, int>, int> nonzero;  // (lineage, target) -> nonzero children
        for (std::size_t i = 0; i < gen.end.size(); ++i) {
            const int n = gen.end[i].final_index;
            if (n < 0) continue;
            if (gen.end[i].ball.degree.value_or(0) != 0) ++nonzero[{n, gen.into[i]}];
        }
        std::vector<char> effective(result.final_balls.size(), 0);
        for (const auto& [key, c] : nonzero)
            if (c >= 2) effective[static_cast<std::size_t>(key.first)] = 1;
        for (std::size_t n = 0; n < count.size(); ++n) {
            const int kn = tr.per_final.at(n).k;
            if (effective[n] && kn > 0 && gen.k >= kn) ++count[n];
        }
    }
    return count;
}

GField build_G(const TwoPhaseResult& result, const BetaTable& betas) {
    GField g;
    g.final_balls = result.final_balls;
    g.by_lineage.resize(result.final_balls.size());
    for (const auto& e : betas.entries) {
        const auto& gen = result.family.at(static_cast<std::size_t>(e.k - 1));
        const auto& a = gen.start.at(static_cast<std::size_t>(e.i)).ball;
        const auto& b = gen.end.at(static_cast<std::size_t>(e.i)).ball;
        if (!(b.radius > a.radius)) continue;
        GAnnulus ga;
        ga.annulus.center = a.center;
        ga.annulus.inner = a.radius;
        ga.annulus.outer = b.radius;
        ga.annulus.tau = gen.tau();
        ga.annulus.degree = e.degree;
        ga.annulus.generation = e.k;
        ga.annulus.lineage = e.n;
        ga.annulus.index = e.i;
        ga.coefficient = e.degree * e.beta;
        g.by_lineage[static_cast<std::size_t>(e.n)].push_back(g.annuli.size());
        g.annuli.push_back(ga);
    }
    return g;
}

Vec2 eval_G(const GField& g, Vec2 x) {
    for (std::size_t n = 0; n < g.final_balls.size(); ++n) {
        const Ball& fb = g.final_balls[n];
        if (distance(fb.center, x) > fb.radius) continue;
        for (std::size_t idx : g.by_lineage[n]) {
            const GAnnulus& ga = g.annuli[idx];
            const Vec2 d = x - ga.annulus.center;
            const double rr = d.norm();
            if (rr > ga.annulus.inner && rr <= ga.annulus.outer) return d.perp() * (ga.coefficient / (rr * rr));
        }
        return {};
    }
    return {};
}

std::vector<Vec2> sample_G(const GField& g, const GridSpec& grid) {
    std::vector<Vec2> out(grid.size());
    for (std::size_t j = 0; j < grid.ny; ++j)
        for (std::size_t i = 0; i < grid.nx; ++i) out[grid.index(i, j)] = eval_G(g, grid.center(i, j));
    return out;
}

double jerrard_G_coefficient(int d, double m, double rho, double r, double beta) {
    if (!(rho > 0.0)) throw EvaluationError("jerrard_G_coefficient: modulus vanishes at the query point");
    if (!(m >= 0.0 && m <= 1.0)) throw PreconditionError("jerrard_G_coefficient: m must lie in [0, 1]");
    if (!(beta >= 0.0 && beta <= 1.0)) throw PreconditionError("jerrard_G_coefficient: beta must lie in [0, 1]");
    if (!(r > 0.0)) throw PreconditionError("jerrard_G_coefficient: radius must be positive");
    return d * m * m * beta / (rho * rho * r);
}

}  // namespace vortexball
