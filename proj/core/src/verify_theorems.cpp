#include <algorithm>
#include <limits>

#include "vortexball/verify.hpp"

namespace vortexball {

double norm_coefficient(double eta) { return (1.0 - eta) / (18.0 * (1.0 + eta)); }

RegionMask final_region(const GridSpec& grid, const TwoPhaseResult& result) {
    RegionMask m = empty_mask(grid);
    if (result.final_balls.empty()) return m;
    const RegionMask inset = inset_mask(grid, result.params.eps);
    for (std::size_t j = 0; j < grid.ny; ++j)
        for (std::size_t i = 0; i < grid.nx; ++i) {
            const std::size_t k = grid.index(i, j);
            if (!inset.cells[k]) continue;
            const Vec2 p = grid.center(i, j);
            for (const Ball& b : result.final_balls)
                if (distance(p, b.center) <= b.radius) {
                    m.cells[k] = 1;
                    break;
                }
        }
    return m;
}

namespace {

struct Degrees {
    int D = 0;
    int sum_sq = 0;
};

Degrees inside_degrees(const TwoPhaseResult& res) {
    Degrees d;
    for (std::size_t n = 0; n < res.final_balls.size(); ++n) {
        if (!res.final_inside[n]) continue;
        const int dn = res.final_balls[n].degree.value_or(0);
        d.D += std::abs(dn);
        d.sum_sq += dn * dn;
    }
    return d;
}

double masked_l2inf(const std::vector<double>& mag, const RegionMask& mask, double cell_area) {
    SampledMagnitudes m;
    m.cell_area = cell_area;
    for (std::size_t k = 0; k < mag.size(); ++k)
        if (mask.cells[k]) m.values.push_back(mag[k]);
    return l2inf_norm(m);
}

NamedValues common_params(const ConstructionParams& p, const TwoPhaseResult& res, const Degrees& d) {
    return {{"eps", p.eps}, {"alpha", p.alpha}, {"r", p.r}, {"eta", p.eta_value()}, {"D", d.D},
            {"sum_d_sq", d.sum_sq}, {"sigma", res.sigma}, {"s", res.s}, {"r_B0", res.initial.total_radius()}};
}

InequalityReport vacuous(std::string name, NamedValues params) {
    InequalityReport r;
    r.name = std::move(name);
    r.vacuous = true;
    r.pass = true;
    r.params = std::move(params);
    r.note = "theorem vacuous: D = 0";
    return r;
}

// The additive-constant form: rhs terms sum to lhs at C = C_eff, so slack is zero by construction.
InequalityReport deficit_report(std::string name, double lhs, NamedValues terms, double c_eff, NamedValues params) {
    InequalityReport r = make_report(std::move(name), Relation::ge, lhs, std::move(terms));
    r.slack = 0.0;
    r.pass = std::isfinite(c_eff);
    r.effective_constant = c_eff;
    r.params = std::move(params);
    return r;
}

std::vector<Vec2> total_potential(const ComplexField& field, const GField& G) {
    std::vector<Vec2> AG = sample_G(G, field.grid);
    if (field.has_potential())
        for (std::size_t k = 0; k < AG.size(); ++k) AG[k] = AG[k] + field.A[k];
    return AG;
}

}  // namespace

InequalityReport check_theorem1(const ComplexField& field, const ConstructionParams& params,
                                const TwoPhaseResult& result, const GField& G) {
    const Degrees d = inside_degrees(result);
    NamedValues prm = common_params(params, result, d);
    if (d.D == 0) return vacuous("theorem1", prm);
    const RegionMask V = final_region(field.grid, result);
    const EnergyParts F = gl_energy(field, V, params.r);

    const CovariantGradient gG = covariant_gradient(field.grid, field.u, total_potential(field, G));
    double extra = 0.0;
    const double inv2e2 = 1.0 / (2.0 * params.eps * params.eps);
    for (std::size_t k = 0; k < field.u.size(); ++k) {
        if (!V.cells[k]) continue;
        const double w = 1.0 - std::norm(field.u[k]);
        extra += std::norm(gG.gx[k]) + std::norm(gG.gy[k]) + w * w * inv2e2;
    }
    extra *= field.grid.cell_area() / 18.0;

    const double D = d.D;
    const double logterm = std::log(params.r / (params.eps * D));
    const double c_eff = logterm - (F.total() - extra) / (kPi * D);
    prm.insert(prm.end(), {{"kinetic_V", F.kinetic}, {"potential_V", F.potential}, {"magnetic_V", F.magnetic}});
    return deficit_report("theorem1", F.total(),
                          {{"pi_D_log", kPi * D * logterm}, {"minus_pi_D_C", -kPi * D * c_eff}, {"g_term", extra}},
                          c_eff, prm);
}

InequalityReport check_theorem2(const ComplexField& field, const ConstructionParams& params,
                                const TwoPhaseResult& result, const GField& G) {
    (void)G;
    const Degrees d = inside_degrees(result);
    NamedValues prm = common_params(params, result, d);
    if (d.D == 0) return vacuous("theorem2", prm);
    const RegionMask V = final_region(field.grid, result);
    const CovariantGradient grad = covariant_gradient(field);
    const EnergyParts F = gl_energy(field, grad, curl_samples(field), V, params.r);
    const double norm = masked_l2inf(grad.magnitudes(), V, field.grid.cell_area());
    const double coef = norm_coefficient(params.eta_value());

    const double D = d.D;
    const double lhs = F.total() + kPi * d.sum_sq;
    const double logterm = std::log(params.r / (params.eps * D));
    const double c_eff = logterm - (lhs - coef * norm * norm) / (kPi * D);
    prm.insert(prm.end(), {{"norm_coefficient", coef}, {"l2inf_grad_V", norm}, {"energy_V", F.total()}});
    return deficit_report("theorem2", lhs,
                          {{"norm_term", coef * norm * norm}, {"pi_D_log", kPi * D * logterm}, {"minus_pi_D_C", -kPi * D * c_eff}},
                          c_eff, prm);
}

InequalityReport check_corollary1(const ComplexField& field, const ConstructionParams& params,
                                  const TwoPhaseResult& result) {
    const Degrees d = inside_degrees(result);
    NamedValues prm = common_params(params, result, d);
    const CovariantGradient grad = covariant_gradient(field);
    const RegionMask all = full_mask(field.grid);
    const EnergyParts F = gl_energy(field, grad, curl_samples(field), all, 1.0);
    const double norm = masked_l2inf(grad.magnitudes(), all, field.grid.cell_area());
    const double lhs = norm * norm;
    const double logterm = d.D > 0 ? kPi * d.D * std::log(params.r / (params.eps * d.D)) : 0.0;
    const double denom = F.total() - logterm + d.sum_sq;
    double c_eff;
    if (lhs == 0.0) c_eff = 0.0;
    else if (denom > 0.0) c_eff = lhs / denom;
    else c_eff = std::numeric_limits<double>::infinity();

    InequalityReport rep = make_report("corollary1", Relation::le, lhs, {{"C_times_excess", std::isfinite(c_eff) ? c_eff * denom : 0.0}});
    rep.slack = std::isfinite(c_eff) ? 0.0 : -lhs;
    rep.pass = std::isfinite(c_eff);
    rep.effective_constant = c_eff;
    prm.insert(prm.end(), {{"energy", F.total()}, {"excess", denom}, {"l2inf_grad", norm}});
    rep.params = prm;
    return rep;
}

InequalityReport check_gnorm_bound(const GField& G, const ComplexField& field, const ConstructionParams& params,
                                   const TwoPhaseResult& result) {
    const Degrees d = inside_degrees(result);
    NamedValues prm = common_params(params, result, d);
    const double eta = params.eta_value();
    if (!(eta > 0.5)) throw ParameterError("gnorm bound needs eta > 1/2");
    const double K = 96.0 * (1.0 + eta) / (2.0 * eta - 1.0);
    const double T2 = 4.0 * kPi * (1.0 + eta) / (1.0 - eta) * d.sum_sq;

    const std::vector<Vec2> g = sample_G(G, field.grid);
    SampledMagnitudes m;
    m.cell_area = field.grid.cell_area();
    m.values.reserve(g.size());
    for (const Vec2& v : g) m.values.push_back(v.norm());
    const double gn = l2inf_norm(m);
    const double lhs = gn * gn;

    const RegionMask V = final_region(field.grid, result);
    const double F = result.final_balls.empty() ? 0.0 : gl_energy(field, V, params.r).total();
    prm.insert(prm.end(), {{"K", K}, {"energy_V", F}, {"l2inf_G", gn}});

    if (d.D == 0) {
        auto rep = make_report("gnorm_bound", Relation::le, lhs, {{"K_energy", K * F}, {"degree_sq", T2}});
        rep.params = prm;
        rep.note = "D = 0: no additive constant";
        return rep;
    }
    const double D = d.D;
    const double excess = F - kPi * D * std::log(params.r / (params.eps * D));
    const double c_eff = (lhs - T2 - K * excess) / (K * kPi * D);
    InequalityReport rep = make_report("gnorm_bound", Relation::le, lhs,
                                       {{"K_excess", K * excess}, {"K_pi_D_C", K * kPi * D * c_eff}, {"degree_sq", T2}});
    rep.slack = 0.0;
    rep.pass = std::isfinite(c_eff);
    rep.effective_constant = c_eff;
    rep.params = prm;
    return rep;
}

InequalityReport check_gnorm_annuli(const GField& G) {
    std::vector<AnnulusTerm> terms;
    for (const auto& ga : G.annuli)
        terms.push_back({ga.annulus.center, ga.annulus.inner, ga.annulus.outer, ga.coefficient});
    InequalityReport rep = check_annuli_lemma(terms);
    rep.name = "gnorm_annuli";
    return rep;
}

std::vector<InequalityReport> check_construction_invariants(const ComplexField& field, const TwoPhaseResult& result,
                                                            const TransitionTable& tr, const BetaTable& betas) {
    std::vector<InequalityReport> out;
    const double eta = result.params.eta_value();

    {
        const bool exact = beta_normalization_exact(result, betas, tr);
        auto rep = make_report("beta_normalization", Relation::le, exact ? 0.0 : 1.0, {{"violations", 0.0}});
        rep.note = "post-transition sum d^2 beta^2 = |D_n| in integer arithmetic";
        out.push_back(rep);
    }
    {
        const auto counts = effective_merge_counts(result, tr);
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t n = 0; n < counts.size(); ++n) {
            const int Dn = result.final_balls[n].degree.value_or(0);
            if (Dn == 0 || !result.final_inside[n]) continue;
            worst = std::max(worst, counts[n] - (1.0 + eta) / (1.0 - eta) * std::abs(Dn));
        }
        if (!std::isfinite(worst)) worst = 0.0;
        auto rep = make_report("effective_merge_count", Relation::le, worst, {{"zero", 0.0}});
        rep.note = "max over lineages of count - (1+eta)/(1-eta)|D_n|";
        out.push_back(rep);
    }
    {
        const VorticityMasses m = vorticity_masses(result);
        int violations = 0;
        for (std::size_t n = 0; n < m.mass.size(); ++n) {
            if (!result.final_inside[n]) continue;
            for (const auto& e : m.mass[n])
                if (e.present && e.P - e.N != m.D[n]) ++violations;
        }
        auto rep = make_report("degree_conservation", Relation::le, violations, {{"zero", 0.0}});
        out.push_back(rep);
    }
    {
        const RegionMask inset = inset_mask(field.grid, result.params.eps);
        const RegionMask far = mask_and(threshold_mask(field, ThresholdRule::far_from_unity(result.params.delta())), inset);
        int uncovered = 0;
        for (std::size_t j = 0; j < field.grid.ny; ++j)
            for (std::size_t i = 0; i < field.grid.nx; ++i) {
                if (!far.cells[field.grid.index(i, j)]) continue;
                const Vec2 p = field.grid.center(i, j);
                const bool in = std::any_of(result.final_balls.begin(), result.final_balls.end(),
                                            [&](const Ball& b) { return distance(p, b.center) <= b.radius; });
                if (!in) ++uncovered;
            }
        out.push_back(make_report("far_set_covered", Relation::le, uncovered, {{"zero", 0.0}}));
    }
    out.push_back(make_report("degree_evaluation", Relation::le, result.degree_failures, {{"zero", 0.0}}));
    if (!result.empty()) {
        const double r0 = result.initial.total_radius();
        const double rc = result.core_history.final_balls().empty() ? 0.0 : BallCollection{result.core_history.final_balls()}.total_radius();
        if (rc > 0.0) {
            auto rep = make_report("phase_radius_ratio", Relation::le, std::abs(rc / r0 - 0.375), {{"tolerance", 1e-10}});
            out.push_back(rep);
        }
        out.push_back(make_report("final_total_radius", Relation::le,
                                  std::abs(result.final_total_radius() - result.params.r) / result.params.r,
                                  {{"tolerance", 1e-10}}));
    }
    return out;
}

}  // namespace vortexball
