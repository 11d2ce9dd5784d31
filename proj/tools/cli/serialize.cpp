#include "serialize.hpp"

#include <fstream>

namespace vortexball::cli {

namespace {

Json named(const NamedValues& v) {
    Json j = Json::object();
    for (const auto& [k, x] : v) j[k] = x;
    return j;
}

Json point(Vec2 p) { return Json::array({p.x, p.y}); }

Json snapshot(const GenerationSnapshot& g) {
    Json j;
    j["time"] = g.time;
    j["parameter"] = g.parameter;
    j["before"] = to_json(g.before);
    j["before_ids"] = g.before_ids;
    j["after"] = to_json(g.after);
    j["after_ids"] = g.after_ids;
    return j;
}

Json annulus(const AnnulusRecord& a) {
    Json j;
    j["center"] = point(a.center);
    j["inner"] = a.inner;
    j["outer"] = a.outer;
    j["tau"] = a.tau;
    j["degree"] = a.degree ? Json(*a.degree) : Json(nullptr);
    j["generation"] = a.generation;
    j["index"] = a.index;
    j["lineage"] = a.lineage;
    j["ball_id"] = a.ball_id;
    return j;
}

}  // namespace

Json to_json(const Ball& b) {
    Json j;
    j["center"] = point(b.center);
    j["radius"] = b.radius;
    j["degree"] = b.degree ? Json(*b.degree) : Json(nullptr);
    return j;
}

Json to_json(const std::vector<Ball>& balls) {
    Json j = Json::array();
    for (const Ball& b : balls) j.push_back(to_json(b));
    return j;
}

Json to_json(const GrowthHistory& h) {
    Json j;
    j["kind"] = h.kind == GrowthKind::uniform ? "uniform" : "jerrard";
    j["final_time"] = h.final_time();
    j["stopped_above_target"] = h.stopped_above_target;
    j["generations"] = Json::array();
    for (const auto& g : h.generations) j["generations"].push_back(snapshot(g));
    j["merges"] = Json::array();
    for (const auto& m : h.merges) {
        Json e;
        e["time"] = m.time;
        e["absorbed"] = m.absorbed;
        e["result_id"] = m.result_id;
        e["result"] = to_json(m.result);
        j["merges"].push_back(e);
    }
    j["annuli"] = Json::array();
    for (const auto& a : h.annuli) j["annuli"].push_back(annulus(a));
    j["parent"] = h.parent;
    j["final_lineage"] = h.final_lineage;
    return j;
}

Json to_json(const InequalityReport& r) {
    Json j;
    j["name"] = r.name;
    j["relation"] = r.relation == Relation::ge ? ">=" : "<=";
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs();
    j["rhs_terms"] = named(r.rhs_terms);
    j["slack"] = r.slack;
    j["pass"] = r.pass;
    j["hard"] = r.hard;
    j["vacuous"] = r.vacuous;
    j["effective_constant"] = r.effective_constant ? Json(*r.effective_constant) : Json(nullptr);
    j["params"] = named(r.params);
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

Json to_json(const std::vector<InequalityReport>& reps) {
    Json j = Json::array();
    for (const auto& r : reps) j.push_back(to_json(r));
    return j;
}

Json to_json(const RunConfig& c) {
    Json j;
    j["domain"] = {{"origin", point(c.origin)}, {"extent", Json::array({c.width, c.height})}};
    j["grid"] = Json::array({c.nx, c.ny});
    j["eps"] = c.eps;
    j["alpha"] = c.alpha;
    j["eta"] = c.eta_value();
    j["radius"] = c.radius;
    j["vortices"] = Json::array();
    for (const auto& v : c.vortices) j["vortices"].push_back({{"x", v.center.x}, {"y", v.center.y}, {"d", v.degree}});
    j["growth"] = c.growth == GrowthKind::uniform ? "uniform" : "jerrard";
    j["sigma"] = c.sigma;
    j["sweep"] = c.sweep;
    j["cells_per_eps"] = c.cells_per_eps;
    j["seed"] = c.seed;
    j["field"] = c.field_path ? Json(*c.field_path) : Json(nullptr);
    return j;
}

Json to_json(const LorentzStats& s) {
    Json j;
    j["samples"] = s.rearrangement.size();
    j["cell_area"] = s.cell_area;
    j["weak"] = s.weak;
    j["l2inf"] = s.l2inf;
    j["l2"] = s.l2;
    j["ratio"] = s.weak > 0.0 ? Json(s.l2inf / s.weak) : Json(nullptr);
    return j;
}

Json to_json(const SweepRow& r) {
    auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
    Json j;
    j["config"] = r.config;
    j["eps"] = r.eps;
    j["grid"] = Json::array({r.nx, r.ny});
    j["D"] = r.D;
    j["c_theorem1"] = opt(r.c_theorem1);
    j["c_theorem2"] = opt(r.c_theorem2);
    j["c_corollary1"] = opt(r.c_corollary1);
    j["c_gnorm"] = opt(r.c_gnorm);
    j["weak_omega"] = r.weak_omega;
    j["l2inf_omega"] = r.l2inf_omega;
    j["weak_V"] = r.weak_V;
    j["l2inf_V"] = r.l2inf_V;
    j["l2inf_G"] = r.g_l2inf;
    j["kinetic_V"] = r.kinetic_V;
    j["potential_V"] = r.potential_V;
    j["magnetic_V"] = r.magnetic_V;
    j["energy_omega"] = r.energy_omega;
    j["jerrard_min_slack"] = opt(r.jerrard_min_slack);
    if (!r.error.empty()) j["error"] = r.error;
    j["reports"] = to_json(r.reports);
    return j;
}

Json construction_json(const TwoPhaseResult& res, const TransitionTable& tr, const BetaTable& betas, const GField& G) {
    Json j;
    j["alpha"] = res.params.alpha;
    j["eps"] = res.params.eps;
    j["r"] = res.params.r;
    j["eta"] = res.params.eta_value();
    j["delta"] = res.params.delta();
    j["modulus_energy"] = res.modulus_energy;
    j["energy_threshold"] = res.energy_threshold;
    j["R"] = res.R;
    j["sigma"] = res.sigma;
    j["s"] = res.s;
    j["effective_c0"] = res.effective_c0;
    j["D"] = res.D;
    j["degree_failures"] = res.degree_failures;
    j["far_covering"] = to_json(res.far_covering.balls);
    j["core_initial"] = to_json(res.core_initial.balls);
    j["merged_cover"] = to_json(res.merged_cover.balls);
    j["initial"] = to_json(res.initial.balls);
    j["final_balls"] = to_json(res.final_balls);
    j["final_inside"] = res.final_inside;
    j["core_history"] = to_json(res.core_history);
    j["main_history"] = to_json(res.main_history);
    j["family"] = Json::array();
    for (const auto& g : res.family) {
        Json e;
        e["k"] = g.k;
        e["t_start"] = g.t_start;
        e["t_end"] = g.t_end;
        e["phase"] = g.core_phase ? "core" : "main";
        e["start"] = Json::array();
        for (const auto& fb : g.start) {
            Json b = to_json(fb.ball);
            b["final_index"] = fb.final_index;
            e["start"].push_back(b);
        }
        e["end"] = Json::array();
        for (const auto& fb : g.end) e["end"].push_back(to_json(fb.ball));
        e["into"] = g.into;
        j["family"].push_back(e);
    }
    j["transitions"] = Json::array();
    for (const auto& t : tr.per_final) j["transitions"].push_back({{"k", t.k}, {"time", t.time}});
    j["beta"] = Json::array();
    for (const auto& b : betas.entries)
        j["beta"].push_back({{"k", b.k}, {"i", b.i}, {"n", b.n}, {"degree", b.degree}, {"beta", b.beta},
                             {"beta_sq", std::to_string(b.num) + "/" + std::to_string(b.den)}});
    j["G"] = Json::array();
    for (const auto& a : G.annuli) {
        Json e = annulus(a.annulus);
        e["coefficient"] = a.coefficient;
        j["G"].push_back(e);
    }
    return j;
}

void write_json(const Json& j, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
    if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace vortexball::cli
