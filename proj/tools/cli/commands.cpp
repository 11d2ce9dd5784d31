#include "commands.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "field_io.hpp"
#include "serialize.hpp"
#include "vortexball/construction.hpp"
#include "vortexball/lorentz.hpp"

namespace vortexball::cli {

namespace fs = std::filesystem;

namespace {

std::string prepare_out(const RunConfig& cfg) {
    std::error_code ec;
    fs::create_directories(cfg.out, ec);
    if (ec) throw IoError("cannot create output directory '" + cfg.out + "': " + ec.message());
    return cfg.out;
}

std::string join(const std::string& dir, const char* name) { return (fs::path(dir) / name).string(); }

ConstructionParams params_for(const RunConfig& cfg, const ComplexField& field) {
    ConstructionParams p{cfg.alpha, field.eps, cfg.radius, cfg.eta};
    p.validate();
    return p;
}

struct Pipeline {
    TwoPhaseResult res;
    TransitionTable tr;
    BetaTable betas;
    GField G;
};

Pipeline construct(const ComplexField& field, const ConstructionParams& p) {
    Pipeline pl;
    pl.res = two_phase_construct(field, p);
    const VorticityMasses masses = vorticity_masses(pl.res);
    pl.tr = transition_generation(pl.res, masses);
    pl.betas = beta_table(pl.res, pl.tr);
    pl.G = build_G(pl.res, pl.betas);
    return pl;
}

void write_csv(const std::string& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path + "'");
    body(out);
}

SampledMagnitudes masked(const std::vector<double>& mag, const RegionMask& mask, double area) {
    SampledMagnitudes m;
    m.cell_area = area;
    for (std::size_t k = 0; k < mag.size(); ++k)
        if (mask.cells[k]) m.values.push_back(mag[k]);
    return m;
}

std::vector<InequalityReport> random_reports(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<InequalityReport> out;
    std::uniform_int_distribution<int> count(1, 6);
    std::uniform_real_distribution<double> coef(0.25, 3.0);
    for (int i = 0; i < 10; ++i) {
        auto rep = check_annuli_lemma(random_disjoint_annuli(rng, count(rng)));
        rep.name = "annuli_lemma_random_" + std::to_string(i);
        out.push_back(std::move(rep));
    }
    for (int i = 0; i < 10; ++i) {
        const double a = coef(rng);
        auto rep = check_zero_merging_lemma(random_annulus_chain(rng, count(rng), a), a);
        rep.name = "zero_merging_random_" + std::to_string(i);
        out.push_back(std::move(rep));
    }
    std::lognormal_distribution<double> mag(0.0, 1.5);
    for (int i = 0; i < 5; ++i) {
        SampledMagnitudes m{std::vector<double>(4096), 1.0 / 4096.0};
        for (double& v : m.values) v = mag(rng);
        out.push_back(check_lorentz_sandwich(m, "lorentz_sandwich_random_" + std::to_string(i)));
    }
    return out;
}

}  // namespace

std::vector<AnnulusTerm> random_disjoint_annuli(std::mt19937_64& rng, int count) {
    std::uniform_real_distribution<double> pos(-4.0, 4.0), rin(0.05, 0.8), ratio(1.05, 4.0), coef(-3.0, 3.0);
    std::vector<AnnulusTerm> out;
    while (static_cast<int>(out.size()) < count) {
        AnnulusTerm t{{pos(rng), pos(rng)}, rin(rng), 0.0, coef(rng)};
        t.outer = t.inner * ratio(rng);
        bool clear = true;
        for (const auto& o : out) clear = clear && distance(o.center, t.center) > o.outer + t.outer;
        if (clear) out.push_back(t);
    }
    return out;
}

std::vector<AnnulusTerm> random_annulus_chain(std::mt19937_64& rng, int count, double a) {
    std::uniform_real_distribution<double> gap(1.0, 2.0), ratio(1.05, 3.0), frac(-1.0, 1.0), start(0.01, 0.2);
    std::vector<AnnulusTerm> out;
    double r = start(rng);
    for (int i = 0; i < count; ++i) {
        AnnulusTerm t{{0.0, 0.0}, r, r * ratio(rng), a * frac(rng)};
        out.push_back(t);
        r = t.outer * gap(rng);
    }
    return out;
}

bool any_hard_failure(const std::vector<InequalityReport>& reps) {
    for (const auto& r : reps)
        if (r.hard && !r.vacuous && !r.pass) return true;
    return false;
}

ComplexField acquire_field(const RunConfig& cfg) {
    if (cfg.field_path) return load_field(*cfg.field_path);
    return synth_field(cfg.vortex_spec(), cfg.grid());
}

int cmd_synth(const RunConfig& cfg, std::ostream& log) {
    const ComplexField field = acquire_field(cfg);
    const std::string dir = prepare_out(cfg);
    save_field(field, join(dir, "field.glf"));
    const EnergyParts e = gl_energy(field, full_mask(field.grid));
    log << "field " << field.grid.nx << "x" << field.grid.ny << " eps=" << field.eps << " energy=" << e.total()
        << " -> " << join(dir, "field.glf") << '\n';
    return kOk;
}

int cmd_construct(const RunConfig& cfg, std::ostream& log) {
    const ComplexField field = acquire_field(cfg);
    const std::string dir = prepare_out(cfg);
    Json j;
    j["config"] = to_json(cfg);
    if (cfg.growth == GrowthKind::jerrard) {
        const JerrardRun run = run_jerrard(field, cfg.sigma, kJerrardCalibration);
        j["jerrard"] = {{"sigma", cfg.sigma}, {"s", run.s}, {"history", to_json(run.history)},
                        {"per_ball", to_json(run.per_ball)}};
        log << "jerrard growth: " << run.history.generations.size() << " generations, "
            << run.history.final_balls().size() << " final balls, s=" << run.s << '\n';
    } else {
        const Pipeline pl = construct(field, params_for(cfg, field));
        j["construction"] = construction_json(pl.res, pl.tr, pl.betas, pl.G);
        log << "construction: R=" << pl.res.R << " s=" << pl.res.s << " generations=" << pl.res.family.size()
            << " final balls=" << pl.res.final_balls.size() << " D=" << pl.res.D << '\n';
    }
    write_json(j, join(dir, "history.json"));
    return kOk;
}

namespace {

std::vector<InequalityReport> single_run_reports(const RunConfig& cfg, const ComplexField& field, Json& summary) {
    const ConstructionParams p = params_for(cfg, field);
    const Pipeline pl = construct(field, p);
    summary = {{"R", pl.res.R}, {"s", pl.res.s}, {"D", pl.res.D}, {"generations", pl.res.family.size()},
               {"final_balls", pl.res.final_balls.size()}};

    std::vector<InequalityReport> reps;
    reps.push_back(check_theorem1(field, p, pl.res, pl.G));
    reps.push_back(check_theorem2(field, p, pl.res, pl.G));
    reps.push_back(check_corollary1(field, p, pl.res));
    reps.push_back(check_gnorm_bound(pl.G, field, p, pl.res));
    reps.push_back(check_gnorm_annuli(pl.G));
    for (auto& r : check_construction_invariants(field, pl.res, pl.tr, pl.betas)) reps.push_back(std::move(r));
    reps.push_back(check_e_rad_bound(field));

    // Per-annulus lower bounds on the nonzero-degree annuli of the main phase.
    int done = 0;
    for (const auto& a : pl.G.annuli) {
        if (done >= 16) break;
        const int d = a.annulus.degree.value_or(0);
        if (d == 0 || a.annulus.tau <= 0.0) continue;
        if (!circle_in_sampled_region(field.grid, a.annulus.center, a.annulus.outer)) continue;
        try {
            auto ab = check_annulus_bound(field, a.annulus.center, a.annulus.inner, a.annulus.outer, d);
            const std::string tag = "_g" + std::to_string(a.annulus.generation) + "_" + std::to_string(a.annulus.index);
            ab.log_bound.name += tag;
            ab.square_bound.name += tag;
            reps.push_back(std::move(ab.log_bound));
            reps.push_back(std::move(ab.square_bound));
            ++done;
        } catch (const PreconditionError&) {
            // annulus not resolved by the grid
        }
    }

    const CovariantGradient grad = covariant_gradient(field);
    const SampledMagnitudes all{grad.magnitudes(), field.grid.cell_area()};
    reps.push_back(check_lorentz_sandwich(all, "lorentz_sandwich_grad"));
    reps.push_back(check_lorentz_lower_bound(all, field.eps, std::nullopt, "lorentz_lower_bound_grad"));

    try {
        for (auto& r : check_jerrard(field, cfg.sigma, kJerrardCalibration)) reps.push_back(std::move(r));
    } catch (const PreconditionError& e) {
        InequalityReport r;
        r.name = "jerrard";
        r.vacuous = true;
        r.note = e.what();
        reps.push_back(std::move(r));
    }
    for (auto& r : random_reports(cfg.seed)) reps.push_back(std::move(r));
    return reps;
}

}  // namespace

int cmd_verify(const RunConfig& cfg, std::ostream& log) {
    const std::string dir = prepare_out(cfg);
    Json j;
    j["config"] = to_json(cfg);
    bool failed = false;
    if (!cfg.sweep.empty()) {
        if (cfg.field_path) throw ConfigError("--sweep synthesizes fields per eps and cannot be combined with a field file");
        SweepConfig sc;
        sc.name = "config";
        sc.vortices = cfg.vortices;
        sc.origin = cfg.origin;
        sc.width = cfg.width;
        sc.height = cfg.height;
        sc.cells_per_eps = cfg.cells_per_eps;
        sc.alpha = cfg.alpha;
        sc.eta = cfg.eta;
        sc.r = cfg.radius;
        sc.sigma = cfg.sigma;
        const SweepTable t = run_sweep({sc}, cfg.sweep);
        write_csv(join(dir, "sweep.csv"), [&](std::ostream& o) { write_sweep_csv(t, o); });
        j["rows"] = Json::array();
        for (const auto& row : t.rows) {
            j["rows"].push_back(to_json(row));
            const bool bad = any_hard_failure(row.reports);
            failed = failed || bad;
            log << "eps=" << row.eps << " D=" << row.D << (row.error.empty() ? "" : " error: " + row.error)
                << (bad ? " FAIL" : "") << '\n';
        }
    } else {
        const ComplexField field = acquire_field(cfg);
        Json summary;
        const auto reps = single_run_reports(cfg, field, summary);
        j["construction"] = summary;
        j["reports"] = to_json(reps);
        for (const auto& r : reps)
            if (r.hard && !r.vacuous && !r.pass) log << "FAIL " << r.name << " slack=" << r.slack << '\n';
        failed = any_hard_failure(reps);
        log << reps.size() << " checks, " << (failed ? "hard failures present" : "all hard checks pass") << '\n';
    }
    j["passed"] = !failed;
    write_json(j, join(dir, "report.json"));
    return failed ? kAssertionFailed : kOk;
}

int cmd_norms(const RunConfig& cfg, std::ostream& log) {
    const ComplexField field = acquire_field(cfg);
    const std::string dir = prepare_out(cfg);
    const CovariantGradient grad = covariant_gradient(field);
    const std::vector<double> mag = grad.magnitudes();
    const double area = field.grid.cell_area();

    Json j;
    const LorentzStats omega = lorentz_stats(SampledMagnitudes{mag, area});
    j["omega"] = to_json(omega);
    write_csv(join(dir, "lambda_omega.csv"), [&](std::ostream& o) { write_distribution_csv(omega, o); });
    write_csv(join(dir, "fstar_omega.csv"), [&](std::ostream& o) { write_rearrangement_csv(omega, o); });
    log << "omega: weak=" << omega.weak << " l2inf=" << omega.l2inf << '\n';

    try {
        const Pipeline pl = construct(field, params_for(cfg, field));
        const RegionMask V = final_region(field.grid, pl.res);
        const LorentzStats sv = lorentz_stats(masked(mag, V, area));
        j["V"] = to_json(sv);
        write_csv(join(dir, "lambda_V.csv"), [&](std::ostream& o) { write_distribution_csv(sv, o); });
        write_csv(join(dir, "fstar_V.csv"), [&](std::ostream& o) { write_rearrangement_csv(sv, o); });
        log << "V: weak=" << sv.weak << " l2inf=" << sv.l2inf << '\n';
    } catch (const std::exception& e) {
        // The Omega norms stand on their own when the construction hypotheses fail.
        if (!dynamic_cast<const HypothesisError*>(&e) && !dynamic_cast<const ParameterError*>(&e)) throw;
        j["V"] = nullptr;
        j["V_note"] = e.what();
        log << "V skipped: " << e.what() << '\n';
    }
    write_json(j, join(dir, "norms.json"));
    return kOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Vortex-ball constructions and Lorentz-norm estimates for Ginzburg-Landau fields", "vortexball"};
    app.require_subcommand(1);

    struct Flags {
        std::string config, out, growth, sweep, field;
        std::optional<std::size_t> grid;
        std::optional<double> eps, alpha, eta, radius;
        std::optional<std::uint64_t> seed;
    } f;

    auto add_flags = [&f](CLI::App* sub) {
        sub->add_option("--config", f.config, "JSON configuration file");
        sub->add_option("--out", f.out, "output directory");
        sub->add_option("--grid", f.grid, "cells per axis");
        sub->add_option("--eps", f.eps, "coherence length");
        sub->add_option("--alpha", f.alpha, "energy exponent in (0,1)");
        sub->add_option("--eta", f.eta, "transition ratio in (1/2,1)");
        sub->add_option("--radius", f.radius, "target total radius r");
        sub->add_option("--growth", f.growth, "uniform|jerrard")->check(CLI::IsMember({"uniform", "jerrard"}));
        sub->add_option("--sweep", f.sweep, "comma-separated decreasing eps list");
        sub->add_option("--seed", f.seed, "seed for randomized checks");
        sub->add_option("--field", f.field, "GLF1 field file to load instead of synthesizing");
    };
    CLI::App* synth = app.add_subcommand("synth", "synthesize a field from the vortex list");
    CLI::App* cons = app.add_subcommand("construct", "run the ball construction and write history.json");
    CLI::App* ver = app.add_subcommand("verify", "run all checks and write report.json");
    CLI::App* norms = app.add_subcommand("norms", "Lorentz norms of the covariant gradient");
    for (CLI::App* s : {synth, cons, ver, norms}) add_flags(s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        RunConfig cfg = f.config.empty() ? RunConfig{} : load_config(f.config);
        if (!f.out.empty()) cfg.out = f.out;
        if (f.grid) cfg.nx = cfg.ny = *f.grid;
        if (f.eps) cfg.eps = *f.eps;
        if (f.alpha) cfg.alpha = *f.alpha;
        if (f.eta) cfg.eta = *f.eta;
        if (f.radius) cfg.radius = *f.radius;
        if (!f.growth.empty()) cfg.growth = f.growth == "jerrard" ? GrowthKind::jerrard : GrowthKind::uniform;
        if (!f.sweep.empty()) cfg.sweep = parse_eps_list(f.sweep);
        if (f.seed) cfg.seed = *f.seed;
        if (!f.field.empty()) cfg.field_path = f.field;
        validate_config(cfg);

        if (synth->parsed()) return cmd_synth(cfg, out);
        if (cons->parsed()) return cmd_construct(cfg, out);
        if (ver->parsed()) return cmd_verify(cfg, out);
        return cmd_norms(cfg, out);
    } catch (const ConsistencyError& e) {
        err << "assertion failed: " << e.what() << '\n';
        return kAssertionFailed;
    } catch (const EvaluationError& e) {
        err << "assertion failed: " << e.what() << '\n';
        return kAssertionFailed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace vortexball::cli
