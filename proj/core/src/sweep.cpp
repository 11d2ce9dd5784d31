#include <charconv>
#include <limits>
#include <ostream>

#include "vortexball/verify.hpp"

namespace vortexball {

namespace {

double masked_norms(const std::vector<double>& mag, const RegionMask& mask, double area, double* weak) {
    SampledMagnitudes m;
    m.cell_area = area;
    for (std::size_t k = 0; k < mag.size(); ++k)
        if (mask.cells[k]) m.values.push_back(mag[k]);
    const LorentzStats st = lorentz_stats(m);
    if (weak) *weak = st.weak;
    return st.l2inf;
}

}  // namespace

SweepRow run_sweep_row(const SweepConfig& cfg, double eps) {
    SweepRow row;
    row.config = cfg.name;
    row.eps = eps;
    try {
        GridSpec grid;
        grid.origin = cfg.origin;
        grid.width = cfg.width;
        grid.height = cfg.height;
        grid.nx = static_cast<std::size_t>(std::ceil(cfg.width * cfg.cells_per_eps / eps));
        grid.ny = static_cast<std::size_t>(std::ceil(cfg.height * cfg.cells_per_eps / eps));
        row.nx = grid.nx;
        row.ny = grid.ny;
        const ComplexField field = synth_field(VortexSpec{cfg.vortices, eps}, grid);
        ConstructionParams params{cfg.alpha, eps, cfg.r, cfg.eta};

        const TwoPhaseResult res = two_phase_construct(field, params);
        const VorticityMasses masses = vorticity_masses(res);
        const TransitionTable tr = transition_generation(res, masses);
        const BetaTable betas = beta_table(res, tr);
        const GField G = build_G(res, betas);
        row.D = res.D;

        auto& reps = row.reports;
        reps.push_back(check_theorem1(field, params, res, G));
        reps.push_back(check_theorem2(field, params, res, G));
        reps.push_back(check_corollary1(field, params, res));
        reps.push_back(check_gnorm_bound(G, field, params, res));
        reps.push_back(check_gnorm_annuli(G));
        for (auto& r : check_construction_invariants(field, res, tr, betas)) reps.push_back(std::move(r));
        reps.push_back(check_e_rad_bound(field));

        auto grab = [&](const char* name) -> std::optional<double> {
            for (const auto& r : reps)
                if (r.name == name && !r.vacuous) return r.effective_constant;
            return std::nullopt;
        };
        row.c_theorem1 = grab("theorem1");
        row.c_theorem2 = grab("theorem2");
        row.c_corollary1 = grab("corollary1");
        row.c_gnorm = grab("gnorm_bound");

        const CovariantGradient grad = covariant_gradient(field);
        const std::vector<double> mag = grad.magnitudes();
        const double a = grid.cell_area();
        row.l2inf_omega = masked_norms(mag, full_mask(grid), a, &row.weak_omega);
        const RegionMask V = final_region(grid, res);
        if (!V.empty()) row.l2inf_V = masked_norms(mag, V, a, &row.weak_V);
        const auto curl = curl_samples(field);
        const EnergyParts eV = gl_energy(field, grad, curl, V, params.r);
        row.kinetic_V = eV.kinetic;
        row.potential_V = eV.potential;
        row.magnetic_V = eV.magnetic;
        row.energy_omega = gl_energy(field, grad, curl, full_mask(grid), 1.0).total();
        for (const auto& r : reps)
            if (r.name == "gnorm_bound")
                for (const auto& [k, v] : r.params)
                    if (k == "l2inf_G") row.g_l2inf = v;

        SampledMagnitudes sm{mag, a};
        reps.push_back(check_lorentz_sandwich(sm, "lorentz_sandwich_grad"));
        reps.push_back(check_lorentz_lower_bound(sm, eps, std::nullopt, "lorentz_lower_bound_grad"));

        if (cfg.sigma > 0.0) {
            const auto jr = check_jerrard(field, cfg.sigma, cfg.c_cal);
            double worst = std::numeric_limits<double>::infinity();
            for (const auto& r : jr)
                if (r.name.rfind("jerrard_ball_", 0) == 0) worst = std::min(worst, r.slack);
            if (std::isfinite(worst)) row.jerrard_min_slack = worst;
            reps.insert(reps.end(), jr.begin(), jr.end());
        }
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

SweepTable run_sweep(const std::vector<SweepConfig>& configs, const std::vector<double>& eps_list) {
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0)) throw ParameterError("sweep eps values must be positive");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1])) throw ParameterError("sweep eps values must be strictly decreasing");
    }
    SweepTable t;
    for (const auto& cfg : configs)
        for (double eps : eps_list) t.rows.push_back(run_sweep_row(cfg, eps));
    return t;
}

namespace {

void put(std::ostream& out, double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    out.write(buf, r.ptr - buf);
}

void put(std::ostream& out, const std::optional<double>& v) {
    if (v) put(out, *v);
}

// RFC-4180 quoting for free text.
void put_text(std::ostream& out, const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        out << s;
        return;
    }
    out << '"';
    for (char ch : s) {
        if (ch == '"') out << '"';
        out << ch;
    }
    out << '"';
}

}  // namespace

void write_sweep_csv(const SweepTable& t, std::ostream& out) {
    out << "config,eps,nx,ny,D,c_theorem1,c_theorem2,c_corollary1,c_gnorm,weak_omega,l2inf_omega,weak_V,l2inf_V,"
           "l2inf_G,kinetic_V,potential_V,magnetic_V,energy_omega,jerrard_min_slack,error\r\n";
    for (const auto& r : t.rows) {
        put_text(out, r.config);
        out << ',';
        put(out, r.eps);
        out << ',' << r.nx << ',' << r.ny << ',' << r.D << ',';
        put(out, r.c_theorem1);
        out << ',';
        put(out, r.c_theorem2);
        out << ',';
        put(out, r.c_corollary1);
        out << ',';
        put(out, r.c_gnorm);
        for (double v : {r.weak_omega, r.l2inf_omega, r.weak_V, r.l2inf_V, r.g_l2inf, r.kinetic_V, r.potential_V,
                         r.magnetic_V, r.energy_omega}) {
            out << ',';
            put(out, v);
        }
        out << ',';
        put(out, r.jerrard_min_slack);
        out << ',';
        put_text(out, r.error);
        out << "\r\n";
    }
}

}  // namespace vortexball
