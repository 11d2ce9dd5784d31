// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "../support/oracles.hpp"
#include "cli/commands.hpp"
#include "cli/field_io.hpp"
#include "vortexball/construction.hpp"
#include "vortexball/lorentz.hpp"
#include "vortexball/verify.hpp"

using namespace vortexball;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

GridSpec square(double half, std::size_t n) { return GridSpec{{-half, -half}, 2 * half, 2 * half, n, n}; }

SampledMagnitudes annulus_gradient(const ComplexField& f, double rho, double R, double* kinetic) {
    const CovariantGradient g = covariant_gradient(f);
    const RegionMask ring = annulus_mask(f.grid, {0.0, 0.0}, rho, R);
    SampledMagnitudes m{{}, f.grid.cell_area()};
    double ke = 0.0;
    for (std::size_t k = 0; k < f.u.size(); ++k)
        if (ring.cells[k]) {
            const double v = g.magnitude(k);
            m.values.push_back(v);
            ke += 0.5 * v * v;
        }
    *kinetic = ke * f.grid.cell_area();
    return m;
}

// 1/max(|x|, core) on the unit disk; the core cap keeps the top-ranked cells from dominating the weak norm.
SampledMagnitudes inverse_radius_raster(std::size_t n, double core) {
    const GridSpec g = square(1.0, n);
    SampledMagnitudes m{{}, g.cell_area()};
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const double r = g.center(i, j).norm();
            if (r <= 1.0) m.values.push_back(1.0 / std::max(r, core));
        }
    return m;
}

SampledMagnitudes random_magnitudes(std::mt19937_64& rng, int kind) {
    std::uniform_int_distribution<int> size(1, 4000);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SampledMagnitudes m{std::vector<double>(static_cast<std::size_t>(size(rng))), 0.001 + u(rng)};
    std::lognormal_distribution<double> ln(0.0, 2.0);
    std::uniform_int_distribution<int> few(0, 3);
    for (double& v : m.values) {
        switch (kind % 5) {
            case 0: v = u(rng); break;
            case 1: v = ln(rng); break;
            case 2: v = static_cast<double>(few(rng)); break;  // heavy ties and zeros
            case 3: v = 1.0 / (u(rng) + 1e-6); break;
            default: v = u(rng) < 0.05 ? 1e3 * u(rng) : 0.0; break;
        }
    }
    return m;
}

Outcome criterion1_2(int which) {
    Outcome o;
    const double eps = 0.01, rho = 10 * eps, R = 0.5;
    for (int d : {1, 2, 3}) {
        const auto t0 = Clock::now();
        const ComplexField f = synth_field(VortexSpec{{{{0.0, 0.0}, d}}, eps}, square(1.0, 1024));
        double ke = 0.0;
        const SampledMagnitudes m = annulus_gradient(f, rho, R, &ke);
        const double weak = weak_quasinorm(m);
        const double secs = seconds_since(t0);
        if (which == 1) {
            const double target = kPi * d * d * std::log(R / rho);
            const double rel = std::abs(ke - target) / target;
            o.detail << " d=" << d << " rel=" << rel << " t=" << secs << "s";
            o.require(rel < 0.03, "energy within 3% for d=" + std::to_string(d));
            o.require(secs < 30.0, "runtime for d=" + std::to_string(d));
        } else {
            const double target = std::sqrt(kPi) * d * std::sqrt(1 - rho * rho / (R * R));
            const double rel = std::abs(weak - target) / target;
            o.detail << " d=" << d << " weak=" << weak << " rel=" << rel;
            o.require(rel < 0.05, "weak norm within 5% for d=" + std::to_string(d));
        }
    }
    return o;
}

Outcome criterion3() {
    Outcome o;
    std::mt19937_64 rng(3003);
    int failures = 0;
    for (int i = 0; i < 100; ++i)
        if (!check_lorentz_sandwich(random_magnitudes(rng, i)).pass) ++failures;
    o.detail << " random fields failing=" << failures;
    o.require(failures == 0, "sandwich on random fields");

    const auto rep = check_lorentz_sandwich(inverse_radius_raster(1024, 0.02));
    double ratio = 0.0;
    for (const auto& [k, v] : rep.params)
        if (k == "ratio") ratio = v;
    o.detail << " 1/|x| ratio=" << ratio;
    o.require(rep.pass, "sandwich on 1/|x|");
    o.require(ratio >= 1.9, "1/|x| ratio >= 1.9");
    return o;
}

std::vector<GrowthHistory> seeded_histories(std::vector<std::vector<Ball>>* inputs) {
    std::mt19937_64 rng(4004);
    std::vector<GrowthHistory> out;
    for (int i = 0; i < 50; ++i) {
        auto balls = oracle::random_balls(rng, 20);
        out.push_back(grow(BallCollection{balls}, 1.2));
        if (inputs) inputs->push_back(std::move(balls));
    }
    return out;
}

Outcome criterion4() {
    Outcome o;
    std::vector<std::vector<Ball>> inputs;
    const auto hs = seeded_histories(&inputs);
    double worst_law = 0.0;
    int disjoint_fail = 0, inclusion_fail = 0, tree_fail = 0;
    for (std::size_t c = 0; c < hs.size(); ++c) {
        const GrowthHistory& h = hs[c];
        const double r0 = BallCollection{inputs[c]}.total_radius();
        for (std::size_t k = 0; k < h.generations.size(); ++k) {
            const auto& g = h.generations[k];
            const double expect = r0 * std::exp(g.time);
            worst_law = std::max(worst_law, std::abs(BallCollection{g.before}.total_radius() - expect) / expect);
            worst_law = std::max(worst_law, std::abs(BallCollection{g.after}.total_radius() - expect) / expect);
            if (!pairwise_disjoint(g.after)) ++disjoint_fail;
            if (k == 0) continue;
            const auto& prev = h.generations[k - 1];
            for (std::size_t i = 0; i < prev.after.size(); ++i) {
                const int anc = h.ancestor_in(prev.after_ids[i], k);
                const auto it = std::find(g.after_ids.begin(), g.after_ids.end(), anc);
                if (it == g.after_ids.end() || !g.after[static_cast<std::size_t>(it - g.after_ids.begin())].contains(prev.after[i]))
                    ++inclusion_fail;
            }
        }
        if (oracle::merge_leaf_sets(h) != oracle::merge_leaf_sets(oracle::brute_grow(inputs[c], 1.2, 1e-5))) ++tree_fail;
    }
    o.detail << " worst e^t deviation=" << worst_law << " disjoint_fail=" << disjoint_fail
             << " inclusion_fail=" << inclusion_fail << " tree_mismatch=" << tree_fail;
    o.require(worst_law <= 1e-12, "e^t law");
    o.require(disjoint_fail == 0, "disjointness");
    o.require(inclusion_fail == 0, "monotone inclusion");
    o.require(tree_fail == 0, "merge trees");
    return o;
}

Outcome criterion5() {
    Outcome o;
    const RadialPolynomial area{[](Vec2) { return std::vector<double>{0.0, 0.0, kPi}; }};
    const RadialPolynomial perimeter{[](Vec2) { return std::vector<double>{0.0, 2.0 * kPi}; }};
    double worst = 0.0;
    for (const auto& h : seeded_histories(nullptr)) {
        worst = std::max(worst, accounting_residual(h, area));
        worst = std::max(worst, accounting_residual(h, perimeter));
    }
    o.detail << " worst residual=" << worst;
    o.require(worst < 1e-9, "residual < 1e-9");
    return o;
}

Outcome criterion6() {
    Outcome o;
    std::mt19937_64 rng(6006);
    std::uniform_int_distribution<int> count(1, 8);
    std::uniform_real_distribution<double> coef(0.1, 3.0);
    int failures = 0;
    for (int i = 0; i < 100; ++i) failures += !check_annuli_lemma(cli::random_disjoint_annuli(rng, count(rng))).pass;
    for (int i = 0; i < 100; ++i) {
        const double a = coef(rng);
        failures += !check_zero_merging_lemma(cli::random_annulus_chain(rng, count(rng), a), a).pass;
    }
    const auto eq = check_annuli_lemma({{{0.0, 0.0}, 0.5, 1.0, 1.0}});
    o.detail << " failures=" << failures << " equality bound=" << eq.rhs() << " slack=" << eq.slack;
    o.require(failures == 0, "200 seeded inputs");
    o.require(eq.pass && eq.slack == 0.0, "equality case attained exactly");
    o.require(std::abs(eq.rhs() - 0.75 * kPi) < 1e-15, "bound equals 3 pi / 4");
    return o;
}

Outcome criterion7() {
    Outcome o;
    std::mt19937_64 rng(7007);
    std::uniform_real_distribution<double> pos(-0.4, 0.4);
    std::uniform_int_distribution<int> deg(-2, 2);
    int histories = 0, beta_fail = 0, persistence_fail = 0, late = 0;
    for (int trial = 0; trial < 24; ++trial) {
        std::vector<Vortex> vs;
        const int n = 1 + trial % 5;
        while (static_cast<int>(vs.size()) < n) {
            Vortex v{{pos(rng), pos(rng)}, deg(rng)};
            if (v.degree == 0) continue;
            bool far = true;
            for (const auto& q : vs) far = far && distance(q.center, v.center) > 0.06;
            if (far) vs.push_back(v);
        }
        const ComplexField f = synth_field(VortexSpec{vs, 0.01}, square(1.0, 400));
        const TwoPhaseResult res = two_phase_construct(f, ConstructionParams{0.25, 0.01, 0.9, 0.0});
        ++histories;
        try {
            const auto tr = transition_generation(res, vorticity_masses(res));
            for (const auto& t : tr.per_final) late += t.k > 1;
            beta_fail += !beta_normalization_exact(res, beta_table(res, tr), tr);
        } catch (const ConsistencyError&) {
            ++persistence_fail;
        }
    }
    o.detail << " histories=" << histories << " late_transitions=" << late << " beta_fail=" << beta_fail
             << " persistence_fail=" << persistence_fail;
    o.require(beta_fail == 0, "beta normalization");
    o.require(persistence_fail == 0, "persistence");
    return o;
}

SweepConfig single_config() {
    SweepConfig c;
    c.name = "single";
    c.vortices = {{{0.0, 0.0}, 1}};
    c.alpha = 0.5;
    c.r = 0.5;
    return c;
}

SweepConfig lattice_config() {
    SweepConfig c;
    c.name = "lattice4";
    c.vortices = {{{-0.4, -0.4}, 1}, {{0.4, -0.4}, 1}, {{-0.4, 0.4}, 1}, {{0.4, 0.4}, 1}};
    c.alpha = 0.25;
    c.r = 0.9;
    return c;
}

Outcome criterion8(const SweepTable& t) {
    Outcome o;
    for (const char* cfg : {"single", "lattice4"}) {
        using Getter = std::function<std::optional<double>(const SweepRow&)>;
        const std::pair<const char*, Getter> fields[] = {
            {"theorem1", [](const SweepRow& r) { return r.c_theorem1; }},
            {"theorem2", [](const SweepRow& r) { return r.c_theorem2; }},
            {"corollary1", [](const SweepRow& r) { return r.c_corollary1; }},
            {"gnorm", [](const SweepRow& r) { return r.c_gnorm; }}};
        for (const auto& [name, get] : fields) {
            double lo = 1e300, hi = -1e300;
            bool complete = true;
            for (const auto& row : t.rows) {
                if (row.config != cfg) continue;
                const auto v = get(row);
                if (!row.error.empty() || !v || !std::isfinite(*v)) {
                    complete = false;
                    continue;
                }
                lo = std::min(lo, *v);
                hi = std::max(hi, *v);
            }
            o.detail << " " << cfg << "." << name << " spread=" << (complete ? hi - lo : -1.0);
            o.require(complete, std::string(cfg) + "." + name + " finite on every row");
            o.require(complete && hi - lo < 1.0, std::string(cfg) + "." + name + " spread < 1");
        }
    }
    const double coef = norm_coefficient(default_eta());
    o.detail << " 1/coefficient=" << 1.0 / coef;
    o.require(std::abs(coef - (1 - default_eta()) / (18 * (1 + default_eta()))) < 1e-18, "coefficient formula");
    o.require(std::abs(1.0 / coef - 951.0) < 0.002 * 951.0, "coefficient near 1/951");
    return o;
}

Outcome criterion9(const SweepTable& t) {
    Outcome o;
    int checked = 0, failures = 0;
    for (const auto& row : t.rows)
        for (const auto& r : row.reports)
            if (r.name == "lorentz_lower_bound_grad") {
                ++checked;
                failures += !r.pass;
            }
    std::mt19937_64 rng(9009);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double eps = 0.001 + 0.2 * u(rng);
        SampledMagnitudes m = random_magnitudes(rng, i);
        double mx = 0.0;
        for (double v : m.values) mx = std::max(mx, v);
        const double C = eps * mx * (1.0 + u(rng));
        ++checked;
        failures += !lorentz_lower_bound_check(m, C, eps).pass;
    }
    const double eps = 0.01;
    SampledMagnitudes zero{std::vector<double>(1000, 0.0), 1e-3};
    ++checked;
    failures += !lorentz_lower_bound_check(zero, 1.0, eps).pass;
    const LowerBoundCheck inv = lorentz_lower_bound_check(inverse_radius_raster(1024, eps), 1.0, eps);
    ++checked;
    failures += !inv.pass;
    o.detail << " checked=" << checked << " failures=" << failures << " 1/max(|x|,eps): lhs=" << inv.lhs
             << " rhs=" << inv.rhs;
    o.require(failures == 0, "every admissible field");
    return o;
}

Outcome criterion10(const SweepTable& t) {
    Outcome o;
    double worst_eq = 0.0;
    for (int d : {1, 2, 3, -1}) {
        for (double m : {1.0, 0.8, 0.3}) {
            constexpr int n = 4096;
            std::vector<cplx> u(n);
            for (int k = 0; k < n; ++k) {
                const double th = 2 * kPi * k / n;
                u[static_cast<std::size_t>(k)] = std::polar(m, d * th + 0.3 * std::sin(2 * th));
            }
            const auto rep = check_jerrard_circle(u, 0.4, d, 1.0);
            worst_eq = std::max(worst_eq, std::abs(rep.slack) / rep.lhs);
        }
    }
    o.detail << " circle equality rel=" << worst_eq;
    o.require(worst_eq <= 1e-6, "circle equality case");

    double worst_mono = 1e300;
    for (double eps : {0.02, 0.01, 0.005})
        for (int d = 1; d <= 3; ++d)
            for (int i = 0; i < 100; ++i) {
                const double r = eps * std::pow(1.0 / eps, i / 99.0);
                worst_mono = std::min(worst_mono, jerrard_lambda(r, d, kJerrardCalibration, eps) -
                                                      jerrard_lambda(r / d, 1, kJerrardCalibration, eps));
            }
    o.detail << " min lambda gap=" << worst_mono;
    o.require(worst_mono >= 0.0, "lambda monotone in d");

    int rows = 0;
    double worst_ball = 1e300;
    for (const auto& row : t.rows) {
        ++rows;
        if (!row.jerrard_min_slack) {
            o.require(false, "jerrard rows for " + row.config);
            continue;
        }
        worst_ball = std::min(worst_ball, *row.jerrard_min_slack);
        for (const auto& r : row.reports)
            if (r.name.rfind("jerrard", 0) == 0 && r.hard && !r.vacuous && !r.pass) o.require(false, r.name);
    }
    o.detail << " c_cal=" << kJerrardCalibration << " rows=" << rows << " min per-ball slack=" << worst_ball;
    o.require(worst_ball >= 0.0, "per-ball bound at frozen c_cal");
    return o;
}

Outcome criterion11() {
    Outcome o;
    const fs::path base = fs::temp_directory_path() / "vortexball_acceptance";
    fs::remove_all(base);
    auto run = [&](const std::string& sub, const std::string& out, std::vector<std::string> extra) {
        std::vector<std::string> args{"vortexball", sub, "--out", (base / out).string()};
        args.insert(args.end(), extra.begin(), extra.end());
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream sink;
        return cli::run_cli(static_cast<int>(argv.size()), argv.data(), sink, sink);
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::vector<std::string> cfg{"--grid", "400", "--eps", "0.02", "--seed", "11"};
    const int a = run("verify", "a", cfg), b = run("verify", "b", cfg);
    const bool same_report = slurp(base / "a" / "report.json") == slurp(base / "b" / "report.json");
    o.require(a == 0 && b == 0, "verify runs succeed");
    o.require(same_report && !slurp(base / "a" / "report.json").empty(), "byte-identical reports");

    const int s = run("synth", "f", cfg);
    const ComplexField f = cli::load_field((base / "f" / "field.glf").string());
    cli::save_field(f, (base / "f" / "again.glf").string());
    const bool same_field = slurp(base / "f" / "field.glf") == slurp(base / "f" / "again.glf");
    o.require(s == 0, "synth succeeds");
    o.require(same_field, "field round trip");
    o.detail << " reports_identical=" << same_report << " field_identical=" << same_field;
    fs::remove_all(base);
    return o;
}

}  // namespace

int main() {
    std::cout.precision(6);
    int failed = 0;
    auto report = [&](int id, const char* title, const std::function<Outcome()>& fn) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " exception: " << e.what();
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << title << "):" << o.detail.str()
                  << " [" << seconds_since(t0) << " s]" << std::endl;
    };

    report(1, "radial vortex energy", [] { return criterion1_2(1); });
    report(2, "weak norm of a vortex", [] { return criterion1_2(2); });
    report(3, "Lorentz sandwich", criterion3);
    report(4, "growth laws", criterion4);
    report(5, "accounting identity", criterion5);
    report(6, "exact annuli lemmas", criterion6);
    report(7, "beta normalization and persistence", criterion7);

    SweepTable sweep;
    try {
        sweep = run_sweep({single_config(), lattice_config()}, {0.02, 0.01, 0.005});
    } catch (const std::exception& e) {
        std::cout << "sweep failed: " << e.what() << std::endl;
    }
    for (const auto& row : sweep.rows)
        if (!row.error.empty()) std::cout << "  sweep row " << row.config << " eps=" << row.eps << ": " << row.error << std::endl;
    report(8, "bounded theorem deficits", [&] { return criterion8(sweep); });
    report(9, "Lorentz lower bound", [&] { return criterion9(sweep); });
    report(10, "Jerrard suite", [&] { return criterion10(sweep); });
    report(11, "determinism", criterion11);

    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
