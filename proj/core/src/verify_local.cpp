#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>

#include "vortexball/verify.hpp"

namespace vortexball {

using boost::multiprecision::cpp_rational;

double InequalityReport::rhs() const {
    double s = 0.0;
    for (const auto& [k, v] : rhs_terms) s += v;
    return s;
}

InequalityReport make_report(std::string name, Relation rel, double lhs, NamedValues terms, double tolerance) {
    InequalityReport r;
    r.name = std::move(name);
    r.relation = rel;
    r.lhs = lhs;
    r.rhs_terms = std::move(terms);
    const double rhs = r.rhs();
    r.slack = rel == Relation::ge ? lhs - rhs : rhs - lhs;
    r.pass = std::isfinite(r.slack) && r.slack >= -tolerance;
    return r;
}

InequalityReport check_circle_bound(const std::vector<cplx>& v, Vec2 center, double radius, const VectorPotential* A,
                                    double c, double lambda) {
    const std::size_t n = v.size();
    if (n < 256) throw PreconditionError("check_circle_bound: at least 256 samples required");
    if (!(radius > 0.0) || !(lambda > 0.0)) throw PreconditionError("check_circle_bound: radius and lambda must be positive");
    for (const cplx& z : v)
        if (std::abs(std::abs(z) - 1.0) > 1e-8) throw PreconditionError("check_circle_bound: samples must have unit modulus");

    const double ds = 2.0 * kPi * radius / static_cast<double>(n);
    double winding = 0.0, plain = 0.0, twisted = 0.0, flux = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double inc = std::arg(v[(k + 1) % n] * std::conj(v[k]));
        winding += inc;
        const double th = 2.0 * kPi * (static_cast<double>(k) + 0.5) / static_cast<double>(n);
        const Vec2 tangent{-std::sin(th), std::cos(th)};
        const double at = A ? dot(A->value(center + Vec2{std::cos(th), std::sin(th)} * radius), tangent) : 0.0;
        const double w = inc / ds - at;
        plain += w * w;
        twisted += (w - c / radius) * (w - c / radius);
        flux += at;
    }
    const int d = static_cast<int>(std::lround(winding / (2.0 * kPi)));
    plain *= 0.5 * ds;
    twisted *= 0.5 * ds;
    flux *= ds;

    // Polar midpoint quadrature of (curl A)^2 over the disk.
    double curl2 = 0.0;
    if (A && A->curl) {
        constexpr int nr = 256, nt = 256;
        const double dr = radius / nr, dt = 2.0 * kPi / nt;
        for (int i = 0; i < nr; ++i) {
            const double rr = (i + 0.5) * dr;
            for (int j = 0; j < nt; ++j) {
                const double th = (j + 0.5) * dt;
                const double cv = A->curl(center + Vec2{std::cos(th), std::sin(th)} * rr);
                curl2 += cv * cv * rr;
            }
        }
        curl2 *= dr * dt;
    }

    const double lhs = plain + 0.5 * lambda * curl2;
    NamedValues terms{{"twisted_kinetic", twisted},
                      {"degree_term", kPi / radius * (2.0 * c * d - c * c)},
                      {"penalty", -kPi * c * c / (2.0 * lambda)}};
    auto rep = make_report("circle_bound", Relation::ge, lhs, std::move(terms), 1e-6 * std::max(1.0, std::abs(lhs)));
    rep.params = {{"radius", radius}, {"c", c}, {"lambda", lambda}, {"degree", d}, {"flux", flux},
                  {"curl_sq", curl2}, {"samples", static_cast<double>(n)}};
    return rep;
}

AnnulusBoundReports check_annulus_bound(const ComplexField& field, Vec2 center, double inner, double outer,
                                        std::optional<int> degree) {
    if (!(outer > inner) || !(inner > 0.0)) throw PreconditionError("check_annulus_bound: need 0 < inner < outer");
    const GridSpec& g = field.grid;
    const RegionMask ring = annulus_mask(g, center, inner, outer);
    std::vector<cplx> v(field.u.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double m = std::abs(field.u[k]);
        if (ring.cells[k] && m <= kModulusFloor) throw EvaluationError("check_annulus_bound: |u| vanishes on the annulus");
        v[k] = m > 0.0 ? field.u[k] / m : cplx{1.0, 0.0};
    }
    const CovariantGradient grad = covariant_gradient(g, v, field.A);
    double kinetic = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k)
        if (ring.cells[k]) kinetic += 0.5 * (std::norm(grad.gx[k]) + std::norm(grad.gy[k]));
    kinetic *= g.cell_area();

    double curl2 = 0.0;
    if (field.has_potential()) {
        const auto curl = curl_samples(field);
        const RegionMask disk = disk_mask(g, center, outer);
        for (std::size_t k = 0; k < curl.size(); ++k)
            if (disk.cells[k]) curl2 += curl[k] * curl[k];
        curl2 *= g.cell_area();
    }

    int d = 0;
    if (degree) {
        d = *degree;
    } else {
        const double probe = circle_in_sampled_region(g, center, outer) ? outer : 0.5 * (inner + outer);
        d = degree_on_circle(field, center, probe, suggested_circle_samples(g, probe));
    }
    const double L = std::log(outer / inner);
    NamedValues params{{"inner", inner}, {"outer", outer}, {"degree", d}, {"kinetic", kinetic}, {"curl_sq", curl2}};

    AnnulusBoundReports out;
    out.log_bound = make_report("annulus_log_bound", Relation::ge, kinetic + 0.5 * outer * (outer - inner) * curl2,
                                {{"degree_log", kPi * std::abs(d) * (L - std::log(2.0))}});
    out.log_bound.params = params;
    out.square_bound = make_report("annulus_square_bound", Relation::ge, kinetic + 0.5 * outer * outer * curl2,
                                   {{"degree_square", 2.0 * kPi / 3.0 * d * d * L}});
    out.square_bound.params = params;
    return out;
}

void require_disjoint_annuli(const std::vector<AnnulusTerm>& an) {
    for (const auto& a : an)
        if (!(a.inner > 0.0) || !(a.outer > a.inner)) throw PreconditionError("annulus needs 0 < inner < outer");
    for (std::size_t i = 0; i < an.size(); ++i)
        for (std::size_t j = i + 1; j < an.size(); ++j) {
            const AnnulusTerm &p = an[i], &q = an[j];
            const double D = distance(p.center, q.center);
            // Distances from q.center reached by points of p form [lo, D + p.outer].
            const double lo = (D > p.inner && D <= p.outer) ? 0.0 : std::min(std::abs(D - p.inner), std::abs(D - p.outer));
            const bool meet = q.outer > lo && q.inner < D + p.outer;
            if (meet) throw PreconditionError("annuli overlap");
        }
}

namespace {

// sup_t t^2 lambda(t) / pi at the breakpoints, in exact arithmetic.
cpp_rational sup_over_pi(const std::vector<AnnulusTerm>& an) {
    std::vector<cpp_rational> A2, R2, S2, R, S, Aabs;
    for (const auto& a : an) {
        const cpp_rational aa(std::abs(a.a)), r(a.inner), s(a.outer);
        Aabs.push_back(aa);
        A2.push_back(aa * aa);
        R.push_back(r);
        S.push_back(s);
        R2.push_back(r * r);
        S2.push_back(s * s);
    }
    cpp_rational best = 0;
    for (std::size_t i = 0; i < an.size(); ++i) {
        if (Aabs[i] == 0) continue;
        for (const cpp_rational& t : {cpp_rational(Aabs[i] / S[i]), cpp_rational(Aabs[i] / R[i])}) {
            const cpp_rational t2 = t * t;
            cpp_rational v = 0;
            for (std::size_t j = 0; j < an.size(); ++j) {
                if (Aabs[j] == 0) continue;
                // {|a_j| / |x| > t} on the annulus is r_j < |x| < min(s_j, |a_j|/t).
                if (Aabs[j] >= t * S[j]) v += t2 * (S2[j] - R2[j]);
                else if (Aabs[j] > t * R[j]) v += A2[j] - t2 * R2[j];
            }
            if (v > best) best = v;
        }
    }
    return best;
}

}  // namespace

double annuli_sup_over_pi(const std::vector<AnnulusTerm>& annuli) {
    require_disjoint_annuli(annuli);
    return static_cast<double>(sup_over_pi(annuli));
}

InequalityReport check_annuli_lemma(const std::vector<AnnulusTerm>& annuli) {
    require_disjoint_annuli(annuli);
    const cpp_rational lhs = sup_over_pi(annuli);
    cpp_rational bound = 0;
    double tau_sum = 0.0;
    for (const auto& a : annuli) {
        // exp(-2 tau) = (inner / outer)^2 exactly.
        const cpp_rational aa(a.a), r(a.inner), s(a.outer);
        bound += aa * aa * (1 - (r * r) / (s * s));
        tau_sum += std::log(a.outer / a.inner);
    }
    InequalityReport rep = make_report("annuli_lemma", Relation::le, kPi * static_cast<double>(lhs),
                                       {{"pi_sum_a2_one_minus_exp", kPi * static_cast<double>(bound)}});
    rep.pass = lhs <= bound;
    rep.slack = kPi * static_cast<double>(bound - lhs);
    rep.params = {{"annuli", static_cast<double>(annuli.size())}, {"tau_sum", tau_sum}};
    rep.note = "exact rational comparison of sup t^2 lambda / pi";
    return rep;
}

InequalityReport check_zero_merging_lemma(const std::vector<AnnulusTerm>& annuli, double a) {
    std::vector<AnnulusTerm> sorted = annuli;
    std::sort(sorted.begin(), sorted.end(), [](const AnnulusTerm& p, const AnnulusTerm& q) { return p.inner < q.inner; });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (!(sorted[i].inner > 0.0) || !(sorted[i].outer > sorted[i].inner))
            throw PreconditionError("zero-merging lemma: annulus needs 0 < inner < outer");
        if (i > 0 && sorted[i].inner < sorted[i - 1].outer)
            throw PreconditionError("zero-merging lemma: radii do not form a chain");
        if (std::abs(sorted[i].a) > std::abs(a)) throw PreconditionError("zero-merging lemma: coefficient exceeds the bound a");
    }
    // Concentric placement: the distribution function is independent of the centers.
    for (auto& t : sorted) t.center = {0.0, 0.0};
    const cpp_rational lhs = sup_over_pi(sorted);
    const cpp_rational aa(a);
    const cpp_rational bound = aa * aa;
    InequalityReport rep = make_report("zero_merging_lemma", Relation::le, kPi * static_cast<double>(lhs),
                                       {{"pi_a2", kPi * static_cast<double>(bound)}});
    rep.pass = lhs <= bound;
    rep.slack = kPi * static_cast<double>(bound - lhs);
    rep.params = {{"annuli", static_cast<double>(annuli.size())}, {"a", a}};
    rep.note = "exact rational comparison of sup t^2 lambda / pi";
    return rep;
}

InequalityReport check_e_rad_bound(const ComplexField& field) {
    const RegionMask band = threshold_mask(field, ThresholdRule::outside_band());
    const double lhs = radius_of_set_estimate(band);
    const double F = modulus_energy(field, full_mask(field.grid));
    auto rep = make_report("radius_energy_bound", Relation::le, lhs, {{"eps_C_F", field.eps * kRadiusConstant * F}});
    rep.hard = false;
    rep.params = {{"C", kRadiusConstant}, {"eps", field.eps}, {"modulus_energy", F}};
    rep.note = "covering radius is an upper estimate of the radius of the set";
    return rep;
}

InequalityReport check_lorentz_sandwich(const SampledMagnitudes& m, const std::string& name) {
    const LorentzStats st = lorentz_stats(m);
    const double tol = 1e-12 * std::max(st.l2inf, 1e-300);
    InequalityReport rep;
    rep.name = name;
    rep.relation = Relation::le;
    rep.lhs = st.l2inf;
    rep.rhs_terms = {{"twice_weak", 2.0 * st.weak}};
    rep.slack = std::min(2.0 * st.weak - st.l2inf, st.l2inf - st.weak);
    rep.pass = rep.slack >= -tol;
    rep.params = {{"weak", st.weak}, {"l2inf", st.l2inf}, {"l2", st.l2},
                  {"ratio", st.weak > 0.0 ? st.l2inf / st.weak : 0.0}};
    rep.note = "slack is the smaller margin of weak <= l2inf <= 2 weak";
    return rep;
}

InequalityReport check_lorentz_lower_bound(const SampledMagnitudes& m, double eps, std::optional<double> C,
                                           const std::string& name) {
    double c = 0.0;
    if (C) {
        c = *C;
    } else {
        for (double v : m.values) c = std::max(c, v);
        c *= eps;
    }
    const LowerBoundCheck lb = lorentz_lower_bound_check(m, c, eps);
    const double L = 2.0 * std::abs(std::log(eps));
    auto rep = make_report(name, Relation::ge, lb.lhs, {{"l2_term", lb.l2_squared / L}, {"bound_term", -c * c * lb.area / L}});
    rep.pass = lb.pass;
    rep.params = {{"C", c}, {"eps", eps}, {"area", lb.area}};
    return rep;
}

}  // namespace vortexball
