#include "vortexball/lorentz.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <ostream>

#include "vortexball/common.hpp"

namespace vortexball {

void SampledMagnitudes::validate() const {
    if (!(cell_area > 0.0) || !std::isfinite(cell_area)) throw PreconditionError("cell area must be positive");
    for (double v : values)
        if (!(v >= 0.0) || !std::isfinite(v)) throw PreconditionError("magnitudes must be finite and nonnegative");
}

double distribution_function(const SampledMagnitudes& m, double t) {
    if (!(t >= 0.0)) throw PreconditionError("distribution_function: t must be >= 0");
    const auto n = std::count_if(m.values.begin(), m.values.end(), [t](double v) { return v > t; });
    return static_cast<double>(n) * m.cell_area;
}

std::vector<double> decreasing_rearrangement(const SampledMagnitudes& m) {
    m.validate();
    std::vector<double> s = m.values;
    std::sort(s.begin(), s.end(), std::greater<>());
    return s;
}

double weak_quasinorm_sorted(const std::vector<double>& s, double a) {
    double best = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k)
        best = std::max(best, s[k] * std::sqrt(static_cast<double>(k + 1) * a));
    return best;
}

double l2inf_norm_sorted(const std::vector<double>& s, double a) {
    // Prefix sums accumulated in rank order; the sorted order keeps the largest terms first.
    double best = 0.0, prefix = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        prefix += s[k];
        best = std::max(best, prefix * a / std::sqrt(static_cast<double>(k + 1) * a));
    }
    return best;
}

double weak_quasinorm(const SampledMagnitudes& m) { return weak_quasinorm_sorted(decreasing_rearrangement(m), m.cell_area); }
double l2inf_norm(const SampledMagnitudes& m) { return l2inf_norm_sorted(decreasing_rearrangement(m), m.cell_area); }

double l2_norm(const SampledMagnitudes& m) {
    m.validate();
    double s = 0.0;
    for (double v : m.values) s += v * v;
    return std::sqrt(s * m.cell_area);
}

LorentzStats lorentz_stats(const SampledMagnitudes& m) {
    LorentzStats st;
    st.rearrangement = decreasing_rearrangement(m);
    st.cell_area = m.cell_area;
    st.weak = weak_quasinorm_sorted(st.rearrangement, m.cell_area);
    st.l2inf = l2inf_norm_sorted(st.rearrangement, m.cell_area);
    double sq = 0.0;
    for (double v : st.rearrangement) sq += v * v;
    st.l2 = std::sqrt(sq * m.cell_area);
    return st;
}

LowerBoundCheck lorentz_lower_bound_check(const SampledMagnitudes& m, double C, double eps) {
    m.validate();
    if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("lorentz_lower_bound_check: eps must lie in (0, 1)");
    if (!(C >= 0.0)) throw PreconditionError("lorentz_lower_bound_check: C must be nonnegative");
    const double cap = C / eps;
    for (double v : m.values)
        if (v > cap) throw PreconditionError("lorentz_lower_bound_check: sample exceeds C/eps");
    LowerBoundCheck out;
    const double n = l2inf_norm(m);
    out.lhs = n * n;
    double sq = 0.0;
    for (double v : m.values) sq += v * v;
    out.l2_squared = sq * m.cell_area;
    out.area = m.domain_area();
    const double L = 2.0 * std::abs(std::log(eps));
    out.rhs = out.l2_squared / L - C * C * out.area / L;
    out.pass = out.lhs >= out.rhs;
    return out;
}

namespace {

void put(std::ostream& out, double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    out.write(buf, r.ptr - buf);
}

// Geometric rank sample 1, ..., n without duplicates.
std::vector<std::size_t> ranks(std::size_t n, std::size_t max_points) {
    std::vector<std::size_t> out;
    if (n == 0) return out;
    if (n <= max_points) {
        for (std::size_t k = 1; k <= n; ++k) out.push_back(k);
        return out;
    }
    const double q = std::pow(static_cast<double>(n), 1.0 / static_cast<double>(max_points - 1));
    double x = 1.0;
    for (std::size_t p = 0; p < max_points; ++p, x *= q) {
        const auto k = std::min<std::size_t>(n, static_cast<std::size_t>(std::llround(x)));
        if (out.empty() || k > out.back()) out.push_back(k);
    }
    if (out.back() != n) out.push_back(n);
    return out;
}

}  // namespace

void write_distribution_csv(const LorentzStats& s, std::ostream& out, std::size_t max_points) {
    // Evaluated at the sample values themselves: lambda(v_k) counts strictly larger samples.
    out << "t,lambda\r\n";
    for (std::size_t k : ranks(s.rearrangement.size(), max_points)) {
        const double t = s.rearrangement[k - 1];
        const auto above = std::lower_bound(s.rearrangement.begin(), s.rearrangement.end(), t, std::greater<>());
        put(out, t);
        out << ',';
        put(out, static_cast<double>(above - s.rearrangement.begin()) * s.cell_area);
        out << "\r\n";
    }
}

void write_rearrangement_csv(const LorentzStats& s, std::ostream& out, std::size_t max_points) {
    out << "s,fstar\r\n";
    for (std::size_t k : ranks(s.rearrangement.size(), max_points)) {
        put(out, static_cast<double>(k - 1) * s.cell_area);
        out << ',';
        put(out, s.rearrangement[k - 1]);
        out << "\r\n";
    }
}

}  // namespace vortexball
