#include "vortexball/field.hpp"

#include <algorithm>
#include <numeric>

namespace vortexball {

double GridSpec::boundary_distance(Vec2 p) const {
    const double ex = std::min(p.x - origin.x, origin.x + width - p.x);
    const double ey = std::min(p.y - origin.y, origin.y + height - p.y);
    return std::min(ex, ey);
}

void GridSpec::validate() const {
    if (nx < 2 || ny < 2) throw ParameterError("grid needs at least 2 cells per axis");
    if (!(width > 0.0) || !(height > 0.0) || !std::isfinite(width) || !std::isfinite(height))
        throw ParameterError("grid extent must be positive and finite");
    if (!std::isfinite(origin.x) || !std::isfinite(origin.y)) throw ParameterError("grid origin must be finite");
}

void ComplexField::validate() const {
    grid.validate();
    if (!(eps > 0.0)) throw ParameterError("eps must be positive");
    if (u.size() != grid.size()) throw PreconditionError("u sample count does not match grid");
    if (!A.empty() && A.size() != grid.size()) throw PreconditionError("A sample count does not match grid");
    for (const cplx& z : u)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw PreconditionError("u has non-finite samples");
}

std::size_t RegionMask::count() const {
    return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), std::uint8_t{1}));
}

namespace {

template <class Pred>
RegionMask mask_from(const GridSpec& grid, Pred pred) {
    RegionMask m{grid, std::vector<std::uint8_t>(grid.size(), 0)};
    for (std::size_t j = 0; j < grid.ny; ++j)
        for (std::size_t i = 0; i < grid.nx; ++i) m.cells[grid.index(i, j)] = pred(grid.center(i, j)) ? 1 : 0;
    return m;
}

void require_same_grid(const RegionMask& a, const RegionMask& b) {
    if (!(a.grid == b.grid) || a.cells.size() != b.cells.size()) throw PreconditionError("mask grids differ");
}

}  // namespace

RegionMask full_mask(const GridSpec& grid) { return {grid, std::vector<std::uint8_t>(grid.size(), 1)}; }
RegionMask empty_mask(const GridSpec& grid) { return {grid, std::vector<std::uint8_t>(grid.size(), 0)}; }

RegionMask annulus_mask(const GridSpec& grid, Vec2 c, double inner, double outer) {
    return mask_from(grid, [&](Vec2 p) {
        const double r = distance(p, c);
        return r > inner && r <= outer;
    });
}

RegionMask disk_mask(const GridSpec& grid, Vec2 c, double radius) {
    return mask_from(grid, [&](Vec2 p) { return distance(p, c) <= radius; });
}

RegionMask inset_mask(const GridSpec& grid, double eps) {
    return mask_from(grid, [&](Vec2 p) { return grid.boundary_distance(p) > eps; });
}

RegionMask mask_and(const RegionMask& a, const RegionMask& b) {
    require_same_grid(a, b);
    RegionMask out = a;
    for (std::size_t k = 0; k < out.cells.size(); ++k) out.cells[k] = (a.cells[k] && b.cells[k]) ? 1 : 0;
    return out;
}

RegionMask mask_or(const RegionMask& a, const RegionMask& b) {
    require_same_grid(a, b);
    RegionMask out = a;
    for (std::size_t k = 0; k < out.cells.size(); ++k) out.cells[k] = (a.cells[k] || b.cells[k]) ? 1 : 0;
    return out;
}

RegionMask mask_not(const RegionMask& a) {
    RegionMask out = a;
    for (auto& c : out.cells) c = c ? 0 : 1;
    return out;
}

cplx synth_value(const VortexSpec& spec, Vec2 x) {
    cplx u{1.0, 0.0};
    for (const Vortex& v : spec.vortices) {
        const Vec2 d = x - v.center;
        const double r = d.norm();
        if (r == 0.0) return {0.0, 0.0};
        u *= vortex_profile(r, spec.eps) * std::polar(1.0, v.degree * std::atan2(d.y, d.x));
    }
    return u;
}

ComplexField synth_field(const VortexSpec& spec, const GridSpec& grid) {
    grid.validate();
    if (!(spec.eps > 0.0) || !std::isfinite(spec.eps)) throw ParameterError("eps must be positive");
    for (std::size_t a = 0; a < spec.vortices.size(); ++a) {
        if (!grid.contains(spec.vortices[a].center)) throw DomainError("vortex center outside the grid rectangle");
        for (std::size_t b = 0; b < a; ++b)
            if (spec.vortices[a].center == spec.vortices[b].center)
                throw PreconditionError("vortex centers must be pairwise distinct");
    }
    ComplexField f;
    f.grid = grid;
    f.eps = spec.eps;
    f.u.resize(grid.size());
    for (std::size_t j = 0; j < grid.ny; ++j)
        for (std::size_t i = 0; i < grid.nx; ++i) f.u[grid.index(i, j)] = synth_value(spec, grid.center(i, j));
    return f;
}

namespace {

// Second-order derivative along one axis of a row-major array.
template <class T>
T stencil(const std::vector<T>& v, const GridSpec& g, std::size_t i, std::size_t j, bool along_x) {
    const std::size_t n = along_x ? g.nx : g.ny;
    const std::size_t p = along_x ? i : j;
    const double h = along_x ? g.dx() : g.dy();
    auto at = [&](std::size_t q) { return along_x ? v[g.index(q, j)] : v[g.index(i, q)]; };
    if (p == 0) return (at(0) * -3.0 + at(1) * 4.0 - at(2)) / (2.0 * h);
    if (p == n - 1) return (at(n - 1) * 3.0 - at(n - 2) * 4.0 + at(n - 3)) / (2.0 * h);
    return (at(p + 1) - at(p - 1)) / (2.0 * h);
}

void require_stencil_grid(const GridSpec& g) {
    if (g.nx < 3 || g.ny < 3) throw PreconditionError("finite differences need a grid of at least 3x3");
}

}  // namespace

std::vector<double> CovariantGradient::magnitudes() const {
    std::vector<double> m(gx.size());
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = magnitude(k);
    return m;
}

CovariantGradient covariant_gradient(const GridSpec& grid, const std::vector<cplx>& u, const std::vector<Vec2>& A) {
    require_stencil_grid(grid);
    CovariantGradient g{grid, std::vector<cplx>(grid.size()), std::vector<cplx>(grid.size())};
    const cplx I{0.0, 1.0};
    for (std::size_t j = 0; j < grid.ny; ++j)
        for (std::size_t i = 0; i < grid.nx; ++i) {
            const std::size_t k = grid.index(i, j);
            g.gx[k] = stencil(u, grid, i, j, true);
            g.gy[k] = stencil(u, grid, i, j, false);
            if (!A.empty()) {
                g.gx[k] -= I * A[k].x * u[k];
                g.gy[k] -= I * A[k].y * u[k];
            }
        }
    return g;
}

CovariantGradient covariant_gradient(const ComplexField& field) { return covariant_gradient(field.grid, field.u, field.A); }

std::vector<double> curl_samples(const ComplexField& field) {
    const GridSpec& g = field.grid;
    std::vector<double> curl(g.size(), 0.0);
    if (!field.has_potential()) return curl;
    require_stencil_grid(g);
    std::vector<double> ax(g.size()), ay(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        ax[k] = field.A[k].x;
        ay[k] = field.A[k].y;
    }
    for (std::size_t j = 0; j < g.ny; ++j)
        for (std::size_t i = 0; i < g.nx; ++i)
            curl[g.index(i, j)] = stencil(ay, g, i, j, true) - stencil(ax, g, i, j, false);
    return curl;
}

EnergyParts gl_energy(const ComplexField& field, const CovariantGradient& grad, const std::vector<double>& curl,
                      const RegionMask& mask, double weight_r) {
    if (mask.cells.size() != field.grid.size() || grad.gx.size() != field.grid.size())
        throw PreconditionError("mask or gradient does not match the field grid");
    const double a = field.grid.cell_area();
    const double inv4e2 = 1.0 / (4.0 * field.eps * field.eps);
    EnergyParts e;
    for (std::size_t k = 0; k < field.u.size(); ++k) {
        if (!mask.cells[k]) continue;
        e.kinetic += 0.5 * (std::norm(grad.gx[k]) + std::norm(grad.gy[k]));
        const double w = 1.0 - std::norm(field.u[k]);
        e.potential += w * w * inv4e2;
        if (!curl.empty()) e.magnetic += 0.5 * weight_r * weight_r * curl[k] * curl[k];
    }
    e.kinetic *= a;
    e.potential *= a;
    e.magnetic *= a;
    return e;
}

EnergyParts gl_energy(const ComplexField& field, const RegionMask& mask, double weight_r) {
    return gl_energy(field, covariant_gradient(field), curl_samples(field), mask, weight_r);
}

double modulus_energy(const ComplexField& field, const RegionMask& mask) {
    const GridSpec& g = field.grid;
    require_stencil_grid(g);
    if (mask.cells.size() != g.size()) throw PreconditionError("mask does not match the field grid");
    std::vector<double> rho(g.size());
    for (std::size_t k = 0; k < rho.size(); ++k) rho[k] = std::abs(field.u[k]);
    const double inv4e2 = 1.0 / (4.0 * field.eps * field.eps);
    double sum = 0.0;
    for (std::size_t j = 0; j < g.ny; ++j)
        for (std::size_t i = 0; i < g.nx; ++i) {
            const std::size_t k = g.index(i, j);
            if (!mask.cells[k]) continue;
            const double rx = stencil(rho, g, i, j, true);
            const double ry = stencil(rho, g, i, j, false);
            const double w = 1.0 - rho[k] * rho[k];
            sum += 0.5 * (rx * rx + ry * ry) + w * w * inv4e2;
        }
    return sum * g.cell_area();
}

bool circle_in_sampled_region(const GridSpec& g, Vec2 c, double radius) {
    const double x0 = g.origin.x + 0.5 * g.dx(), x1 = g.origin.x + g.width - 0.5 * g.dx();
    const double y0 = g.origin.y + 0.5 * g.dy(), y1 = g.origin.y + g.height - 0.5 * g.dy();
    return c.x - radius >= x0 && c.x + radius <= x1 && c.y - radius >= y0 && c.y + radius <= y1;
}

cplx interpolate(const ComplexField& field, Vec2 p) {
    const GridSpec& g = field.grid;
    const double fx = (p.x - g.origin.x) / g.dx() - 0.5;
    const double fy = (p.y - g.origin.y) / g.dy() - 0.5;
    const double tol = 1e-9;
    const double mx = static_cast<double>(g.nx - 1), my = static_cast<double>(g.ny - 1);
    if (fx < -tol || fy < -tol || fx > mx + tol || fy > my + tol)
        throw DomainError("interpolation point outside the sampled region");
    const std::size_t i0 = std::min(static_cast<std::size_t>(std::max(0.0, std::floor(fx))), g.nx - 2);
    const std::size_t j0 = std::min(static_cast<std::size_t>(std::max(0.0, std::floor(fy))), g.ny - 2);
    const double tx = std::clamp(fx - static_cast<double>(i0), 0.0, 1.0);
    const double ty = std::clamp(fy - static_cast<double>(j0), 0.0, 1.0);
    const cplx u00 = field.u[g.index(i0, j0)], u10 = field.u[g.index(i0 + 1, j0)];
    const cplx u01 = field.u[g.index(i0, j0 + 1)], u11 = field.u[g.index(i0 + 1, j0 + 1)];
    return (u00 * (1.0 - tx) + u10 * tx) * (1.0 - ty) + (u01 * (1.0 - tx) + u11 * tx) * ty;
}

int suggested_circle_samples(const GridSpec& grid, double radius) {
    const double h = std::min(grid.dx(), grid.dy());
    const double n = std::ceil(8.0 * 2.0 * kPi * radius / h);
    return static_cast<int>(std::clamp(n, static_cast<double>(kMinCircleSamples), 16384.0));
}

int degree_on_circle(const ComplexField& field, Vec2 center, double radius, int n_samples) {
    if (n_samples < kMinCircleSamples) throw PreconditionError("degree_on_circle needs at least 64 samples");
    if (!(radius > 0.0)) throw PreconditionError("circle radius must be positive");
    if (!circle_in_sampled_region(field.grid, center, radius)) throw DomainError("circle leaves the sampled region");
    std::vector<cplx> z(static_cast<std::size_t>(n_samples));
    for (int k = 0; k < n_samples; ++k) {
        const double th = 2.0 * kPi * k / n_samples;
        z[static_cast<std::size_t>(k)] = interpolate(field, center + Vec2{std::cos(th), std::sin(th)} * radius);
        if (std::abs(z[static_cast<std::size_t>(k)]) <= kModulusFloor)
            throw EvaluationError("circle crosses vortex core");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) total += std::arg(z[(k + 1) % z.size()] * std::conj(z[k]));
    const double w = total / (2.0 * kPi);
    const double d = std::round(w);
    if (std::abs(w - d) >= 0.25) throw EvaluationError("under-sampled circle");
    return static_cast<int>(d);
}

}  // namespace vortexball
