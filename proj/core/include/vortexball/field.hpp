#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "vortexball/common.hpp"

namespace vortexball {

using cplx = std::complex<double>;

/// Axis-aligned rectangle sampled at nx*ny cell centers.
struct GridSpec {
    Vec2 origin{0.0, 0.0};
    double width = 1.0;
    double height = 1.0;
    std::size_t nx = 2;
    std::size_t ny = 2;

    double dx() const { return width / static_cast<double>(nx); }
    double dy() const { return height / static_cast<double>(ny); }
    double cell_area() const { return dx() * dy(); }
    double cell_diagonal() const { return std::hypot(dx(), dy()); }
    double area() const { return width * height; }
    std::size_t size() const { return nx * ny; }
    std::size_t index(std::size_t i, std::size_t j) const { return j * nx + i; }

    Vec2 center(std::size_t i, std::size_t j) const {
        return {origin.x + (static_cast<double>(i) + 0.5) * dx(),
                origin.y + (static_cast<double>(j) + 0.5) * dy()};
    }
    bool contains(Vec2 p) const {
        return p.x >= origin.x && p.x <= origin.x + width && p.y >= origin.y && p.y <= origin.y + height;
    }
    /// Distance from p to the rectangle boundary (negative outside).
    double boundary_distance(Vec2 p) const;

    /// Throws ParameterError unless nx, ny >= 2 and the extent is positive.
    void validate() const;
    bool operator==(const GridSpec&) const = default;
};

struct Vortex {
    Vec2 center;
    int degree = 1;
};

struct VortexSpec {
    std::vector<Vortex> vortices;
    double eps = 0.01;
};

/// Samples of u (and optionally A) at the cell centers of a grid.
struct ComplexField {
    GridSpec grid;
    double eps = 0.01;
    std::vector<cplx> u;
    std::vector<Vec2> A;  ///< empty means A == 0

    bool has_potential() const { return !A.empty(); }
    Vec2 potential(std::size_t k) const { return A.empty() ? Vec2{} : A[k]; }
    void validate() const;
};

/// One flag per cell; thresholded sublevel sets, annuli, insets.
struct RegionMask {
    GridSpec grid;
    std::vector<std::uint8_t> cells;

    bool operator[](std::size_t k) const { return cells[k] != 0; }
    std::size_t count() const;
    bool empty() const { return count() == 0; }
};

RegionMask full_mask(const GridSpec& grid);
RegionMask empty_mask(const GridSpec& grid);
/// Cells whose center satisfies inner < |x - c| <= outer.
RegionMask annulus_mask(const GridSpec& grid, Vec2 c, double inner, double outer);
RegionMask disk_mask(const GridSpec& grid, Vec2 c, double radius);
/// The inset domain {dist(x, boundary) > eps}.
RegionMask inset_mask(const GridSpec& grid, double eps);
RegionMask mask_and(const RegionMask& a, const RegionMask& b);
RegionMask mask_or(const RegionMask& a, const RegionMask& b);
RegionMask mask_not(const RegionMask& a);

/// Radial core profile r / sqrt(r^2 + 2 eps^2).
inline double vortex_profile(double r, double eps) { return r / std::sqrt(r * r + 2.0 * eps * eps); }

/// Product of model vortices u = prod f(|x-a_i|) exp(i d_i theta_i).
ComplexField synth_field(const VortexSpec& spec, const GridSpec& grid);
cplx synth_value(const VortexSpec& spec, Vec2 x);

/// Sampled (d/dx, d/dy) of u minus iAu.
struct CovariantGradient {
    GridSpec grid;
    std::vector<cplx> gx;
    std::vector<cplx> gy;

    double magnitude(std::size_t k) const { return std::sqrt(std::norm(gx[k]) + std::norm(gy[k])); }
    std::vector<double> magnitudes() const;
};

/// Centered second-order differences, one-sided second-order at the edges.
CovariantGradient covariant_gradient(const ComplexField& field);
/// Same stencil applied to an arbitrary complex sample array.
CovariantGradient covariant_gradient(const GridSpec& grid, const std::vector<cplx>& u, const std::vector<Vec2>& A);
/// Scalar curl A = d_x A_y - d_y A_x, zero everywhere when A is absent.
std::vector<double> curl_samples(const ComplexField& field);

struct EnergyParts {
    double kinetic = 0.0;
    double potential = 0.0;
    double magnetic = 0.0;
    double total() const { return kinetic + potential + magnetic; }
};

/// Midpoint sums of |grad_A u|^2/2, w^2 (curl A)^2/2 and (1-|u|^2)^2/(4 eps^2) over the mask.
EnergyParts gl_energy(const ComplexField& field, const RegionMask& mask, double weight_r = 1.0);
EnergyParts gl_energy(const ComplexField& field, const CovariantGradient& grad, const std::vector<double>& curl,
                      const RegionMask& mask, double weight_r = 1.0);

/// (1/2) int |grad |u||^2 + (1-|u|^2)^2/(2 eps^2) over the mask.
double modulus_energy(const ComplexField& field, const RegionMask& mask);

inline constexpr double kModulusFloor = 1e-6;
inline constexpr int kMinCircleSamples = 64;

/// Bilinear interpolation of u between cell centers; throws DomainError outside their hull.
cplx interpolate(const ComplexField& field, Vec2 p);
/// True when the whole circle lies inside the hull of the cell centers.
bool circle_in_sampled_region(const GridSpec& grid, Vec2 center, double radius);

/// Winding number of u on the circle, from principal-branch phase increments.
int degree_on_circle(const ComplexField& field, Vec2 center, double radius, int n_samples);
/// Sample count resolving the grid along the circle, clamped to [64, 16384].
int suggested_circle_samples(const GridSpec& grid, double radius);

}  // namespace vortexball
