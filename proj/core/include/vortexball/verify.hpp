#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vortexball/construction.hpp"
#include "vortexball/field.hpp"
#include "vortexball/geometry.hpp"
#include "vortexball/lorentz.hpp"

namespace vortexball {

using NamedValues = std::vector<std::pair<std::string, double>>;

enum class Relation { ge, le };

/// Both sides of one inequality. `slack` is oriented so that slack >= 0 means the inequality holds.
struct InequalityReport {
    std::string name;
    Relation relation = Relation::ge;
    double lhs = 0.0;
    NamedValues rhs_terms;
    double slack = 0.0;
    bool pass = true;
    bool hard = true;      ///< soft checks are reported but never fail a run
    bool vacuous = false;  ///< hypothesis not met (e.g. D = 0); nothing asserted
    std::optional<double> effective_constant;
    NamedValues params;
    std::string note;

    double rhs() const;
};

/// Fills slack from lhs and rhs_terms; pass when slack >= -tolerance.
InequalityReport make_report(std::string name, Relation rel, double lhs, NamedValues rhs_terms, double tolerance = 0.0);

/// Smooth vector potential given analytically (value and curl).
struct VectorPotential {
    std::function<Vec2(Vec2)> value;
    std::function<double(Vec2)> curl;
};

// ---- local lemmas ---------------------------------------------------------------

/// Circle estimate with G = c tau / r. `v` holds unit-modulus samples at angles 2 pi k / n.
InequalityReport check_circle_bound(const std::vector<cplx>& v, Vec2 center, double radius, const VectorPotential* A,
                                    double c, double lambda);

struct AnnulusBoundReports {
    InequalityReport log_bound;     ///< pi |d| (log(r1/r0) - log 2), curl weight r1 (r1 - r0)
    InequalityReport square_bound;  ///< (2 pi / 3) d^2 log(r1/r0), curl weight r1^2
};

/// Kinetic energy of u/|u| on the annulus against both lower bounds. The degree is measured on
/// the outer circle when not supplied.
AnnulusBoundReports check_annulus_bound(const ComplexField& field, Vec2 center, double inner, double outer,
                                        std::optional<int> degree = std::nullopt);

struct AnnulusTerm {
    Vec2 center;
    double inner = 0.0;
    double outer = 0.0;
    double a = 0.0;
};

/// Throws PreconditionError if two annuli share a point.
void require_disjoint_annuli(const std::vector<AnnulusTerm>& annuli);

/// Exact supremum of t^2 lambda(t) / pi for the field |a_i| / |x - c_i| on disjoint annuli.
/// Returned as a double but compared exactly in the checks.
double annuli_sup_over_pi(const std::vector<AnnulusTerm>& annuli);

/// sup t^2 lambda <= pi sum a_i^2 (1 - exp(-2 tau_i)), compared in exact rational arithmetic.
InequalityReport check_annuli_lemma(const std::vector<AnnulusTerm>& annuli);

/// sup t^2 lambda <= pi a^2 for annuli forming a radial chain r1 < s1 <= r2 < s2 ...
InequalityReport check_zero_merging_lemma(const std::vector<AnnulusTerm>& annuli, double a);

/// Covering radius of {|u| <= 1/2 or |u| >= 3/2} against eps C F(|u|); soft.
inline constexpr double kRadiusConstant = 32.0 * 1.41421356237309504880 / 7.0;
InequalityReport check_e_rad_bound(const ComplexField& field);

/// Sandwich weak <= l2inf <= 2 weak on the given magnitudes.
InequalityReport check_lorentz_sandwich(const SampledMagnitudes& m, const std::string& name = "lorentz_sandwich");

/// Lower bound of the Lorentz norm by the L^2 norm, C taken as eps max|f| unless supplied.
InequalityReport check_lorentz_lower_bound(const SampledMagnitudes& m, double eps, std::optional<double> C = std::nullopt,
                                           const std::string& name = "lorentz_lower_bound");

// ---- theorem-level checks -----------------------------------------------------

/// (1 - eta) / (18 (1 + eta)).
double norm_coefficient(double eta);

/// V = inset domain intersected with the final balls.
RegionMask final_region(const GridSpec& grid, const TwoPhaseResult& result);

InequalityReport check_theorem1(const ComplexField& field, const ConstructionParams& params,
                                const TwoPhaseResult& result, const GField& G);
InequalityReport check_theorem2(const ComplexField& field, const ConstructionParams& params,
                                const TwoPhaseResult& result, const GField& G);
InequalityReport check_corollary1(const ComplexField& field, const ConstructionParams& params,
                                  const TwoPhaseResult& result);
InequalityReport check_gnorm_bound(const GField& G, const ComplexField& field, const ConstructionParams& params,
                                   const TwoPhaseResult& result);
/// The annuli lemma applied to the annuli and coefficients of G itself.
InequalityReport check_gnorm_annuli(const GField& G);

/// Bookkeeping assertions on a construction: beta normalization, effective-merge count,
/// covering of the far set, degree evaluation, radius ratio at the phase boundary.
std::vector<InequalityReport> check_construction_invariants(const ComplexField& field, const TwoPhaseResult& result,
                                                            const TransitionTable& tr, const BetaTable& betas);

// ---- Jerrard variant --------------------------------------------------------------

/// Calibrated once on a single vortex at eps = 0.01 and frozen.
inline constexpr double kJerrardCalibration = 1.0;

/// inf_m (pi m^2 d^2 / r + (1 - m)^2 / (c eps)) = pi d^2 / (r + c eps pi d^2).
double jerrard_lambda(double r, int d, double c, double eps);
/// pi log(1 + s / (c eps pi)).
double jerrard_Lambda(double s, double c, double eps);

/// Circle identity with G = d m^2 beta / (rho^2 r). `u` holds samples at angles 2 pi k / n.
InequalityReport check_jerrard_circle(const std::vector<cplx>& u, double radius, int d, double beta = 1.0);

struct JerrardRun {
    GrowthHistory history;
    double s = 0.0;
    std::vector<InequalityReport> per_ball;
    double min_slack = 0.0;
};

/// Initial covering of {|u| <= 1/2}, Jerrard growth to sigma, per-ball energy bound.
JerrardRun run_jerrard(const ComplexField& field, double sigma, double c_cal);

/// Per-ball bounds, circle identity on annulus boundaries, monotonicity of lambda in d.
std::vector<InequalityReport> check_jerrard(const ComplexField& field, double sigma, double c_cal = kJerrardCalibration);

/// Smallest c >= 1 making every per-ball bound hold (bisection to 1e-6).
double calibrate_jerrard_constant(const ComplexField& field, double sigma);

// ---- sweeps -------------------------------------------------------------------------

struct SweepConfig {
    std::string name = "single";
    std::vector<Vortex> vortices;
    Vec2 origin{-1.0, -1.0};
    double width = 2.0;
    double height = 2.0;
    double cells_per_eps = 4.0;
    double alpha = 0.5;
    double eta = 0.0;
    double r = 0.5;
    double sigma = 0.25;  ///< Jerrard target; <= 0 disables the Jerrard rows
    double c_cal = kJerrardCalibration;
};

struct SweepRow {
    std::string config;
    double eps = 0.0;
    std::size_t nx = 0;
    std::size_t ny = 0;
    int D = 0;
    std::optional<double> c_theorem1;
    std::optional<double> c_theorem2;
    std::optional<double> c_corollary1;
    std::optional<double> c_gnorm;
    double weak_omega = 0.0;
    double l2inf_omega = 0.0;
    double weak_V = 0.0;
    double l2inf_V = 0.0;
    double g_l2inf = 0.0;
    double kinetic_V = 0.0;
    double potential_V = 0.0;
    double magnetic_V = 0.0;
    double energy_omega = 0.0;
    std::optional<double> jerrard_min_slack;
    std::string error;
    std::vector<InequalityReport> reports;
};

struct SweepTable {
    std::vector<SweepRow> rows;
};

/// Full pipeline per (config, eps); eps list must be strictly decreasing.
SweepTable run_sweep(const std::vector<SweepConfig>& configs, const std::vector<double>& eps_list);
SweepRow run_sweep_row(const SweepConfig& config, double eps);
void write_sweep_csv(const SweepTable& t, std::ostream& out);

}  // namespace vortexball
