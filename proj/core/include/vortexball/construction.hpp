#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vortexball/field.hpp"
#include "vortexball/geometry.hpp"

namespace vortexball {

// ---- coverings -------------------------------------------------------------

enum class ThresholdKind {
    far_from_unity,   ///< ||u| - 1| >= value
    sublevel,         ///< |u| <= value
    outside_band,     ///< |u| <= 1/2 or |u| >= 3/2
};

struct ThresholdRule {
    ThresholdKind kind = ThresholdKind::outside_band;
    double value = 0.0;

    bool passes(double modulus) const;
    static ThresholdRule far_from_unity(double delta) { return {ThresholdKind::far_from_unity, delta}; }
    static ThresholdRule sublevel(double t) { return {ThresholdKind::sublevel, t}; }
    static ThresholdRule outside_band() { return {ThresholdKind::outside_band, 0.0}; }
};

RegionMask threshold_mask(const ComplexField& field, const ThresholdRule& rule);

/// Smallest disk containing all points (randomized incremental, fixed shuffle seed).
Ball smallest_enclosing_ball(std::vector<Vec2> points);

/// 4-connected components of the mask, as lists of cell indices in scan order.
std::vector<std::vector<std::size_t>> connected_components(const RegionMask& mask);

/// Each component covered by its enclosing ball plus one cell diagonal, then merged to disjointness.
BallCollection cover_mask(const RegionMask& mask);

/// Covering of the cells passing `rule` inside `domain`.
BallCollection sublevel_covering(const ComplexField& field, const ThresholdRule& rule, const RegionMask& domain);

/// Total radius of cover_mask; an upper estimate of the radius of the set.
double radius_of_set_estimate(const RegionMask& mask);

// ---- two-phase construction -------------------------------------------------

/// (5 + sqrt(2785)) / 60.
double default_eta();

struct ConstructionParams {
    double alpha = 0.5;
    double eps = 0.01;
    double r = 0.5;
    double eta = 0.0;  ///< 0 selects default_eta()

    double delta() const { return std::pow(eps, alpha / 4.0); }
    double eta_value() const { return eta == 0.0 ? default_eta() : eta; }
    /// Range checks for alpha, eps, r, eta; throws ParameterError.
    void validate() const;
};

/// A ball of the concatenated family with its lineage.
struct FamilyBall {
    Ball ball;
    int final_index = -1;  ///< index into TwoPhaseResult::final_balls
};

/// One generation (t_{k-1}, t_k] of the concatenated family.
/// end[i] is start[i] grown to t_k^-; into[i] indexes the ball absorbing it at t_k
/// (next generation's start, or the final list for the last generation).
struct FamilyGeneration {
    int k = 0;
    double t_start = 0.0;
    double t_end = 0.0;
    bool core_phase = true;
    std::vector<FamilyBall> start;
    std::vector<FamilyBall> end;
    std::vector<int> into;

    double tau() const { return t_end - t_start; }
};

struct TwoPhaseResult {
    ConstructionParams params;
    double modulus_energy = 0.0;
    double energy_threshold = 0.0;

    BallCollection far_covering;   ///< covering of ||u| - 1| >= delta
    BallCollection core_initial;   ///< C_0
    GrowthHistory core_history;    ///< C(t), t in [0, sigma]
    BallCollection merged_cover;   ///< disjoint cover of C(sigma) and the far covering
    BallCollection initial;        ///< B_0, total radius 8R
    GrowthHistory main_history;    ///< B(t), t in [0, s]
    double R = 0.0;
    double sigma = 0.0;
    double s = 0.0;
    double effective_c0 = 0.0;  ///< r(B_0) / eps^(alpha/2)

    std::vector<FamilyGeneration> family;
    std::vector<Ball> final_balls;
    std::vector<std::uint8_t> final_inside;  ///< final ball contained in the inset domain
    int D = 0;
    int degree_failures = 0;

    bool empty() const { return final_balls.empty(); }
    double final_total_radius() const;
};

/// Tests a ball against the inset domain dist(x, boundary) > eps.
bool ball_inside_inset(const GridSpec& grid, const Ball& b, double eps);

TwoPhaseResult two_phase_construct(const ComplexField& field, const ConstructionParams& params);

/// Degree of each ball from degree_on_circle, nullopt if the circle cannot be evaluated.
std::optional<int> ball_degree(const ComplexField& field, const Ball& b);

// ---- masses, transitions, beta ------------------------------------------------

struct MassEntry {
    bool present = false;  ///< lineage has balls in this generation
    int N = 0;
    int P = 0;
    int sum_sq = 0;  ///< sum of squared child degrees
};

struct VorticityMasses {
    int generations = 0;
    std::vector<int> D;                       ///< per final ball
    std::vector<std::vector<MassEntry>> mass;  ///< [n][k-1]

    const MassEntry& at(int n, int k) const {
        return mass[static_cast<std::size_t>(n)][static_cast<std::size_t>(k - 1)];
    }
};

VorticityMasses vorticity_masses(const TwoPhaseResult& result);

struct Transition {
    int k = 0;           ///< transition generation, 0 when the lineage is absent everywhere
    double time = 0.0;   ///< t_{k-1}
};

struct TransitionTable {
    double eta = 0.0;
    std::vector<Transition> per_final;
};

/// First generation with N <= eta P (D_n >= 0) or P <= eta N (D_n < 0); persistence asserted.
TransitionTable transition_generation(const VorticityMasses& masses, double eta,
                                      const std::vector<double>& generation_start_times = {});
TransitionTable transition_generation(const TwoPhaseResult& result, const VorticityMasses& masses);

struct BetaEntry {
    int k = 0;
    int i = 0;
    int n = -1;
    int degree = 0;
    double beta = 1.0;
    /// beta^2 = num / den exactly (1/1 before the transition, |D_n| / sum d^2 after, 0/1 when sum d^2 = 0).
    std::int64_t num = 1;
    std::int64_t den = 1;
};

struct BetaTable {
    std::vector<BetaEntry> entries;  ///< aligned with the annuli of the family, generation-major
    const BetaEntry* find(int k, int i) const;
};

BetaTable beta_table(const TwoPhaseResult& result, const TransitionTable& transitions);

/// Exact check that post-transition groups satisfy sum d^2 beta^2 = |D_n|.
bool beta_normalization_exact(const TwoPhaseResult& result, const BetaTable& betas, const TransitionTable& tr);

/// Number of generations at which some merged ball absorbed two or more nonzero-degree balls,
/// counted per lineage from its transition generation on.
std::vector<int> effective_merge_counts(const TwoPhaseResult& result, const TransitionTable& tr);

// ---- auxiliary field G ------------------------------------------------------

struct GAnnulus {
    AnnulusRecord annulus;
    double coefficient = 0.0;  ///< d * beta
};

struct GField {
    std::vector<GAnnulus> annuli;
    std::vector<Ball> final_balls;
    std::vector<std::vector<std::size_t>> by_lineage;  ///< annulus indices per final ball
};

GField build_G(const TwoPhaseResult& result, const BetaTable& betas);

/// c (x-a)^perp / |x-a|^2 on the containing annulus, zero elsewhere.
Vec2 eval_G(const GField& g, Vec2 x);

/// Sampled G at cell centers.
std::vector<Vec2> sample_G(const GField& g, const GridSpec& grid);

/// d m^2 beta / (rho^2 r).
double jerrard_G_coefficient(int d, double m, double rho, double r, double beta = 1.0);

}  // namespace vortexball
