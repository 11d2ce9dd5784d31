#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "vortexball/common.hpp"

namespace vortexball {

/// Closed disk with an optional cached degree.
struct Ball {
    Vec2 center;
    double radius = 0.0;
    std::optional<int> degree;

    bool contains(const Ball& b, double rel_tol = 1e-9) const {
        return distance(center, b.center) + b.radius <= radius * (1.0 + rel_tol) + 1e-300;
    }
};

struct BallCollection {
    std::vector<Ball> balls;

    double total_radius() const;
    std::size_t size() const { return balls.size(); }
    bool empty() const { return balls.empty(); }
};

inline constexpr double kTangencyTolerance = 1e-10;

/// True when closed balls meet, with the relative tangency tolerance applied to r1 + r2.
bool balls_touch(const Ball& a, const Ball& b);
bool pairwise_disjoint(const std::vector<Ball>& balls);

/// Radius-weighted center, radius r1 + r2; degrees add when both are known.
Ball merge_balls(const Ball& b1, const Ball& b2);

struct Contact {
    double dt = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
};

/// Earliest uniform-growth tangency; ties go to the lowest (i, j).
std::optional<Contact> next_contact_time(const BallCollection& coll);

enum class GrowthKind { uniform, jerrard };

/// One generation boundary t_k. `before` is the collection at t_k^-, `after` the post-merge one.
/// Ids are stable handles into GrowthHistory::parent.
struct GenerationSnapshot {
    double time = 0.0;
    double parameter = 0.0;  ///< growth clock: t (uniform) or min r/|d| (jerrard)
    std::vector<Ball> before;
    std::vector<int> before_ids;
    std::vector<Ball> after;
    std::vector<int> after_ids;
};

struct MergeEvent {
    double time = 0.0;
    std::vector<int> absorbed;
    int result_id = -1;
    Ball result;
};

struct AnnulusRecord {
    Vec2 center;
    double inner = 0.0;
    double outer = 0.0;
    double tau = 0.0;
    std::optional<int> degree;
    int generation = 0;  ///< k >= 1; spans (t_{k-1}, t_k]
    int lineage = -1;    ///< index of the final ball containing it
    int index = 0;       ///< position within the generation's ball list
    int ball_id = -1;
};

struct GrowthHistory {
    GrowthKind kind = GrowthKind::uniform;
    std::vector<GenerationSnapshot> generations;  ///< generations[0] is t = 0
    std::vector<MergeEvent> merges;
    std::vector<AnnulusRecord> annuli;
    std::vector<int> parent;  ///< id -> id of the merged ball that absorbed it, -1 if never absorbed
    std::vector<int> final_lineage;  ///< id -> index into final balls
    bool stopped_above_target = false;  ///< jerrard only: a merge pushed min s past the target

    const std::vector<Ball>& final_balls() const { return generations.back().after; }
    const std::vector<Ball>& initial_balls() const { return generations.front().before; }
    double final_time() const { return generations.back().time; }
    /// Follows parent links until an id present in generations[k].after.
    int ancestor_in(int id, std::size_t k) const;
};

/// Uniform conformal growth of all balls to s_target with tangency merges.
GrowthHistory grow(const BallCollection& coll, double s_target);

/// Grows only the balls minimizing r/|d| until min r/|d| reaches sigma_target.
GrowthHistory grow_jerrard(const BallCollection& coll, double sigma_target);

/// Merges touching balls in lowest-pair-index order until the list is disjoint.
/// `origin` tracks, for each output ball, which input indices it absorbed.
std::vector<Ball> merge_until_disjoint(std::vector<Ball> balls, std::vector<std::vector<std::size_t>>* origin = nullptr);

/// F(x, r) = sum_p c_p(x) r^p; coefficients indexed by power p.
struct RadialPolynomial {
    std::function<std::vector<double>(Vec2)> coefficients;
};

using BallFunction = std::function<double(Vec2, double)>;

struct AccountingTerms {
    double lhs = 0.0;
    double growth_integral = 0.0;
    double jumps = 0.0;
    double residual() const { return std::abs(lhs - growth_integral - jumps); }
};

/// Closed-form growth integral per annulus.
AccountingTerms accounting_terms(const GrowthHistory& h, const RadialPolynomial& F);
/// Numeric radial derivative and adaptive Simpson quadrature; rel_tol bounds each annulus integral.
AccountingTerms accounting_terms(const GrowthHistory& h, const BallFunction& F, double rel_tol = 1e-8);

double accounting_residual(const GrowthHistory& h, const RadialPolynomial& F);
double accounting_residual(const GrowthHistory& h, const BallFunction& F, double rel_tol = 1e-8);

}  // namespace vortexball
