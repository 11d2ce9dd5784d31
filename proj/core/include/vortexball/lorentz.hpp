#pragma once

#include <iosfwd>
#include <vector>

namespace vortexball {

/// Nonnegative samples of |f|, each representing one cell of the given area.
struct SampledMagnitudes {
    std::vector<double> values;
    double cell_area = 1.0;

    /// Throws PreconditionError on negative or non-finite samples or a non-positive area.
    void validate() const;
    double domain_area() const { return cell_area * static_cast<double>(values.size()); }
};

/// All norms from one descending sort.
struct LorentzStats {
    std::vector<double> rearrangement;  ///< values sorted descending
    double cell_area = 1.0;
    double weak = 0.0;   ///< sup_t t lambda(t)^(1/2)
    double l2inf = 0.0;  ///< sup_t t^(-1/2) int_0^t f*
    double l2 = 0.0;
};

double distribution_function(const SampledMagnitudes& m, double t);
std::vector<double> decreasing_rearrangement(const SampledMagnitudes& m);
double weak_quasinorm(const SampledMagnitudes& m);
double l2inf_norm(const SampledMagnitudes& m);
double l2_norm(const SampledMagnitudes& m);
LorentzStats lorentz_stats(const SampledMagnitudes& m);

/// Evaluates both norms on an already sorted (descending) array.
double weak_quasinorm_sorted(const std::vector<double>& sorted, double cell_area);
double l2inf_norm_sorted(const std::vector<double>& sorted, double cell_area);

struct LowerBoundCheck {
    double lhs = 0.0;  ///< ||f||_{2,inf}^2
    double rhs = 0.0;  ///< (int f^2 - C^2 |Omega|) / (2 |log eps|)
    double l2_squared = 0.0;
    double area = 0.0;
    bool pass = false;
};

/// Lower bound of the squared Lorentz norm by the L^2 norm for fields bounded by C/eps.
LowerBoundCheck lorentz_lower_bound_check(const SampledMagnitudes& m, double C, double eps);

/// Curves with headers "t,lambda" and "s,fstar"; at most max_points rows, geometric in rank.
void write_distribution_csv(const LorentzStats& s, std::ostream& out, std::size_t max_points = 512);
void write_rearrangement_csv(const LorentzStats& s, std::ostream& out, std::size_t max_points = 512);

}  // namespace vortexball
