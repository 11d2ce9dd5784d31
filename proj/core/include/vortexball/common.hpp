#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace vortexball {

/// Plain 2-vector used for points, offsets and vector-potential samples.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    constexpr bool operator==(const Vec2&) const = default;

    /// Counterclockwise rotation by a right angle.
    constexpr Vec2 perp() const { return {-y, x}; }
    double norm() const { return std::hypot(x, y); }
    constexpr double norm2() const { return x * x + y * y; }
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

inline constexpr double kPi = 3.14159265358979323846;

// Error taxonomy. Each maps onto a CLI exit status in tools/.

/// Input outside the geometric domain (center outside grid, circle leaves the sampled region).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parameter out of its admissible range (eps <= 0, eta outside (1/2, 1), r too small).
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A documented precondition was violated by the caller.
struct PreconditionError : std::logic_error {
    using std::logic_error::logic_error;
};

/// A numerical evaluation could not be carried out (vortex core on a circle, under-sampling).
struct EvaluationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bookkeeping invariant broken; signals a bug or an inconsistent degree assignment.
struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

/// The field does not satisfy the energy hypothesis needed by the construction.
struct HypothesisError : std::runtime_error {
    HypothesisError(double measured_, double threshold_)
        : std::runtime_error(describe(measured_, threshold_)), measured(measured_), threshold(threshold_) {}
    double measured;
    double threshold;

private:
    static std::string describe(double m, double t) {
        std::ostringstream os;
        os.precision(10);
        os << "energy hypothesis failed: F(|u|) = " << m << " exceeds eps^(alpha-1) = " << t;
        return os.str();
    }
};

}  // namespace vortexball
