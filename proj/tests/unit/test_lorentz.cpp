#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "vortexball/lorentz.hpp"
#include "vortexball/verify.hpp"

using namespace vortexball;

namespace {

// O(n^2) oracle: weak norm from the distribution function at every sample value.
double brute_weak(const std::vector<double>& v, double a) {
    double best = 0.0;
    for (double t : v) {
        std::size_t cnt = 0;
        for (double w : v) cnt += w >= t;  // lambda(t^-) attained as t approaches a sample from below
        best = std::max(best, t * std::sqrt(static_cast<double>(cnt) * a));
    }
    return best;
}

// Oracle for the L^{2,inf} norm: the supremum over s of s^-1/2 int_0^s f* is attained at a rank boundary.
double brute_l2inf(std::vector<double> v, double a) {
    std::sort(v.rbegin(), v.rend());
    double best = 0.0, sum = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        sum += v[k] * a;
        best = std::max(best, sum / std::sqrt(static_cast<double>(k + 1) * a));
    }
    return best;
}

}  // namespace

TEST_SUITE("lorentz") {

TEST_CASE("constant function") {
    const SampledMagnitudes m{std::vector<double>(100, 2.0), 0.04};
    CHECK(weak_quasinorm(m) == doctest::Approx(4.0));
    CHECK(l2inf_norm(m) == doctest::Approx(4.0));
    CHECK(l2_norm(m) == doctest::Approx(4.0));
    CHECK(distribution_function(m, 1.0) == doctest::Approx(4.0));
    CHECK(distribution_function(m, 2.0) == doctest::Approx(0.0));
}

TEST_CASE("norms agree with brute-force oracles") {
    std::mt19937_64 rng(7);
    std::exponential_distribution<double> ex(0.5);
    for (int trial = 0; trial < 20; ++trial) {
        SampledMagnitudes m{std::vector<double>(300), 0.01 + 0.01 * trial};
        for (double& v : m.values) v = ex(rng);
        const LorentzStats s = lorentz_stats(m);
        CHECK(s.weak == doctest::Approx(brute_weak(m.values, m.cell_area)).epsilon(1e-12));
        CHECK(s.l2inf == doctest::Approx(brute_l2inf(m.values, m.cell_area)).epsilon(1e-12));
        CHECK(s.weak <= s.l2inf * (1 + 1e-12));
        CHECK(s.l2inf <= 2 * s.weak * (1 + 1e-12));
    }
}

TEST_CASE("rearrangement is descending and equimeasurable") {
    const SampledMagnitudes m{{3.0, 1.0, 4.0, 1.0, 5.0}, 1.0};
    const auto r = decreasing_rearrangement(m);
    CHECK(r == std::vector<double>{5.0, 4.0, 3.0, 1.0, 1.0});
    CHECK(distribution_function(m, 1.0) == doctest::Approx(3.0));
    CHECK(distribution_function(m, 0.5) == doctest::Approx(5.0));
}

TEST_CASE("invalid samples") {
    CHECK_THROWS_AS(lorentz_stats(SampledMagnitudes{{1.0, -1.0}, 1.0}), PreconditionError);
    CHECK_THROWS_AS(lorentz_stats(SampledMagnitudes{{1.0}, 0.0}), PreconditionError);
    const LorentzStats e = lorentz_stats(SampledMagnitudes{{}, 1.0});
    CHECK(e.weak == 0.0);
    CHECK(e.l2inf == 0.0);
}

TEST_CASE("lower bound by the L2 norm") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double eps = 0.01;
    SampledMagnitudes m{std::vector<double>(5000), 1e-4};
    for (double& v : m.values) v = u(rng) / eps;
    const LowerBoundCheck c = lorentz_lower_bound_check(m, 1.0, eps);
    CHECK(c.pass);
    CHECK(c.lhs >= c.rhs);
    CHECK_THROWS_AS(lorentz_lower_bound_check(m, 0.5, eps), PreconditionError);
}

TEST_CASE("csv output") {
    const LorentzStats s = lorentz_stats(SampledMagnitudes{{0.5, 2.0, 1.0}, 0.1});
    std::ostringstream a, b;
    write_distribution_csv(s, a);
    write_rearrangement_csv(s, b);
    CHECK(a.str().rfind("t,lambda\r\n", 0) == 0);
    CHECK(b.str().rfind("s,fstar\r\n", 0) == 0);
    CHECK(b.str().find("s,fstar\r\n0,2\r\n0.10000000000000001,1\r\n") != std::string::npos);

    std::vector<double> big(100000);
    for (std::size_t k = 0; k < big.size(); ++k) big[k] = 1.0 / static_cast<double>(k + 1);
    std::ostringstream c;
    write_rearrangement_csv(lorentz_stats(SampledMagnitudes{big, 1.0}), c, 512);
    const std::string txt = c.str();
    CHECK(std::count(txt.begin(), txt.end(), '\n') <= 513);
}

TEST_CASE("sandwich report") {
    const auto rep = check_lorentz_sandwich(SampledMagnitudes{{1.0, 2.0, 3.0}, 1.0});
    CHECK(rep.pass);
    CHECK(rep.slack >= 0.0);
}

}
