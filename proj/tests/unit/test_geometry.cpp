#include <doctest.h>

#include <random>

#include "../support/oracles.hpp"
#include "vortexball/geometry.hpp"

using namespace vortexball;

TEST_SUITE("geometry") {

TEST_CASE("two tangent balls merge at the analytic time") {
    // Radii 1 and 1 at distance 4 touch when e^t = 2.
    const BallCollection c{{{{0.0, 0.0}, 1.0, 1}, {{4.0, 0.0}, 1.0, -1}}};
    const auto contact = next_contact_time(c);
    REQUIRE(contact);
    CHECK(contact->dt == doctest::Approx(std::log(2.0)));

    const GrowthHistory h = grow(c, 1.0);
    REQUIRE(h.merges.size() == 1);
    CHECK(h.merges[0].time == doctest::Approx(std::log(2.0)));
    REQUIRE(h.final_balls().size() == 1);
    const Ball& f = h.final_balls()[0];
    CHECK(f.center.x == doctest::Approx(2.0));
    CHECK(f.radius == doctest::Approx(2.0 * std::exp(1.0)));
    CHECK(*f.degree == 0);
}

TEST_CASE("overlapping input merges at t = 0") {
    const BallCollection c{{{{0.0, 0.0}, 1.0, 1}, {{1.5, 0.0}, 1.0, 1}, {{10.0, 0.0}, 0.5, 1}}};
    const GrowthHistory h = grow(c, 0.0);
    CHECK(h.final_balls().size() == 2);
    CHECK(h.merges.size() == 1);
    CHECK(h.merges[0].time == 0.0);
    CHECK(*h.final_balls()[0].degree == 2);
}

TEST_CASE("cascade after a merge") {
    // The merged ball of the first pair reaches the third immediately.
    const BallCollection c{{{{0.0, 0.0}, 1.0}, {{2.2, 0.0}, 1.0}, {{3.3, 1.0}, 0.1}}};
    const GrowthHistory h = grow(c, 0.2);
    CHECK(h.final_balls().size() == 1);
    const auto brute = oracle::brute_grow(c.balls, 0.2);
    CHECK(oracle::merge_leaf_sets(h) == oracle::merge_leaf_sets(brute));
}

TEST_CASE("uniform growth agrees with the time-stepping oracle") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 8; ++trial) {
        const auto balls = oracle::random_balls(rng, 20);
        const double s = 1.2;
        const GrowthHistory h = grow(BallCollection{balls}, s);
        const auto brute = oracle::brute_grow(balls, s);
        CHECK(oracle::merge_leaf_sets(h) == oracle::merge_leaf_sets(brute));
        REQUIRE(h.final_balls().size() == brute.balls.size());
        CHECK(pairwise_disjoint(h.final_balls()));
        const double total0 = BallCollection{balls}.total_radius();
        CHECK(BallCollection{h.final_balls()}.total_radius() == doctest::Approx(total0 * std::exp(s)).epsilon(1e-12));
    }
}

TEST_CASE("every ball sits inside its descendant") {
    std::mt19937_64 rng(5);
    const auto balls = oracle::random_balls(rng, 20);
    const GrowthHistory h = grow(BallCollection{balls}, 1.5);
    for (std::size_t k = 1; k < h.generations.size(); ++k) {
        const auto& prev = h.generations[k - 1];
        const auto& cur = h.generations[k];
        for (std::size_t i = 0; i < prev.after.size(); ++i) {
            const int anc = h.ancestor_in(prev.after_ids[i], k);
            const auto it = std::find(cur.after_ids.begin(), cur.after_ids.end(), anc);
            REQUIRE(it != cur.after_ids.end());
            CHECK(cur.after[static_cast<std::size_t>(it - cur.after_ids.begin())].contains(prev.after[i]));
        }
    }
}

TEST_CASE("jerrard growth agrees with the time-stepping oracle") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 4; ++trial) {
        auto balls = oracle::random_balls(rng, 12, true);
        balls = merge_until_disjoint(balls);
        const double sigma = 0.6;
        const GrowthHistory h = grow_jerrard(BallCollection{balls}, sigma);
        const auto brute = oracle::brute_grow_jerrard(balls, sigma);
        CHECK(oracle::merge_leaf_sets(h) == oracle::merge_leaf_sets(brute));
        REQUIRE(h.final_balls().size() == brute.balls.size());
        for (std::size_t i = 0; i < brute.balls.size(); ++i) {
            CHECK(h.final_balls()[i].radius == doctest::Approx(brute.balls[i].ball.radius).epsilon(1e-3));
            CHECK(h.final_balls()[i].center.x == doctest::Approx(brute.balls[i].ball.center.x).epsilon(1e-3));
        }
        double smin = 1e300;
        for (const Ball& b : h.final_balls())
            if (b.degree && *b.degree != 0) smin = std::min(smin, b.radius / std::abs(*b.degree));
        if (!h.stopped_above_target) CHECK(smin == doctest::Approx(sigma).epsilon(1e-9));
        else CHECK(smin > sigma);
    }
}

TEST_CASE("jerrard growth needs a nonzero degree") {
    const BallCollection c{{{{0.0, 0.0}, 1.0, 0}}};
    CHECK_THROWS_WITH_AS(grow_jerrard(c, 1.0), "no growth parameter defined", PreconditionError);
    CHECK_THROWS_AS(grow_jerrard(BallCollection{{{{0.0, 0.0}, 1.0}}}, 1.0), PreconditionError);
}

TEST_CASE("accounting identity") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        const auto balls = oracle::random_balls(rng, 20);
        const GrowthHistory h = grow(BallCollection{balls}, 1.3);
        const RadialPolynomial area{[](Vec2) { return std::vector<double>{0.0, 0.0, kPi}; }};
        const RadialPolynomial perimeter{[](Vec2) { return std::vector<double>{0.0, 2.0 * kPi}; }};
        CHECK(accounting_residual(h, area) < 1e-9);
        CHECK(accounting_residual(h, perimeter) < 1e-9);
        const BallFunction general = [](Vec2 x, double r) { return r * r * (1.0 + 0.1 * x.x) + std::sin(r); };
        CHECK(accounting_residual(h, general, 1e-10) < 1e-7);
    }
}

TEST_CASE("merge_until_disjoint") {
    std::vector<std::vector<std::size_t>> origin;
    const auto out = merge_until_disjoint({{{0.0, 0.0}, 1.0}, {{5.0, 0.0}, 1.0}, {{1.0, 0.0}, 1.0}}, &origin);
    REQUIRE(out.size() == 2);
    CHECK(origin[0] == std::vector<std::size_t>{0, 2});
    CHECK(origin[1] == std::vector<std::size_t>{1});
    CHECK(pairwise_disjoint(out));
}

TEST_CASE("invalid input") {
    CHECK_THROWS_AS(grow(BallCollection{{{{0.0, 0.0}, -1.0}}}, 1.0), PreconditionError);
    CHECK_THROWS_AS(grow(BallCollection{{{{0.0, 0.0}, 1.0}}}, -1.0), PreconditionError);
}

}
