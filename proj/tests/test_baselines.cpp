#include "fixtures.hpp"

#include "submax/baselines.hpp"
#include "submax/errors.hpp"
#include "submax/properties.hpp"
#include "submax/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace submax;

TEST_CASE("brute force") {
    const auto tri = brute_force_max(fixtures::triangle());
    CHECK(tri.value == 2.0);
    CHECK(tri.set == Subset::of(3, {0}));
    const auto mod = brute_force_max(fixtures::modular({1, -2, 3}));
    CHECK(mod.value == 4.0);
    CHECK(mod.set == Subset::of(3, {0, 2}));
    const auto zero = brute_force_max(fixtures::zero(4));
    CHECK(zero.value == 0.0);
    CHECK(zero.set.empty());
    CHECK(brute_force_max(fixtures::modular({1, -2, 3}), 1).set == Subset::of(3, {2}));
    CHECK_THROWS_AS(brute_force_max(fixtures::zero(23)), CapacityError);
    CHECK_THROWS_AS(brute_force_max(fixtures::triangle(), -1), DomainError);
}

TEST_CASE("deterministic double greedy") {
    const auto tri = double_greedy(fixtures::triangle(), DoubleGreedyMode::deterministic);
    CHECK(tri.value == 2.0);
    CHECK(tri.set == Subset::of(3, {0, 2}));
    CHECK(double_greedy(fixtures::cut(2, {{0, 1, 1.0}}), DoubleGreedyMode::deterministic).value == 1.0);
    CHECK(double_greedy(fixtures::zero(3), DoubleGreedyMode::deterministic).value == 0.0);
}

TEST_CASE("negative values are reported with the subset") {
    const auto f = fixtures::modular({1, -2, 3});
    try {
        double_greedy(f, DoubleGreedyMode::deterministic);
        FAIL("expected a domain error");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find('{') != std::string::npos);
    }
    CHECK_THROWS_AS(local_search(f), DomainError);
}

TEST_CASE("randomized double greedy") {
    const auto tri = fixtures::triangle();
    double sum = 0.0;
    for (int r = 0; r < 1000; ++r) {
        const auto m = double_greedy(tri, DoubleGreedyMode::randomized, derive_seed(5, r));
        CHECK(m.value == doctest::Approx(tri(m.set)));
        sum += m.value;
    }
    CHECK(sum / 1000.0 >= 1.0);
    CHECK(sum / 1000.0 <= 2.0);
    const auto a = double_greedy(tri, DoubleGreedyMode::randomized, 9);
    const auto b = double_greedy(tri, DoubleGreedyMode::randomized, 9);
    CHECK(a.set == b.set);
}

TEST_CASE("local search") {
    CHECK(local_search(fixtures::triangle()).value == 2.0);
    const auto path = local_search(fixtures::path3());
    CHECK(path.value == 2.0);
    CHECK(local_search(fixtures::zero(3)).value == 0.0);
    CHECK_THROWS_AS(local_search(fixtures::triangle(), 0.0), DomainError);
}

TEST_CASE("baselines never beat the optimum and stay under the move cap") {
    for (int t = 0; t < 60; ++t) {
        const int n = 2 + t % 9;
        const auto f = random_submodular(t, n, derive_seed(71, t));
        const double opt = fixtures::max_over_subsets(n, [&](const Subset& a) { return f(a); });
        const auto det = double_greedy(f, DoubleGreedyMode::deterministic);
        CHECK(det.value <= opt + 1e-12);
        CHECK(det.value >= opt / 3.0);
        CHECK(det.value == doctest::Approx(f(det.set)));
        const auto ls = local_search(f, 0.01, t);
        CHECK(ls.value <= opt + 1e-12);
        CHECK(ls.value == doctest::Approx(f(ls.set)));
        CHECK(ls.moves < local_search_move_cap(n, 0.01));
        const auto bf = brute_force_max(f);
        CHECK(bf.value == opt);
    }
}
