#include "submax/errors.hpp"
#include "submax/polytopes.hpp"

#include <doctest.h>

#include <numeric>

using namespace submax;

TEST_CASE("clique index sizes and order") {
    const CliqueIndex three(3, 1);
    CHECK(three.size() == 6);
    CHECK(three[3] == Subset::of(3, {0, 1}));
    CHECK(three[5] == Subset::of(3, {1, 2}));
    CHECK(three.maximal_begin() == 3);
    CHECK(CliqueIndex(4, 2).size() == 14);
    CHECK(enumerate_dk(2, 1).size() == 3);
    CHECK(three.position(Subset::of(3, {0, 2})) == 4);
    CHECK_THROWS_AS(three.position(Subset::full(3)), DomainError);
    CHECK_THROWS_AS(CliqueIndex(3, 3), DomainError);
}

TEST_CASE("local consistency rows for one pair") {
    const CliqueIndex idx(2, 1);
    SUBCASE("integral point") { CHECK(nk_violations(idx, std::vector<double>{1, 1, 1}).empty()); }
    SUBCASE("pair without its singletons") {
        const auto v = nk_violations(idx, std::vector<double>{0, 0, 1});
        REQUIRE(v.size() == 2);
        CHECK(v[0].lower == Subset::of(2, {0}));
        CHECK(v[1].lower == Subset::of(2, {1}));
        CHECK(v[0].slack == -1.0);
        CHECK(v[1].slack == -1.0);
    }
    SUBCASE("independent halves") { CHECK(nk_violations(idx, std::vector<double>{0.5, 0.5, 0.25}).empty()); }
}

TEST_CASE("pairwise rows reduce to the four usual inequalities") {
    const CliqueIndex idx(2, 1);
    Rng rng(1);
    for (int t = 0; t < 500; ++t) {
        const std::vector<double> y{rng.uniform01(), rng.uniform01(), rng.uniform01()};
        const bool by_hand = y[2] >= -kFeasibilityTol && y[0] - y[2] >= -kFeasibilityTol &&
                             y[1] - y[2] >= -kFeasibilityTol && 1 - y[0] - y[1] + y[2] >= -kFeasibilityTol;
        CHECK(nk_violations(idx, y).empty() == by_hand);
    }
}

TEST_CASE("integral points satisfy every row") {
    Rng rng(2);
    for (int t = 0; t < 200; ++t) {
        const int n = 2 + rng.index(7);
        const int k = 1 + rng.index(std::min(3, n - 1));
        const CliqueIndex idx(n, k);
        Subset x(n);
        for (int i = 0; i < n; ++i) {
            if (rng.bernoulli(0.5)) {
                x.insert(i);
            }
        }
        const auto y = integral_point(idx, x);
        CHECK(in_local_polytope(idx, y));
        CHECK(mk_membership(idx, y));
    }
}

TEST_CASE("marginal polytope membership for integral vectors") {
    const CliqueIndex idx(3, 1);
    CHECK(mk_membership(idx, integral_point(idx, Subset::of(3, {0, 2}))));
    CHECK_FALSE(mk_membership(idx, std::vector<double>{1, 1, 0, 0, 0, 0}));
    CHECK(mk_membership(idx, std::vector<double>(6, 0.0)));
    CHECK_THROWS_AS(mk_membership(idx, std::vector<double>(6, 0.5)), DomainError);
    const CliqueIndex wide(15, 1);
    CHECK_THROWS_AS(mk_membership(wide, std::vector<double>(wide.size(), 0.0)), CapacityError);
}

TEST_CASE("simplex projection") {
    CHECK(project_simplex(std::vector<double>{0.2, 0.8}) == std::vector<double>{0.2, 0.8});
    CHECK(project_simplex(std::vector<double>{2, 0}) == std::vector<double>{1, 0});
    const auto third = project_simplex(std::vector<double>{0.5, 0.5, 0.5});
    for (double v : third) {
        CHECK(v == doctest::Approx(1.0 / 3.0));
    }
    Rng rng(4);
    for (int t = 0; t < 100; ++t) {
        std::vector<double> v(5);
        for (auto& x : v) {
            x = 4.0 * rng.uniform01() - 2.0;
        }
        const auto p = project_simplex(v);
        CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0));
        // Optimality: v - p is constant on the support and no larger off it.
        double tau = 0.0;
        for (std::size_t i = 0; i < 5; ++i) {
            if (p[i] > 0) {
                tau = v[i] - p[i];
            }
        }
        for (std::size_t i = 0; i < 5; ++i) {
            CHECK(p[i] >= 0.0);
            if (p[i] > 0) {
                CHECK(v[i] - p[i] == doctest::Approx(tau));
            } else {
                CHECK(v[i] <= tau + 1e-12);
            }
        }
    }
}

TEST_CASE("dense nu vectors") {
    const CliqueIndex idx(3, 1);
    NuVector nu{3, 1, {}};
    nu.coef[Subset::of(3, {0, 1})] = 1.0;
    nu.coef[Subset::of(3, {1})] = -1.0;
    const auto dense = to_dense(nu, idx);
    CHECK(dense == std::vector<double>{0, -1, 0, 1, 0, 0});
    nu.coef[Subset::full(3)] = 1.0;
    CHECK_THROWS_AS(to_dense(nu, idx), DomainError);
}
