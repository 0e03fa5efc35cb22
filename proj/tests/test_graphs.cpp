#include "fixtures.hpp"

#include "submax/errors.hpp"
#include "submax/graphs.hpp"
#include "submax/instances.hpp"
#include "submax/properties.hpp"

#include <doctest.h>

#include <cmath>
#include <variant>

using namespace submax;
using fixtures::all_subsets;

namespace {

DecomposableGraph path_graph() { return DecomposableGraph(Graph(3, {{0, 1}, {1, 2}})); }

DecomposableGraph star(int leaves) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= leaves; ++i) {
        edges.emplace_back(0, i);
    }
    return DecomposableGraph(Graph(leaves + 1, edges));
}

} // namespace

TEST_CASE("DAG bound on the triangle cut") {
    const auto f = fixtures::triangle();
    const Dag chain(3, {{}, {0}, {1}});
    CHECK(dag_bound(f, chain, Subset::full(3)) == 2.0);
    CHECK(dag_bound(f, chain, Subset::of(3, {0})) == 2.0);
    const Dag empty(3, {{}, {}, {}});
    for (const auto& a : all_subsets(3)) {
        CHECK(dag_bound(f, empty, a) == 2.0 * a.count());
    }
}

TEST_CASE("DAG construction errors") {
    CHECK_THROWS_AS(Dag(2, {{1}, {0}}), DomainError);
    CHECK_THROWS_AS(Dag(2, {{0}, {}}), DomainError);
    CHECK_THROWS_AS(Dag(2, {{}, {2}}), DomainError);
}

TEST_CASE("ancestral sets") {
    const Dag chain(3, {{}, {0}, {1}});
    CHECK(is_ancestral(chain, Subset::of(3, {0, 1})));
    CHECK_FALSE(is_ancestral(chain, Subset::of(3, {1})));
    CHECK(is_ancestral(chain, Subset(3)));
}

TEST_CASE("perfect elimination orderings") {
    SUBCASE("path") {
        const auto r = peo_and_check(Graph(3, {{0, 1}, {1, 2}}));
        REQUIRE(std::holds_alternative<Elimination>(r));
        const auto& e = std::get<Elimination>(r);
        const int first = e.peo.front();
        CHECK(e.later_neighbors[static_cast<std::size_t>(first)].count() == 1);
    }
    SUBCASE("four-cycle") {
        const auto r = peo_and_check(Graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}));
        REQUIRE(std::holds_alternative<NotTriangulated>(r));
        CHECK(std::get<NotTriangulated>(r).cycle.size() == 4);
        CHECK_THROWS_AS(DecomposableGraph(Graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}})), DomainError);
    }
    SUBCASE("triangle") {
        const DecomposableGraph d(Graph::complete(3));
        CHECK(d.tree().cliques == std::vector<Subset>{Subset::full(3)});
    }
}

TEST_CASE("junction trees") {
    SUBCASE("path") {
        const auto jt = path_graph().tree();
        CHECK(jt.cliques == std::vector<Subset>{Subset::of(3, {0, 1}), Subset::of(3, {1, 2})});
        const auto seps = jt.separators();
        REQUIRE(seps.size() == 1);
        CHECK(seps[0].first == Subset::of(3, {1}));
        CHECK(seps[0].second == 1);
    }
    SUBCASE("star") {
        const auto jt = star(3).tree();
        CHECK(jt.cliques.size() == 3);
        const auto seps = jt.separators();
        REQUIRE(seps.size() == 1);
        CHECK(seps[0].first == Subset::of(4, {0}));
        CHECK(seps[0].second == 2);
    }
    SUBCASE("triangle") {
        CHECK(DecomposableGraph(Graph::complete(3)).tree().separators().empty());
    }
    SUBCASE("running intersection on random triangulations") {
        Rng rng(5);
        for (int t = 0; t < 30; ++t) {
            const int n = 4 + rng.index(6);
            Graph g(n);
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    if (rng.bernoulli(0.3)) {
                        g.add_edge(i, j);
                    }
                }
            }
            const DecomposableGraph d(triangulate(g, rng.permutation(n)));
            const auto& jt = d.tree();
            // Cliques containing a vertex form a connected subtree: count edges between them.
            for (int v = 0; v < n; ++v) {
                int nodes = 0;
                int links = 0;
                for (const auto& c : jt.cliques) {
                    nodes += c.contains(v) ? 1 : 0;
                }
                for (const auto& [a, b] : jt.edges) {
                    links += (jt.cliques[static_cast<std::size_t>(a)].contains(v) &&
                              jt.cliques[static_cast<std::size_t>(b)].contains(v))
                                 ? 1
                                 : 0;
                }
                CHECK(links == nodes - 1);
            }
        }
    }
}

TEST_CASE("decomposable bound") {
    const auto f = fixtures::triangle();
    const auto path = path_graph();
    CHECK(decomposable_bound(f, path, Subset::full(3)) == 2.0);
    CHECK(decomposable_bound(f, path, Subset::of(3, {0, 1})) == 2.0);
    CHECK(decomposable_bound(f, path, Subset::full(3)) == dag_bound(f, path.as_dag(), Subset::full(3)));
    const DecomposableGraph complete(Graph::complete(4));
    const auto g = fixtures::cut(4, {{0, 1, 0.5}, {1, 2, 1.5}, {2, 3, 0.25}, {0, 3, 2.0}});
    for (const auto& a : all_subsets(4)) {
        CHECK(decomposable_bound(g, complete, a) == doctest::Approx(g(a)));
    }
}

TEST_CASE("nu vectors of junction trees") {
    SUBCASE("path") {
        const auto nu = nu_from_decomposable(path_graph());
        CHECK(nu.at(Subset::of(3, {0, 1})) == 1.0);
        CHECK(nu.at(Subset::of(3, {1, 2})) == 1.0);
        CHECK(nu.at(Subset::of(3, {1})) == -1.0);
        CHECK(nu.at(Subset::of(3, {0})) == 0.0);
        CHECK(nu.at(Subset::of(3, {2})) == 0.0);
    }
    SUBCASE("star") { CHECK(nu_from_decomposable(star(3)).at(Subset::of(4, {0})) == -2.0); }
    SUBCASE("single edge") {
        const auto nu = nu_from_decomposable(DecomposableGraph(Graph(2, {{0, 1}})));
        CHECK(nu.coef.size() == 1);
        CHECK(nu.at(Subset::full(2)) == 1.0);
    }
    SUBCASE("non-maximal tree is rejected") {
        CHECK_THROWS_AS(nu_from_decomposable(DecomposableGraph(Graph(3, {{0, 1}}))), DomainError);
    }
    SUBCASE("every element is covered once") {
        Rng rng(3);
        for (int t = 0; t < 20; ++t) {
            const int n = 3 + rng.index(6);
            const int k = 1 + rng.index(n - 1);
            const auto nu = nu_from_decomposable(random_ktree(n, k, rng));
            for (int i = 0; i < n; ++i) {
                CHECK(nu.element_sum(i) == doctest::Approx(1.0));
            }
        }
    }
}

TEST_CASE("best tree structure") {
    SUBCASE("triangle: every tree gives 2") {
        const auto f = fixtures::triangle();
        CHECK(decomposable_bound(f, best_tree_structure(f), Subset::full(3)) == 2.0);
    }
    SUBCASE("modular functions are matched exactly") {
        const auto f = fixtures::modular({0.5, -1.0, 2.0, 3.0});
        CHECK(decomposable_bound(f, best_tree_structure(f), Subset::full(4)) == doctest::Approx(f(Subset::full(4))));
    }
    SUBCASE("entropy picks the correlated pair") {
        // Variables 0, 1 copies of one fair bit, variable 2 independent.
        const auto f = make_function(EntropyInstance{{2, 2, 2}, {0.25, 0.0, 0.0, 0.25, 0.25, 0.0, 0.0, 0.25}});
        CHECK(best_tree_structure(f).graph().has_edge(0, 1));
    }
    SUBCASE("tree cut recovers the generating tree") {
        const auto inst = gen_instance(GraphFamily::tree, GraphParams{9, 0, 0, 0.9}, 11);
        const auto g = best_tree_structure(make_function(inst)).graph();
        for (const auto& e : inst.edges) {
            CHECK(g.has_edge(e.i, e.j));
        }
    }
}

TEST_CASE("rerooting directed trees") {
    const Dag path(3, {{}, {0}, {1}});
    CHECK(reroot_tree(path, 2) == Dag(3, {{1}, {2}, {}}));
    CHECK(reroot_tree(path, 0) == path);
    const Dag star3(4, {{}, {0}, {0}, {0}});
    CHECK(reroot_tree(star3, 1) == Dag(4, {{1}, {}, {0}, {0}}));
    CHECK_THROWS_AS(reroot_tree(Dag(3, {{}, {}, {0, 1}}), 0), DomainError);
}

TEST_CASE("random k-trees are maximal junction trees") {
    Rng rng(17);
    for (int t = 0; t < 30; ++t) {
        const int n = 2 + rng.index(9);
        const int k = 1 + rng.index(n - 1);
        const auto d = random_ktree(n, k, rng);
        CHECK(d.treewidth() == k);
        CHECK(d.is_maximal_junction_tree());
        CHECK(d.tree().cliques.size() == static_cast<std::size_t>(n - k));
    }
}

TEST_CASE("junction-tree maximization matches enumeration") {
    Rng rng(23);
    for (int t = 0; t < 40; ++t) {
        const int n = 3 + rng.index(6);
        const int k = 1 + rng.index(std::min(3, n - 1));
        const auto f = random_submodular(t, n, rng.next_u64());
        const auto d = random_ktree(n, k, rng);
        std::vector<double> unary(static_cast<std::size_t>(n));
        for (auto& u : unary) {
            u = rng.uniform01() - 0.5;
        }
        const int budget = t % 3 == 0 ? -1 : rng.index(n + 1);
        auto objective = [&](const Subset& a) {
            double v = decomposable_bound(f, d, a);
            a.for_each([&](int i) { v += unary[static_cast<std::size_t>(i)]; });
            return v;
        };
        const auto r = maximize_decomposable(d, [&](const Subset& c) { return f(c); }, unary, budget);
        CHECK(r.value == doctest::Approx(fixtures::max_over_subsets(n, objective, budget)).epsilon(1e-12));
        CHECK(objective(r.argmax) == doctest::Approx(r.value).epsilon(1e-12));
        if (budget >= 0) {
            CHECK(r.argmax.count() <= budget);
        }
    }
}

TEST_CASE("triangulation adds fill-in") {
    const Graph cycle(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    const Graph tri = triangulate(cycle, {0, 1, 2, 3});
    CHECK(tri.has_edge(1, 3));
    CHECK(tri.edge_count() == 5);
}
