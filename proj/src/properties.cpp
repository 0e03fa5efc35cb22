#include "submax/properties.hpp"

#include "submax/baselines.hpp"
#include "submax/errors.hpp"
#include "submax/graphs.hpp"
#include "submax/instances.hpp"
#include "submax/polytopes.hpp"
#include "submax/rng.hpp"
#include "submax/saddle.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

namespace submax {

namespace {

constexpr int kMaxReportedFailures = 5;

// A trial returns nothing on success or a description of the violation.
using Trial = std::function<std::optional<std::string>(int n, Rng& rng, int trial)>;

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(12);
    out << v;
    return out.str();
}

template <typename Fn>
std::optional<std::string> for_all_subsets(int n, Fn&& fn) {
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t m = 0; m < count; ++m) {
        if (auto msg = fn(Subset::from_mask(n, m))) {
            return msg;
        }
    }
    return std::nullopt;
}

Dag dag_with_edge(int n, Rng& rng) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        Dag g = random_dag(n, rng);
        if (!g.edges().empty()) {
            return g;
        }
    }
    return random_dag(n, rng, 1.0);
}

Dag random_directed_tree(int n, Rng& rng) {
    const DecomposableGraph tree = random_ktree(n, 1, rng);
    return orient_forest(tree.graph(), rng.index(n));
}

DecomposableGraph random_decomposable(int n, Rng& rng, int trial) {
    if (trial % 2 == 0) {
        const int k = 1 + rng.index(std::min(3, n - 1));
        return random_ktree(n, k, rng);
    }
    Graph g(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (rng.bernoulli(0.35)) {
                g.add_edge(i, j);
            }
        }
    }
    return DecomposableGraph(triangulate(g, rng.permutation(n)));
}

std::optional<std::string> bound_validity(int n, Rng& rng, int trial) {
    const SetFunction f = random_submodular(trial, n, rng.next_u64());
    const Dag g = random_dag(n, rng);
    return for_all_subsets(n, [&](const Subset& a) -> std::optional<std::string> {
        const double bound = dag_bound(f, g, a);
        const double value = f(a);
        if (bound < value - kEpsNum) {
            return std::string(to_string(f.family())) + " F_G" + a.str() + " = " + fmt(bound) + " < F = " + fmt(value);
        }
        return std::nullopt;
    });
}

std::optional<std::string> parent_tightness(int n, Rng& rng, int trial) {
    const SetFunction f = random_submodular(trial, n, rng.next_u64());
    const Dag g = random_dag(n, rng);
    for (int i = 0; i < n; ++i) {
        const auto& parents = g.parents(i);
        const unsigned count = 1U << parents.size();
        for (unsigned m = 0; m < count; ++m) {
            Subset b(n);
            for (std::size_t q = 0; q < parents.size(); ++q) {
                if ((m >> q) & 1U) {
                    b.insert(parents[q]);
                }
            }
            Subset bi = b;
            bi.insert(i);
            const double lhs = dag_bound(f, g, bi) - dag_bound(f, g, b);
            const double rhs = f(bi) - f(b);
            if (std::abs(lhs - rhs) > kEpsNum) {
                return "element " + std::to_string(i) + ", B = " + b.str() + ": bound gain " + fmt(lhs) +
                       " != F gain " + fmt(rhs);
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string> subgraph_monotonicity(int n, Rng& rng, int trial) {
    const SetFunction f = random_submodular(trial, n, rng.next_u64());
    const Dag g = dag_with_edge(n, rng);
    const auto edges = g.edges();
    const auto [parent, child] = edges[static_cast<std::size_t>(rng.index(static_cast<int>(edges.size())))];
    const Dag sub = g.without_edge(parent, child);
    return for_all_subsets(n, [&](const Subset& a) -> std::optional<std::string> {
        const double full = dag_bound(f, g, a);
        const double reduced = dag_bound(f, sub, a);
        if (reduced < full - kEpsNum) {
            return "removing " + std::to_string(parent) + "->" + std::to_string(child) + " lowers the bound at " +
                   a.str() + " from " + fmt(full) + " to " + fmt(reduced);
        }
        return std::nullopt;
    });
}

std::optional<std::string> ancestral_domination(int n, Rng& rng, int trial) {
    const SetFunction f = random_submodular(trial, n, rng.next_u64());
    const Dag g = random_dag(n, rng);
    const Subset v = Subset::full(n);
    const double slack_v = dag_bound(f, g, v) - f(v);
    return for_all_subsets(n, [&](const Subset& a) -> std::optional<std::string> {
        if (!is_ancestral(g, a)) {
            return std::nullopt;
        }
        const double slack = dag_bound(f, g, a) - f(a);
        if (slack < -kEpsNum || slack > slack_v + kEpsNum) {
            return "ancestral " + a.str() + ": slack " + fmt(slack) + " outside [0, " + fmt(slack_v) + "]";
        }
        return std::nullopt;
    });
}

std::optional<std::string> tree_submodularity(int n, Rng& rng, int trial) {
    const SetFunction f = random_submodular(trial, n, rng.next_u64());
    const Dag g = random_directed_tree(n, rng);
    const SetFunction bound = SetFunction::custom(n, [f, g](const Subset& a) { return dag_bound(f, g, a); });
    if (!check_submodular(bound)) {
        return std::string("tree bound is not submodular");
    }
    return std::nullopt;
}

std::optional<std::string> reroot_invariance(int n, Rng& rng, int trial) {
    const SetFunction f = random_submodular(trial, n, rng.next_u64());
    const Dag g = random_directed_tree(n, rng);
    const int root = rng.index(n);
    const Dag h = reroot_tree(g, root);
    return for_all_subsets(n, [&](const Subset& a) -> std::optional<std::string> {
        const double before = dag_bound(f, g, a);
        const double after = dag_bound(f, h, a);
        if (std::abs(before - after) > kEpsNum) {
            return "rerooting at " + std::to_string(root) + " changes the bound at " + a.str() + ": " + fmt(before) +
                   " vs " + fmt(after);
        }
        return std::nullopt;
    });
}

std::optional<std::string> decomposable_forms(int n, Rng& rng, int trial) {
    const SetFunction f = random_submodular(trial, n, rng.next_u64());
    const DecomposableGraph dec = random_decomposable(n, rng, trial);
    const Dag dag = dec.as_dag();
    std::optional<NuVector> nu;
    if (dec.is_maximal_junction_tree()) {
        nu = nu_from_decomposable(dec);
    }
    auto msg = for_all_subsets(n, [&](const Subset& a) -> std::optional<std::string> {
        const double elim = elimination_bound(f, dec, a);
        const double jt = decomposable_bound(f, dec, a);
        const double directed = dag_bound(f, dag, a);
        if (std::abs(elim - jt) > kEpsNum || std::abs(directed - jt) > kEpsNum) {
            return "forms disagree at " + a.str() + ": elimination " + fmt(elim) + ", junction tree " + fmt(jt) +
                   ", directed " + fmt(directed);
        }
        if (nu && std::abs(nu->bound(f, a) - jt) > kEpsNum) {
            return "F_nu" + a.str() + " = " + fmt(nu->bound(f, a)) + " != " + fmt(jt);
        }
        if (dec.graph().is_clique(a) && std::abs(jt - f(a)) > kEpsNum) {
            return "not tight on clique " + a.str() + ": " + fmt(jt) + " vs " + fmt(f(a));
        }
        return std::nullopt;
    });
    return msg;
}

std::optional<std::string> relaxation_exactness(int n, Rng& rng, int trial) {
    // Integral points of the marginal polytope satisfy every local row.
    const int k = 1 + rng.index(std::min(3, n - 1));
    const CliqueIndex idx(n, k);
    Subset x(n);
    for (int i = 0; i < n; ++i) {
        if (rng.bernoulli(0.5)) {
            x.insert(i);
        }
    }
    const auto violations = nk_violations(idx, integral_point(idx, x));
    if (!violations.empty()) {
        return "integral point " + x.str() + " violates row (D = " + violations.front().maximal.str() +
               ", C = " + violations.front().lower.str() + ")";
    }
    // Tree cut functions: the bound is exact and found at the first iterate.
    GraphParams params;
    params.n = n;
    const SetFunction f = make_function(gen_instance(GraphFamily::tree, params, rng.next_u64() ^ static_cast<std::uint64_t>(trial)));
    SolverConfig config;
    config.inner_steps = 200;
    const SolveResult result = solve(f, config);
    const double opt = brute_force_max(f).value;
    if (std::abs(result.dual_bound - opt) > 1e-4 * std::max(1.0, std::abs(opt))) {
        return "tree cut bound " + fmt(result.dual_bound) + " != max " + fmt(opt);
    }
    if (result.state.trace.size() != 1) {
        return "tree cut needed " + std::to_string(result.state.trace.size()) + " outer iterations";
    }
    return std::nullopt;
}

struct Suite {
    const char* name;
    const char* summary;
    Trial trial;
};

const std::vector<Suite>& suites() {
    static const std::vector<Suite> all = {
        {"p1", "DAG bound dominates F on every subset", bound_validity},
        {"p2", "bound gains equal F gains on parent subsets", parent_tightness},
        {"p3", "removing an edge never lowers the bound", subgraph_monotonicity},
        {"p4", "ancestral slack lies in [0, slack at V]", ancestral_domination},
        {"p5", "directed-tree bounds are submodular", tree_submodularity},
        {"p6", "rerooting a directed tree keeps the bound", reroot_invariance},
        {"p7", "elimination, junction-tree and nu forms agree and are tight on cliques", decomposable_forms},
        {"p8", "integral points are locally consistent; tree cuts are solved exactly", relaxation_exactness},
    };
    return all;
}

const Suite& find_suite(std::string_view name) {
    for (const auto& s : suites()) {
        if (name == s.name) {
            return s;
        }
    }
    throw DomainError("unknown property '" + std::string(name) + "'");
}

} // namespace

const std::vector<std::string>& property_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& s : suites()) {
            out.emplace_back(s.name);
        }
        return out;
    }();
    return names;
}

std::string_view property_summary(std::string_view name) { return find_suite(name).summary; }

SetFunction random_submodular(int which, int n, std::uint64_t seed) {
    switch (which % 3) {
    case 0: {
        GraphParams params;
        params.n = n;
        params.p = 0.5;
        return make_function(gen_instance(GraphFamily::random, params, seed));
    }
    case 1:
        return make_function(random_coverage(n, seed));
    default:
        return make_function(random_entropy(n, seed));
    }
}

PropertyReport run_property(std::string_view name, int n, int trials, std::uint64_t seed) {
    const Suite& suite = find_suite(name);
    if (n < 2 || n > 12) {
        throw DomainError("property suites run on 2 <= n <= 12");
    }
    if (trials < 0) {
        throw DomainError("trial count must be non-negative");
    }
    PropertyReport report{suite.name, suite.summary, trials, 0, {}};
    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        std::optional<std::string> failure;
        try {
            failure = suite.trial(n, rng, t);
        } catch (const std::exception& e) {
            failure = std::string("exception: ") + e.what();
        }
        if (!failure) {
            ++report.passed;
        } else if (static_cast<int>(report.failures.size()) < kMaxReportedFailures) {
            report.failures.push_back("trial " + std::to_string(t) + ": " + *failure);
        }
    }
    return report;
}

} // namespace submax
