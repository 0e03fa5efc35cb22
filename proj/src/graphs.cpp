#include "submax/graphs.hpp"

#include "submax/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

namespace submax {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int x) {
        while (parent_[static_cast<std::size_t>(x)] != x) {
            auto& p = parent_[static_cast<std::size_t>(x)];
            p = parent_[static_cast<std::size_t>(p)];
            x = p;
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
        return true;
    }

private:
    std::vector<int> parent_;
};

std::size_t at(int i) { return static_cast<std::size_t>(i); }

} // namespace

// ---------------------------------------------------------------- Graph

Graph::Graph(int n) : n_(n), adj_(at(n)) {
    if (n < 0) {
        throw DomainError("graph size must be non-negative");
    }
}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : Graph(n) {
    for (const auto& [u, v] : edges) {
        add_edge(u, v);
    }
}

void Graph::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) {
        throw DomainError("invalid edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
    if (has_edge(u, v)) {
        return;
    }
    auto insert_sorted = [](std::vector<int>& list, int x) {
        list.insert(std::lower_bound(list.begin(), list.end(), x), x);
    };
    insert_sorted(adj_[at(u)], v);
    insert_sorted(adj_[at(v)], u);
}

bool Graph::has_edge(int u, int v) const {
    const auto& list = adj_[at(u)];
    return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u) {
        for (int v : adj_[at(u)]) {
            if (u < v) {
                out.emplace_back(u, v);
            }
        }
    }
    return out;
}

std::size_t Graph::edge_count() const {
    std::size_t total = 0;
    for (const auto& list : adj_) {
        total += list.size();
    }
    return total / 2;
}

bool Graph::is_clique(const Subset& s) const {
    const auto e = s.elements();
    for (std::size_t a = 0; a < e.size(); ++a) {
        for (std::size_t b = a + 1; b < e.size(); ++b) {
            if (!has_edge(e[a], e[b])) {
                return false;
            }
        }
    }
    return true;
}

Graph Graph::complete(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            g.add_edge(u, v);
        }
    }
    return g;
}

// ---------------------------------------------------------------- Dag

Dag::Dag(int n, std::vector<std::vector<int>> parents) : n_(n), parents_(std::move(parents)) {
    if (n < 1 || static_cast<int>(parents_.size()) != n) {
        throw DomainError("DAG needs one parent list per node");
    }
    std::vector<std::vector<int>> children(at(n));
    std::vector<int> indegree(at(n), 0);
    for (int i = 0; i < n; ++i) {
        auto& ps = parents_[at(i)];
        std::sort(ps.begin(), ps.end());
        ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
        for (int p : ps) {
            if (p < 0 || p >= n || p == i) {
                throw DomainError("invalid parent " + std::to_string(p) + " of node " + std::to_string(i));
            }
            children[at(p)].push_back(i);
            ++indegree[at(i)];
        }
    }
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int i = 0; i < n; ++i) {
        if (indegree[at(i)] == 0) {
            ready.push(i);
        }
    }
    while (!ready.empty()) {
        const int v = ready.top();
        ready.pop();
        topo_.push_back(v);
        for (int c : children[at(v)]) {
            if (--indegree[at(c)] == 0) {
                ready.push(c);
            }
        }
    }
    if (static_cast<int>(topo_.size()) != n) {
        throw DomainError("parent sets contain a directed cycle");
    }
}

Subset Dag::parent_set(int i) const { return Subset::of(n_, parents_[at(i)]); }

std::vector<std::pair<int, int>> Dag::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n_; ++i) {
        for (int p : parents_[at(i)]) {
            out.emplace_back(p, i);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool Dag::is_directed_tree() const {
    return std::all_of(parents_.begin(), parents_.end(), [](const auto& ps) { return ps.size() <= 1; });
}

Dag Dag::without_edge(int parent, int child) const {
    auto ps = parents_;
    auto& list = ps[at(child)];
    const auto it = std::find(list.begin(), list.end(), parent);
    if (it == list.end()) {
        throw DomainError("edge not present in DAG");
    }
    list.erase(it);
    return Dag(n_, std::move(ps));
}

bool is_ancestral(const Dag& g, const Subset& a) {
    bool ok = true;
    a.for_each([&](int i) {
        for (int p : g.parents(i)) {
            ok = ok && a.contains(p);
        }
    });
    return ok;
}

double dag_bound(const SetFunction& f, const Dag& g, const Subset& a) {
    double total = 0.0;
    a.for_each([&](int i) {
        Subset pa = g.parent_set(i);
        pa &= a;
        Subset with_i = pa;
        with_i.insert(i);
#ifdef SUBMAX_INJECT_BOUND_BUG
        total += f(with_i) + f(pa);
#else
        total += f(with_i) - f(pa);
#endif
    });
    return total;
}

Dag random_dag(int n, Rng& rng, double p, int max_parents) {
    const auto order = rng.permutation(n);
    std::vector<std::vector<int>> parents(at(n));
    for (int pos = 1; pos < n; ++pos) {
        auto& ps = parents[at(order[at(pos)])];
        for (int q = 0; q < pos; ++q) {
            if (rng.bernoulli(p) && static_cast<int>(ps.size()) < max_parents) {
                ps.push_back(order[at(q)]);
            }
        }
    }
    return Dag(n, std::move(parents));
}

Dag orient_forest(const Graph& forest, int root) {
    const int n = forest.size();
    std::vector<std::vector<int>> parents(at(n));
    std::vector<char> seen(at(n), 0);
    auto bfs = [&](int start) {
        std::deque<int> queue{start};
        seen[at(start)] = 1;
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            for (int w : forest.neighbors(v)) {
                if (!seen[at(w)]) {
                    seen[at(w)] = 1;
                    parents[at(w)].push_back(v);
                    queue.push_back(w);
                }
            }
        }
    };
    bfs(root);
    for (int v = 0; v < n; ++v) {
        if (!seen[at(v)]) {
            bfs(v);
        }
    }
    return Dag(n, std::move(parents));
}

Dag reroot_tree(const Dag& tree, int new_root) {
    const int n = tree.size();
    if (new_root < 0 || new_root >= n) {
        throw DomainError("new root outside the ground set");
    }
    if (!tree.is_directed_tree()) {
        throw DomainError("reroot_tree needs a directed tree (at most one parent per node)");
    }
    Graph skeleton(n);
    for (const auto& [p, c] : tree.edges()) {
        skeleton.add_edge(p, c);
    }
    std::vector<std::vector<int>> parents(at(n));
    for (int i = 0; i < n; ++i) {
        parents[at(i)] = tree.parents(i);
    }
    std::vector<char> seen(at(n), 0);
    std::deque<int> queue{new_root};
    seen[at(new_root)] = 1;
    parents[at(new_root)].clear();
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int w : skeleton.neighbors(v)) {
            if (!seen[at(w)]) {
                seen[at(w)] = 1;
                parents[at(w)] = {v};
                queue.push_back(w);
            }
        }
    }
    return Dag(n, std::move(parents));
}

// ---------------------------------------------------------------- chordality

namespace {

std::vector<int> shortest_path_avoiding(const Graph& g, int from, int to, const std::vector<char>& blocked) {
    const int n = g.size();
    std::vector<int> prev(at(n), -2);
    std::deque<int> queue{from};
    prev[at(from)] = -1;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        if (v == to) {
            break;
        }
        for (int w : g.neighbors(v)) {
            if (prev[at(w)] == -2 && !blocked[at(w)]) {
                prev[at(w)] = v;
                queue.push_back(w);
            }
        }
    }
    if (prev[at(to)] == -2) {
        return {};
    }
    std::vector<int> path;
    for (int v = to; v != -1; v = prev[at(v)]) {
        path.push_back(v);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

// A chordless cycle through v, two non-adjacent neighbours x, y of v, and a
// shortest x-y path avoiding the rest of v's closed neighbourhood. Every
// chordless cycle of length >= 4 yields such a triple, so the scan is
// complete.
NotTriangulated find_chordless_cycle(const Graph& g) {
    const int n = g.size();
    for (int v = 0; v < n; ++v) {
        const auto& nb = g.neighbors(v);
        for (std::size_t a = 0; a < nb.size(); ++a) {
            for (std::size_t b = a + 1; b < nb.size(); ++b) {
                const int x = nb[a];
                const int y = nb[b];
                if (g.has_edge(x, y)) {
                    continue;
                }
                std::vector<char> blocked(at(n), 0);
                blocked[at(v)] = 1;
                for (int w : nb) {
                    blocked[at(w)] = (w != x && w != y) ? 1 : 0;
                }
                auto path = shortest_path_avoiding(g, x, y, blocked);
                if (!path.empty()) {
                    NotTriangulated out;
                    out.cycle.push_back(v);
                    out.cycle.insert(out.cycle.end(), path.begin(), path.end());
                    return out;
                }
            }
        }
    }
    throw std::logic_error("chordless cycle search failed on a non-chordal graph");
}

} // namespace

std::variant<Elimination, NotTriangulated> peo_and_check(const Graph& g) {
    const int n = g.size();
    std::vector<int> weight(at(n), 0);
    std::vector<char> numbered(at(n), 0);
    std::vector<int> visit;
    visit.reserve(at(n));
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (!numbered[at(v)] && (best < 0 || weight[at(v)] > weight[at(best)])) {
                best = v;
            }
        }
        numbered[at(best)] = 1;
        visit.push_back(best);
        for (int w : g.neighbors(best)) {
            if (!numbered[at(w)]) {
                ++weight[at(w)];
            }
        }
    }

    Elimination elim;
    elim.peo.assign(visit.rbegin(), visit.rend());
    std::vector<int> pos(at(n));
    for (int i = 0; i < n; ++i) {
        pos[at(elim.peo[at(i)])] = i;
    }
    elim.later_neighbors.assign(at(n), Subset(n));
    for (int v = 0; v < n; ++v) {
        int first = -1;
        for (int w : g.neighbors(v)) {
            if (pos[at(w)] > pos[at(v)]) {
                elim.later_neighbors[at(v)].insert(w);
                if (first < 0 || pos[at(w)] < pos[at(first)]) {
                    first = w;
                }
            }
        }
        if (first < 0) {
            continue;
        }
        bool ok = true;
        elim.later_neighbors[at(v)].for_each([&](int w) {
            ok = ok && (w == first || g.has_edge(first, w));
        });
        if (!ok) {
            return find_chordless_cycle(g);
        }
    }
    return elim;
}

// ---------------------------------------------------------------- junction trees

std::vector<std::pair<Subset, int>> JunctionTree::separators() const {
    std::map<Subset, int, CanonicalLess> counts;
    for (const auto& [a, b] : edges) {
        ++counts[cliques[at(a)] & cliques[at(b)]];
    }
    return {counts.begin(), counts.end()};
}

JunctionTree junction_tree(const Graph& g, const Elimination& elim) {
    (void)g;
    std::vector<Subset> candidates;
    for (int v : elim.peo) {
        Subset c = elim.later_neighbors[at(v)];
        c.insert(v);
        candidates.push_back(std::move(c));
    }
    JunctionTree jt;
    for (std::size_t a = 0; a < candidates.size(); ++a) {
        bool maximal = true;
        for (std::size_t b = 0; b < candidates.size() && maximal; ++b) {
            if (a == b) {
                continue;
            }
            const bool inside = candidates[a].is_subset_of(candidates[b]);
            // Equal candidates: keep only the first.
            if (inside && (!(candidates[a] == candidates[b]) || b < a)) {
                maximal = false;
            }
        }
        if (maximal) {
            jt.cliques.push_back(candidates[a]);
        }
    }
    std::sort(jt.cliques.begin(), jt.cliques.end(), CanonicalLess{});

    struct Candidate {
        int a, b, weight;
    };
    std::vector<Candidate> pairs;
    const int m = static_cast<int>(jt.cliques.size());
    for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
            pairs.push_back({a, b, (jt.cliques[at(a)] & jt.cliques[at(b)]).count()});
        }
    }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const Candidate& x, const Candidate& y) { return x.weight > y.weight; });
    DisjointSets sets(m);
    for (const auto& p : pairs) {
        if (sets.unite(p.a, p.b)) {
            jt.edges.emplace_back(p.a, p.b);
        }
    }
    return jt;
}

DecomposableGraph::DecomposableGraph(Graph g) : graph_(std::move(g)) {
    auto result = peo_and_check(graph_);
    if (auto* bad = std::get_if<NotTriangulated>(&result)) {
        std::string cycle;
        for (int v : bad->cycle) {
            cycle += (cycle.empty() ? "" : "-") + std::to_string(v);
        }
        throw DomainError("graph is not triangulated; chordless cycle " + cycle);
    }
    elim_ = std::get<Elimination>(std::move(result));
    jt_ = junction_tree(graph_, elim_);
}

int DecomposableGraph::treewidth() const {
    int w = 0;
    for (const auto& c : jt_.cliques) {
        w = std::max(w, c.count());
    }
    return w - 1;
}

bool DecomposableGraph::is_maximal_junction_tree() const {
    const int k = treewidth();
    if (k < 1) {
        return false;
    }
    for (const auto& c : jt_.cliques) {
        if (c.count() != k + 1) {
            return false;
        }
    }
    for (const auto& [a, b] : jt_.edges) {
        if ((jt_.cliques[at(a)] & jt_.cliques[at(b)]).count() != k) {
            return false;
        }
    }
    return true;
}

Dag DecomposableGraph::as_dag() const {
    std::vector<std::vector<int>> parents(at(size()));
    for (int i = 0; i < size(); ++i) {
        parents[at(i)] = elim_.later_neighbors[at(i)].elements();
    }
    return Dag(size(), std::move(parents));
}

double elimination_bound(const SetFunction& f, const DecomposableGraph& dec, const Subset& a) {
    double total = 0.0;
    a.for_each([&](int i) {
        Subset pi = dec.elimination().later_neighbors[at(i)] & a;
        Subset with_i = pi;
        with_i.insert(i);
        total += f(with_i) - f(pi);
    });
    return total;
}

double decomposable_bound(const SetFunction& f, const DecomposableGraph& dec, const Subset& a) {
    const auto& jt = dec.tree();
    double total = 0.0;
    for (const auto& c : jt.cliques) {
        total += f(c & a);
    }
    for (const auto& [x, y] : jt.edges) {
        total -= f(jt.cliques[at(x)] & jt.cliques[at(y)] & a);
    }
#ifndef NDEBUG
    const double other = elimination_bound(f, dec, a);
    if (std::abs(other - total) > 1e-9 * std::max(1.0, std::abs(total))) {
        throw std::logic_error("junction-tree and elimination forms of the bound disagree");
    }
#endif
    return total;
}

// ---------------------------------------------------------------- nu vectors

double NuVector::at(const Subset& c) const {
    const auto it = coef.find(c);
    return it == coef.end() ? 0.0 : it->second;
}

double NuVector::element_sum(int i) const {
    double total = 0.0;
    for (const auto& [c, v] : coef) {
        if (c.contains(i)) {
            total += v;
        }
    }
    return total;
}

double NuVector::bound(const SetFunction& f, const Subset& a) const {
    double total = 0.0;
    for (const auto& [c, v] : coef) {
        total += v * f(c & a);
    }
    return total;
}

NuVector nu_from_decomposable(const DecomposableGraph& dec) {
    if (!dec.is_maximal_junction_tree()) {
        throw DomainError("nu vectors are defined for maximal junction trees of width >= 1");
    }
    NuVector nu;
    nu.n = dec.size();
    nu.k = dec.treewidth();
    for (const auto& c : dec.tree().cliques) {
        nu.coef[c] += 1.0;
    }
    for (const auto& [s, count] : dec.tree().separators()) {
        nu.coef[s] -= static_cast<double>(count);
    }
    for (auto it = nu.coef.begin(); it != nu.coef.end();) {
        it = (it->second == 0.0) ? nu.coef.erase(it) : std::next(it);
    }
    return nu;
}

Graph min_spanning_tree(int n, const std::function<double(int, int)>& weight) {
    struct Candidate {
        int i, j;
        double w;
    };
    std::vector<Candidate> pairs;
    pairs.reserve(at(n) * at(n - 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            pairs.push_back({i, j, weight(i, j)});
        }
    }
    std::stable_sort(pairs.begin(), pairs.end(), [](const Candidate& a, const Candidate& b) { return a.w < b.w; });
    Graph tree(n);
    DisjointSets sets(n);
    int added = 0;
    for (const auto& p : pairs) {
        if (added == n - 1) {
            break;
        }
        if (sets.unite(p.i, p.j)) {
            tree.add_edge(p.i, p.j);
            ++added;
        }
    }
    return tree;
}

DecomposableGraph best_tree_structure(const SetFunction& f) {
    const int n = f.size();
    if (n < 2) {
        throw DomainError("tree structure learning needs n >= 2");
    }
    std::vector<double> single(at(n));
    for (int i = 0; i < n; ++i) {
        single[at(i)] = f.singleton(i);
    }
    auto tree = min_spanning_tree(n, [&](int i, int j) {
        return -(single[at(i)] + single[at(j)] - f(Subset::of(n, {i, j})));
    });
    return DecomposableGraph(std::move(tree));
}

DecomposableGraph random_ktree(int n, int k, Rng& rng) {
    if (k < 1 || k >= n) {
        throw DomainError("random junction trees need 1 <= k < n");
    }
    const auto order = rng.permutation(n);
    Graph g(n);
    std::vector<std::vector<int>> cliques;
    std::vector<int> first(order.begin(), order.begin() + k + 1);
    for (std::size_t a = 0; a < first.size(); ++a) {
        for (std::size_t b = a + 1; b < first.size(); ++b) {
            g.add_edge(first[a], first[b]);
        }
    }
    cliques.push_back(first);
    for (int pos = k + 1; pos < n; ++pos) {
        const int v = order[at(pos)];
        auto base = cliques[at(rng.index(static_cast<int>(cliques.size())))];
        base.erase(base.begin() + rng.index(k + 1));
        for (int u : base) {
            g.add_edge(u, v);
        }
        base.push_back(v);
        cliques.push_back(std::move(base));
    }
    return DecomposableGraph(std::move(g));
}

Graph triangulate(const Graph& g, const std::vector<int>& order) {
    const int n = g.size();
    Graph out = g;
    std::vector<char> eliminated(at(n), 0);
    for (int v : order) {
        std::vector<int> remaining;
        for (int w : out.neighbors(v)) {
            if (!eliminated[at(w)]) {
                remaining.push_back(w);
            }
        }
        for (std::size_t a = 0; a < remaining.size(); ++a) {
            for (std::size_t b = a + 1; b < remaining.size(); ++b) {
                out.add_edge(remaining[a], remaining[b]);
            }
        }
        eliminated[at(v)] = 1;
    }
    return out;
}

// ---------------------------------------------------------------- exact maximization

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct CliqueNode {
    std::vector<int> members;       // sorted
    int parent = -1;
    std::vector<int> children;
    std::vector<int> sep_in_self;   // positions (in members) of the separator with the parent
    std::vector<int> sep_in_parent; // positions (in parent's members) of the same separator
    unsigned new_mask = 0;          // members not shared with the parent
    std::vector<double> local;      // indexed by local assignment mask
};

unsigned restrict_mask(unsigned mask, const std::vector<int>& positions) {
    unsigned out = 0;
    for (std::size_t b = 0; b < positions.size(); ++b) {
        if ((mask >> positions[b]) & 1U) {
            out |= 1U << b;
        }
    }
    return out;
}

class JunctionTreeMaximizer {
public:
    JunctionTreeMaximizer(const DecomposableGraph& dec, const std::function<double(const Subset&)>& value,
                          std::span<const double> unary, int budget)
        : n_(dec.size()), counting_(budget >= 0), width_(counting_ ? budget + 1 : 1) {
        const auto& jt = dec.tree();
        const int m = static_cast<int>(jt.cliques.size());
        nodes_.resize(at(m));
        std::vector<std::vector<int>> adj(at(m));
        for (const auto& [a, b] : jt.edges) {
            adj[at(a)].push_back(b);
            adj[at(b)].push_back(a);
        }
        for (int c = 0; c < m; ++c) {
            nodes_[at(c)].members = jt.cliques[at(c)].elements();
            if (nodes_[at(c)].members.size() > 20) {
                throw CapacityError("clique too large for exact maximization");
            }
        }
        // Breadth-first from clique 0 gives the rooted order.
        std::vector<char> seen(at(m), 0);
        std::deque<int> queue{0};
        seen[0] = 1;
        while (!queue.empty()) {
            const int c = queue.front();
            queue.pop_front();
            order_.push_back(c);
            for (int d : adj[at(c)]) {
                if (!seen[at(d)]) {
                    seen[at(d)] = 1;
                    nodes_[at(d)].parent = c;
                    nodes_[at(c)].children.push_back(d);
                    queue.push_back(d);
                }
            }
        }
        for (int c : order_) {
            auto& node = nodes_[at(c)];
            const auto& mem = node.members;
            Subset sep(n_);
            if (node.parent >= 0) {
                const auto& pm = nodes_[at(node.parent)].members;
                for (std::size_t a = 0; a < mem.size(); ++a) {
                    const auto it = std::find(pm.begin(), pm.end(), mem[a]);
                    if (it != pm.end()) {
                        node.sep_in_self.push_back(static_cast<int>(a));
                        node.sep_in_parent.push_back(static_cast<int>(it - pm.begin()));
                        sep.insert(mem[a]);
                    }
                }
            }
            for (std::size_t a = 0; a < mem.size(); ++a) {
                if (!sep.contains(mem[a])) {
                    node.new_mask |= 1U << a;
                }
            }
            const unsigned states = 1U << mem.size();
            node.local.assign(states, 0.0);
            for (unsigned s = 0; s < states; ++s) {
                Subset chosen(n_);
                double u = 0.0;
                for (std::size_t a = 0; a < mem.size(); ++a) {
                    if ((s >> a) & 1U) {
                        chosen.insert(mem[a]);
                        if (!unary.empty() && ((node.new_mask >> a) & 1U)) {
                            u += unary[at(mem[a])];
                        }
                    }
                }
                double v = value(chosen) + u;
                if (node.parent >= 0) {
                    v -= value(chosen & sep);
                }
                node.local[s] = v;
            }
        }
    }

    DecomposableMaximum run() {
        messages_.assign(nodes_.size(), {});
        for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
            compute_message(*it);
        }
        // The root message has an empty separator: one row of counts.
        const auto& root_msg = messages_[at(order_.front())];
        int best_c = -1;
        for (int c = 0; c < width_; ++c) {
            if (best_c < 0 || root_msg[at(c)] > root_msg[at(best_c)]) {
                best_c = c;
            }
        }
        DecomposableMaximum out;
        out.value = root_msg[at(best_c)];
        out.argmax = Subset(n_);
        assign(order_.front(), 0, best_c, out.argmax);
        return out;
    }

private:
    int new_count(const CliqueNode& node, unsigned s) const {
        return counting_ ? std::popcount(s & node.new_mask) : 0;
    }

    // prefix[j][c]: best total over the first j children with c ones among
    // their subtrees' new vertices.
    std::vector<std::vector<double>> child_prefix(const CliqueNode& node, unsigned s) const {
        std::vector<std::vector<double>> prefix;
        prefix.reserve(node.children.size() + 1);
        std::vector<double> base(at(width_), kNegInf);
        base[0] = 0.0;
        prefix.push_back(std::move(base));
        for (int child : node.children) {
            const auto& cn = nodes_[at(child)];
            const unsigned sep = restrict_mask(s, cn.sep_in_parent);
            const double* msg = &messages_[at(child)][at(sep) * at(width_)];
            const auto& prev = prefix.back();
            std::vector<double> next(at(width_), kNegInf);
            for (int a = 0; a < width_; ++a) {
                if (prev[at(a)] == kNegInf) {
                    continue;
                }
                for (int b = 0; a + b < width_; ++b) {
                    if (msg[b] == kNegInf) {
                        continue;
                    }
                    next[at(a + b)] = std::max(next[at(a + b)], prev[at(a)] + msg[b]);
                }
            }
            prefix.push_back(std::move(next));
        }
        return prefix;
    }

    void compute_message(int c) {
        const auto& node = nodes_[at(c)];
        const unsigned sep_states = 1U << node.sep_in_self.size();
        std::vector<double> msg(at(sep_states) * at(width_), kNegInf);
        const unsigned states = 1U << node.members.size();
        for (unsigned s = 0; s < states; ++s) {
            const auto prefix = child_prefix(node, s);
            const auto& all = prefix.back();
            const int own = new_count(node, s);
            const unsigned sep = restrict_mask(s, node.sep_in_self);
            for (int total = own; total < width_; ++total) {
                const double rest = all[at(total - own)];
                if (rest == kNegInf) {
                    continue;
                }
                double& slot = msg[at(sep) * at(width_) + at(total)];
                slot = std::max(slot, node.local[s] + rest);
            }
        }
        messages_[at(c)] = std::move(msg);
    }

    // Chooses the clique assignment consistent with `sep` that attains the
    // message value for `total`, then recurses into the children.
    void assign(int c, unsigned sep, int total, Subset& out) const {
        const auto& node = nodes_[at(c)];
        const unsigned states = 1U << node.members.size();
        double best = kNegInf;
        unsigned best_s = 0;
        std::vector<std::vector<double>> best_prefix;
        for (unsigned s = 0; s < states; ++s) {
            if (restrict_mask(s, node.sep_in_self) != sep) {
                continue;
            }
            const int own = new_count(node, s);
            if (own > total) {
                continue;
            }
            auto prefix = child_prefix(node, s);
            const double v = node.local[s] + prefix.back()[at(total - own)];
            if (v > best) {
                best = v;
                best_s = s;
                best_prefix = std::move(prefix);
            }
        }
        for (std::size_t a = 0; a < node.members.size(); ++a) {
            if ((best_s >> a) & 1U) {
                out.insert(node.members[a]);
            }
        }
        int remaining = total - new_count(node, best_s);
        for (std::size_t j = node.children.size(); j-- > 0;) {
            const int child = node.children[j];
            const auto& cn = nodes_[at(child)];
            const unsigned child_sep = restrict_mask(best_s, cn.sep_in_parent);
            const double* msg = &messages_[at(child)][at(child_sep) * at(width_)];
            const auto& before = best_prefix[j];
            int pick = -1;
            double pick_value = kNegInf;
            for (int b = 0; b <= remaining; ++b) {
                if (msg[b] == kNegInf || before[at(remaining - b)] == kNegInf) {
                    continue;
                }
                const double v = before[at(remaining - b)] + msg[b];
                if (pick < 0 || v > pick_value) {
                    pick = b;
                    pick_value = v;
                }
            }
            assign(child, child_sep, pick, out);
            remaining -= pick;
        }
    }

    int n_;
    bool counting_;
    int width_;
    std::vector<CliqueNode> nodes_;
    std::vector<int> order_;
    std::vector<std::vector<double>> messages_;
};

} // namespace

DecomposableMaximum maximize_decomposable(const DecomposableGraph& dec,
                                          const std::function<double(const Subset&)>& clique_value,
                                          std::span<const double> unary, int budget) {
    if (!unary.empty() && static_cast<int>(unary.size()) != dec.size()) {
        throw DomainError("unary weights must have one entry per element");
    }
    if (budget > dec.size()) {
        budget = dec.size();
    }
    JunctionTreeMaximizer solver(dec, clique_value, unary, budget);
    return solver.run();
}

} // namespace submax
