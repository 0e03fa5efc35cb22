#pragma once

#include "submax/rng.hpp"
#include "submax/set_function.hpp"
#include "submax/subset.hpp"

#include <functional>
#include <map>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace submax {

/// Simple undirected graph with sorted adjacency lists.
class Graph {
public:
    explicit Graph(int n = 0);
    Graph(int n, const std::vector<std::pair<int, int>>& edges);

    int size() const noexcept { return n_; }
    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;
    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    /// Edges as (u, v) with u < v, lexicographically sorted.
    std::vector<std::pair<int, int>> edges() const;
    std::size_t edge_count() const;
    bool is_clique(const Subset& s) const;

    static Graph complete(int n);

private:
    int n_ = 0;
    std::vector<std::vector<int>> adj_;
};

/// Directed acyclic graph given by parent sets.
class Dag {
public:
    /// Throws DomainError on cycles, self-loops or out-of-range parents.
    Dag(int n, std::vector<std::vector<int>> parents);

    int size() const noexcept { return n_; }
    const std::vector<int>& parents(int i) const { return parents_[static_cast<std::size_t>(i)]; }
    Subset parent_set(int i) const;
    const std::vector<int>& topological_order() const noexcept { return topo_; }
    /// (parent, child) pairs sorted.
    std::vector<std::pair<int, int>> edges() const;
    bool is_directed_tree() const;
    Dag without_edge(int parent, int child) const;

    friend bool operator==(const Dag& a, const Dag& b) { return a.parents_ == b.parents_; }

private:
    int n_ = 0;
    std::vector<std::vector<int>> parents_;
    std::vector<int> topo_;
};

/// A set containing every parent of each of its members.
bool is_ancestral(const Dag& g, const Subset& a);

/// F_G(A) = sum over i in A of F(A & (pa(i) + i)) - F(A & pa(i)).
double dag_bound(const SetFunction& f, const Dag& g, const Subset& a);

/// Random DAG: a random permutation is the topological order and each node
/// takes each predecessor as a parent with probability p, keeping at most
/// max_parents of them.
Dag random_dag(int n, Rng& rng, double p = 0.4, int max_parents = 3);

/// Orients every edge of a forest away from the smallest vertex of its
/// component, or away from `root` within root's component.
Dag orient_forest(const Graph& forest, int root = 0);

/// Reorients the component containing new_root away from it. Throws
/// DomainError unless every node has at most one parent.
Dag reroot_tree(const Dag& tree, int new_root);

/// Perfect elimination ordering and, per vertex, its neighbours eliminated
/// later (indexed by vertex, not by position).
struct Elimination {
    std::vector<int> peo;
    std::vector<Subset> later_neighbors;
};

/// Chordless cycle of length >= 4, listed in cycle order.
struct NotTriangulated {
    std::vector<int> cycle;
};

/// Maximum cardinality search (ties to the smallest index). Returns the
/// reverse visit order when it is a perfect elimination ordering, otherwise
/// a chordless cycle witness.
std::variant<Elimination, NotTriangulated> peo_and_check(const Graph& g);

struct JunctionTree {
    std::vector<Subset> cliques;                  // canonical order
    std::vector<std::pair<int, int>> edges;       // indices into cliques
    /// Separator multiset: distinct separators (canonical order) with counts.
    std::vector<std::pair<Subset, int>> separators() const;
};

/// Maximal cliques from the elimination order, joined by a maximum-weight
/// spanning tree of the clique graph weighted by intersection size. Zero-size
/// separators connect distinct components.
JunctionTree junction_tree(const Graph& g, const Elimination& elim);

/// Triangulated graph bundled with its elimination order and junction tree.
class DecomposableGraph {
public:
    /// Throws DomainError (naming a chordless cycle) if g is not triangulated.
    explicit DecomposableGraph(Graph g);

    int size() const noexcept { return graph_.size(); }
    const Graph& graph() const noexcept { return graph_; }
    const Elimination& elimination() const noexcept { return elim_; }
    const JunctionTree& tree() const noexcept { return jt_; }
    /// Maximal clique size minus one.
    int treewidth() const;
    /// Maximal cliques of size k+1 and separators of size k, connected.
    bool is_maximal_junction_tree() const;
    /// DAG whose parents are the later-eliminated neighbours.
    Dag as_dag() const;

private:
    Graph graph_;
    Elimination elim_;
    JunctionTree jt_;
};

/// Elimination form: sum over i of F(A & (pi_i + i)) - F(A & pi_i).
double elimination_bound(const SetFunction& f, const DecomposableGraph& dec, const Subset& a);

/// Junction-tree form: sum over cliques of F(C & A) minus sum over tree
/// edges of F(C & D & A). Debug builds also evaluate the elimination form
/// and throw std::logic_error if the two disagree beyond 1e-9.
double decomposable_bound(const SetFunction& f, const DecomposableGraph& dec, const Subset& a);

/// Sparse coefficients over subsets of size <= k+1 with
/// F_nu(A) = sum_C nu_C F(C & A).
struct NuVector {
    int n = 0;
    int k = 0;
    std::map<Subset, double, CanonicalLess> coef;

    double at(const Subset& c) const;
    /// sum of nu_C over C containing i.
    double element_sum(int i) const;
    /// F_nu(A).
    double bound(const SetFunction& f, const Subset& a) const;
};

/// +1 per maximal clique, -1 per separator occurrence. Throws DomainError
/// unless dec is a maximal junction tree of width k >= 1.
NuVector nu_from_decomposable(const DecomposableGraph& dec);

/// Spanning tree maximizing sum of F({i}) + F({j}) - F({i,j}) over its edges,
/// i.e. minimizing F_G(V) over trees. Ties go to the lexicographically
/// smaller edge.
DecomposableGraph best_tree_structure(const SetFunction& f);

/// Spanning tree of the complete graph with minimum total weight (Kruskal,
/// stable on the lexicographic edge order). weight(i, j) with i < j.
Graph min_spanning_tree(int n, const std::function<double(int, int)>& weight);

/// Random maximal junction tree of width k: a random (k+1)-clique grown by
/// attaching each remaining vertex (random order) to a random k-subset of a
/// random existing clique. Requires 1 <= k < n.
DecomposableGraph random_ktree(int n, int k, Rng& rng);

/// Chordal supergraph obtained by eliminating vertices in the given order
/// and adding fill-in edges.
Graph triangulate(const Graph& g, const std::vector<int>& order);

/// Exact maximum over A (optionally |A| <= budget) of
///   sum_C F(C & A) - sum_{(C,D)} F(C & D & A) + sum_{i in A} unary_i
/// by max-sum dynamic programming over the junction tree. `clique_value`
/// is F evaluated on subsets of cliques; `unary` may be empty; budget < 0
/// means unconstrained.
struct DecomposableMaximum {
    double value = 0.0;
    Subset argmax;
};

DecomposableMaximum maximize_decomposable(const DecomposableGraph& dec,
                                          const std::function<double(const Subset&)>& clique_value,
                                          std::span<const double> unary = {}, int budget = -1);

} // namespace submax
