#pragma once

#include "submax/set_function.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace submax {

struct WeightedEdge {
    int i = 0;
    int j = 0;
    double weight = 0.0;

    friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Undirected weighted graph; F(A) = total weight of edges with exactly one
/// endpoint in A.
struct CutInstance {
    int n = 0;
    std::vector<WeightedEdge> edges; // i < j, weight > 0, no duplicate pairs
};

/// F(A) = weight of the union of the sets indexed by A.
struct CoverageInstance {
    int universe = 0;
    std::vector<double> weights;         // per universe item, >= 0
    std::vector<std::vector<int>> sets;  // one per ground element
};

struct ModularInstance {
    std::vector<double> weights;
};

/// Discrete joint distribution over n variables. Joint index is mixed radix
/// with variable 0 varying fastest. Entropies are in nats.
struct EntropyInstance {
    std::vector<int> cardinalities;
    std::vector<double> joint;
};

struct DifferenceInstance {
    SetFunction f;
    SetFunction h;
};

/// Throw DomainError on a violated invariant.
void validate(const CutInstance& inst);
void validate(const CoverageInstance& inst);
void validate(const ModularInstance& inst);
void validate(const EntropyInstance& inst);

SetFunction make_function(CutInstance inst);
SetFunction make_function(CoverageInstance inst);
SetFunction make_function(ModularInstance inst);
SetFunction make_function(EntropyInstance inst);
SetFunction make_function(DifferenceInstance inst);

/// Payload access for serialization; null when the family differs.
const CutInstance* as_cut(const SetFunction& f);
const CoverageInstance* as_coverage(const SetFunction& f);
const ModularInstance* as_modular(const SetFunction& f);
const EntropyInstance* as_entropy(const SetFunction& f);
const DifferenceInstance* as_difference(const SetFunction& f);

double cut_value(const CutInstance& inst, const Subset& a);
double coverage_value(const CoverageInstance& inst, const Subset& a);

/// Marginal entropy of the variables in A, natural log. H(empty) = 0.
double entropy_value(const EntropyInstance& e, const Subset& a);

enum class GraphFamily { tree, grid, random };

struct GraphParams {
    int n = 0;        // tree, random
    int rows = 0;     // grid
    int cols = 0;     // grid
    double p = 0.9;   // random: G(n, p) edge probability
};

/// Synthetic max-cut instances with i.i.d. uniform (0, 1] weights.
///
/// tree: uniformly random labelled tree decoded from a random Pruefer
/// sequence. grid: rows x cols 4-neighbour lattice, vertex r*cols + c.
/// random: Erdos-Renyi G(n, p). Deterministic in the seed. Edges come out
/// sorted by (i, j).
CutInstance gen_instance(GraphFamily family, const GraphParams& params, std::uint64_t seed);

/// Random coverage instance: a universe of 2n items with weights uniform on
/// (0, 1]; each element covers each item with probability 0.3.
CoverageInstance random_coverage(int n, std::uint64_t seed);

/// Random joint distribution over n binary variables: i.i.d. uniform (0, 1]
/// masses, normalized. Requires 1 <= n <= 16.
EntropyInstance random_entropy(int n, std::uint64_t seed);

GraphFamily parse_graph_family(const std::string& name);
std::string to_string(GraphFamily family);

} // namespace submax
