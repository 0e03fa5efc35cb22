#include "submax/instances.hpp"

#include "submax/errors.hpp"
#include "submax/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <set>
#include <utility>

namespace submax {

namespace {

class CutOracle final : public SetFunctionOracle {
public:
    explicit CutOracle(CutInstance inst) : inst_(std::move(inst)), adj_(static_cast<std::size_t>(inst_.n)) {
        for (const auto& e : inst_.edges) {
            adj_[static_cast<std::size_t>(e.i)].emplace_back(e.j, e.weight);
            adj_[static_cast<std::size_t>(e.j)].emplace_back(e.i, e.weight);
        }
    }
    int size() const override { return inst_.n; }
    Family family() const override { return Family::cut; }
    double raw_value(const Subset& a) const override {
        double total = 0.0;
        a.for_each([&](int i) {
            for (const auto& [j, w] : adj_[static_cast<std::size_t>(i)]) {
                if (!a.contains(j)) {
                    total += w;
                }
            }
        });
        return total;
    }
    const CutInstance& payload() const { return inst_; }

private:
    CutInstance inst_;
    std::vector<std::vector<std::pair<int, double>>> adj_;
};

class CoverageOracle final : public SetFunctionOracle {
public:
    explicit CoverageOracle(CoverageInstance inst) : inst_(std::move(inst)) {}
    int size() const override { return static_cast<int>(inst_.sets.size()); }
    Family family() const override { return Family::coverage; }
    double raw_value(const Subset& a) const override { return coverage_value(inst_, a); }
    const CoverageInstance& payload() const { return inst_; }

private:
    CoverageInstance inst_;
};

class ModularOracle final : public SetFunctionOracle {
public:
    explicit ModularOracle(ModularInstance inst) : inst_(std::move(inst)) {}
    int size() const override { return static_cast<int>(inst_.weights.size()); }
    Family family() const override { return Family::modular; }
    double raw_value(const Subset& a) const override {
        double total = 0.0;
        a.for_each([&](int i) { total += inst_.weights[static_cast<std::size_t>(i)]; });
        return total;
    }
    const ModularInstance& payload() const { return inst_; }

private:
    ModularInstance inst_;
};

class EntropyOracle final : public SetFunctionOracle {
public:
    explicit EntropyOracle(EntropyInstance inst) : inst_(std::move(inst)) {}
    int size() const override { return static_cast<int>(inst_.cardinalities.size()); }
    Family family() const override { return Family::entropy; }
    double raw_value(const Subset& a) const override { return entropy_value(inst_, a); }
    const EntropyInstance& payload() const { return inst_; }

private:
    EntropyInstance inst_;
};

class DifferenceOracle final : public SetFunctionOracle {
public:
    explicit DifferenceOracle(DifferenceInstance inst) : inst_(std::move(inst)) {}
    int size() const override { return inst_.f.size(); }
    Family family() const override { return Family::difference; }
    double raw_value(const Subset& a) const override { return inst_.f(a) - inst_.h(a); }
    const DifferenceInstance& payload() const { return inst_; }

private:
    DifferenceInstance inst_;
};

template <typename Oracle>
const auto* payload_of(const SetFunction& f) {
    const auto* o = dynamic_cast<const Oracle*>(&f.oracle());
    return o ? &o->payload() : nullptr;
}

} // namespace

void validate(const CutInstance& inst) {
    if (inst.n < 1) {
        throw DomainError("cut instance needs n >= 1");
    }
    std::set<std::pair<int, int>> seen;
    for (const auto& e : inst.edges) {
        if (e.i < 0 || e.j >= inst.n || e.i >= e.j) {
            throw DomainError("cut edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                              ") must satisfy 0 <= i < j < n");
        }
        if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
            throw DomainError("cut edge weights must be finite and strictly positive");
        }
        if (!seen.emplace(e.i, e.j).second) {
            throw DomainError("duplicate cut edge (" + std::to_string(e.i) + "," + std::to_string(e.j) + ")");
        }
    }
}

void validate(const CoverageInstance& inst) {
    if (inst.sets.empty()) {
        throw DomainError("coverage instance needs at least one set");
    }
    if (static_cast<int>(inst.weights.size()) != inst.universe) {
        throw DomainError("coverage weights must have one entry per universe item");
    }
    for (double w : inst.weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw DomainError("coverage weights must be finite and non-negative");
        }
    }
    for (const auto& s : inst.sets) {
        for (int u : s) {
            if (u < 0 || u >= inst.universe) {
                throw DomainError("coverage set item " + std::to_string(u) + " outside universe");
            }
        }
    }
}

void validate(const ModularInstance& inst) {
    if (inst.weights.empty()) {
        throw DomainError("modular instance needs at least one weight");
    }
    for (double w : inst.weights) {
        if (!std::isfinite(w)) {
            throw DomainError("modular weights must be finite");
        }
    }
}

void validate(const EntropyInstance& inst) {
    if (inst.cardinalities.empty()) {
        throw DomainError("entropy instance needs at least one variable");
    }
    std::size_t states = 1;
    for (int c : inst.cardinalities) {
        if (c < 1) {
            throw DomainError("variable cardinalities must be positive");
        }
        states *= static_cast<std::size_t>(c);
        if (states > (std::size_t{1} << 16)) {
            throw DomainError("joint table larger than 2^16 states");
        }
    }
    if (inst.joint.size() != states) {
        throw DomainError("joint table has " + std::to_string(inst.joint.size()) + " entries, expected " +
                          std::to_string(states));
    }
    double total = 0.0;
    for (double p : inst.joint) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw DomainError("probabilities must be finite and non-negative");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw DomainError("probabilities must sum to 1");
    }
}

SetFunction make_function(CutInstance inst) {
    validate(inst);
    return SetFunction(std::make_shared<CutOracle>(std::move(inst)));
}

SetFunction make_function(CoverageInstance inst) {
    validate(inst);
    return SetFunction(std::make_shared<CoverageOracle>(std::move(inst)));
}

SetFunction make_function(ModularInstance inst) {
    validate(inst);
    return SetFunction(std::make_shared<ModularOracle>(std::move(inst)));
}

SetFunction make_function(EntropyInstance inst) {
    validate(inst);
    return SetFunction(std::make_shared<EntropyOracle>(std::move(inst)));
}

SetFunction make_function(DifferenceInstance inst) {
    if (inst.f.size() != inst.h.size()) {
        throw DomainError("difference components must share a ground set");
    }
    return SetFunction(std::make_shared<DifferenceOracle>(std::move(inst)));
}

const CutInstance* as_cut(const SetFunction& f) { return payload_of<CutOracle>(f); }
const CoverageInstance* as_coverage(const SetFunction& f) { return payload_of<CoverageOracle>(f); }
const ModularInstance* as_modular(const SetFunction& f) { return payload_of<ModularOracle>(f); }
const EntropyInstance* as_entropy(const SetFunction& f) { return payload_of<EntropyOracle>(f); }
const DifferenceInstance* as_difference(const SetFunction& f) { return payload_of<DifferenceOracle>(f); }

double cut_value(const CutInstance& inst, const Subset& a) {
    double total = 0.0;
    for (const auto& e : inst.edges) {
        if (a.contains(e.i) != a.contains(e.j)) {
            total += e.weight;
        }
    }
    return total;
}

double coverage_value(const CoverageInstance& inst, const Subset& a) {
    std::vector<char> covered(static_cast<std::size_t>(inst.universe), 0);
    a.for_each([&](int i) {
        for (int u : inst.sets[static_cast<std::size_t>(i)]) {
            covered[static_cast<std::size_t>(u)] = 1;
        }
    });
    double total = 0.0;
    for (int u = 0; u < inst.universe; ++u) {
        if (covered[static_cast<std::size_t>(u)] != 0) {
            total += inst.weights[static_cast<std::size_t>(u)];
        }
    }
    return total;
}

double entropy_value(const EntropyInstance& e, const Subset& a) {
    const int n = static_cast<int>(e.cardinalities.size());
    if (a.universe() != n) {
        throw DomainError("subset does not match the number of variables");
    }
    if (a.empty()) {
        return 0.0;
    }
    // Stride of each selected variable inside the marginal table.
    std::vector<std::size_t> marginal_stride(static_cast<std::size_t>(n), 0);
    std::size_t marginal_size = 1;
    for (int i = 0; i < n; ++i) {
        if (a.contains(i)) {
            marginal_stride[static_cast<std::size_t>(i)] = marginal_size;
            marginal_size *= static_cast<std::size_t>(e.cardinalities[static_cast<std::size_t>(i)]);
        }
    }
    std::vector<double> marginal(marginal_size, 0.0);
    std::vector<int> digit(static_cast<std::size_t>(n), 0);
    std::size_t target = 0;
    for (double p : e.joint) {
        marginal[target] += p;
        // Increment the mixed-radix counter, keeping target in sync.
        for (int i = 0; i < n; ++i) {
            const auto ui = static_cast<std::size_t>(i);
            if (++digit[ui] < e.cardinalities[ui]) {
                target += marginal_stride[ui];
                break;
            }
            target -= marginal_stride[ui] * static_cast<std::size_t>(digit[ui] - 1);
            digit[ui] = 0;
        }
    }
    double h = 0.0;
    for (double p : marginal) {
        if (p > 0.0) {
            h -= p * std::log(p);
        }
    }
    return h;
}

namespace {

std::vector<std::pair<int, int>> pruefer_tree(int n, Rng& rng) {
    std::vector<std::pair<int, int>> edges;
    if (n == 2) {
        edges.emplace_back(0, 1);
        return edges;
    }
    std::vector<int> seq(static_cast<std::size_t>(n - 2));
    for (auto& v : seq) {
        v = rng.index(n);
    }
    std::vector<int> degree(static_cast<std::size_t>(n), 1);
    for (int v : seq) {
        ++degree[static_cast<std::size_t>(v)];
    }
    std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
    for (int v = 0; v < n; ++v) {
        if (degree[static_cast<std::size_t>(v)] == 1) {
            leaves.push(v);
        }
    }
    for (int v : seq) {
        const int leaf = leaves.top();
        leaves.pop();
        edges.emplace_back(std::min(leaf, v), std::max(leaf, v));
        if (--degree[static_cast<std::size_t>(v)] == 1) {
            leaves.push(v);
        }
    }
    const int u = leaves.top();
    leaves.pop();
    const int w = leaves.top();
    edges.emplace_back(std::min(u, w), std::max(u, w));
    return edges;
}

} // namespace

CutInstance gen_instance(GraphFamily family, const GraphParams& params, std::uint64_t seed) {
    Rng rng(seed);
    CutInstance inst;
    std::vector<std::pair<int, int>> pairs;
    switch (family) {
    case GraphFamily::tree:
        if (params.n < 2) {
            throw DomainError("tree generator needs n >= 2");
        }
        inst.n = params.n;
        pairs = pruefer_tree(params.n, rng);
        break;
    case GraphFamily::grid:
        if (params.rows < 2 || params.cols < 2) {
            throw DomainError("grid generator needs rows, cols >= 2");
        }
        inst.n = params.rows * params.cols;
        for (int r = 0; r < params.rows; ++r) {
            for (int c = 0; c < params.cols; ++c) {
                const int v = r * params.cols + c;
                if (c + 1 < params.cols) {
                    pairs.emplace_back(v, v + 1);
                }
                if (r + 1 < params.rows) {
                    pairs.emplace_back(v, v + params.cols);
                }
            }
        }
        break;
    case GraphFamily::random:
        if (params.n < 2) {
            throw DomainError("random generator needs n >= 2");
        }
        if (!(params.p > 0.0 && params.p <= 1.0)) {
            throw DomainError("edge probability must lie in (0, 1]");
        }
        inst.n = params.n;
        for (int i = 0; i < params.n; ++i) {
            for (int j = i + 1; j < params.n; ++j) {
                if (rng.bernoulli(params.p)) {
                    pairs.emplace_back(i, j);
                }
            }
        }
        break;
    }
    std::sort(pairs.begin(), pairs.end());
    inst.edges.reserve(pairs.size());
    for (const auto& [i, j] : pairs) {
        inst.edges.push_back({i, j, rng.uniform_open_closed()});
    }
    return inst;
}

CoverageInstance random_coverage(int n, std::uint64_t seed) {
    if (n < 0) {
        throw DomainError("coverage generator needs n >= 0");
    }
    Rng rng(seed);
    CoverageInstance inst;
    inst.universe = 2 * n;
    for (int u = 0; u < inst.universe; ++u) {
        inst.weights.push_back(rng.uniform_open_closed());
    }
    inst.sets.resize(static_cast<std::size_t>(n));
    for (auto& set : inst.sets) {
        for (int u = 0; u < inst.universe; ++u) {
            if (rng.bernoulli(0.3)) {
                set.push_back(u);
            }
        }
    }
    return inst;
}

EntropyInstance random_entropy(int n, std::uint64_t seed) {
    if (n < 1 || n > 16) {
        throw DomainError("entropy generator needs 1 <= n <= 16");
    }
    Rng rng(seed);
    EntropyInstance inst;
    inst.cardinalities.assign(static_cast<std::size_t>(n), 2);
    inst.joint.resize(std::size_t{1} << n);
    double total = 0.0;
    for (auto& p : inst.joint) {
        p = rng.uniform_open_closed();
        total += p;
    }
    for (auto& p : inst.joint) {
        p /= total;
    }
    return inst;
}

GraphFamily parse_graph_family(const std::string& name) {
    if (name == "tree") {
        return GraphFamily::tree;
    }
    if (name == "grid") {
        return GraphFamily::grid;
    }
    if (name == "random") {
        return GraphFamily::random;
    }
    throw DomainError("unknown graph family '" + name + "' (expected tree, grid or random)");
}

std::string to_string(GraphFamily family) {
    switch (family) {
    case GraphFamily::tree: return "tree";
    case GraphFamily::grid: return "grid";
    case GraphFamily::random: return "random";
    }
    return "unknown";
}

} // namespace submax
