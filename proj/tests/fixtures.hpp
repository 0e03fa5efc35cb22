#pragma once

// Small instances and brute-force reference computations shared by the unit
// tests. Nothing here calls the library's own maximizers.

#include "submax/instances.hpp"
#include "submax/set_function.hpp"
#include "submax/subset.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

namespace fixtures {

using submax::Subset;

inline submax::SetFunction cut(int n, std::vector<submax::WeightedEdge> edges) {
    return submax::make_function(submax::CutInstance{n, std::move(edges)});
}

inline submax::SetFunction triangle() { return cut(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}}); }

inline submax::SetFunction path3() { return cut(3, {{0, 1, 1.0}, {1, 2, 1.0}}); }

inline submax::SetFunction modular(std::vector<double> w) {
    return submax::make_function(submax::ModularInstance{std::move(w)});
}

inline submax::SetFunction zero(int n) { return modular(std::vector<double>(static_cast<std::size_t>(n), 0.0)); }

inline std::vector<Subset> all_subsets(int n) {
    std::vector<Subset> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        out.push_back(Subset::from_mask(n, m));
    }
    return out;
}

template <typename Fn>
double max_over_subsets(int n, Fn&& fn, int budget = -1) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& a : all_subsets(n)) {
        if (budget < 0 || a.count() <= budget) {
            best = std::max(best, fn(a));
        }
    }
    return best;
}

// Hand-written cut value: total weight of edges with exactly one end in A.
inline double cut_by_hand(const std::vector<submax::WeightedEdge>& edges, const Subset& a) {
    double v = 0.0;
    for (const auto& e : edges) {
        if (a.contains(e.i) != a.contains(e.j)) {
            v += e.weight;
        }
    }
    return v;
}

} // namespace fixtures
