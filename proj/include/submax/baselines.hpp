#pragma once

#include "submax/set_function.hpp"

#include <cstdint>

namespace submax {

struct Maximizer {
    double value = 0.0;
    Subset set;
};

inline constexpr int kMaxBruteForceN = 22;

/// Exhaustive maximum; ties go to the smallest bitmask. Throws
/// CapacityError for n > 22.
Maximizer brute_force_max(const SetFunction& f);

/// Exhaustive maximum over |A| <= m.
Maximizer brute_force_max(const SetFunction& f, int m);

enum class DoubleGreedyMode { deterministic, randomized };

/// Single pass over i = 0..n-1 keeping X subset of Y. Deterministic mode
/// includes i iff a_i >= b_i; randomized mode includes i with probability
/// a+ / (a+ + b+), and always when both are zero. Throws DomainError naming
/// the subset if a negative value is evaluated.
Maximizer double_greedy(const SetFunction& f, DoubleGreedyMode mode, std::uint64_t seed = 0);

struct LocalSearchResult {
    double value = 0.0;
    Subset set;
    int moves = 0;
};

/// Starts from the best singleton and applies add or remove moves that
/// multiply F by at least 1 + epsilon / n^2, scanning elements in a seeded
/// random order. At a local optimum S returns the better of S and V \ S.
LocalSearchResult local_search(const SetFunction& f, double epsilon = 0.01, std::uint64_t seed = 0);

/// Move cap used by local_search: 2 n^2 ln(n + 1) / epsilon + 10. Each move
/// gains a factor 1 + epsilon / n^2 and submodularity keeps F within n times
/// the best singleton, so the cap is never reached on submodular input.
int local_search_move_cap(int n, double epsilon);

} // namespace submax
