#pragma once

#include "submax/instances.hpp"
#include "submax/saddle.hpp"

namespace submax {

/// Upper bound on max_A F(A) - H(A). Hull vertices are joint pairs (nu, s)
/// with s a greedy point of B(H). Throws DomainError when H is found not
/// submodular (checked exhaustively for n <= 10).
SolveResult solve_difference(const DifferenceInstance& di, const SolverConfig& config);

/// Upper bound on max_{|A| <= m} F(A); the rounded set has at most m
/// elements. Throws DomainError unless 0 <= m <= n.
SolveResult solve_cardinality(const SetFunction& f, int m, const SolverConfig& config);

} // namespace submax
