#include "submax/extensions.hpp"

#include "submax/errors.hpp"

namespace submax {

namespace {

constexpr int kSubmodularCheckMaxN = 10;

} // namespace

SolveResult solve_difference(const DifferenceInstance& di, const SolverConfig& config) {
    if (di.f.size() != di.h.size()) {
        throw DomainError("F and H must share the ground set");
    }
    if (di.h.size() <= kSubmodularCheckMaxN && !check_submodular(di.h)) {
        throw DomainError("H is not submodular");
    }
    return solve_relaxation(RelaxedProblem{di.f, di.h, config.budget}, config);
}

SolveResult solve_cardinality(const SetFunction& f, int m, const SolverConfig& config) {
    if (m < 0 || m > f.size()) {
        throw DomainError("budget " + std::to_string(m) + " outside [0, " + std::to_string(f.size()) + "]");
    }
    return solve_relaxation(RelaxedProblem{f, std::nullopt, m}, config, RoundingRule::top_budget);
}

} // namespace submax
