#pragma once

#include "submax/graphs.hpp"
#include "submax/polytopes.hpp"
#include "submax/set_function.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace submax {

/// Step size schedule for the inner projected-subgradient solver.
enum class StepRule {
    /// alpha_t = alpha_0 / sqrt(t), alpha_0 = 1 / max_C |F(C)|.
    diminishing,
    /// Polyak step towards a target level below the current best value.
    polyak,
};

struct SolverConfig {
    int treewidth = 1;
    int max_outer = 50;
    int inner_steps = 5000;
    double tol = 1e-6;
    double theta = 0.5;
    std::uint64_t seed = 0;
    std::optional<int> budget;
    /// Random junction trees drawn per oracle call when treewidth > 1.
    int pool_size = 64;
    StepRule step_rule = StepRule::polyak;
    /// Also bound by the exact maximum of F_nu at each hull vertex
    /// (junction-tree dynamic programming).
    bool vertex_bounds = true;
};

void validate(const SolverConfig& config);

/// Lagrange multiplier layout for the local-consistency rows of N_k:
/// one block of 2^{k+1} multipliers per maximal set D (canonical order),
/// indexed inside the block by the bitmask of C over D's sorted members.
class LocalConsistency {
public:
    explicit LocalConsistency(const CliqueIndex& idx);

    std::size_t multiplier_count() const noexcept { return blocks_ * block_size_; }
    std::size_t block_size() const noexcept { return block_size_; }
    std::size_t multiplier_index(const Subset& d, const Subset& c) const;

    /// a_B += sum over rows containing B of sign * z. Returns the constant
    /// contributed by the empty set (rows with C = empty).
    double add_multipliers(std::span<const double> z, std::span<double> a) const;

    /// Signed row sums of y (with y_empty = 1), one per multiplier.
    void row_sums(std::span<const double> y, std::span<double> out) const;

private:
    const CliqueIndex* idx_;
    std::size_t blocks_ = 0;
    std::size_t block_size_ = 0;
    std::vector<std::uint32_t> positions_; // blocks_ x block_size_, slot 0 unused
};

/// Moebius coefficients m(E) = sum_{B subset of E} (-1)^{|E - B|} F(B), one per
/// coordinate of idx. F(A & C) = sum over nonempty E subset of A & C of m(E).
std::vector<double> moebius_coefficients(const SetFunction& f, const CliqueIndex& idx);

/// nu'_E = sum of nu_C over C containing E. For a junction tree this is the
/// indicator of the complete sets of its graph.
std::vector<double> superset_sums(const NuVector& nu, const CliqueIndex& idx);

/// Bilinear form P(nu, y) = sum_E m(E) nu'_E y_E. At y = integral_point(A)
/// it equals F_nu(A) = sum_C nu_C F(C & A).
double p_eval(const SetFunction& f, const CliqueIndex& idx, const NuVector& nu, std::span<const double> y);

struct QValue {
    double value = 0.0;
    std::vector<double> a; // per coordinate of idx
    double constant = 0.0;
};

/// Q(nu, z) = constant + sum_B max(a_B, 0), the closed-form inner maximum
/// over y in [0,1]^D of the Lagrangian, with a_B = m(B) nu'_B plus the
/// signed multipliers of the rows containing B. With a budget m and multiplier
/// lambda the singleton coefficients shift by -lambda and the constant by
/// +lambda m.
QValue q_eval(const SetFunction& f, const CliqueIndex& idx, const NuVector& nu, std::span<const double> z,
              double lambda = 0.0, std::optional<int> budget = std::nullopt);

/// Extreme point of the hull: a junction tree, its nu vector and, when a
/// subtracted function H is present, a point s of B(H).
struct HullVertex {
    DecomposableGraph graph;
    NuVector nu;
    std::vector<double> s;
};

/// Problem the simplicial method solves: maximize F(A) - H(A) over
/// |A| <= budget, with H and the budget optional.
struct RelaxedProblem {
    SetFunction f;
    std::optional<SetFunction> h;
    std::optional<int> budget;
};

struct InnerResult {
    std::vector<double> eta;
    std::vector<double> z;
    double lambda = 0.0;
    PseudoMarginal y_bar;
    double dual_bound = 0.0;
    int steps = 0;
};

struct InnerStart {
    std::vector<double> eta;
    std::vector<double> z;
    double lambda = 0.0;
};

/// Projected subgradient on (eta, z, lambda) -> Q(sum eta_i nu_i, z).
/// Returns the best point seen, its value as the dual bound, and the
/// running average of the maximizing indicator vectors as y_bar.
InnerResult inner_solve_hull(const RelaxedProblem& problem, const CliqueIndex& idx,
                             const std::vector<HullVertex>& vertices, const SolverConfig& config,
                             const InnerStart* start = nullptr, double target = -1e300);

/// Convenience overload for an unconstrained submodular F.
InnerResult inner_solve_hull(const SetFunction& f, const std::vector<HullVertex>& vertices,
                             const SolverConfig& config);

struct OracleResult {
    HullVertex vertex;
    /// min over the oracle's domain of P(nu, y) (minus max_s s.y_singletons
    /// with H present).
    double value = 0.0;
    bool exact = true;
};

/// Linear minimization over J_k at y. Treewidth 1: exact minimum spanning
/// tree with weights (F(ij) - F(i) - F(j)) y_ij, value sum_i F(i) y_i plus
/// the tree weight. Treewidth > 1: best of pool_size random maximal
/// junction trees (an upper estimate).
OracleResult graph_oracle(const RelaxedProblem& problem, const CliqueIndex& idx, std::span<const double> y,
                          const SolverConfig& config, std::uint64_t stream = 0);

OracleResult graph_oracle(const SetFunction& f, std::span<const double> y, int k, const SolverConfig& config);

struct TraceRecord {
    int iter = 0;
    double time_ms = 0.0;
    double dual_bound = 0.0;
    double oracle_value = 0.0;
    double best_primal = 0.0;
    int n_vertices = 0;
    int inner_steps = 0;
    /// P(nu_bar, y_bar) - oracle value; zero at an exact saddle point.
    double approx_gap = 0.0;
};

struct SaddleState {
    std::vector<HullVertex> vertices;
    std::vector<double> eta;
    std::vector<double> z;
    double lambda = 0.0;
    PseudoMarginal y_bar;
    std::vector<TraceRecord> trace;
    bool converged = false;
    bool oracle_exact = true;
};

struct SolveResult {
    double dual_bound = 0.0;
    Subset rounded;
    double rounded_value = 0.0;
    SaddleState state;
};

/// Rounding used by the simplicial method. The default thresholds singleton
/// values; the cardinality extension keeps the budget largest as well.
enum class RoundingRule { threshold, top_budget };

/// Simplicial method over hulls of junction trees, shared by the plain and
/// extended solvers.
SolveResult solve_relaxation(const RelaxedProblem& problem, const SolverConfig& config,
                             RoundingRule rounding = RoundingRule::threshold);

/// Upper bound on max_A F(A) and a rounded set, for submodular F.
SolveResult solve(const SetFunction& f, const SolverConfig& config);

/// {i : y_{i} > theta}; y's first n coordinates are the singletons.
Subset round_threshold(int n, std::span<const double> y, double theta);

} // namespace submax
