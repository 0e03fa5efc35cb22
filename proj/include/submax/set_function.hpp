#pragma once

#include "submax/subset.hpp"

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace submax {

enum class Family { cut, coverage, modular, entropy, difference, custom };

std::string_view to_string(Family family);

/// Raw value oracle behind a SetFunction. Implementations must be pure and
/// thread-safe; raw_value need not vanish on the empty set.
class SetFunctionOracle {
public:
    virtual ~SetFunctionOracle() = default;
    virtual int size() const = 0;
    virtual Family family() const = 0;
    virtual double raw_value(const Subset& a) const = 0;
};

/// Normalized evaluation oracle F: 2^V -> R with F(empty) = 0.
///
/// Cheap to copy: copies share the oracle and the memo table. Memoization
/// caches values keyed by bitmask and is on by default for n <= 20.
/// Concurrent evaluation is safe.
class SetFunction {
public:
    static constexpr int kMemoDefaultMaxN = 20;

    explicit SetFunction(std::shared_ptr<const SetFunctionOracle> oracle);
    SetFunction(std::shared_ptr<const SetFunctionOracle> oracle, bool memoize);

    /// Wraps an arbitrary callable; used for test fixtures and derived
    /// functions such as a graph bound viewed as a set function.
    static SetFunction custom(int n, std::function<double(const Subset&)> fn);

    int size() const noexcept { return n_; }
    Family family() const noexcept { return family_; }
    bool memoized() const noexcept { return memo_ != nullptr; }
    const SetFunctionOracle& oracle() const noexcept { return *oracle_; }

    /// F(A) - F(empty). Throws DomainError if A is over a different ground set.
    double evaluate(const Subset& a) const;
    double operator()(const Subset& a) const { return evaluate(a); }

    double singleton(int i) const;

private:
    struct Memo;

    std::shared_ptr<const SetFunctionOracle> oracle_;
    std::shared_ptr<Memo> memo_;
    int n_ = 0;
    Family family_ = Family::custom;
    double offset_ = 0.0;
};

/// All 2^n normalized values indexed by bitmask. Throws CapacityError when
/// n > max_n.
std::vector<double> value_table(const SetFunction& f, int max_n);

/// Exhaustive diminishing-returns check with tolerance kEpsNum.
/// Throws CapacityError when n > kMaxExhaustiveN.
bool check_submodular(const SetFunction& f);

/// Exhaustive F(A) <= F(B) for A subset of B, with tolerance kEpsNum.
/// Throws CapacityError when n > kMaxExhaustiveN.
bool check_monotone(const SetFunction& f);

/// Point of the base polytope B(H) maximizing w.s, and that maximum.
struct BasePolytopePoint {
    std::vector<double> s;
    double value = 0.0;
};

/// Edmonds' greedy algorithm: visit indices by decreasing w (stable, so ties
/// go to the lower index) and take marginal gains along that chain.
BasePolytopePoint base_polytope_greedy(const SetFunction& h, std::span<const double> w);

} // namespace submax
