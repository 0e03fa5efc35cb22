#pragma once

#include "submax/graphs.hpp"
#include "submax/subset.hpp"

#include <cstddef>
#include <span>
#include <unordered_map>
#include <vector>

namespace submax {

/// Every nonempty C subset of V with |C| <= k+1, in canonical order
/// (cardinality, then lexicographic). Positions in this list are the
/// coordinates of pseudo-marginals and dense nu vectors.
class CliqueIndex {
public:
    static constexpr std::size_t kMaxMaximalCliques = 1'000'000;

    /// Requires 1 <= k <= n-1; throws CapacityError when C(n, k+1) > 10^6.
    CliqueIndex(int n, int k);

    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    std::size_t size() const noexcept { return sets_.size(); }
    const Subset& operator[](std::size_t pos) const { return sets_[pos]; }
    const std::vector<Subset>& sets() const noexcept { return sets_; }

    /// Position of c; throws DomainError if c is not indexed.
    std::size_t position(const Subset& c) const;
    bool contains(const Subset& c) const { return lookup_.count(c) != 0; }
    std::size_t singleton(int i) const { return static_cast<std::size_t>(i); }

    /// Coordinates of the maximal sets (|C| = k+1) form the tail
    /// [maximal_begin(), size()).
    std::size_t maximal_begin() const noexcept { return maximal_begin_; }

private:
    int n_;
    int k_;
    std::vector<Subset> sets_;
    std::unordered_map<Subset, std::size_t, SubsetHash> lookup_;
    std::size_t maximal_begin_ = 0;
};

CliqueIndex enumerate_dk(int n, int k);

/// Pseudo-marginal vector y over CliqueIndex coordinates.
using PseudoMarginal = std::vector<double>;

inline constexpr double kFeasibilityTol = 1e-8;

struct Violation {
    Subset maximal; // D
    Subset lower;   // C, possibly empty
    double slack = 0.0;
};

/// All local-consistency rows sum_{C <= B <= D} (-1)^{|B \ C|} y_B >= 0 with
/// slack below -1e-8, for D of size k+1 and every C subset of D (y_empty = 1).
/// Rows come out ordered by D (canonical), then by C's local bitmask.
std::vector<Violation> nk_violations(const CliqueIndex& idx, std::span<const double> y);

/// Box [0,1] and no violated local-consistency row.
bool in_local_polytope(const CliqueIndex& idx, std::span<const double> y);

/// y_C = prod_{i in C} x_i.
PseudoMarginal integral_point(const CliqueIndex& idx, const Subset& x);

/// Exact membership for integral y by enumerating x in {0,1}^n.
/// Throws CapacityError when n > 14 and DomainError for non-integral y.
bool mk_membership(const CliqueIndex& idx, std::span<const double> y);

/// Euclidean projection onto the probability simplex (sort and threshold).
std::vector<double> project_simplex(std::span<const double> v);

/// nu as a dense vector over idx coordinates. Throws DomainError if nu has
/// support outside idx.
std::vector<double> to_dense(const NuVector& nu, const CliqueIndex& idx);

} // namespace submax
