#include "submax/polytopes.hpp"

#include "submax/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>

namespace submax {

namespace {

double binomial(int n, int r) {
    double c = 1.0;
    for (int i = 1; i <= r; ++i) {
        c = c * static_cast<double>(n - r + i) / static_cast<double>(i);
    }
    return c;
}

// Lexicographic r-combinations of {0..n-1}.
void for_each_combination(int n, int r, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> comb(static_cast<std::size_t>(r));
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
        fn(comb);
        int i = r - 1;
        while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - r + i) {
            --i;
        }
        if (i < 0) {
            return;
        }
        ++comb[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < r; ++j) {
            comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

} // namespace

CliqueIndex::CliqueIndex(int n, int k) : n_(n), k_(k) {
    if (k < 1 || k > n - 1) {
        throw DomainError("clique index needs 1 <= k <= n-1 (n = " + std::to_string(n) +
                          ", k = " + std::to_string(k) + ")");
    }
    if (binomial(n, k + 1) > static_cast<double>(kMaxMaximalCliques)) {
        throw CapacityError("C(n, k+1) exceeds 10^6");
    }
    for (int r = 1; r <= k + 1; ++r) {
        if (r == k + 1) {
            maximal_begin_ = sets_.size();
        }
        for_each_combination(n, r, [&](const std::vector<int>& comb) { sets_.push_back(Subset::of(n, comb)); });
    }
    lookup_.reserve(sets_.size());
    for (std::size_t pos = 0; pos < sets_.size(); ++pos) {
        lookup_.emplace(sets_[pos], pos);
    }
}

std::size_t CliqueIndex::position(const Subset& c) const {
    const auto it = lookup_.find(c);
    if (it == lookup_.end()) {
        throw DomainError("subset " + c.str() + " is not in the clique index");
    }
    return it->second;
}

CliqueIndex enumerate_dk(int n, int k) { return CliqueIndex(n, k); }

std::vector<Violation> nk_violations(const CliqueIndex& idx, std::span<const double> y) {
    if (y.size() != idx.size()) {
        throw DomainError("pseudo-marginal dimension does not match the clique index");
    }
    std::vector<Violation> out;
    const int width = idx.k() + 1;
    const unsigned full = (1U << width) - 1;
    std::vector<double> local(std::size_t{1} << width);
    for (std::size_t d = idx.maximal_begin(); d < idx.size(); ++d) {
        const auto members = idx[d].elements();
        local[0] = 1.0;
        for (unsigned b = 1; b <= full; ++b) {
            std::vector<int> chosen;
            for (int a = 0; a < width; ++a) {
                if ((b >> a) & 1U) {
                    chosen.push_back(members[static_cast<std::size_t>(a)]);
                }
            }
            local[b] = y[idx.position(Subset::of(idx.n(), chosen))];
        }
        for (unsigned c = 0; c <= full; ++c) {
            double sum = 0.0;
            const unsigned rest = full & ~c;
            // B = C | extra for every extra subset of D \ C.
            unsigned extra = rest;
            while (true) {
                const double sign = (std::popcount(extra) % 2 == 0) ? 1.0 : -1.0;
                sum += sign * local[c | extra];
                if (extra == 0) {
                    break;
                }
                extra = (extra - 1) & rest;
            }
            if (sum < -kFeasibilityTol) {
                std::vector<int> lower;
                for (int a = 0; a < width; ++a) {
                    if ((c >> a) & 1U) {
                        lower.push_back(members[static_cast<std::size_t>(a)]);
                    }
                }
                out.push_back({idx[d], Subset::of(idx.n(), lower), sum});
            }
        }
    }
    return out;
}

bool in_local_polytope(const CliqueIndex& idx, std::span<const double> y) {
    for (double v : y) {
        if (v < -kFeasibilityTol || v > 1.0 + kFeasibilityTol) {
            return false;
        }
    }
    return nk_violations(idx, y).empty();
}

PseudoMarginal integral_point(const CliqueIndex& idx, const Subset& x) {
    PseudoMarginal y(idx.size());
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
        y[pos] = idx[pos].is_subset_of(x) ? 1.0 : 0.0;
    }
    return y;
}

bool mk_membership(const CliqueIndex& idx, std::span<const double> y) {
    if (idx.n() > kMaxExhaustiveN) {
        throw CapacityError("exact marginal-polytope membership limited to n <= 14");
    }
    if (y.size() != idx.size()) {
        throw DomainError("pseudo-marginal dimension does not match the clique index");
    }
    for (double v : y) {
        if (v != 0.0 && v != 1.0) {
            throw DomainError("marginal-polytope membership is only decided for integral points");
        }
    }
    const std::uint64_t count = std::uint64_t{1} << idx.n();
    for (std::uint64_t m = 0; m < count; ++m) {
        const Subset x = Subset::from_mask(idx.n(), m);
        bool match = true;
        for (std::size_t pos = 0; pos < idx.size() && match; ++pos) {
            match = (idx[pos].is_subset_of(x) ? 1.0 : 0.0) == y[pos];
        }
        if (match) {
            return true;
        }
    }
    return false;
}

std::vector<double> project_simplex(std::span<const double> v) {
    if (v.empty()) {
        throw DomainError("cannot project an empty vector onto the simplex");
    }
    std::vector<double> sorted(v.begin(), v.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        cumulative += sorted[j];
        const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
        if (sorted[j] - t > 0.0) {
            theta = t;
        }
    }
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = std::max(v[i] - theta, 0.0);
    }
    return out;
}

std::vector<double> to_dense(const NuVector& nu, const CliqueIndex& idx) {
    std::vector<double> out(idx.size(), 0.0);
    for (const auto& [c, value] : nu.coef) {
        out[idx.position(c)] = value;
    }
    return out;
}

} // namespace submax
