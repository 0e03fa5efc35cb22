#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace submax {

/// A subset of the ground set {0, ..., n-1}, stored as a bitmask.
///
/// Any n is accepted; routines that enumerate 2^n subsets cap n separately
/// (see kMaxExhaustiveN). For n <= 64 the subset converts to and from a
/// single 64-bit mask.
class Subset {
public:
    Subset() = default;
    explicit Subset(int n);

    static Subset full(int n);
    static Subset from_mask(int n, std::uint64_t mask);
    /// Throws DomainError if any index is outside [0, n).
    static Subset of(int n, std::initializer_list<int> elements);
    static Subset of(int n, const std::vector<int>& elements);

    int universe() const noexcept { return n_; }

    bool contains(int i) const noexcept {
        return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1U;
    }
    void insert(int i);
    void erase(int i);
    void toggle(int i);

    int count() const noexcept;
    bool empty() const noexcept;
    bool is_subset_of(const Subset& other) const noexcept;

    /// Elements in ascending order.
    std::vector<int> elements() const;

    /// Throws DomainError when n > 64.
    std::uint64_t mask() const;

    /// Lowercase hex of the bitmask, most significant digit first, no prefix.
    std::string hex() const;
    /// "{0,2,5}"
    std::string str() const;

    Subset& operator&=(const Subset& o) noexcept;
    Subset& operator|=(const Subset& o) noexcept;
    /// Set difference.
    Subset& operator-=(const Subset& o) noexcept;

    friend Subset operator&(Subset a, const Subset& b) noexcept { return a &= b; }
    friend Subset operator|(Subset a, const Subset& b) noexcept { return a |= b; }
    friend Subset operator-(Subset a, const Subset& b) noexcept { return a -= b; }

    /// Complement within the ground set.
    Subset complement() const;

    friend bool operator==(const Subset& a, const Subset& b) noexcept = default;

    std::size_t hash() const noexcept;

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                const int b = std::countr_zero(bits);
                fn(static_cast<int>(w * 64) + b);
                bits &= bits - 1;
            }
        }
    }

private:
    void check_index(int i) const;

    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Canonical order: by cardinality, then lexicographic on the sorted element
/// lists. This is the coordinate order used for every vector indexed by
/// cliques.
bool canonical_less(const Subset& a, const Subset& b);

struct CanonicalLess {
    bool operator()(const Subset& a, const Subset& b) const { return canonical_less(a, b); }
};

struct SubsetHash {
    std::size_t operator()(const Subset& s) const noexcept { return s.hash(); }
};

} // namespace submax
