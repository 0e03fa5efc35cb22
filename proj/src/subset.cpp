#include "submax/subset.hpp"

#include "submax/errors.hpp"

#include <algorithm>

namespace submax {

namespace {

std::size_t word_count(int n) { return (static_cast<std::size_t>(n) + 63) / 64; }

} // namespace

Subset::Subset(int n) : n_(n), words_(word_count(n), 0) {
    if (n < 0) {
        throw DomainError("subset universe must be non-negative");
    }
}

Subset Subset::full(int n) {
    Subset s(n);
    for (int i = 0; i < n; ++i) {
        s.insert(i);
    }
    return s;
}

Subset Subset::from_mask(int n, std::uint64_t mask) {
    if (n > 64) {
        throw DomainError("from_mask requires n <= 64");
    }
    if (n < 64 && (mask >> n) != 0) {
        throw DomainError("mask has bits outside the ground set");
    }
    Subset s(n);
    if (n > 0) {
        s.words_[0] = mask;
    }
    return s;
}

Subset Subset::of(int n, std::initializer_list<int> elements) {
    Subset s(n);
    for (int i : elements) {
        s.insert(i);
    }
    return s;
}

Subset Subset::of(int n, const std::vector<int>& elements) {
    Subset s(n);
    for (int i : elements) {
        s.insert(i);
    }
    return s;
}

void Subset::check_index(int i) const {
    if (i < 0 || i >= n_) {
        throw DomainError("element " + std::to_string(i) + " outside ground set of size " +
                          std::to_string(n_));
    }
}

void Subset::insert(int i) {
    check_index(i);
    words_[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63);
}

void Subset::erase(int i) {
    check_index(i);
    words_[static_cast<std::size_t>(i) >> 6] &= ~(std::uint64_t{1} << (i & 63));
}

void Subset::toggle(int i) {
    check_index(i);
    words_[static_cast<std::size_t>(i) >> 6] ^= std::uint64_t{1} << (i & 63);
}

int Subset::count() const noexcept {
    int c = 0;
    for (auto w : words_) {
        c += std::popcount(w);
    }
    return c;
}

bool Subset::empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

bool Subset::is_subset_of(const Subset& other) const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) {
        if ((words_[w] & ~other.words_[w]) != 0) {
            return false;
        }
    }
    return true;
}

std::vector<int> Subset::elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for_each([&](int i) { out.push_back(i); });
    return out;
}

std::uint64_t Subset::mask() const {
    if (n_ > 64) {
        throw DomainError("mask() requires n <= 64");
    }
    return words_.empty() ? 0 : words_[0];
}

std::string Subset::hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    const int nibbles = std::max(1, (n_ + 3) / 4);
    out.reserve(static_cast<std::size_t>(nibbles));
    for (int d = nibbles - 1; d >= 0; --d) {
        unsigned v = 0;
        for (int b = 3; b >= 0; --b) {
            const int i = 4 * d + b;
            v = (v << 1) | ((i < n_ && contains(i)) ? 1U : 0U);
        }
        out.push_back(kDigits[v]);
    }
    return out;
}

std::string Subset::str() const {
    std::string out = "{";
    bool first = true;
    for_each([&](int i) {
        if (!first) {
            out += ',';
        }
        out += std::to_string(i);
        first = false;
    });
    out += '}';
    return out;
}

Subset& Subset::operator&=(const Subset& o) noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) {
        words_[w] &= o.words_[w];
    }
    return *this;
}

Subset& Subset::operator|=(const Subset& o) noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) {
        words_[w] |= o.words_[w];
    }
    return *this;
}

Subset& Subset::operator-=(const Subset& o) noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) {
        words_[w] &= ~o.words_[w];
    }
    return *this;
}

Subset Subset::complement() const {
    Subset out = full(n_);
    out -= *this;
    return out;
}

std::size_t Subset::hash() const noexcept {
    std::size_t h = static_cast<std::size_t>(n_) * 0x9e3779b97f4a7c15ULL;
    for (auto w : words_) {
        h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

bool canonical_less(const Subset& a, const Subset& b) {
    const int ca = a.count();
    const int cb = b.count();
    if (ca != cb) {
        return ca < cb;
    }
    const auto ea = a.elements();
    const auto eb = b.elements();
    return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

} // namespace submax
