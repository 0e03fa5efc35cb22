#include "submax/baselines.hpp"

#include "submax/errors.hpp"
#include "submax/rng.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace submax {

namespace {

double checked(const SetFunction& f, const Subset& a) {
    const double v = f(a);
    if (v < -kEpsNum) {
        throw DomainError("negative value " + std::to_string(v) + " at " + a.str() +
                          "; the algorithm needs a non-negative function");
    }
    return v;
}

} // namespace

Maximizer brute_force_max(const SetFunction& f) { return brute_force_max(f, f.size()); }

Maximizer brute_force_max(const SetFunction& f, int m) {
    const int n = f.size();
    if (n > kMaxBruteForceN) {
        throw CapacityError("brute force limited to n <= 22, got n = " + std::to_string(n));
    }
    if (m < 0) {
        throw DomainError("budget must be non-negative");
    }
    Maximizer best{f(Subset(n)), Subset(n)};
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t mask = 1; mask < count; ++mask) {
        if (std::popcount(mask) > m) {
            continue;
        }
        const Subset a = Subset::from_mask(n, mask);
        const double v = f(a);
        if (v > best.value) {
            best = {v, a};
        }
    }
    return best;
}

Maximizer double_greedy(const SetFunction& f, DoubleGreedyMode mode, std::uint64_t seed) {
    const int n = f.size();
    Rng rng(seed);
    Subset x(n);
    Subset y = Subset::full(n);
    double fx = checked(f, x);
    double fy = checked(f, y);
    for (int i = 0; i < n; ++i) {
        Subset xi = x;
        xi.insert(i);
        Subset yi = y;
        yi.erase(i);
        const double fxi = checked(f, xi);
        const double fyi = checked(f, yi);
        const double a = fxi - fx;
        const double b = fyi - fy;
        bool include = false;
        if (mode == DoubleGreedyMode::deterministic) {
            include = a >= b;
        } else {
            const double ap = std::max(a, 0.0);
            const double bp = std::max(b, 0.0);
            include = (ap + bp == 0.0) ? true : rng.uniform01() < ap / (ap + bp);
        }
        if (include) {
            x = std::move(xi);
            fx = fxi;
        } else {
            y = std::move(yi);
            fy = fyi;
        }
    }
    return {fx, x};
}

int local_search_move_cap(int n, double epsilon) {
    const double nn = static_cast<double>(n);
    return static_cast<int>(std::ceil(2.0 * nn * nn * std::log(nn + 1.0) / epsilon)) + 10;
}

LocalSearchResult local_search(const SetFunction& f, double epsilon, std::uint64_t seed) {
    if (!(epsilon > 0.0)) {
        throw DomainError("epsilon must be positive");
    }
    const int n = f.size();
    LocalSearchResult out{0.0, Subset(n), 0};
    if (n == 0) {
        return out;
    }
    Subset s(n);
    double fs = checked(f, s);
    for (int i = 0; i < n; ++i) {
        const Subset single = Subset::of(n, {i});
        const double v = checked(f, single);
        if (i == 0 || v > fs) {
            s = single;
            fs = v;
        }
    }
    const double factor = 1.0 + epsilon / (static_cast<double>(n) * static_cast<double>(n));
    const int cap = local_search_move_cap(n, epsilon);
    Rng rng(seed);
    bool improved = true;
    while (improved && out.moves < cap) {
        improved = false;
        for (int i : rng.permutation(n)) {
            Subset t = s;
            t.toggle(i);
            const double ft = checked(f, t);
            if (ft > factor * fs) {
                s = std::move(t);
                fs = ft;
                ++out.moves;
                improved = true;
                break;
            }
        }
    }
    const Subset rest = s.complement();
    const double frest = checked(f, rest);
    if (frest > fs) {
        out.value = frest;
        out.set = rest;
    } else {
        out.value = fs;
        out.set = s;
    }
    return out;
}

} // namespace submax
