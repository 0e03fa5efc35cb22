#include "submax/set_function.hpp"

#include "submax/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>

namespace submax {

std::string_view to_string(Family family) {
    switch (family) {
    case Family::cut: return "cut";
    case Family::coverage: return "coverage";
    case Family::modular: return "modular";
    case Family::entropy: return "entropy";
    case Family::difference: return "difference";
    case Family::custom: return "custom";
    }
    return "unknown";
}

namespace {

class CallableOracle final : public SetFunctionOracle {
public:
    CallableOracle(int n, std::function<double(const Subset&)> fn) : n_(n), fn_(std::move(fn)) {}
    int size() const override { return n_; }
    Family family() const override { return Family::custom; }
    double raw_value(const Subset& a) const override { return fn_(a); }

private:
    int n_;
    std::function<double(const Subset&)> fn_;
};

} // namespace

// Dense table over all 2^n masks, allocated on first use. NaN marks an
// empty slot; racing writers store the same value.
struct SetFunction::Memo {
    std::once_flag once;
    std::unique_ptr<std::atomic<double>[]> slots;
    std::size_t count = 0;

    explicit Memo(int n) : count(std::size_t{1} << n) {}

    std::atomic<double>* table() {
        std::call_once(once, [this] {
            slots = std::make_unique<std::atomic<double>[]>(count);
            for (std::size_t i = 0; i < count; ++i) {
                slots[i].store(std::numeric_limits<double>::quiet_NaN(), std::memory_order_relaxed);
            }
        });
        return slots.get();
    }
};

SetFunction::SetFunction(std::shared_ptr<const SetFunctionOracle> oracle)
    : SetFunction(oracle, oracle && oracle->size() <= kMemoDefaultMaxN) {}

SetFunction::SetFunction(std::shared_ptr<const SetFunctionOracle> oracle, bool memoize)
    : oracle_(std::move(oracle)) {
    if (!oracle_) {
        throw DomainError("null set-function oracle");
    }
    n_ = oracle_->size();
    if (n_ < 1) {
        throw DomainError("ground set must have at least one element");
    }
    family_ = oracle_->family();
    offset_ = oracle_->raw_value(Subset(n_));
    if (memoize && n_ <= 22) {
        memo_ = std::make_shared<Memo>(n_);
    }
}

SetFunction SetFunction::custom(int n, std::function<double(const Subset&)> fn) {
    return SetFunction(std::make_shared<CallableOracle>(n, std::move(fn)));
}

double SetFunction::evaluate(const Subset& a) const {
    if (a.universe() != n_) {
        throw DomainError("subset over ground set of size " + std::to_string(a.universe()) +
                          " passed to function of size " + std::to_string(n_));
    }
    if (!memo_) {
        return oracle_->raw_value(a) - offset_;
    }
    auto& slot = memo_->table()[a.mask()];
    double v = slot.load(std::memory_order_relaxed);
    if (std::isnan(v)) {
        v = oracle_->raw_value(a) - offset_;
        slot.store(v, std::memory_order_relaxed);
    }
    return v;
}

double SetFunction::singleton(int i) const { return evaluate(Subset::of(n_, {i})); }

std::vector<double> value_table(const SetFunction& f, int max_n) {
    const int n = f.size();
    if (n > max_n) {
        throw CapacityError("exhaustive routine limited to n <= " + std::to_string(max_n) +
                            " (got n = " + std::to_string(n) + ")");
    }
    const std::uint64_t count = std::uint64_t{1} << n;
    std::vector<double> table(count);
    for (std::uint64_t m = 0; m < count; ++m) {
        table[m] = f(Subset::from_mask(n, m));
    }
    return table;
}

bool check_submodular(const SetFunction& f) {
    const auto table = value_table(f, kMaxExhaustiveN);
    const int n = f.size();
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t b = 0; b <= full; ++b) {
        const std::uint64_t outside = full & ~b;
        // All A subset of B, including A = B.
        std::uint64_t a = b;
        while (true) {
            for (std::uint64_t rest = outside; rest != 0; rest &= rest - 1) {
                const std::uint64_t x = rest & (~rest + 1);
                const double gain_a = table[a | x] - table[a];
                const double gain_b = table[b | x] - table[b];
                if (gain_a < gain_b - kEpsNum) {
                    return false;
                }
            }
            if (a == 0) {
                break;
            }
            a = (a - 1) & b;
        }
    }
    return true;
}

bool check_monotone(const SetFunction& f) {
    const auto table = value_table(f, kMaxExhaustiveN);
    const int n = f.size();
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t b = 0; b <= full; ++b) {
        std::uint64_t a = b;
        while (true) {
            if (table[a] > table[b] + kEpsNum) {
                return false;
            }
            if (a == 0) {
                break;
            }
            a = (a - 1) & b;
        }
    }
    return true;
}

BasePolytopePoint base_polytope_greedy(const SetFunction& h, std::span<const double> w) {
    const int n = h.size();
    if (static_cast<int>(w.size()) != n) {
        throw DomainError("weight vector length does not match ground set");
    }
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return w[static_cast<std::size_t>(a)] > w[static_cast<std::size_t>(b)];
    });

    BasePolytopePoint out;
    out.s.assign(static_cast<std::size_t>(n), 0.0);
    Subset prefix(n);
    double prev = 0.0;
    for (int i : order) {
        prefix.insert(i);
        const double cur = h(prefix);
        out.s[static_cast<std::size_t>(i)] = cur - prev;
        prev = cur;
    }
    for (int i = 0; i < n; ++i) {
        out.value += w[static_cast<std::size_t>(i)] * out.s[static_cast<std::size_t>(i)];
    }
    return out;
}

} // namespace submax
