#include "submax/saddle.hpp"

#include "submax/errors.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

namespace submax {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

using SparseNu = std::vector<std::pair<std::uint32_t, double>>;

// Nonzero superset sums nu'_E.
SparseNu sparse_cover(const NuVector& nu, const CliqueIndex& idx) {
    const auto dense = superset_sums(nu, idx);
    SparseNu out;
    for (std::size_t pos = 0; pos < dense.size(); ++pos) {
        if (dense[pos] != 0.0) {
            out.emplace_back(static_cast<std::uint32_t>(pos), dense[pos]);
        }
    }
    return out;
}

// Calls fn(sub) for every nonempty subset of c, given as a member list.
template <typename Fn>
void for_each_nonempty_subset(const Subset& c, Fn&& fn) {
    const auto members = c.elements();
    const unsigned full = (1U << members.size()) - 1;
    std::vector<int> chosen;
    for (unsigned b = 1; b <= full; ++b) {
        chosen.clear();
        for (std::size_t a = 0; a < members.size(); ++a) {
            if ((b >> a) & 1U) {
                chosen.push_back(members[a]);
            }
        }
        fn(Subset::of(c.universe(), chosen), static_cast<int>(members.size()) - static_cast<int>(chosen.size()));
    }
}

bool same_vertex(const HullVertex& a, const HullVertex& b) { return a.nu.coef == b.nu.coef && a.s == b.s; }

// Solver state in units where max_C |F(C)| = 1.
struct Scaled {
    std::vector<double> eta;
    std::vector<double> z;
    double lambda = 0.0;
};

class Engine {
public:
    Engine(const RelaxedProblem& problem, const CliqueIndex& idx, const SolverConfig& config)
        : problem_(problem), idx_(idx), config_(config), lc_(idx), n_(idx.n()) {
        double largest = 0.0;
        for (std::size_t pos = 0; pos < idx.size(); ++pos) {
            largest = std::max(largest, std::abs(problem.f(idx[pos])));
        }
        scale_ = largest > 0.0 ? largest : 1.0;
        moebius_ = moebius_coefficients(problem.f, idx);
        fs_.resize(idx.size());
        for (std::size_t pos = 0; pos < idx.size(); ++pos) {
            fs_[pos] = moebius_[pos] / scale_;
        }
        budget_ = problem.budget.value_or(-1);
    }

    double scale() const { return scale_; }

    void add_vertex(const HullVertex& v) {
        nus_.push_back(sparse_cover(v.nu, idx_));
        std::vector<double> s(v.s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            s[i] = v.s[i] / scale_;
        }
        ss_.push_back(std::move(s));
    }

    Scaled zero_start() const {
        Scaled x;
        x.eta.assign(nus_.size(), 0.0);
        x.eta[0] = 1.0;
        x.z.assign(lc_.multiplier_count(), 0.0);
        return x;
    }

    // Active coefficients a and the constant term at x; returns Q (scaled).
    double evaluate(const Scaled& x, std::vector<double>& a) const {
        std::fill(a.begin(), a.end(), 0.0);
        for (std::size_t v = 0; v < nus_.size(); ++v) {
            const double w = x.eta[v];
            if (w == 0.0) {
                continue;
            }
            for (const auto& [pos, coef] : nus_[v]) {
                a[pos] += w * coef;
            }
        }
        for (std::size_t pos = 0; pos < a.size(); ++pos) {
            a[pos] *= fs_[pos];
        }
        if (problem_.h) {
            for (std::size_t v = 0; v < ss_.size(); ++v) {
                const double w = x.eta[v];
                if (w == 0.0) {
                    continue;
                }
                for (int i = 0; i < n_; ++i) {
                    a[at(i)] -= w * ss_[v][at(i)];
                }
            }
        }
        double constant = lc_.add_multipliers(x.z, a);
        if (budget_ >= 0) {
            for (int i = 0; i < n_; ++i) {
                a[at(i)] -= x.lambda;
            }
            constant += x.lambda * static_cast<double>(budget_);
        }
        double q = constant;
        for (double v : a) {
            q += std::max(v, 0.0);
        }
        return q;
    }

    struct Inner {
        Scaled best;
        double best_q = 0.0;
        PseudoMarginal y_bar;
        int steps = 0;
    };

    Inner inner(const Scaled& start, int steps, double target_scaled, long& clock) const {
        Inner out;
        Scaled x = start;
        std::vector<double> a(idx_.size());
        std::vector<double> y(idx_.size());
        std::vector<double> sum(idx_.size(), 0.0);
        std::vector<double> gz(lc_.multiplier_count());
        std::vector<double> geta(nus_.size());
        out.best = x;
        out.best_q = std::numeric_limits<double>::infinity();

        // Level bookkeeping for the Polyak rule.
        double delta = -1.0;
        int since_progress = 0;
        double level_ref = std::numeric_limits<double>::infinity();

        bool stationary = false;
        for (int t = 1; t <= steps; ++t) {
            const double q = evaluate(x, a);
            if (q < out.best_q) {
                out.best_q = q;
                out.best = x;
            }
            for (std::size_t pos = 0; pos < a.size(); ++pos) {
                y[pos] = a[pos] > 0.0 ? 1.0 : 0.0;
                sum[pos] += y[pos];
            }
            ++out.steps;
            if (t == steps) {
                break;
            }

            lc_.row_sums(y, gz);
            for (std::size_t v = 0; v < nus_.size(); ++v) {
                double g = 0.0;
                for (const auto& [pos, coef] : nus_[v]) {
                    g += fs_[pos] * coef * y[pos];
                }
                if (problem_.h) {
                    for (int i = 0; i < n_; ++i) {
                        g -= ss_[v][at(i)] * y[at(i)];
                    }
                }
                geta[v] = g;
            }
            double glambda = 0.0;
            if (budget_ >= 0) {
                glambda = static_cast<double>(budget_);
                for (int i = 0; i < n_; ++i) {
                    glambda -= y[at(i)];
                }
            }

            ++clock;
            double alpha = 0.0;
            if (config_.step_rule == StepRule::diminishing) {
                alpha = 1.0 / std::sqrt(static_cast<double>(clock));
            } else {
                // Squared norm of the feasible part of the subgradient.
                double norm2 = 0.0;
                for (std::size_t j = 0; j < gz.size(); ++j) {
                    if (x.z[j] > 0.0 || gz[j] < 0.0) {
                        norm2 += gz[j] * gz[j];
                    }
                }
                if (geta.size() > 1) {
                    const double mean = std::accumulate(geta.begin(), geta.end(), 0.0) / static_cast<double>(geta.size());
                    for (double g : geta) {
                        norm2 += (g - mean) * (g - mean);
                    }
                }
                if (budget_ >= 0 && (x.lambda > 0.0 || glambda < 0.0)) {
                    norm2 += glambda * glambda;
                }
                if (norm2 == 0.0) {
                    // Zero subgradient: x minimizes Q and y is a maximizer
                    // inside the local polytope.
                    stationary = true;
                    break;
                }
                if (delta < 0.0) {
                    delta = 0.1 * std::max(std::abs(out.best_q), 1.0);
                    level_ref = out.best_q;
                }
                if (out.best_q <= level_ref - 0.5 * delta) {
                    level_ref = out.best_q;
                    since_progress = 0;
                } else if (++since_progress > 50) {
                    delta *= 0.5;
                    since_progress = 0;
                    level_ref = out.best_q;
                }
                const double level = std::max(out.best_q - delta, target_scaled);
                alpha = std::max(q - level, 0.0) / norm2;
            }

            for (std::size_t j = 0; j < gz.size(); ++j) {
                x.z[j] = std::max(0.0, x.z[j] - alpha * gz[j]);
            }
            if (nus_.size() > 1) {
                std::vector<double> moved(geta.size());
                for (std::size_t v = 0; v < geta.size(); ++v) {
                    moved[v] = x.eta[v] - alpha * geta[v];
                }
                x.eta = project_simplex(moved);
            }
            if (budget_ >= 0) {
                x.lambda = std::max(0.0, x.lambda - alpha * glambda);
            }
        }
        if (stationary) {
            out.best = x;
            out.best_q = evaluate(x, a);
            out.y_bar = y;
            return out;
        }
        out.y_bar.resize(idx_.size());
        for (std::size_t pos = 0; pos < sum.size(); ++pos) {
            out.y_bar[pos] = std::clamp(sum[pos] / static_cast<double>(out.steps), 0.0, 1.0);
        }
        return out;
    }

    // P(sum eta_i nu_i, y) - sum eta_i s_i.y_singletons, unscaled.
    double mixed_p(const std::vector<HullVertex>& vertices, const std::vector<double>& eta,
                   std::span<const double> y) const {
        double total = 0.0;
        for (std::size_t v = 0; v < nus_.size(); ++v) {
            if (eta[v] == 0.0) {
                continue;
            }
            double p = 0.0;
            for (const auto& [pos, coef] : nus_[v]) {
                p += moebius_[pos] * coef * y[pos];
            }
            if (problem_.h) {
                for (int i = 0; i < n_; ++i) {
                    p -= vertices[v].s[at(i)] * y[at(i)];
                }
            }
            total += eta[v] * p;
        }
        return total;
    }

private:
    const RelaxedProblem& problem_;
    const CliqueIndex& idx_;
    const SolverConfig& config_;
    LocalConsistency lc_;
    int n_;
    std::vector<double> moebius_;
    std::vector<double> fs_;
    double scale_ = 1.0;
    int budget_ = -1;
    std::vector<SparseNu> nus_;
    std::vector<std::vector<double>> ss_;
};

double objective(const RelaxedProblem& problem, const Subset& a) {
    double v = problem.f(a);
    if (problem.h) {
        v -= (*problem.h)(a);
    }
    return v;
}

// One sweep of single-element toggles, keeping strict improvements.
Subset polish(const RelaxedProblem& problem, Subset a, double& value) {
    const int budget = problem.budget.value_or(-1);
    for (int i = 0; i < a.universe(); ++i) {
        Subset b = a;
        if (b.contains(i)) {
            b.erase(i);
        } else {
            if (budget >= 0 && static_cast<int>(b.count()) >= budget) {
                continue;
            }
            b.insert(i);
        }
        const double v = objective(problem, b);
        if (v > value) {
            a = std::move(b);
            value = v;
        }
    }
    return a;
}

Subset round_point(const RelaxedProblem& problem, std::span<const double> y, double theta, RoundingRule rule) {
    const int n = problem.f.size();
    Subset a = round_threshold(n, y, theta);
    if (rule == RoundingRule::top_budget && problem.budget) {
        std::vector<int> order(at(n));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return y[at(i)] > y[at(j)]; });
        Subset top(n);
        for (int r = 0; r < std::min(*problem.budget, n); ++r) {
            top.insert(order[at(r)]);
        }
        a &= top;
    }
    return a;
}

HullVertex make_vertex(DecomposableGraph graph, const RelaxedProblem& problem, std::span<const double> weights) {
    NuVector nu = nu_from_decomposable(graph);
    std::vector<double> s;
    if (problem.h) {
        s = base_polytope_greedy(*problem.h, weights).s;
    }
    return HullVertex{std::move(graph), std::move(nu), std::move(s)};
}

} // namespace

void validate(const SolverConfig& config) {
    if (config.treewidth < 1) {
        throw DomainError("treewidth must be at least 1");
    }
    if (config.max_outer < 1 || config.inner_steps < 1 || config.pool_size < 1) {
        throw DomainError("iteration counts and pool size must be positive");
    }
    if (!(config.tol > 0.0)) {
        throw DomainError("tolerance must be positive");
    }
    if (!(config.theta > 0.0 && config.theta < 1.0)) {
        throw DomainError("rounding threshold must lie in (0, 1)");
    }
    if (config.budget && *config.budget < 0) {
        throw DomainError("budget must be non-negative");
    }
}

LocalConsistency::LocalConsistency(const CliqueIndex& idx)
    : idx_(&idx), blocks_(idx.size() - idx.maximal_begin()), block_size_(std::size_t{1} << (idx.k() + 1)) {
    const int width = idx.k() + 1;
    positions_.assign(blocks_ * block_size_, 0);
    std::vector<int> chosen;
    for (std::size_t d = 0; d < blocks_; ++d) {
        const auto members = idx[idx.maximal_begin() + d].elements();
        for (std::size_t b = 1; b < block_size_; ++b) {
            chosen.clear();
            for (int a = 0; a < width; ++a) {
                if ((b >> a) & 1U) {
                    chosen.push_back(members[at(a)]);
                }
            }
            positions_[d * block_size_ + b] = static_cast<std::uint32_t>(idx.position(Subset::of(idx.n(), chosen)));
        }
    }
}

std::size_t LocalConsistency::multiplier_index(const Subset& d, const Subset& c) const {
    const std::size_t pos = idx_->position(d);
    if (pos < idx_->maximal_begin()) {
        throw DomainError("multipliers are indexed by sets of size k+1, got " + d.str());
    }
    if (!c.is_subset_of(d)) {
        throw DomainError(c.str() + " is not a subset of " + d.str());
    }
    const auto members = d.elements();
    std::size_t mask = 0;
    for (std::size_t a = 0; a < members.size(); ++a) {
        if (c.contains(members[a])) {
            mask |= std::size_t{1} << a;
        }
    }
    return (pos - idx_->maximal_begin()) * block_size_ + mask;
}

double LocalConsistency::add_multipliers(std::span<const double> z, std::span<double> a) const {
    double constant = 0.0;
    const unsigned full = static_cast<unsigned>(block_size_ - 1);
    for (std::size_t d = 0; d < blocks_; ++d) {
        const double* zd = z.data() + d * block_size_;
        const std::uint32_t* pd = positions_.data() + d * block_size_;
        for (unsigned c = 0; c <= full; ++c) {
            const double zc = zd[c];
            if (zc == 0.0) {
                continue;
            }
            const unsigned rest = full & ~c;
            unsigned extra = rest;
            while (true) {
                const unsigned b = c | extra;
                const double signed_z = (std::popcount(extra) % 2 == 0) ? zc : -zc;
                if (b == 0) {
                    constant += signed_z;
                } else {
                    a[pd[b]] += signed_z;
                }
                if (extra == 0) {
                    break;
                }
                extra = (extra - 1) & rest;
            }
        }
    }
    return constant;
}

void LocalConsistency::row_sums(std::span<const double> y, std::span<double> out) const {
    const unsigned full = static_cast<unsigned>(block_size_ - 1);
    std::vector<double> local(block_size_);
    for (std::size_t d = 0; d < blocks_; ++d) {
        const std::uint32_t* pd = positions_.data() + d * block_size_;
        local[0] = 1.0;
        for (unsigned b = 1; b <= full; ++b) {
            local[b] = y[pd[b]];
        }
        for (unsigned c = 0; c <= full; ++c) {
            const unsigned rest = full & ~c;
            double sum = 0.0;
            unsigned extra = rest;
            while (true) {
                sum += (std::popcount(extra) % 2 == 0) ? local[c | extra] : -local[c | extra];
                if (extra == 0) {
                    break;
                }
                extra = (extra - 1) & rest;
            }
            out[d * block_size_ + c] = sum;
        }
    }
}

std::vector<double> moebius_coefficients(const SetFunction& f, const CliqueIndex& idx) {
    if (f.size() != idx.n()) {
        throw DomainError("function and clique index have different ground sets");
    }
    std::vector<double> out(idx.size());
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
        double m = 0.0;
        for_each_nonempty_subset(idx[pos], [&](const Subset& b, int missing) {
            m += (missing % 2 == 0) ? f(b) : -f(b);
        });
        out[pos] = m;
    }
    return out;
}

std::vector<double> superset_sums(const NuVector& nu, const CliqueIndex& idx) {
    if (nu.n != idx.n()) {
        throw DomainError("nu and clique index have different ground sets");
    }
    std::vector<double> out(idx.size(), 0.0);
    for (const auto& [c, value] : nu.coef) {
        for_each_nonempty_subset(c, [&](const Subset& e, int) { out[idx.position(e)] += value; });
    }
    return out;
}

double p_eval(const SetFunction& f, const CliqueIndex& idx, const NuVector& nu, std::span<const double> y) {
    if (y.size() != idx.size()) {
        throw DomainError("p_eval: pseudo-marginal dimension does not match the clique index");
    }
    const auto m = moebius_coefficients(f, idx);
    const auto cover = superset_sums(nu, idx);
    double total = 0.0;
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
        if (cover[pos] != 0.0) {
            total += m[pos] * cover[pos] * y[pos];
        }
    }
    return total;
}

QValue q_eval(const SetFunction& f, const CliqueIndex& idx, const NuVector& nu, std::span<const double> z,
              double lambda, std::optional<int> budget) {
    const LocalConsistency lc(idx);
    if (z.size() != lc.multiplier_count()) {
        throw DomainError("q_eval: multiplier vector has the wrong length");
    }
    const auto m = moebius_coefficients(f, idx);
    QValue out;
    out.a = superset_sums(nu, idx);
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
        out.a[pos] *= m[pos];
    }
    out.constant = lc.add_multipliers(z, out.a);
    if (budget) {
        for (int i = 0; i < idx.n(); ++i) {
            out.a[at(i)] -= lambda;
        }
        out.constant += lambda * static_cast<double>(*budget);
    }
    out.value = out.constant;
    for (double v : out.a) {
        out.value += std::max(v, 0.0);
    }
    return out;
}

InnerResult inner_solve_hull(const RelaxedProblem& problem, const CliqueIndex& idx,
                             const std::vector<HullVertex>& vertices, const SolverConfig& config,
                             const InnerStart* start, double target) {
    if (vertices.empty()) {
        throw DomainError("inner solve needs at least one hull vertex");
    }
    Engine engine(problem, idx, config);
    for (const auto& v : vertices) {
        engine.add_vertex(v);
    }
    Scaled x = engine.zero_start();
    if (start != nullptr) {
        if (start->eta.size() != vertices.size() || start->z.size() != x.z.size()) {
            throw DomainError("inner solve start point has the wrong dimensions");
        }
        x.eta = start->eta;
        for (std::size_t j = 0; j < x.z.size(); ++j) {
            x.z[j] = start->z[j] / engine.scale();
        }
        x.lambda = start->lambda / engine.scale();
    }
    long clock = 0;
    const auto inner = engine.inner(x, config.inner_steps, target / engine.scale(), clock);
    InnerResult out;
    out.eta = inner.best.eta;
    out.z = inner.best.z;
    for (double& v : out.z) {
        v *= engine.scale();
    }
    out.lambda = inner.best.lambda * engine.scale();
    out.y_bar = inner.y_bar;
    out.dual_bound = inner.best_q * engine.scale();
    out.steps = inner.steps;
    return out;
}

InnerResult inner_solve_hull(const SetFunction& f, const std::vector<HullVertex>& vertices,
                             const SolverConfig& config) {
    const CliqueIndex idx(f.size(), config.treewidth);
    return inner_solve_hull(RelaxedProblem{f, std::nullopt, config.budget}, idx, vertices, config);
}

OracleResult graph_oracle(const RelaxedProblem& problem, const CliqueIndex& idx, std::span<const double> y,
                          const SolverConfig& config, std::uint64_t stream) {
    const int n = idx.n();
    if (y.size() != idx.size()) {
        throw DomainError("graph oracle: pseudo-marginal dimension does not match the clique index");
    }
    const SetFunction& f = problem.f;
    std::vector<double> singles(at(n));
    for (int i = 0; i < n; ++i) {
        singles[at(i)] = y[at(i)];
    }

    double s_term = 0.0;
    std::vector<double> s;
    if (problem.h) {
        auto point = base_polytope_greedy(*problem.h, singles);
        s_term = point.value;
        s = std::move(point.s);
    }

    if (idx.k() == 1) {
        double base = 0.0;
        std::vector<double> single(at(n));
        for (int i = 0; i < n; ++i) {
            single[at(i)] = f.singleton(i);
            base += single[at(i)] * y[at(i)];
        }
        auto weight = [&](int i, int j) {
            const Subset pair = Subset::of(n, {i, j});
            return (f(pair) - single[at(i)] - single[at(j)]) * y[idx.position(pair)];
        };
        Graph tree = min_spanning_tree(n, weight);
        double value = base;
        for (const auto& [i, j] : tree.edges()) {
            value += weight(i, j);
        }
        DecomposableGraph dec(std::move(tree));
        NuVector nu = nu_from_decomposable(dec);
        return OracleResult{HullVertex{std::move(dec), std::move(nu), std::move(s)}, value - s_term, true};
    }

    const auto m = moebius_coefficients(f, idx);
    Rng rng(derive_seed(config.seed, stream));
    std::optional<OracleResult> best;
    for (int r = 0; r < config.pool_size; ++r) {
        DecomposableGraph dec = random_ktree(n, idx.k(), rng);
        NuVector nu = nu_from_decomposable(dec);
        double value = -s_term;
        for (const auto& [pos, cover] : sparse_cover(nu, idx)) {
            value += m[pos] * cover * y[pos];
        }
        if (!best || value < best->value) {
            best = OracleResult{HullVertex{std::move(dec), std::move(nu), s}, value, false};
        }
    }
    return *best;
}

OracleResult graph_oracle(const SetFunction& f, std::span<const double> y, int k, const SolverConfig& config) {
    const CliqueIndex idx(f.size(), k);
    return graph_oracle(RelaxedProblem{f, std::nullopt, std::nullopt}, idx, y, config);
}

Subset round_threshold(int n, std::span<const double> y, double theta) {
    if (y.size() < at(n)) {
        throw DomainError("rounding needs one value per element");
    }
    Subset a(n);
    for (int i = 0; i < n; ++i) {
        if (y[at(i)] > theta) {
            a.insert(i);
        }
    }
    return a;
}

SolveResult solve_relaxation(const RelaxedProblem& problem, const SolverConfig& config, RoundingRule rounding) {
    validate(config);
    const int n = problem.f.size();
    const int k = config.treewidth;
    if (n < k + 1) {
        throw DomainError("treewidth " + std::to_string(k) + " needs at least " + std::to_string(k + 1) +
                          " elements, got " + std::to_string(n));
    }
    if (problem.h && problem.h->size() != n) {
        throw DomainError("F and H must share the ground set");
    }
    if (problem.budget && (*problem.budget < 0 || *problem.budget > n)) {
        throw DomainError("budget must lie in [0, n]");
    }
    const auto started = std::chrono::steady_clock::now();
    const CliqueIndex idx(n, k);
    Engine engine(problem, idx, config);

    SolveResult result;
    SaddleState& state = result.state;
    state.oracle_exact = (k == 1);

    const std::vector<double> uniform(at(n), 1.0);
    if (k == 1) {
        state.vertices.push_back(make_vertex(best_tree_structure(problem.f), problem, uniform));
    } else {
        const std::vector<double> ones(idx.size(), 1.0);
        state.vertices.push_back(graph_oracle(problem, idx, ones, config, 0).vertex);
    }
    engine.add_vertex(state.vertices.back());

    Scaled x = engine.zero_start();
    double upper = std::numeric_limits<double>::infinity();
    result.rounded = Subset(n);
    result.rounded_value = objective(problem, result.rounded);
    const int budget = problem.budget.value_or(-1);

    auto consider = [&](Subset a) {
        double value = objective(problem, a);
        a = polish(problem, std::move(a), value);
        if (value > result.rounded_value) {
            result.rounded_value = value;
            result.rounded = std::move(a);
        }
    };
    auto vertex_bound = [&](const HullVertex& v) {
        std::vector<double> unary;
        if (problem.h) {
            unary.resize(at(n));
            for (int i = 0; i < n; ++i) {
                unary[at(i)] = -v.s[at(i)];
            }
        }
        const auto best = maximize_decomposable(v.graph, [&](const Subset& c) { return problem.f(c); }, unary, budget);
        upper = std::min(upper, best.value);
        consider(best.argmax);
    };
    if (config.vertex_bounds) {
        vertex_bound(state.vertices.back());
    }

    long clock = 0;
    for (int iter = 1; iter <= config.max_outer; ++iter) {
        const double target = result.rounded_value / engine.scale();
        auto inner = engine.inner(x, config.inner_steps, target, clock);
        x = inner.best;
        upper = std::min(upper, inner.best_q * engine.scale());
        state.y_bar = std::move(inner.y_bar);

        const double p_bar = engine.mixed_p(state.vertices, x.eta, state.y_bar);
        OracleResult oracle = graph_oracle(problem, idx, state.y_bar, config, static_cast<std::uint64_t>(iter));
        consider(round_point(problem, state.y_bar, config.theta, rounding));

        bool added = false;
        const bool known = std::any_of(state.vertices.begin(), state.vertices.end(),
                                       [&](const HullVertex& v) { return same_vertex(v, oracle.vertex); });
        const bool certified = oracle.value >= p_bar - config.tol * (1.0 + std::abs(p_bar));
        const bool closed = result.rounded_value >= upper - config.tol * (1.0 + std::abs(upper));
        if (!known && !certified && !closed) {
            state.vertices.push_back(std::move(oracle.vertex));
            engine.add_vertex(state.vertices.back());
            x.eta.push_back(0.0);
            if (config.vertex_bounds) {
                vertex_bound(state.vertices.back());
            }
            added = true;
        }

        TraceRecord rec;
        rec.iter = iter;
        rec.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
        rec.dual_bound = upper;
        rec.oracle_value = oracle.value;
        rec.best_primal = result.rounded_value;
        rec.n_vertices = static_cast<int>(state.vertices.size()) - (added ? 1 : 0);
        rec.inner_steps = inner.steps;
        rec.approx_gap = p_bar - oracle.value;
        state.trace.push_back(rec);

        if (certified || result.rounded_value >= upper - config.tol * (1.0 + std::abs(upper))) {
            state.converged = true;
            break;
        }
    }

    state.eta = x.eta;
    state.z = x.z;
    for (double& v : state.z) {
        v *= engine.scale();
    }
    state.lambda = x.lambda * engine.scale();
    result.dual_bound = upper;
    return result;
}

SolveResult solve(const SetFunction& f, const SolverConfig& config) {
    return solve_relaxation(RelaxedProblem{f, std::nullopt, config.budget}, config);
}

} // namespace submax
