// Command-line front end: instance generation, solving, baselines and the
// property suites.
//
// Exit codes: 0 ok, 1 property failure, 2 usage, 3 input, 4 capacity.

#include "submax/baselines.hpp"
#include "submax/errors.hpp"
#include "submax/extensions.hpp"
#include "submax/instance_io.hpp"
#include "submax/instances.hpp"
#include "submax/properties.hpp"
#include "submax/saddle.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace submax;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kInput = 3, kCapacity = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("submax");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    const char* env = std::getenv("SUBMAX_LOG");
    const std::string level = env ? env : "off";
    if (level == "off") {
        spdlog::set_level(spdlog::level::off);
    } else if (level == "info") {
        spdlog::set_level(spdlog::level::info);
    } else if (level == "debug") {
        spdlog::set_level(spdlog::level::debug);
    } else {
        throw UsageError("SUBMAX_LOG must be off, info or debug, got '" + level + "'");
    }
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw std::runtime_error("cannot write " + path);
    }
}

nlohmann::json instance_json(const LoadedInstance& inst, const std::string& path) {
    nlohmann::json j;
    j["path"] = path;
    j["family"] = std::string(to_string(inst.f.family()));
    j["n"] = inst.f.size();
    if (inst.meta) {
        j["generator"] = inst.meta->generator;
        j["seed"] = inst.meta->seed;
        if (inst.meta->generator == "random") {
            j["p"] = inst.meta->p;
        }
    }
    return j;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
    std::string family;
    int n = 0;
    int rows = 0;
    int cols = 0;
    double p = 0.9;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_gen(const GenArgs& args) {
    const GraphFamily family = parse_graph_family(args.family);
    GraphParams params;
    params.n = args.n;
    params.rows = args.rows;
    params.cols = args.cols;
    params.p = args.p;
    const CutInstance inst = gen_instance(family, params, args.seed);
    InstanceMeta meta{args.family, inst.n, args.rows, args.cols, args.p, args.seed};
    const std::string path = args.out.empty() ? args.family + "-" + std::to_string(args.seed) + ".json" : args.out;
    const std::size_t edges = inst.edges.size();
    write_instance(path, make_function(inst), meta);
    std::printf("wrote %s\nn: %d\nedges: %zu\n", path.c_str(), meta.n, edges);
    return kOk;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
    std::string instance;
    SolverConfig config;
    std::optional<int> budget;
    std::string step = "polyak";
    bool no_vertex_bounds = false;
    std::string trace;
    std::string trace_time = "none";
    std::string record;
};

std::string trace_csv(const std::vector<TraceRecord>& trace, bool with_time) {
    std::string out = "iter,time_ms,dual_bound,oracle_value,best_primal,n_vertices,inner_steps\n";
    for (const auto& r : trace) {
        out += std::to_string(r.iter) + "," + (with_time ? format_real(r.time_ms) : std::string("0")) + "," +
               format_real(r.dual_bound) + "," + format_real(r.oracle_value) + "," + format_real(r.best_primal) + "," +
               std::to_string(r.n_vertices) + "," + std::to_string(r.inner_steps) + "\n";
    }
    return out;
}

int cmd_solve(SolveArgs args) {
    if (args.step == "polyak") {
        args.config.step_rule = StepRule::polyak;
    } else if (args.step == "diminishing") {
        args.config.step_rule = StepRule::diminishing;
    } else {
        throw UsageError("--step must be polyak or diminishing");
    }
    if (args.trace_time != "none" && args.trace_time != "wall") {
        throw UsageError("--trace-time must be none or wall");
    }
    args.config.vertex_bounds = !args.no_vertex_bounds;
    validate(args.config);

    const auto started = std::chrono::steady_clock::now();
    const LoadedInstance inst = read_instance(args.instance);
    spdlog::info("loaded {} instance with n = {}", to_string(inst.f.family()), inst.f.size());

    std::string algorithm;
    SolveResult result;
    if (const auto* diff = as_difference(inst.f)) {
        algorithm = "saddle-difference";
        args.config.budget = args.budget;
        result = solve_difference(*diff, args.config);
    } else if (args.budget) {
        algorithm = "saddle-cardinality";
        result = solve_cardinality(inst.f, *args.budget, args.config);
    } else {
        algorithm = "saddle";
        result = solve(inst.f, args.config);
    }
    const double wall = elapsed_ms(started);
    for (const auto& r : result.state.trace) {
        spdlog::debug("iter {}: dual {:.9g}, oracle {:.9g}, primal {:.9g}, vertices {}, approx gap {:.3g}", r.iter,
                      r.dual_bound, r.oracle_value, r.best_primal, r.n_vertices, r.approx_gap);
    }

    if (!args.trace.empty()) {
        write_text(args.trace, trace_csv(result.state.trace, args.trace_time == "wall"));
    }
    const auto iterations = result.state.trace.size();
    std::printf("algorithm: %s\n", algorithm.c_str());
    std::printf("dual bound: %s\n", format_real(result.dual_bound).c_str());
    std::printf("rounded value: %s\n", format_real(result.rounded_value).c_str());
    std::printf("rounded set: %s (0x%s)\n", result.rounded.str().c_str(), result.rounded.hex().c_str());
    std::printf("gap: %s\n", format_real(result.dual_bound - result.rounded_value).c_str());
    std::printf("iterations: %zu (%s)\n", iterations, result.state.converged ? "converged" : "budget reached");
    if (!result.state.oracle_exact) {
        std::printf("note: treewidth > 1 uses a sampled oracle; the method may stop early\n");
    }

    if (!args.record.empty()) {
        nlohmann::json rec;
        rec["instance"] = instance_json(inst, args.instance);
        rec["algorithm"] = algorithm;
        rec["config"] = {{"treewidth", args.config.treewidth},   {"max_outer", args.config.max_outer},
                         {"inner_steps", args.config.inner_steps}, {"tol", args.config.tol},
                         {"theta", args.config.theta},           {"seed", args.config.seed},
                         {"step", args.step},                    {"vertex_bounds", args.config.vertex_bounds}};
        if (args.budget) {
            rec["config"]["budget"] = *args.budget;
        }
        rec["result"] = {{"bound", result.dual_bound},
                         {"value", result.rounded_value},
                         {"subset", result.rounded.hex()},
                         {"iterations", iterations},
                         {"converged", result.state.converged}};
        rec["trace"] = args.trace;
        rec["wall_ms"] = wall;
        write_text(args.record, rec.dump(2) + "\n");
    }
    return kOk;
}

// ---------------------------------------------------------------- baseline

struct BaselineArgs {
    std::string instance;
    std::string algo;
    std::uint64_t seed = 0;
    int runs = 1;
    double epsilon = 0.01;
    std::string record;
};

int cmd_baseline(const BaselineArgs& args) {
    if (args.runs < 1) {
        throw UsageError("--runs must be positive");
    }
    const auto started = std::chrono::steady_clock::now();
    const LoadedInstance inst = read_instance(args.instance);
    const SetFunction& f = inst.f;

    nlohmann::json result;
    if (args.algo == "brute") {
        const Maximizer m = brute_force_max(f);
        std::printf("value: %s\nset: %s (0x%s)\n", format_real(m.value).c_str(), m.set.str().c_str(), m.set.hex().c_str());
        result = {{"value", m.value}, {"subset", m.set.hex()}};
    } else if (args.algo == "dg-det") {
        const Maximizer m = double_greedy(f, DoubleGreedyMode::deterministic);
        std::printf("value: %s\nset: %s (0x%s)\n", format_real(m.value).c_str(), m.set.str().c_str(), m.set.hex().c_str());
        result = {{"value", m.value}, {"subset", m.set.hex()}};
    } else if (args.algo == "dg-rand" || args.algo == "ls") {
        std::vector<double> values;
        Subset best(f.size());
        double best_value = -INFINITY;
        for (int r = 0; r < args.runs; ++r) {
            const std::uint64_t seed = derive_seed(args.seed, static_cast<std::uint64_t>(r));
            double v = 0.0;
            Subset s(f.size());
            if (args.algo == "dg-rand") {
                const Maximizer m = double_greedy(f, DoubleGreedyMode::randomized, seed);
                v = m.value;
                s = m.set;
            } else {
                const LocalSearchResult m = local_search(f, args.epsilon, seed);
                v = m.value;
                s = m.set;
            }
            values.push_back(v);
            if (v > best_value) {
                best_value = v;
                best = s;
            }
        }
        double mean = 0.0;
        for (double v : values) {
            mean += v;
        }
        mean /= static_cast<double>(values.size());
        double var = 0.0;
        for (double v : values) {
            var += (v - mean) * (v - mean);
        }
        const double stddev = values.size() > 1 ? std::sqrt(var / static_cast<double>(values.size() - 1)) : 0.0;
        std::printf("value: %s +- %s (%d runs)\n", format_real(mean).c_str(), format_real(stddev).c_str(), args.runs);
        std::printf("best: %s at %s (0x%s)\n", format_real(best_value).c_str(), best.str().c_str(), best.hex().c_str());
        result = {{"value", mean}, {"stddev", stddev}, {"best", best_value}, {"subset", best.hex()}, {"runs", args.runs}};
    } else {
        throw UsageError("--algo must be brute, dg-det, dg-rand or ls");
    }

    if (!args.record.empty()) {
        nlohmann::json rec;
        rec["instance"] = instance_json(inst, args.instance);
        rec["algorithm"] = args.algo;
        rec["config"] = {{"seed", args.seed}, {"runs", args.runs}, {"epsilon", args.epsilon}};
        rec["result"] = result;
        rec["trace"] = "";
        rec["wall_ms"] = elapsed_ms(started);
        write_text(args.record, rec.dump(2) + "\n");
    }
    return kOk;
}

// ---------------------------------------------------------------- check

struct CheckArgs {
    std::string props = "all";
    int n = 6;
    int trials = 100;
    std::uint64_t seed = 1;
};

int cmd_check(const CheckArgs& args) {
    if (args.n < 2 || args.n > 8) {
        throw UsageError("--n must lie in [2, 8]");
    }
    if (args.trials < 1) {
        throw UsageError("--trials must be positive");
    }
    std::vector<std::string> names;
    if (args.props == "all") {
        names = property_names();
    } else {
        std::stringstream list(args.props);
        std::string name;
        while (std::getline(list, name, ',')) {
            bool known = false;
            for (const auto& p : property_names()) {
                known = known || p == name;
            }
            if (!known) {
                throw UsageError("unknown property '" + name + "' (expected p1..p8 or all)");
            }
            names.push_back(name);
        }
    }
    bool ok = true;
    for (const auto& name : names) {
        const PropertyReport report = run_property(name, args.n, args.trials, args.seed);
        std::printf("%s: %d/%d  %s\n", report.name.c_str(), report.passed, report.trials, report.summary.c_str());
        for (const auto& failure : report.failures) {
            std::printf("  %s\n", failure.c_str());
        }
        ok = ok && report.ok();
    }
    return ok ? kOk : kCheckFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Submodular maximization bounds from decomposable graphs"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic max-cut instance");
    gen_cmd->add_option("--family", gen.family, "tree, grid or random")->required();
    gen_cmd->add_option("--n", gen.n, "Number of vertices (tree, random)");
    gen_cmd->add_option("--rows", gen.rows, "Grid rows");
    gen_cmd->add_option("--cols", gen.cols, "Grid columns");
    gen_cmd->add_option("--p", gen.p, "Edge probability (random)");
    gen_cmd->add_option("--seed", gen.seed, "Seed");
    gen_cmd->add_option("-o,--output", gen.out, "Output path (default <family>-<seed>.json)");

    SolveArgs solve_args;
    int budget = -1;
    auto* solve_cmd = app.add_subcommand("solve", "Bound max F by the simplicial saddle-point method");
    solve_cmd->add_option("instance", solve_args.instance, "Instance file")->required();
    solve_cmd->add_option("--treewidth", solve_args.config.treewidth, "Junction-tree width k")->capture_default_str();
    solve_cmd->add_option("--max-outer", solve_args.config.max_outer, "Outer iterations")->capture_default_str();
    solve_cmd->add_option("--inner-steps", solve_args.config.inner_steps, "Subgradient steps per inner solve")
        ->capture_default_str();
    solve_cmd->add_option("--tol", solve_args.config.tol, "Relative stopping tolerance")->capture_default_str();
    solve_cmd->add_option("--theta", solve_args.config.theta, "Rounding threshold")->capture_default_str();
    solve_cmd->add_option("--seed", solve_args.config.seed, "Seed")->capture_default_str();
    solve_cmd->add_option("--budget", budget, "Cardinality budget m (|A| <= m)");
    solve_cmd->add_option("--pool", solve_args.config.pool_size, "Random junction trees per oracle call (k > 1)")
        ->capture_default_str();
    solve_cmd->add_option("--step", solve_args.step, "Step rule: polyak or diminishing")->capture_default_str();
    solve_cmd->add_flag("--no-vertex-bounds", solve_args.no_vertex_bounds, "Skip exact per-vertex maxima");
    solve_cmd->add_option("--trace", solve_args.trace, "CSV trace output");
    solve_cmd->add_option("--trace-time", solve_args.trace_time, "time_ms column: none (zeros) or wall")
        ->capture_default_str();
    solve_cmd->add_option("--record", solve_args.record, "Experiment record (JSON) output");

    BaselineArgs base;
    auto* base_cmd = app.add_subcommand("baseline", "Run a reference maximizer");
    base_cmd->add_option("instance", base.instance, "Instance file")->required();
    base_cmd->add_option("--algo", base.algo, "brute, dg-det, dg-rand or ls")->required();
    base_cmd->add_option("--seed", base.seed, "Seed")->capture_default_str();
    base_cmd->add_option("--runs", base.runs, "Runs for randomized algorithms")->capture_default_str();
    base_cmd->add_option("--epsilon", base.epsilon, "Local search improvement factor")->capture_default_str();
    base_cmd->add_option("--record", base.record, "Experiment record (JSON) output");

    CheckArgs check;
    auto* check_cmd = app.add_subcommand("check", "Run randomized property suites");
    check_cmd->add_option("--props", check.props, "Comma list of p1..p8, or all")->capture_default_str();
    check_cmd->add_option("--n", check.n, "Ground set size (2..8)")->capture_default_str();
    check_cmd->add_option("--trials", check.trials, "Trials per property")->capture_default_str();
    check_cmd->add_option("--seed", check.seed, "Seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        setup_logging();
        if (*gen_cmd) {
            return cmd_gen(gen);
        }
        if (*solve_cmd) {
            if (budget >= 0) {
                solve_args.budget = budget;
            } else if (solve_cmd->count("--budget") > 0) {
                throw UsageError("--budget must be non-negative");
            }
            return cmd_solve(solve_args);
        }
        if (*base_cmd) {
            return cmd_baseline(base);
        }
        return cmd_check(check);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kUsage;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return kInput;
    } catch (const CapacityError& e) {
        std::fprintf(stderr, "capacity error: %s\n", e.what());
        return kCapacity;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "invalid argument: %s\n", e.what());
        return kUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInput;
    }
}
