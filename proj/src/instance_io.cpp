#include "submax/instance_io.hpp"

#include "submax/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace submax {

namespace {

using nlohmann::json;

void require_finite(double v, const std::string& what) {
    if (!std::isfinite(v)) {
        throw DomainError(what + " is not finite");
    }
}

std::string real_list(const std::vector<double>& values, const std::string& what) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        require_finite(values[i], what);
        out += (i ? "," : "") + format_real(values[i]);
    }
    return out + "]";
}

std::string int_list(const std::vector<int>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        out += (i ? "," : "") + std::to_string(values[i]);
    }
    return out + "]";
}

std::string body(const SetFunction& f, const std::string& indent) {
    const std::string n = std::to_string(f.size());
    if (const auto* cut = as_cut(f)) {
        std::string out = "{\"type\":\"cut\",\"n\":" + n + ",\"edges\":[";
        for (std::size_t e = 0; e < cut->edges.size(); ++e) {
            const auto& edge = cut->edges[e];
            require_finite(edge.weight, "edge weight");
            out += (e ? ",\n" : "\n") + indent + "  [" + std::to_string(edge.i) + "," + std::to_string(edge.j) + "," +
                   format_real(edge.weight) + "]";
        }
        return out + (cut->edges.empty() ? "]}" : "\n" + indent + "]}");
    }
    if (const auto* cov = as_coverage(f)) {
        std::string out = "{\"type\":\"coverage\",\"n\":" + n + ",\"universe\":" + std::to_string(cov->universe) +
                          ",\"weights\":" + real_list(cov->weights, "coverage weight") + ",\"sets\":[";
        for (std::size_t s = 0; s < cov->sets.size(); ++s) {
            out += (s ? "," : "") + int_list(cov->sets[s]);
        }
        return out + "]}";
    }
    if (const auto* mod = as_modular(f)) {
        return "{\"type\":\"modular\",\"n\":" + n + ",\"weights\":" + real_list(mod->weights, "modular weight") + "}";
    }
    if (const auto* ent = as_entropy(f)) {
        return "{\"type\":\"entropy\",\"n\":" + n + ",\"cardinalities\":" + int_list(ent->cardinalities) +
               ",\"joint\":" + real_list(ent->joint, "probability") + "}";
    }
    if (const auto* diff = as_difference(f)) {
        return "{\"type\":\"difference\",\"n\":" + n + ",\n" + indent + " \"f\":" + body(diff->f, indent + "  ") +
               ",\n" + indent + " \"h\":" + body(diff->h, indent + "  ") + "}";
    }
    throw DomainError("functions of family '" + std::string(to_string(f.family())) + "' cannot be serialized");
}

// Byte offset -> 1-based line number.
std::size_t line_of(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

const json& field(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) {
        throw ParseError("field '" + path + "'", "expected an object");
    }
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError("field '" + path + (path.empty() ? "" : ".") + key + "'", "missing");
    }
    return *it;
}

std::string child(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

int as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) {
        throw ParseError("field '" + path + "'", "expected an integer");
    }
    const auto x = v.get<std::int64_t>();
    if (x < INT32_MIN || x > INT32_MAX) {
        throw ParseError("field '" + path + "'", "integer out of range");
    }
    return static_cast<int>(x);
}

double as_real(const json& v, const std::string& path) {
    if (!v.is_number()) {
        throw ParseError("field '" + path + "'", "expected a number");
    }
    return v.get<double>();
}

const json& as_array(const json& v, const std::string& path) {
    if (!v.is_array()) {
        throw ParseError("field '" + path + "'", "expected an array");
    }
    return v;
}

std::vector<double> real_array(const json& v, const std::string& path) {
    std::vector<double> out;
    for (std::size_t i = 0; i < as_array(v, path).size(); ++i) {
        out.push_back(as_real(v[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::vector<int> int_array(const json& v, const std::string& path) {
    std::vector<int> out;
    for (std::size_t i = 0; i < as_array(v, path).size(); ++i) {
        out.push_back(as_int(v[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

// Domain violations inside a payload are reported against the payload.
template <typename Fn>
auto checked(const std::string& path, Fn&& fn) {
    try {
        return fn();
    } catch (const DomainError& e) {
        throw ParseError("field '" + (path.empty() ? std::string("(root)") : path) + "'", e.what());
    }
}

SetFunction parse_function(const json& obj, const std::string& path) {
    const json& type_field = field(obj, "type", path);
    if (!type_field.is_string()) {
        throw ParseError("field '" + child(path, "type") + "'", "expected a string");
    }
    const std::string type = type_field.get<std::string>();
    const int n = as_int(field(obj, "n", path), child(path, "n"));
    if (n < 0) {
        throw ParseError("field '" + child(path, "n") + "'", "must be non-negative");
    }
    auto expect_length = [&](std::size_t got, const std::string& key) {
        if (got != static_cast<std::size_t>(n)) {
            throw ParseError("field '" + child(path, key) + "'",
                             "expected " + std::to_string(n) + " entries, got " + std::to_string(got));
        }
    };

    if (type == "cut") {
        CutInstance inst;
        inst.n = n;
        const std::string ep = child(path, "edges");
        const json& edges = as_array(field(obj, "edges", path), ep);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const std::string at = ep + "[" + std::to_string(e) + "]";
            const json& triple = as_array(edges[e], at);
            if (triple.size() != 3) {
                throw ParseError("field '" + at + "'", "expected [i, j, weight]");
            }
            const WeightedEdge edge{as_int(triple[0], at + "[0]"), as_int(triple[1], at + "[1]"),
                                    as_real(triple[2], at + "[2]")};
            checked(at, [&] { validate(CutInstance{n, {edge}}); });
            inst.edges.push_back(edge);
        }
        return checked(ep, [&] { return make_function(std::move(inst)); });
    }
    if (type == "coverage") {
        CoverageInstance inst;
        inst.universe = as_int(field(obj, "universe", path), child(path, "universe"));
        inst.weights = real_array(field(obj, "weights", path), child(path, "weights"));
        const std::string sp = child(path, "sets");
        const json& sets = as_array(field(obj, "sets", path), sp);
        for (std::size_t s = 0; s < sets.size(); ++s) {
            inst.sets.push_back(int_array(sets[s], sp + "[" + std::to_string(s) + "]"));
        }
        expect_length(inst.sets.size(), "sets");
        return checked(path, [&] { return make_function(std::move(inst)); });
    }
    if (type == "modular") {
        ModularInstance inst;
        inst.weights = real_array(field(obj, "weights", path), child(path, "weights"));
        expect_length(inst.weights.size(), "weights");
        return checked(path, [&] { return make_function(std::move(inst)); });
    }
    if (type == "entropy") {
        EntropyInstance inst;
        inst.cardinalities = int_array(field(obj, "cardinalities", path), child(path, "cardinalities"));
        inst.joint = real_array(field(obj, "joint", path), child(path, "joint"));
        expect_length(inst.cardinalities.size(), "cardinalities");
        return checked(path, [&] { return make_function(std::move(inst)); });
    }
    if (type == "difference") {
        SetFunction f = parse_function(field(obj, "f", path), child(path, "f"));
        SetFunction h = parse_function(field(obj, "h", path), child(path, "h"));
        if (f.size() != n || h.size() != n) {
            throw ParseError("field '" + child(path, "n") + "'", "f and h must both have n elements");
        }
        return checked(path, [&] { return make_function(DifferenceInstance{f, h}); });
    }
    throw ParseError("field '" + child(path, "type") + "'", "unknown instance type '" + type + "'");
}

} // namespace

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_instance(const SetFunction& f, const std::optional<InstanceMeta>& meta) {
    std::string out = body(f, "");
    if (meta) {
        std::string m = ",\n \"meta\":{\"generator\":\"" + meta->generator + "\",\"seed\":" + std::to_string(meta->seed);
        if (meta->generator == "grid") {
            m += ",\"rows\":" + std::to_string(meta->rows) + ",\"cols\":" + std::to_string(meta->cols);
        } else {
            m += ",\"n\":" + std::to_string(meta->n);
        }
        if (meta->generator == "random") {
            m += ",\"p\":" + format_real(meta->p);
        }
        out.insert(out.size() - 1, m + "}");
    }
    return out + "\n";
}

LoadedInstance parse_instance(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError("line " + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)), e.what());
    }
    LoadedInstance out{parse_function(doc, ""), std::nullopt};
    if (const auto it = doc.find("meta"); it != doc.end()) {
        const json& m = *it;
        InstanceMeta meta;
        const json& gen = field(m, "generator", "meta");
        if (!gen.is_string()) {
            throw ParseError("field 'meta.generator'", "expected a string");
        }
        meta.generator = gen.get<std::string>();
        const json& seed = field(m, "seed", "meta");
        if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
            throw ParseError("field 'meta.seed'", "expected a non-negative integer");
        }
        meta.seed = seed.get<std::uint64_t>();
        if (m.contains("n")) {
            meta.n = as_int(m["n"], "meta.n");
        }
        if (m.contains("rows")) {
            meta.rows = as_int(m["rows"], "meta.rows");
        }
        if (m.contains("cols")) {
            meta.cols = as_int(m["cols"], "meta.cols");
        }
        if (m.contains("p")) {
            meta.p = as_real(m["p"], "meta.p");
        }
        out.meta = meta;
    }
    return out;
}

LoadedInstance read_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(path, "cannot open instance file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_instance(buffer.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.where(), std::string(e.what()).substr(e.where().size() + 2));
    }
}

void write_instance(const std::string& path, const SetFunction& f, const std::optional<InstanceMeta>& meta) {
    const std::string text = format_instance(f, meta);
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw std::runtime_error("cannot write " + path);
    }
}

} // namespace submax
