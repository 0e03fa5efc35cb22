#pragma once

#include "submax/instances.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace submax {

/// Generator provenance stored under "meta".
struct InstanceMeta {
    std::string generator; // tree, grid or random
    int n = 0;
    int rows = 0;
    int cols = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
};

struct LoadedInstance {
    SetFunction f;
    std::optional<InstanceMeta> meta;
};

/// One JSON object per instance:
///   {"type":"cut","n":3,"edges":[[0,1,1.0],...]}
///   {"type":"coverage","n":2,"universe":3,"weights":[...],"sets":[[0,1],[2]]}
///   {"type":"modular","n":3,"weights":[1,-2,3]}
///   {"type":"entropy","n":2,"cardinalities":[2,2],"joint":[...]}
///   {"type":"difference","n":3,"f":{...},"h":{...}}
/// Reals are written with 17 significant digits so they read back exactly.
/// Throws DomainError for custom functions, which have no payload.
std::string format_instance(const SetFunction& f, const std::optional<InstanceMeta>& meta = std::nullopt);

/// Throws ParseError naming the line (syntax) or field (schema) at fault.
LoadedInstance parse_instance(std::string_view text);

/// Throws ParseError naming the path when the file cannot be read.
LoadedInstance read_instance(const std::string& path);
void write_instance(const std::string& path, const SetFunction& f,
                    const std::optional<InstanceMeta>& meta = std::nullopt);

/// %.17g.
std::string format_real(double v);

} // namespace submax
