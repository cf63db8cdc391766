#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catenary/integrator.hpp"
#include "catenary/metric.hpp"

namespace catenary {

struct TraceRow {
    TraceSample sample;
    std::optional<double> clairaut_c;
    std::optional<std::array<double, 3>> xyz;
};

// A trace with the optional export columns filled in.
struct TraceTable {
    std::vector<TraceRow> rows;
    Termination termination = Termination::reached_smax;
    TraceStats stats;
    bool vertical_tangent = false;
    bool has_clairaut = false;
    bool has_embedding = false;
};

// The Clairaut column is added for rotationally symmetric metrics; x, y, z
// when embed is set and every sample lies on a realizable part of a surface
// of revolution.
[[nodiscard]] TraceTable tabulate(const SurfaceSpec& spec, double alpha, const Trace& trace,
                                  bool embed = false);

// Header s,u,v,phi,kappa,residual[,clairaut_c][,x,y,z]; 17 significant digits.
[[nodiscard]] std::string to_csv(const TraceTable& table);
[[nodiscard]] std::string to_json(const TraceTable& table);

// Inverse of to_csv (termination and stats are not part of the CSV).
// IOError on malformed input.
[[nodiscard]] TraceTable parse_csv(std::string_view text);

enum class TraceFormat { csv, json };

// Writes to a temporary file next to path and renames it into place.
void write_atomic(const std::filesystem::path& path, std::string_view content);

void emit_trace(const TraceTable& table, TraceFormat format, const std::filesystem::path& path);

[[nodiscard]] std::string read_file(const std::filesystem::path& path);

}  // namespace catenary
