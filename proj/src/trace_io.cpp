#include "catenary/trace_io.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "catenary/errors.hpp"
#include "catenary/revolution.hpp"

namespace catenary {

namespace {

void append_number(std::string& out, double x) {
    char buf[40];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", x);
    out.append(buf, static_cast<std::size_t>(n));
}

double parse_number(std::string_view field, std::size_t line) {
    const std::string s(field);
    char* end = nullptr;
    errno = 0;
    const double x = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
        throw IOError("line " + std::to_string(line) + ": bad number '" + s + "'");
    }
    return x;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

}  // namespace

TraceTable tabulate(const SurfaceSpec& spec, double alpha, const Trace& trace, bool embed) {
    TraceTable t;
    t.termination = trace.termination;
    t.stats = trace.stats;
    t.vertical_tangent = trace.vertical_tangent;
    t.has_clairaut = spec.rotationally_symmetric();
    t.rows.reserve(trace.samples.size());
    for (const auto& smp : trace.samples) {
        TraceRow row{smp, std::nullopt, std::nullopt};
        if (t.has_clairaut) {
            row.clairaut_c = clairaut_constant(spec, alpha, {smp.u, smp.v, smp.phi, smp.s});
        }
        t.rows.push_back(row);
    }
    if (embed && spec.is_revolution()) {
        try {
            std::vector<std::array<double, 3>> pts;
            pts.reserve(t.rows.size());
            for (const auto& row : t.rows) {
                pts.push_back(embed_revolution(spec, row.sample.u, row.sample.v));
            }
            for (std::size_t i = 0; i < pts.size(); ++i) {
                t.rows[i].xyz = pts[i];
            }
            t.has_embedding = true;
        } catch (const NotRealizableError&) {
            t.has_embedding = false;
        }
    }
    return t;
}

std::string to_csv(const TraceTable& table) {
    std::string out = "s,u,v,phi,kappa,residual";
    if (table.has_clairaut) {
        out += ",clairaut_c";
    }
    if (table.has_embedding) {
        out += ",x,y,z";
    }
    out += '\n';
    for (const auto& row : table.rows) {
        const auto& s = row.sample;
        append_number(out, s.s);
        for (const double x : {s.u, s.v, s.phi, s.kappa, s.residual}) {
            out += ',';
            append_number(out, x);
        }
        if (table.has_clairaut) {
            out += ',';
            append_number(out, row.clairaut_c.value_or(0.0));
        }
        if (table.has_embedding) {
            for (const double x : row.xyz.value_or(std::array<double, 3>{})) {
                out += ',';
                append_number(out, x);
            }
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const TraceTable& table) {
    using nlohmann::json;
    json samples = json::array();
    for (const auto& row : table.rows) {
        const auto& s = row.sample;
        json j = {{"s", s.s},     {"u", s.u},         {"v", s.v},
                  {"phi", s.phi}, {"kappa", s.kappa}, {"residual", s.residual}};
        if (row.clairaut_c) {
            j["clairaut_c"] = *row.clairaut_c;
        }
        if (row.xyz) {
            j["x"] = (*row.xyz)[0];
            j["y"] = (*row.xyz)[1];
            j["z"] = (*row.xyz)[2];
        }
        samples.push_back(std::move(j));
    }
    json doc = {
        {"termination", std::string(to_string(table.termination))},
        {"vertical_tangent", table.vertical_tangent},
        {"stats",
         {{"accepted_steps", table.stats.accepted_steps},
          {"rejected_steps", table.stats.rejected_steps},
          {"rhs_evals", table.stats.rhs_evals},
          {"max_abs_residual", table.stats.max_abs_residual}}},
        {"samples", std::move(samples)},
    };
    return doc.dump(2) + "\n";
}

TraceTable parse_csv(std::string_view text) {
    TraceTable t;
    std::size_t pos = 0, line_no = 0;
    auto next_line = [&]() -> std::optional<std::string_view> {
        if (pos >= text.size()) {
            return std::nullopt;
        }
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            nl = text.size();
        }
        auto line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        pos = nl + 1;
        ++line_no;
        return line;
    };

    const auto header = next_line();
    if (!header) {
        throw IOError("empty trace CSV");
    }
    const auto cols = split(*header);
    const std::vector<std::string_view> base = {"s", "u", "v", "phi", "kappa", "residual"};
    if (cols.size() < base.size() || !std::equal(base.begin(), base.end(), cols.begin())) {
        throw IOError("trace CSV header must start with s,u,v,phi,kappa,residual");
    }
    std::size_t i = base.size();
    if (i < cols.size() && cols[i] == "clairaut_c") {
        t.has_clairaut = true;
        ++i;
    }
    if (i + 3 == cols.size() && cols[i] == "x" && cols[i + 1] == "y" && cols[i + 2] == "z") {
        t.has_embedding = true;
        i += 3;
    }
    if (i != cols.size()) {
        throw IOError("unexpected trace CSV columns");
    }

    while (const auto line = next_line()) {
        if (line->empty()) {
            continue;
        }
        const auto f = split(*line);
        if (f.size() != cols.size()) {
            throw IOError("line " + std::to_string(line_no) + ": expected " +
                          std::to_string(cols.size()) + " fields");
        }
        TraceRow row{
            {parse_number(f[0], line_no), parse_number(f[1], line_no), parse_number(f[2], line_no),
             parse_number(f[3], line_no), parse_number(f[4], line_no), parse_number(f[5], line_no)},
            std::nullopt,
            std::nullopt};
        std::size_t k = base.size();
        if (t.has_clairaut) {
            row.clairaut_c = parse_number(f[k++], line_no);
        }
        if (t.has_embedding) {
            row.xyz =
                std::array<double, 3>{parse_number(f[k], line_no), parse_number(f[k + 1], line_no),
                                      parse_number(f[k + 2], line_no)};
        }
        t.rows.push_back(row);
    }
    return t;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IOError("cannot open " + tmp.string() + " for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            throw IOError("write to " + tmp.string() + " failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IOError("cannot move output into " + path.string());
    }
}

void emit_trace(const TraceTable& table, TraceFormat format, const std::filesystem::path& path) {
    if (table.rows.empty()) {
        throw ConfigError("refusing to write an empty trace");
    }
    write_atomic(path, format == TraceFormat::csv ? to_csv(table) : to_json(table));
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IOError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace catenary
