#include "catenary/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <optional>
#include <ostream>

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>
#include <CLI11.hpp>
#include <json.hpp>

#include "catenary/errors.hpp"
#include "catenary/integrator.hpp"
#include "catenary/metric.hpp"
#include "catenary/revolution.hpp"
#include "catenary/trace_io.hpp"
#include "catenary/validation.hpp"

namespace catenary::cli {

namespace {

using nlohmann::json;

struct Config {
    std::string surface;
    std::vector<std::string> params;
    std::string profile;
    std::string ruled;
    double alpha = 1.0;
    double tol = 1e-9;
    std::string out;
    std::string format = "csv";
    bool embed = false;
    double max_step = HUGE_VAL;

    double u0 = 1.0;
    double v0 = 0.0;
    double phi0 = std::acos(-1.0) / 2;
    double smax = 10.0;

    double du0 = 0.0;
    double v_start = 0.0;
    double v_end = 1.0;

    std::optional<double> c;
    double u_star = 0.0;
    std::string u1 = "inf";
    bool all = false;
};

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
    auto log = std::make_shared<spdlog::logger>("catenary", sink);
    log->set_pattern("%l: %v");
    const char* env = std::getenv("CATENARY_LOG");
    const std::string level = env ? env : "error";
    if (level == "debug") {
        log->set_level(spdlog::level::debug);
    } else if (level == "info") {
        log->set_level(spdlog::level::info);
    } else {
        log->set_level(spdlog::level::err);
    }
    return log;
}

double parse_double(const std::string& text, const std::string& what) {
    char* end = nullptr;
    const double x = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || std::isnan(x)) {
        throw ConfigError("bad value for " + what + ": '" + text + "'");
    }
    return x;
}

ParamMap parse_params(const std::vector<std::string>& items) {
    ParamMap out;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ConfigError("--param expects key=value, got '" + item + "'");
        }
        out[item.substr(0, eq)] = parse_double(item.substr(eq + 1), "--param " + item);
    }
    return out;
}

SurfaceSpec build_surface(const Config& cfg, spdlog::logger& log) {
    const int sources = !cfg.surface.empty() + !cfg.profile.empty() + !cfg.ruled.empty();
    if (sources != 1) {
        throw ConfigError("give exactly one of --surface, --profile, --ruled");
    }
    std::optional<SurfaceSpec> spec;
    if (!cfg.profile.empty()) {
        if (!cfg.params.empty()) {
            throw ConfigError("--param does not apply to --profile");
        }
        const auto samples = read_profile_csv(cfg.profile);
        spec = tabulated_profile(samples);
    } else if (!cfg.ruled.empty()) {
        if (!cfg.params.empty()) {
            throw ConfigError("--param does not apply to --ruled");
        }
        const auto samples = read_ruled_csv(cfg.ruled);
        spec = ruled_surface(samples);
    } else {
        spec = catalog_surface(cfg.surface, parse_params(cfg.params));
    }
    if (spec->realizability_warning()) {
        log.warn("{}: |a'| > 1 somewhere; the metric is abstract, not a Euclidean surface",
                 spec->identifier());
    }
    log.debug("surface {}", spec->identifier());
    return *spec;
}

void check_common(const Config& cfg) {
    if (!std::isfinite(cfg.alpha)) {
        throw ConfigError("--alpha must be finite");
    }
    if (!(cfg.tol >= 1e-12 && cfg.tol <= 1e-3)) {
        throw ConfigError("--tol must lie in [1e-12, 1e-3]");
    }
}

TraceFormat parse_format(const std::string& f) {
    if (f == "csv") {
        return TraceFormat::csv;
    }
    if (f == "json") {
        return TraceFormat::json;
    }
    throw ConfigError("--format must be csv or json");
}

void deliver(const Config& cfg, const std::string& text, std::ostream& out) {
    if (cfg.out.empty()) {
        out << text;
    } else {
        write_atomic(cfg.out, text);
    }
}

void emit(const Config& cfg, const TraceTable& table, std::ostream& out) {
    const TraceFormat fmt = parse_format(cfg.format);
    if (table.rows.empty()) {
        throw ConfigError("trace is empty");
    }
    deliver(cfg, fmt == TraceFormat::csv ? to_csv(table) : to_json(table), out);
}

TraceOptions trace_options(const Config& cfg) {
    TraceOptions opt;
    if (!(cfg.max_step > 0.0)) {
        throw ConfigError("--max-step must be positive");
    }
    opt.max_step = cfg.max_step;
    return opt;
}

int cmd_catalog(const Config& cfg, std::ostream& out) {
    json list = json::array();
    std::string text;
    for (const SurfaceKind k : catalog_kinds()) {
        ParamMap p;
        if (k == SurfaceKind::hyperbolic) {
            p["r"] = 1.0;
        } else if (k == SurfaceKind::binormal) {
            p["tau"] = 1.0;
        }
        const SurfaceSpec s = catalog_surface(k, p);
        const Domain& d = s.domain();
        list.push_back({{"kind", std::string(to_string(k))},
                        {"example", s.identifier()},
                        {"u_min", d.u_min},
                        {"u_max", std::isfinite(d.u_max) ? json(d.u_max) : json("inf")},
                        {"rotationally_symmetric", s.rotationally_symmetric()}});
        char line[160];
        std::snprintf(line, sizeof line, "%-11s u in (%g, %g)%s  e.g. %s\n",
                      std::string(to_string(k)).c_str(), d.u_min, d.u_max,
                      s.rotationally_symmetric() ? "  rotational" : "", s.identifier().c_str());
        text += line;
    }
    deliver(cfg, cfg.format == "json" ? list.dump(2) + "\n" : text, out);
    return ok;
}

int cmd_trace(const Config& cfg, spdlog::logger& log, std::ostream& out) {
    check_common(cfg);
    const SurfaceSpec spec = build_surface(cfg, log);
    const Trace tr = trace_catenary(spec, cfg.alpha, {cfg.u0, cfg.v0, cfg.phi0, 0.0}, cfg.smax,
                                    cfg.tol, trace_options(cfg));
    log.info("{} samples, termination {}, max |residual| {:.3g}", tr.samples.size(),
             to_string(tr.termination), tr.stats.max_abs_residual);
    const TraceTable table = tabulate(spec, cfg.alpha, tr, cfg.embed);
    if (cfg.embed && !table.has_embedding) {
        log.warn("embedding columns omitted: surface is not a realizable surface of revolution");
    }
    emit(cfg, table, out);
    return ok;
}

int cmd_trace_graph(const Config& cfg, spdlog::logger& log, std::ostream& out) {
    check_common(cfg);
    const SurfaceSpec spec = build_surface(cfg, log);
    const Trace tr = trace_graph(spec, cfg.alpha, cfg.u0, cfg.du0, {cfg.v_start, cfg.v_end},
                                 cfg.tol, trace_options(cfg));
    log.info("{} samples, termination {}", tr.samples.size(), to_string(tr.termination));
    if (tr.vertical_tangent) {
        log.warn("stopped at a vertical tangent; the curve continues along a meridian");
    }
    emit(cfg, tabulate(spec, cfg.alpha, tr, cfg.embed), out);
    return ok;
}

int cmd_clairaut(const Config& cfg, spdlog::logger& log, std::ostream& out) {
    check_common(cfg);
    const SurfaceSpec spec = build_surface(cfg, log);
    json cps = json::array();
    for (const auto& cp : critical_parallels(spec, cfg.alpha)) {
        cps.push_back({{"u", cp.u},
                       {"rho", clairaut_radius(spec, cfg.alpha, cp.u).rho},
                       {"lambda", cp.lambda},
                       {"classification", std::string(to_string(cp.classification))}});
    }
    json doc = {{"surface", spec.identifier()}, {"alpha", cfg.alpha}, {"critical_parallels", cps}};
    if (cfg.c) {
        doc["c"] = *cfg.c;
        doc["turning_points"] = turning_points(spec, cfg.alpha, *cfg.c);
    }
    deliver(cfg, doc.dump(2) + "\n", out);
    return ok;
}

int cmd_stability(const Config& cfg, spdlog::logger& log, std::ostream& out) {
    check_common(cfg);
    const SurfaceSpec spec = build_surface(cfg, log);
    const double lambda = stability_exponent(spec, cfg.alpha, cfg.u_star);
    const json doc = {{"surface", spec.identifier()},
                      {"alpha", cfg.alpha},
                      {"u_star", cfg.u_star},
                      {"lambda", lambda},
                      {"classification", std::string(to_string(classify(lambda)))}};
    deliver(cfg, doc.dump(2) + "\n", out);
    return ok;
}

int cmd_quadrature(const Config& cfg, spdlog::logger& log, std::ostream& out) {
    check_common(cfg);
    if (!cfg.c) {
        throw ConfigError("quadrature needs --c");
    }
    const SurfaceSpec spec = build_surface(cfg, log);
    const double u1 = parse_double(cfg.u1, "--u1");
    const double dv = quadrature_v(spec, cfg.alpha, *cfg.c, cfg.u0, u1);
    const json doc = {{"surface", spec.identifier()},
                      {"alpha", cfg.alpha},
                      {"c", *cfg.c},
                      {"u0", cfg.u0},
                      {"u1", std::isfinite(u1) ? json(u1) : json("inf")},
                      {"delta_v", dv}};
    deliver(cfg, doc.dump(2) + "\n", out);
    return ok;
}

int cmd_validate(const Config& cfg, spdlog::logger& log, std::ostream& out) {
    if (!cfg.all) {
        throw ConfigError("validate needs --all");
    }
    const ValidationReport report = run_validation(true);
    for (const auto& it : report.items) {
        if (!it.passed) {
            log.error("validation item {} failed (value {}, threshold {}) {}", it.name, it.value,
                      it.threshold, it.detail);
        }
    }
    deliver(cfg, to_json(report), out);
    return report.passed ? ok : validation_failed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    auto log = make_logger(err);
    Config cfg;

    CLI::App app{"Trace and analyze alpha-catenaries on surfaces in semi-geodesic coordinates",
                 "catenary"};
    app.require_subcommand(1);

    auto surface_opts = [&](CLI::App* sub) {
        sub->add_option("--surface", cfg.surface, "catalog surface kind");
        sub->add_option("--param", cfg.params, "surface parameter key=value (repeatable)");
        sub->add_option("--profile", cfg.profile, "CSV u,a of a profile a(u)");
        sub->add_option("--ruled", cfg.ruled, "CSV v,f,g of a ruled surface");
        sub->add_option("--alpha", cfg.alpha, "weight exponent")->capture_default_str();
        sub->add_option("--tol", cfg.tol, "integration tolerance")->capture_default_str();
        sub->add_option("--out", cfg.out, "output path (default: stdout)");
    };
    auto trace_opts = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "csv or json")->capture_default_str();
        sub->add_flag("--embed", cfg.embed, "append x,y,z of the surface of revolution");
        sub->add_option("--max-step", cfg.max_step, "largest accepted step");
    };

    auto* catalog = app.add_subcommand("catalog", "list the built-in surfaces");
    catalog->add_option("--format", cfg.format, "text or json");
    catalog->add_option("--out", cfg.out, "output path (default: stdout)");

    auto* trace = app.add_subcommand("trace", "trace an alpha-catenary by arc length");
    surface_opts(trace);
    trace_opts(trace);
    trace->add_option("--u0", cfg.u0)->capture_default_str();
    trace->add_option("--v0", cfg.v0)->capture_default_str();
    trace->add_option("--phi0", cfg.phi0, "tangent angle from d/du")->capture_default_str();
    trace->add_option("--smax", cfg.smax, "arc length")->capture_default_str();

    auto* graph = app.add_subcommand("trace-graph", "trace an alpha-catenary as a graph u(v)");
    surface_opts(graph);
    trace_opts(graph);
    graph->add_option("--u0", cfg.u0)->capture_default_str();
    graph->add_option("--du0", cfg.du0, "du/dv at v-start")->capture_default_str();
    graph->add_option("--v-start", cfg.v_start)->capture_default_str();
    graph->add_option("--v-end", cfg.v_end)->capture_default_str();

    auto* clairaut = app.add_subcommand("clairaut", "critical parallels and turning points");
    surface_opts(clairaut);
    clairaut->add_option("--c", cfg.c, "Clairaut constant for turning points");

    auto* stability = app.add_subcommand("stability", "stability exponent of a critical parallel");
    surface_opts(stability);
    stability->add_option("--ustar", cfg.u_star, "critical parallel")->required();

    auto* quadrature = app.add_subcommand("quadrature", "v-advance between two u values");
    surface_opts(quadrature);
    quadrature->add_option("--c", cfg.c, "Clairaut constant");
    quadrature->add_option("--u0", cfg.u0)->capture_default_str();
    quadrature->add_option("--u1", cfg.u1, "upper limit (may be inf)")->capture_default_str();

    auto* validate = app.add_subcommand("validate", "run the built-in oracle suite");
    validate->add_flag("--all", cfg.all, "run every check");
    validate->add_option("--out", cfg.out, "report path (default: stdout)");

    try {
        std::vector<std::string> rev(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
        std::reverse(rev.begin(), rev.end());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : config_error;
    }

    try {
        if (*catalog) return cmd_catalog(cfg, out);
        if (*trace) return cmd_trace(cfg, *log, out);
        if (*graph) return cmd_trace_graph(cfg, *log, out);
        if (*clairaut) return cmd_clairaut(cfg, *log, out);
        if (*stability) return cmd_stability(cfg, *log, out);
        if (*quadrature) return cmd_quadrature(cfg, *log, out);
        if (*validate) return cmd_validate(cfg, *log, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return config_error;
    } catch (const KindError& e) {
        err << "error: " << e.what() << "\n";
        return config_error;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return config_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return validation_failed;
    }
    return config_error;
}

}  // namespace catenary::cli
