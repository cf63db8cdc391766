#include "catenary/validation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <future>
#include <numbers>
#include <random>

#include <json.hpp>

#include "catenary/closed_forms.hpp"
#include "catenary/curvature.hpp"
#include "catenary/errors.hpp"
#include "catenary/integrator.hpp"
#include "catenary/metric.hpp"
#include "catenary/revolution.hpp"

namespace catenary {

namespace {

constexpr double kTol = 1e-9;

using Items = std::vector<ValidationItem>;

ValidationItem below(int group, std::string name, double value, std::string_view key,
                     std::string detail = {}) {
    const bool ok = std::isfinite(value) && value < threshold(key);
    return {group, std::move(name), value, std::string(key), ok, std::move(detail)};
}

ValidationItem flag(int group, std::string name, bool ok, std::string detail = {}) {
    return {group, std::move(name), ok ? 1.0 : 0.0, "boolean", ok, std::move(detail)};
}

double bisect(const std::function<double(double)>& f, double lo, double hi) {
    const bool lo_pos = f(lo) > 0.0;
    for (int i = 0; i < 400 && hi - lo > 0.0; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        ((f(mid) > 0.0) == lo_pos ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double sphere_root() {
    return bisect([](double u) { return std::cos(u) - u * std::sin(u); }, 0.1, 1.5);
}

// Closed-form families against their reduced equations and the catenary
// residual on the matching catalog surface.
Items closed_forms() {
    Items out;
    struct Case {
        ClosedFormFamily family;
        SurfaceSpec spec;
        double alpha;
    };
    const std::array<Case, 5> cases{{
        {ClosedFormFamily::euclidean(1.3, 0.2), catalog_surface(SurfaceKind::plane), 1.0},
        {ClosedFormFamily::cone(0.8, 0.3), catalog_surface(SurfaceKind::cone), 1.0},
        {ClosedFormFamily::grusin_catenary(1.0, 1.0), catalog_surface(SurfaceKind::grusin), 1.0},
        {ClosedFormFamily::grusin_geodesic(1.5, 0.25), catalog_surface(SurfaceKind::grusin), 0.0},
        {ClosedFormFamily::hyperbolic_quadrature(1.0, 1.0, 1.0),
         catalog_surface(SurfaceKind::hyperbolic, {{"r", 1.0}}), 1.0},
    }};
    for (const auto& c : cases) {
        const auto grid = c.family.grid(100);
        const std::string name(to_string(c.family.kind()));
        double gov = 0.0;
        for (const double t : grid) {
            gov = std::max(gov, c.family.governing_residual(t));
        }
        out.push_back(below(1, name + ".reduced_equation", gov, "closed_form"));
        out.push_back(below(1, name + ".surface_residual",
                            validate_closed_form(c.family, c.spec, c.alpha, grid), "closed_form"));
    }
    return out;
}

Items trace_vs_closed_form() {
    Items out;
    auto graph_error = [](const SurfaceSpec& spec, double u0, double du0, VSpan span,
                          const std::function<double(double)>& exact) {
        const Trace tr = trace_graph(spec, 1.0, u0, du0, span, kTol);
        double err = tr.termination == Termination::reached_smax ? 0.0 : HUGE_VAL;
        for (const auto& s : tr.samples) {
            err = std::max(err, std::abs(s.u - exact(s.v)));
        }
        return err;
    };
    out.push_back(below(2, "plane.cosh",
                        graph_error(catalog_surface(SurfaceKind::plane), 1.0, 0.0, {0.0, 2.0},
                                    [](double v) { return std::cosh(v); }),
                        "trace_plane"));
    out.push_back(below(2, "cone.closed_form",
                        graph_error(catalog_surface(SurfaceKind::cone), 1.0, 0.0, {0.0, 0.9},
                                    [](double v) { return cone_catenary(1.0, 0.0, v); }),
                        "trace_family"));
    out.push_back(below(2, "grusin.closed_form",
                        graph_error(catalog_surface(SurfaceKind::grusin), 1.0, 1.0, {0.0, 4.0},
                                    [](double v) { return grusin_catenary(1.0, 1.0, v); }),
                        "trace_family"));
    return out;
}

Items sphere_parallel() {
    Items out;
    const auto sphere = catalog_surface(SurfaceKind::sphere);
    const auto cps = critical_parallels(sphere, 1.0);
    out.push_back(flag(3, "sphere.single_root", cps.size() == 1,
                       std::to_string(cps.size()) + " critical parallels"));
    if (cps.size() == 1) {
        out.push_back(
            below(3, "sphere.root_vs_bisection", std::abs(cps[0].u - sphere_root()), "root"));
        out.push_back(below(3, "sphere.root_vs_0.86", std::abs(cps[0].u - 0.86), "root_anchor"));
        out.push_back(flag(3, "sphere.stable", cps[0].lambda > 0.0,
                           "lambda = " + std::to_string(cps[0].lambda)));
    }
    return out;
}

double clairaut_drift(const SurfaceSpec& spec, const CatenaryState& start, double s_max) {
    const Trace tr = trace_catenary(spec, 1.0, start, s_max, kTol);
    const double c0 = clairaut_constant(spec, 1.0, start);
    double drift = 0.0;
    for (const auto& s : tr.samples) {
        drift =
            std::max(drift, std::abs(clairaut_constant(spec, 1.0, {s.u, s.v, s.phi, s.s}) - c0));
    }
    return drift / std::max(std::abs(c0), 1e-12);
}

Items conservation() {
    Items out;
    out.push_back(
        below(4, "sphere.clairaut_drift",
              clairaut_drift(catalog_surface(SurfaceKind::sphere), {0.5, 0.0, 1.2, 0.0}, 10.0),
              "conservation"));
    out.push_back(
        below(4, "cone.clairaut_drift",
              clairaut_drift(catalog_surface(SurfaceKind::cone), {1.0, 0.0, 1.0, 0.0}, 10.0),
              "conservation"));
    out.push_back(below(4, "catenoid.clairaut_drift",
                        clairaut_drift(catalog_surface(SurfaceKind::catenoid),
                                       {1.0, 0.0, std::numbers::pi / 4, 0.0}, 10.0),
                        "conservation"));
    return out;
}

Items oscillation() {
    Items out;
    const auto sphere = catalog_surface(SurfaceKind::sphere);
    const double u_star = sphere_root();
    const double c = 0.5;
    const double phi0 = std::asin(c / clairaut_radius(sphere, 1.0, u_star).rho);
    TraceOptions opt;
    opt.max_step = 0.05;
    const Trace tr = trace_catenary(sphere, 1.0, {u_star, 0.0, phi0, 0.0}, 100.0, kTol, opt);
    const auto ext = u_extrema(sphere, 1.0, tr);
    std::vector<double> maxima, minima;
    for (const auto& e : ext) {
        (e.maximum ? maxima : minima).push_back(e.u);
    }
    const auto tp = turning_points(sphere, 1.0, c);
    const bool shape = tp.size() == 2 && maxima.size() >= 2 && minima.size() >= 2;
    out.push_back(flag(
        5, "sphere.turning_structure", shape,
        std::to_string(maxima.size()) + " maxima, " + std::to_string(minima.size()) + " minima"));
    if (!shape) {
        return out;
    }
    auto spread = [](const std::vector<double>& x) {
        const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
        return *hi - *lo;
    };
    auto worst = [](const std::vector<double>& x, double ref) {
        double w = 0.0;
        for (double e : x) {
            w = std::max(w, std::abs(e - ref));
        }
        return w;
    };
    out.push_back(below(5, "sphere.maxima_spread", spread(maxima), "extrema_spread"));
    out.push_back(below(5, "sphere.minima_spread", spread(minima), "extrema_spread"));
    out.push_back(
        below(5, "sphere.maxima_vs_turning_point", worst(maxima, tp[1]), "turning_point"));
    out.push_back(
        below(5, "sphere.minima_vs_turning_point", worst(minima, tp[0]), "turning_point"));
    out.push_back(flag(5, "sphere.u_m<u*<u_M", tp[0] < u_star && u_star < tp[1]));
    return out;
}

double max_departure(const SurfaceSpec& spec, double u_star, double s_max) {
    const Trace tr =
        trace_catenary(spec, 1.0, {u_star + 0.01, 0.0, std::numbers::pi / 2, 0.0}, s_max, kTol);
    double dev = 0.0;
    for (const auto& s : tr.samples) {
        dev = std::max(dev, std::abs(s.u - u_star));
    }
    return tr.termination == Termination::reached_smax ? dev : HUGE_VAL;
}

SurfaceSpec bump_profile() {
    std::vector<ProfileSample> samples;
    for (int i = 0; i <= 400; ++i) {
        const double u = 0.2 + 3.8 * i / 400.0;
        samples.push_back({u, 1.0 + (u - 2.0) * (u - 2.0)});
    }
    return tabulated_profile(samples);
}

Items stability() {
    Items out;
    const auto sphere = catalog_surface(SurfaceKind::sphere);
    out.push_back(below(6, "sphere.stable_band", max_departure(sphere, sphere_root(), 50.0),
                        "stability_band"));

    const auto bump = bump_profile();
    const Trace tr =
        trace_catenary(bump, 1.0, {5.0 / 3.0 + 0.01, 0.0, std::numbers::pi / 2, 0.0}, 50.0, kTol);
    double exit_s = HUGE_VAL;
    for (const auto& s : tr.samples) {
        if (std::abs(s.u - 5.0 / 3.0) > threshold("stability_band")) {
            exit_s = s.s;
            break;
        }
    }
    out.push_back(below(6, "profile.unstable_exit_s", exit_s, "stability_horizon"));
    const auto cps = critical_parallels(bump, 1.0);
    const bool classified = std::any_of(cps.begin(), cps.end(), [](const CriticalParallel& c) {
        return std::abs(c.u - 5.0 / 3.0) < 1e-3 && c.classification == Stability::unstable;
    });
    out.push_back(flag(6, "profile.5/3_unstable", classified));
    return out;
}

Items catenoid_escape() {
    Items out;
    const auto catenoid = catalog_surface(SurfaceKind::catenoid);
    const CatenaryState start{1.0, 0.0, std::numbers::pi / 4, 0.0};
    const double c = clairaut_constant(catenoid, 1.0, start);
    const double bound = quadrature_v(catenoid, 1.0, c, 1.0, HUGE_VAL);
    double prev = quadrature_v(catenoid, 1.0, c, 1.0, 1e3);
    double gap = HUGE_VAL;
    for (double cut = 1e4; cut <= 1e8; cut *= 10.0) {
        const double next = quadrature_v(catenoid, 1.0, c, 1.0, cut);
        gap = std::abs(next - prev);
        prev = next;
    }
    out.push_back(below(7, "catenoid.truncation_cauchy", gap, "escape_cauchy"));
    out.push_back(
        below(7, "catenoid.truncation_vs_improper", std::abs(prev - bound), "escape_cauchy"));

    const Trace tr = trace_catenary(catenoid, 1.0, start, 1e3, kTol);
    const double v_end = tr.samples.back().v;
    out.push_back(flag(7, "catenoid.blow_up", tr.termination == Termination::blow_up,
                       std::string(to_string(tr.termination))));
    out.push_back(flag(7, "catenoid.v_within_factor_2",
                       std::isfinite(v_end) && v_end <= 2.0 * bound && v_end >= 0.5 * bound,
                       "v_end = " + std::to_string(v_end) + ", bound = " + std::to_string(bound)));
    return out;
}

// Geodesics of u^(2 alpha)(du^2 + G^2 dv^2), fixed-step RK4 in an arbitrary
// parameter. Returns (u, v) samples.
std::vector<std::array<double, 2>> conformal_geodesic(const SurfaceSpec& spec, double alpha,
                                                      const CatenaryState& start, double h,
                                                      double u_stop, double v_stop) {
    using Y = std::array<double, 4>;  // u, v, u', v'
    auto f = [&](const Y& y) {
        const double u = y[0];
        const MetricValue m = eval_metric(spec, u, y[1]);
        const double e = std::pow(u, 2 * alpha);
        const double e_u = 2 * alpha * std::pow(u, 2 * alpha - 1);
        const double hh = e * m.g * m.g;
        const double h_u = e_u * m.g * m.g + 2 * e * m.g * m.g_u;
        const double h_v = 2 * e * m.g * m.g_v;
        const double uu = -(e_u / (2 * e)) * y[2] * y[2] + (h_u / (2 * e)) * y[3] * y[3];
        const double vv = -(h_u / hh) * y[2] * y[3] - (h_v / (2 * hh)) * y[3] * y[3];
        return Y{y[2], y[3], uu, vv};
    };
    const MetricValue m0 = eval_metric(spec, start.u, start.v);
    Y y{start.u, start.v, std::cos(start.phi), std::sin(start.phi) / m0.g};
    std::vector<std::array<double, 2>> out{{y[0], y[1]}};
    for (int i = 0; i < 10'000'000 && y[0] < u_stop && y[1] < v_stop; ++i) {
        const Y k1 = f(y);
        Y t;
        for (int j = 0; j < 4; ++j) t[j] = y[j] + 0.5 * h * k1[j];
        const Y k2 = f(t);
        for (int j = 0; j < 4; ++j) t[j] = y[j] + 0.5 * h * k2[j];
        const Y k3 = f(t);
        for (int j = 0; j < 4; ++j) t[j] = y[j] + h * k3[j];
        const Y k4 = f(t);
        for (int j = 0; j < 4; ++j) y[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
        out.push_back({y[0], y[1]});
    }
    return out;
}

// Graph trace, quadrature and conformal geodesic against trace_catenary on
// one arc where u increases with v.
Items triple(const std::string& name, const SurfaceSpec& spec, const CatenaryState& start,
             double u_end) {
    Items out;
    const double c = clairaut_constant(spec, 1.0, start);
    const double dv_total = quadrature_v(spec, 1.0, c, start.u, u_end);
    TraceOptions topt;
    topt.max_step = 0.05;
    const Trace tr = trace_catenary(spec, 1.0, start, 20.0, kTol, topt);

    double quad_err = 0.0;
    for (int k = 1; k <= 20; ++k) {
        const double u = start.u + (u_end - start.u) * k / 20.0;
        const double dv = quadrature_v(spec, 1.0, c, start.u, u);
        const auto u_tr = u_at_v(spec, 1.0, tr, start.v + dv);
        quad_err = std::max(quad_err, u_tr ? std::abs(*u_tr - u) : HUGE_VAL);
    }
    out.push_back(below(8, name + ".quadrature_vs_trace", quad_err, "cross_oracle"));

    const MetricValue m = eval_metric(spec, start.u, start.v);
    const double du0 = m.g * std::cos(start.phi) / std::sin(start.phi);
    const Trace gr =
        trace_graph(spec, 1.0, start.u, du0, {start.v, start.v + 0.9 * dv_total}, kTol);
    double graph_err = gr.termination == Termination::reached_smax ? 0.0 : HUGE_VAL;
    for (const auto& s : gr.samples) {
        const auto u_tr = u_at_v(spec, 1.0, tr, s.v);
        graph_err = std::max(graph_err, u_tr ? std::abs(*u_tr - s.u) : HUGE_VAL);
    }
    out.push_back(below(8, name + ".graph_vs_trace", graph_err, "cross_oracle"));

    const auto geo = conformal_geodesic(spec, 1.0, start, 1e-3, u_end, start.v + 0.9 * dv_total);
    double geo_err = 0.0;
    for (std::size_t i = 1; i + 1 < geo.size(); i += 10) {
        const auto u_tr = u_at_v(spec, 1.0, tr, geo[i][1]);
        geo_err = std::max(geo_err, u_tr ? std::abs(*u_tr - geo[i][0]) : HUGE_VAL);
    }
    out.push_back(below(8, name + ".conformal_geodesic_vs_trace", geo_err, "cross_oracle"));
    return out;
}

Items triple_oracle() {
    Items out;
    const auto sphere = catalog_surface(SurfaceKind::sphere);
    const auto tp = turning_points(sphere, 1.0, 0.5);
    if (tp.size() != 2) {
        out.push_back(flag(8, "sphere.turning_points", false));
    } else {
        for (auto& it : triple("sphere", sphere, {tp[0], 0.0, std::numbers::pi / 2, 0.0}, tp[1])) {
            out.push_back(std::move(it));
        }
    }
    for (auto& it : triple("catenoid", catalog_surface(SurfaceKind::catenoid),
                           {1.0, 0.0, std::numbers::pi / 4, 0.0}, 5.0)) {
        out.push_back(std::move(it));
    }
    return out;
}

struct Named {
    std::string name;
    SurfaceSpec spec;
    double u_lo;
    double u_hi;
};

std::vector<Named> catalog_sample() {
    std::vector<Named> out;
    auto add = [&](SurfaceKind k, ParamMap p, double lo, double hi) {
        out.push_back({std::string(to_string(k)), catalog_surface(k, p), lo, hi});
    };
    add(SurfaceKind::plane, {}, 0.1, 3.0);
    add(SurfaceKind::cylinder, {}, 0.1, 3.0);
    add(SurfaceKind::sphere, {}, 0.05, 1.5);
    add(SurfaceKind::hyperbolic, {{"r", 1.0}}, 0.1, 3.0);
    add(SurfaceKind::cone, {}, 0.1, 3.0);
    add(SurfaceKind::catenoid, {}, 0.1, 3.0);
    add(SurfaceKind::helicoid, {}, 0.1, 3.0);
    add(SurfaceKind::binormal, {{"tau", 2.0}}, 0.1, 3.0);
    add(SurfaceKind::grusin, {}, 0.2, 3.0);
    return out;
}

Items equivalence() {
    Items out;
    std::mt19937_64 rng(20240917);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (const auto& s : catalog_sample()) {
        std::uniform_real_distribution<double> ud(s.u_lo, s.u_hi);
        std::size_t mismatches = 0;
        for (int i = 0; i < 10'000; ++i) {
            const double alpha = 2.0 * (unit(rng) + 1.0);
            CurveJet2 jet;
            if (i % 2 == 0) {
                jet = {ud(rng), unit(rng), unit(rng), unit(rng), 3 * unit(rng), 3 * unit(rng)};
                if (std::hypot(jet.du, jet.dv) < 1e-3) {
                    jet.du = 1.0;
                }
            } else {
                jet = catenary_jet(s.spec, alpha, {ud(rng), unit(rng), 4 * unit(rng), 0.0});
            }
            const bool a = std::abs(catenary_residual(s.spec, alpha, jet)) < 1e-9;
            const bool b = std::abs(geodesic_curvature(s.spec, jet) -
                                    catenary_target_curvature(s.spec, alpha, jet)) < 1e-8;
            mismatches += a != b;
        }
        out.push_back(
            below(9, s.name + ".criterion_mismatches", static_cast<double>(mismatches), "count"));

        const double u0 = 0.5 * (s.u_lo + s.u_hi);
        const Trace tr = trace_catenary(s.spec, 0.0, {u0, 0.0, 1.0, 0.0}, 2.0, kTol);
        double kmax = 0.0;
        for (const auto& smp : tr.samples) {
            kmax = std::max(kmax, std::abs(smp.kappa));
        }
        out.push_back(below(9, s.name + ".alpha0_kappa", kmax, "geodesic_kappa"));
    }
    return out;
}

bool identical(const Trace& a, const Trace& b) {
    if (a.samples.size() != b.samples.size() || a.termination != b.termination) {
        return false;
    }
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        const auto& x = a.samples[i];
        const auto& y = b.samples[i];
        if (x.s != y.s || x.u != y.u || x.v != y.v || x.phi != y.phi || x.kappa != y.kappa ||
            x.residual != y.residual) {
            return false;
        }
    }
    return true;
}

Items isometry() {
    Items out;
    const CatenaryState start{1.0, 0.0, 0.7, 0.0};
    const auto run = [&](const SurfaceSpec& s) { return trace_catenary(s, 1.0, start, 5.0, kTol); };
    const Trace helicoid = run(catalog_surface(SurfaceKind::helicoid));
    out.push_back(flag(10, "helicoid==catenoid",
                       identical(helicoid, run(catalog_surface(SurfaceKind::catenoid)))));
    out.push_back(
        flag(10, "binormal(tau=1)==helicoid",
             identical(helicoid, run(catalog_surface(SurfaceKind::binormal, {{"tau", 1.0}})))));
    return out;
}

const std::vector<std::function<Items()>>& groups() {
    static const std::vector<std::function<Items()>> g = {
        closed_forms, trace_vs_closed_form, sphere_parallel, conservation, oscillation,
        stability,    catenoid_escape,      triple_oracle,   equivalence,  isometry,
    };
    return g;
}

Items guarded(int group, const std::function<Items()>& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        return {flag(group, "group_error", false, e.what())};
    }
}

}  // namespace

const std::vector<Threshold>& validation_thresholds() {
    static const std::vector<Threshold> table = {
        {"closed_form", 1e-10},      {"conservation", 1e-6},
        {"cross_oracle", 1e-5},      {"trace_plane", 1e-7},
        {"trace_family", 1e-6},      {"root", 1e-10},
        {"root_anchor", 5e-3},       {"extrema_spread", 1e-4},
        {"turning_point", 1e-5},     {"stability_band", 0.05},
        {"stability_horizon", 50.0}, {"escape_cauchy", 1e-8},
        {"geodesic_kappa", 1e-8},    {"count", 0.5},
    };
    return table;
}

double threshold(std::string_view name) {
    for (const auto& t : validation_thresholds()) {
        if (t.name == name) {
            return t.value;
        }
    }
    throw ConfigError("unknown validation threshold '" + std::string(name) + "'");
}

ValidationReport run_validation(bool parallel) {
    const auto& g = groups();
    std::vector<Items> results(g.size());
    if (parallel) {
        std::vector<std::future<Items>> futures;
        for (std::size_t i = 0; i < g.size(); ++i) {
            futures.push_back(
                std::async(std::launch::async, guarded, static_cast<int>(i + 1), std::cref(g[i])));
        }
        for (std::size_t i = 0; i < g.size(); ++i) {
            results[i] = futures[i].get();
        }
    } else {
        for (std::size_t i = 0; i < g.size(); ++i) {
            results[i] = guarded(static_cast<int>(i + 1), g[i]);
        }
    }
    ValidationReport report;
    for (auto& items : results) {
        for (auto& it : items) {
            report.passed = report.passed && it.passed;
            report.items.push_back(std::move(it));
        }
    }
    return report;
}

std::string to_json(const ValidationReport& report) {
    using nlohmann::json;
    json thresholds = json::object();
    for (const auto& t : validation_thresholds()) {
        thresholds[std::string(t.name)] = t.value;
    }
    json items = json::array();
    for (const auto& it : report.items) {
        json j = {{"group", it.group},
                  {"name", it.name},
                  {"threshold", it.threshold},
                  {"passed", it.passed}};
        j["value"] = std::isfinite(it.value) ? json(it.value) : json(nullptr);
        if (!it.detail.empty()) {
            j["detail"] = it.detail;
        }
        items.push_back(std::move(j));
    }
    const json doc = {{"passed", report.passed}, {"thresholds", thresholds}, {"items", items}};
    return doc.dump(2) + "\n";
}

}  // namespace catenary
