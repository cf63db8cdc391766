#include "catenary/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "catenary/errors.hpp"
#include "catenary/ode.hpp"

namespace catenary {

namespace {

constexpr std::array<std::pair<Termination, std::string_view>, 5> kTerminationNames{{
    {Termination::reached_smax, "reached_smax"},
    {Termination::hit_lower_u, "hit_lower_u"},
    {Termination::blow_up, "blow_up"},
    {Termination::left_domain, "left_domain"},
    {Termination::step_underflow, "step_underflow"},
}};

void check_tolerance(double tol) {
    if (!(tol >= 1e-12 && tol <= 1e-3)) {
        throw ConfigError("tolerance must lie in [1e-12, 1e-3]");
    }
}

void check_alpha(double alpha) {
    if (!std::isfinite(alpha)) {
        throw ConfigError("alpha must be finite");
    }
}

// Appends a sample unless s does not advance (an event located at the start
// of a step).
void record(Trace& trace, const SurfaceSpec& spec, double alpha, const CatenaryState& st) {
    if (!trace.samples.empty() && !(st.s > trace.samples.back().s)) {
        return;
    }
    const CurveJet2 jet = catenary_jet(spec, alpha, st);
    const double kappa = geodesic_curvature(spec, jet);
    const double residual = catenary_residual(spec, alpha, jet);
    trace.samples.push_back({st.s, st.u, st.v, st.phi, kappa, residual});
    trace.stats.max_abs_residual = std::max(trace.stats.max_abs_residual, std::abs(residual));
}

Termination map_stop(ode::Stop stop) {
    switch (stop) {
        case ode::Stop::reached_end:
            return Termination::reached_smax;
        case ode::Stop::step_underflow:
        case ode::Stop::max_steps:
            return Termination::step_underflow;
        case ode::Stop::event:
            break;
    }
    return Termination::left_domain;
}

}  // namespace

std::string_view to_string(Termination t) {
    for (const auto& [k, name] : kTerminationNames) {
        if (k == t) {
            return name;
        }
    }
    return "unknown";
}

std::optional<Termination> parse_termination(std::string_view name) {
    for (const auto& [k, n] : kTerminationNames) {
        if (n == name) {
            return k;
        }
    }
    return std::nullopt;
}

CatenaryRates catenary_rhs(const SurfaceSpec& spec, double alpha, const CatenaryState& state) {
    if (!(state.u > 0.0)) {
        throw DomainError("catenary flow needs u > 0");
    }
    const MetricValue m = eval_metric(spec, state.u, state.v);
    const double sp = std::sin(state.phi);
    return {std::cos(state.phi), sp / m.g, -sp * (alpha / state.u + m.g_u / m.g)};
}

CurveJet2 catenary_jet(const SurfaceSpec& spec, double alpha, const CatenaryState& state) {
    if (!(state.u > 0.0)) {
        throw DomainError("catenary flow needs u > 0");
    }
    const MetricValue m = eval_metric(spec, state.u, state.v);
    const double sp = std::sin(state.phi), cp = std::cos(state.phi);
    const double du = cp, dv = sp / m.g;
    const double dphi = -sp * (alpha / state.u + m.g_u / m.g);
    const double ddu = -sp * dphi;
    const double ddv = cp * dphi / m.g - sp * (m.g_u * du + m.g_v * dv) / (m.g * m.g);
    return {state.u, state.v, du, dv, ddu, ddv};
}

Trace trace_catenary(const SurfaceSpec& spec, double alpha, const CatenaryState& start,
                     double s_max, double tol, const TraceOptions& options) {
    check_tolerance(tol);
    check_alpha(alpha);
    if (!(s_max > 0.0) || !std::isfinite(s_max)) {
        throw ConfigError("s_max must be positive and finite");
    }
    if (!(start.u > 0.0)) {
        throw ConfigError("start u must be positive");
    }
    if (!spec.domain().contains(start.u, start.v)) {
        throw ConfigError("start point lies outside the surface domain");
    }

    const Domain& d = spec.domain();
    using Y = ode::Vec<3>;  // (u, v, phi), independent variable s
    auto rhs = [&](double, const Y& y) {
        const CatenaryRates r = catenary_rhs(spec, alpha, {y[0], y[1], y[2], 0.0});
        return Y{r.du, r.dv, r.dphi};
    };

    enum Event { lower, upper, blowup, v_low, v_high, turn };
    std::vector<ode::EventFn<3>> events(6, [](double, const Y&) { return 1.0; });
    events[lower] = [&](double, const Y& y) { return y[0] - (d.u_min + options.lower_margin); };
    if (std::isfinite(d.u_max)) {
        events[upper] = [&](double, const Y& y) { return (d.u_max - options.upper_margin) - y[0]; };
    }
    const double u_blow = options.blowup_ratio * start.u;
    events[blowup] = [u_blow](double, const Y& y) { return u_blow - y[0]; };
    if (std::isfinite(d.v_min)) {
        events[v_low] = [&](double, const Y& y) { return y[1] - d.v_min; };
    }
    if (std::isfinite(d.v_max)) {
        events[v_high] = [&](double, const Y& y) { return d.v_max - y[1]; };
    }
    events[turn] = [&](double, const Y& y) {
        try {
            return options.max_turn_rate - std::abs(rhs(0.0, y)[2]);
        } catch (const Error&) {
            return -1.0;
        }
    };

    Trace trace;
    ode::Options opt;
    opt.rtol = opt.atol = tol;
    opt.h_max = options.max_step;

    const auto outcome = ode::integrate<3>(
        rhs, start.s, Y{start.u, start.v, start.phi}, start.s + s_max, opt, events,
        [&](double s, const Y& y) { record(trace, spec, alpha, {y[0], y[1], y[2], s}); });

    trace.stats.accepted_steps = outcome.stats.accepted;
    trace.stats.rejected_steps = outcome.stats.rejected;
    trace.stats.rhs_evals = outcome.stats.rhs_evals;
    if (outcome.stop != ode::Stop::event) {
        trace.termination = map_stop(outcome.stop);
    } else {
        switch (outcome.event) {
            case lower:
                trace.termination = Termination::hit_lower_u;
                break;
            case blowup:
            case turn:
                trace.termination = Termination::blow_up;
                break;
            default:
                trace.termination = Termination::left_domain;
        }
    }
    return trace;
}

Trace trace_graph(const SurfaceSpec& spec, double alpha, double u0, double du0, VSpan span,
                  double tol, const TraceOptions& options) {
    check_tolerance(tol);
    check_alpha(alpha);
    if (!(span.end > span.start) || !std::isfinite(span.start) || !std::isfinite(span.end)) {
        throw ConfigError("v span must be a finite interval with end > start");
    }
    if (!(u0 > 0.0) || !std::isfinite(du0)) {
        throw ConfigError("graph start needs u0 > 0 and a finite slope");
    }
    if (!spec.domain().contains(u0, span.start)) {
        throw ConfigError("graph start lies outside the surface domain");
    }

    const Domain& d = spec.domain();
    using Y = ode::Vec<3>;  // (u, du/dv, s), independent variable v
    auto rhs = [&](double v, const Y& y) {
        const double u = y[0], p = y[1];
        if (!(u > 0.0)) {
            throw DomainError("graph flow needs u > 0");
        }
        const MetricValue m = eval_metric(spec, u, v);
        const double g2 = m.g * m.g;
        const double upp =
            ((alpha * m.g / u) * (p * p + g2) + m.g_v * p + 2.0 * m.g_u * p * p + g2 * m.g_u) / m.g;
        return Y{p, upp, std::sqrt(p * p + g2)};
    };

    enum Event { lower, upper, blowup, vertical, v_high };
    std::vector<ode::EventFn<3>> events(5, [](double, const Y&) { return 1.0; });
    events[lower] = [&](double, const Y& y) { return y[0] - (d.u_min + options.lower_margin); };
    if (std::isfinite(d.u_max)) {
        events[upper] = [&](double, const Y& y) { return (d.u_max - options.upper_margin) - y[0]; };
    }
    const double u_blow = options.blowup_ratio * u0;
    events[blowup] = [u_blow](double, const Y& y) { return u_blow - y[0]; };
    const double max_slope = 1.0 / tol;
    events[vertical] = [max_slope](double, const Y& y) { return max_slope - std::abs(y[1]); };
    if (std::isfinite(d.v_max)) {
        events[v_high] = [&](double v, const Y&) { return d.v_max - v; };
    }

    Trace trace;
    auto observe = [&](double v, const Y& y) {
        const double u = y[0], p = y[1];
        const MetricValue m = eval_metric(spec, u, v);
        const CurveJet2 jet{u, v, p, 1.0, rhs(v, y)[1], 0.0};
        const double kappa = geodesic_curvature(spec, jet);
        const double residual = catenary_residual(spec, alpha, jet);
        if (!trace.samples.empty() && !(y[2] > trace.samples.back().s)) {
            return;
        }
        trace.samples.push_back({y[2], u, v, std::atan2(m.g, p), kappa, residual});
        trace.stats.max_abs_residual = std::max(trace.stats.max_abs_residual, std::abs(residual));
    };

    ode::Options opt;
    opt.rtol = opt.atol = tol;
    opt.h_max = options.max_step;
    const auto outcome =
        ode::integrate<3>(rhs, span.start, Y{u0, du0, 0.0}, span.end, opt, events, observe);

    trace.stats.accepted_steps = outcome.stats.accepted;
    trace.stats.rejected_steps = outcome.stats.rejected;
    trace.stats.rhs_evals = outcome.stats.rhs_evals;
    if (outcome.stop != ode::Stop::event) {
        trace.termination = map_stop(outcome.stop);
    } else {
        switch (outcome.event) {
            case lower:
                trace.termination = Termination::hit_lower_u;
                break;
            case blowup:
                trace.termination = Termination::blow_up;
                break;
            case vertical:
                trace.termination = Termination::left_domain;
                trace.vertical_tangent = true;
                break;
            default:
                trace.termination = Termination::left_domain;
        }
    }
    return trace;
}

namespace {

ode::StepData<3> segment(const SurfaceSpec& spec, double alpha, const TraceSample& a,
                         const TraceSample& b) {
    const CatenaryRates ra = catenary_rhs(spec, alpha, {a.u, a.v, a.phi, a.s});
    const CatenaryRates rb = catenary_rhs(spec, alpha, {b.u, b.v, b.phi, b.s});
    return {a.s,
            b.s,
            {a.u, a.v, a.phi},
            {b.u, b.v, b.phi},
            {ra.du, ra.dv, ra.dphi},
            {rb.du, rb.dv, rb.dphi}};
}

template <class F>
double bisect(F&& f, double lo, double hi, double f_lo) {
    for (int i = 0; i < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

CatenaryState dense_state(const SurfaceSpec& spec, double alpha, const Trace& trace, double s) {
    const auto& smp = trace.samples;
    if (smp.empty() || s < smp.front().s || s > smp.back().s) {
        throw DomainError("arc length outside the traced range");
    }
    auto it = std::upper_bound(smp.begin(), smp.end(), s,
                               [](double x, const TraceSample& t) { return x < t.s; });
    if (it == smp.end()) {
        const auto& b = smp.back();
        return {b.u, b.v, b.phi, b.s};
    }
    const auto& a = *(it - 1);
    const auto y = segment(spec, alpha, a, *it).at(s);
    return {y[0], y[1], y[2], s};
}

std::optional<double> u_at_v(const SurfaceSpec& spec, double alpha, const Trace& trace, double v) {
    const auto& smp = trace.samples;
    for (std::size_t i = 0; i + 1 < smp.size(); ++i) {
        const double f0 = smp[i].v - v, f1 = smp[i + 1].v - v;
        if (f0 == 0.0) {
            return smp[i].u;
        }
        if ((f0 > 0.0) == (f1 > 0.0) && f1 != 0.0) {
            continue;
        }
        const auto seg = segment(spec, alpha, smp[i], smp[i + 1]);
        const double s =
            bisect([&](double x) { return seg.at(x)[1] - v; }, smp[i].s, smp[i + 1].s, f0);
        return seg.at(s)[0];
    }
    return std::nullopt;
}

std::vector<Extremum> u_extrema(const SurfaceSpec& spec, double alpha, const Trace& trace) {
    std::vector<Extremum> out;
    const auto& smp = trace.samples;
    for (std::size_t i = 0; i + 1 < smp.size(); ++i) {
        const double c0 = std::cos(smp[i].phi), c1 = std::cos(smp[i + 1].phi);
        if (c0 == 0.0) {
            // Sample sits on the extremum; decide its type from the neighbours.
            const double before = i > 0 ? std::cos(smp[i - 1].phi) : -c1;
            if (c1 != 0.0 && (before > 0.0) != (c1 > 0.0)) {
                out.push_back({smp[i].s, smp[i].u, smp[i].v, c1 < 0.0});
            }
            continue;
        }
        if ((c0 > 0.0) == (c1 > 0.0) || c1 == 0.0) {
            continue;
        }
        const auto seg = segment(spec, alpha, smp[i], smp[i + 1]);
        const double s =
            bisect([&](double x) { return std::cos(seg.at(x)[2]); }, smp[i].s, smp[i + 1].s, c0);
        const auto y = seg.at(s);
        out.push_back({s, y[0], y[1], c0 > 0.0});
    }
    return out;
}

}  // namespace catenary
