#pragma once

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catenary/curvature.hpp"
#include "catenary/metric.hpp"

namespace catenary {

// Unit-speed point of a curve. phi is the angle of the tangent measured from
// d/du toward d/dv in an orthonormal frame, so (u', v') = (cos phi, sin phi / G).
// s is arc length in ds^2.
struct CatenaryState {
    double u = 0.0;
    double v = 0.0;
    double phi = 0.0;
    double s = 0.0;
};

struct CatenaryRates {
    double du;
    double dv;
    double dphi;
};

enum class Termination { reached_smax, hit_lower_u, blow_up, left_domain, step_underflow };

[[nodiscard]] std::string_view to_string(Termination t);
[[nodiscard]] std::optional<Termination> parse_termination(std::string_view name);

struct TraceSample {
    double s;
    double u;
    double v;
    double phi;
    double kappa;
    double residual;
};

struct TraceStats {
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
    std::size_t rhs_evals = 0;
    double max_abs_residual = 0.0;
};

struct Trace {
    std::vector<TraceSample> samples;
    Termination termination = Termination::reached_smax;
    TraceStats stats;
    // Set by trace_graph when the curve turned toward a meridian tangent.
    bool vertical_tangent = false;
};

struct TraceOptions {
    // Upper bound on the accepted step (in s for trace_catenary, v for
    // trace_graph).
    double max_step = std::numeric_limits<double>::infinity();
    // Terminate with hit_lower_u below u_min + lower_margin.
    double lower_margin = 1e-9;
    // Terminate with blow_up once u exceeds blowup_ratio * u0 ...
    double blowup_ratio = 1e2;
    // ... or once the turning rate |dphi/ds| exceeds this.
    double max_turn_rate = 1e12;
    // Terminate with left_domain within this distance of a finite u_max.
    double upper_margin = 1e-9;
};

// Unit-speed first-order form of the alpha-catenary equation:
//   du/ds = cos phi, dv/ds = sin phi / G, dphi/ds = -sin phi (alpha/u + G_u/G).
[[nodiscard]] CatenaryRates catenary_rhs(const SurfaceSpec& spec, double alpha,
                                         const CatenaryState& state);

// The exact 2-jet (in s) of the catenary through state.
[[nodiscard]] CurveJet2 catenary_jet(const SurfaceSpec& spec, double alpha,
                                     const CatenaryState& state);

// Traces the alpha-catenary through start over arc length s_max.
// ConfigError for s_max <= 0, tol outside [1e-12, 1e-3] or a start outside
// the domain; runtime exits are reported through Trace::termination.
[[nodiscard]] Trace trace_catenary(const SurfaceSpec& spec, double alpha,
                                   const CatenaryState& start, double s_max, double tol,
                                   const TraceOptions& options = {});

struct VSpan {
    double start;
    double end;
};

// Traces the catenary as a graph u = u(v) from u(start) = u0, u'(start) = du0.
// Stops with left_domain and vertical_tangent = true once |du/dv| > 1/tol.
// Reaching the end of the span is reported as reached_smax.
[[nodiscard]] Trace trace_graph(const SurfaceSpec& spec, double alpha, double u0, double du0,
                                VSpan span, double tol, const TraceOptions& options = {});

// Cubic Hermite interpolation of a trace in s, with slopes from catenary_rhs.
[[nodiscard]] CatenaryState dense_state(const SurfaceSpec& spec, double alpha, const Trace& trace,
                                        double s);

// u where the trace passes through v (first crossing), if it does.
[[nodiscard]] std::optional<double> u_at_v(const SurfaceSpec& spec, double alpha,
                                           const Trace& trace, double v);

struct Extremum {
    double s;
    double u;
    double v;
    bool maximum;
};

// Local extrema of u along the trace (zeros of cos phi), located on the dense
// output.
[[nodiscard]] std::vector<Extremum> u_extrema(const SurfaceSpec& spec, double alpha,
                                              const Trace& trace);

}  // namespace catenary
