#pragma once

// Adaptive Dormand-Prince 5(4) integrator with PI step-size control, cubic
// Hermite dense output and terminal event localization. Header-only; the
// state dimension is a template parameter.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "catenary/errors.hpp"

namespace catenary::ode {

template <std::size_t N>
using Vec = std::array<double, N>;

struct Options {
    double rtol = 1e-9;
    double atol = 1e-9;
    double h_init = 0.0;  // 0 selects an initial step automatically
    double h_max = std::numeric_limits<double>::infinity();
    // Steps shorter than h_min_rel * max(1, |t|) count as an underflow.
    double h_min_rel = 1e-14;
    std::size_t max_steps = 2'000'000;
    // Bisection width for event localization.
    double event_tol = 1e-12;
};

struct Stats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evals = 0;
};

enum class Stop { reached_end, event, step_underflow, max_steps };

template <std::size_t N>
struct Outcome {
    Stop stop = Stop::reached_end;
    int event = -1;  // index into the event list when stop == Stop::event
    double t = 0.0;
    Vec<N> y{};
    Stats stats;
};

// One accepted step; enough for cubic Hermite interpolation on [t0, t1].
template <std::size_t N>
struct StepData {
    double t0, t1;
    Vec<N> y0, y1, f0, f1;

    [[nodiscard]] Vec<N> at(double t) const {
        const double h = t1 - t0;
        const double s = (t - t0) / h;
        const double s2 = s * s, s3 = s2 * s;
        const double h00 = 2 * s3 - 3 * s2 + 1;
        const double h10 = s3 - 2 * s2 + s;
        const double h01 = -2 * s3 + 3 * s2;
        const double h11 = s3 - s2;
        Vec<N> y;
        for (std::size_t i = 0; i < N; ++i) {
            y[i] = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
        }
        return y;
    }
};

// Terminal event: integration stops where g changes from > 0 to <= 0. The
// reported stop point is the last bisection point with g > 0.
template <std::size_t N>
using EventFn = std::function<double(double t, const Vec<N>& y)>;

// rhs(t, y) -> dy/dt. A catenary::Error thrown by rhs (for example a
// DomainError when a stage leaves the metric's domain) rejects the step.
// observer(t, y) sees the initial point, every accepted step end and the
// event point.
template <std::size_t N, class Rhs, class Observer>
Outcome<N> integrate(Rhs&& rhs, double t0, const Vec<N>& y0, double t_end, const Options& opt,
                     const std::vector<EventFn<N>>& events, Observer&& observer) {
    // Dormand-Prince tableau.
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                     a76 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    // PI controller constants.
    constexpr double beta = 0.04, expo1 = 0.2 - beta * 0.75, safe = 0.9;
    constexpr double fac_min = 0.2, fac_max = 10.0;

    Outcome<N> out;
    out.t = t0;
    out.y = y0;
    Stats& st = out.stats;

    auto eval = [&](double t, const Vec<N>& y) -> std::optional<Vec<N>> {
        ++st.rhs_evals;
        try {
            Vec<N> f = rhs(t, y);
            for (double x : f) {
                if (!std::isfinite(x)) {
                    return std::nullopt;
                }
            }
            return f;
        } catch (const catenary::Error&) {
            return std::nullopt;
        }
    };
    auto axpy = [](const Vec<N>& y, double h,
                   std::initializer_list<std::pair<double, const Vec<N>*>> terms) {
        Vec<N> r = y;
        for (const auto& [c, k] : terms) {
            if (c == 0.0) {
                continue;
            }
            for (std::size_t i = 0; i < N; ++i) {
                r[i] += h * c * (*k)[i];
            }
        }
        return r;
    };

    auto f0_opt = eval(t0, y0);
    if (!f0_opt) {
        throw DomainError("right-hand side cannot be evaluated at the initial state");
    }
    Vec<N> y = y0, f = *f0_opt;
    double t = t0;
    observer(t, y);

    std::vector<double> g_prev(events.size());
    for (std::size_t k = 0; k < events.size(); ++k) {
        g_prev[k] = events[k](t, y);
    }

    double h = opt.h_init;
    if (!(h > 0.0)) {
        // Hairer's starting-step heuristic, first-order part only.
        double d0 = 0.0, d1 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = opt.atol + opt.rtol * std::abs(y[i]);
            d0 += (y[i] / sc) * (y[i] / sc);
            d1 += (f[i] / sc) * (f[i] / sc);
        }
        d0 = std::sqrt(d0 / N);
        d1 = std::sqrt(d1 / N);
        h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h = std::min(h, std::pow(opt.rtol, 0.2));
    }
    h = std::min({h, opt.h_max, t_end - t0});

    double err_old = 1e-4;
    bool last_rejected = false;
    while (t < t_end) {
        if (st.accepted + st.rejected >= opt.max_steps) {
            out.stop = Stop::max_steps;
            break;
        }
        const double h_min = opt.h_min_rel * std::max(1.0, std::abs(t));
        if (h < h_min) {
            out.stop = Stop::step_underflow;
            break;
        }
        bool hit_end = false;
        if (t + 1.01 * h >= t_end) {
            h = t_end - t;
            hit_end = true;
        }

        const Vec<N>& k1 = f;
        std::optional<Vec<N>> k2, k3, k4, k5, k6, k7;
        Vec<N> y1{};
        bool ok = (k2 = eval(t + c2 * h, axpy(y, h, {{a21, &k1}}))).has_value();
        ok = ok && (k3 = eval(t + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &*k2}}))).has_value();
        ok =
            ok &&
            (k4 = eval(t + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &*k2}, {a43, &*k3}}))).has_value();
        ok = ok && (k5 = eval(t + c5 * h,
                              axpy(y, h, {{a51, &k1}, {a52, &*k2}, {a53, &*k3}, {a54, &*k4}})))
                       .has_value();
        ok = ok &&
             (k6 = eval(
                  t + h,
                  axpy(y, h, {{a61, &k1}, {a62, &*k2}, {a63, &*k3}, {a64, &*k4}, {a65, &*k5}})))
                 .has_value();
        if (ok) {
            y1 = axpy(y, h, {{a71, &k1}, {a73, &*k3}, {a74, &*k4}, {a75, &*k5}, {a76, &*k6}});
            ok = (k7 = eval(t + h, y1)).has_value();
        }
        if (!ok) {
            ++st.rejected;
            h *= 0.25;
            last_rejected = true;
            continue;
        }

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double e = h * (e1 * k1[i] + e3 * (*k3)[i] + e4 * (*k4)[i] + e5 * (*k5)[i] +
                                  e6 * (*k6)[i] + e7 * (*k7)[i]);
            const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y1[i]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / N);
        if (!std::isfinite(err)) {
            ++st.rejected;
            h *= 0.25;
            last_rejected = true;
            continue;
        }

        const double fac11 = std::pow(err, expo1);
        if (err > 1.0) {
            ++st.rejected;
            h /= std::min(1.0 / fac_min, fac11 / safe);
            last_rejected = true;
            continue;
        }

        ++st.accepted;
        const StepData<N> step{t, hit_end ? t_end : t + h, y, y1, f, *k7};

        // Earliest terminal event in this step.
        int first_event = -1;
        double t_event = step.t1;
        for (std::size_t k = 0; k < events.size(); ++k) {
            const double g1 = events[k](step.t1, y1);
            if (g_prev[k] > 0.0 && !(g1 > 0.0)) {
                double lo = step.t0, hi = step.t1;
                while (hi - lo > opt.event_tol) {
                    const double mid = 0.5 * (lo + hi);
                    if (mid <= lo || mid >= hi) {
                        break;
                    }
                    if (events[k](mid, step.at(mid)) > 0.0) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                if (first_event < 0 || lo < t_event) {
                    first_event = static_cast<int>(k);
                    t_event = lo;
                }
            }
            g_prev[k] = g1;
        }
        if (first_event >= 0) {
            out.stop = Stop::event;
            out.event = first_event;
            out.t = t_event;
            out.y = t_event == step.t0 ? step.y0 : step.at(t_event);
            observer(out.t, out.y);
            return out;
        }

        t = step.t1;
        y = y1;
        f = *k7;
        observer(t, y);
        out.t = t;
        out.y = y;
        if (hit_end) {
            out.stop = Stop::reached_end;
            return out;
        }

        // PI step-size update.
        double fac = fac11 / std::pow(err_old, beta);
        fac = std::clamp(fac / safe, 1.0 / fac_max, 1.0 / fac_min);
        double h_new = h / fac;
        if (last_rejected) {
            h_new = std::min(h_new, h);
        }
        err_old = std::max(err, 1e-4);
        last_rejected = false;
        h = std::min(h_new, opt.h_max);
    }
    out.t = t;
    out.y = y;
    return out;
}

}  // namespace catenary::ode
