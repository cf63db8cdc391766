#include "catenary/revolution.hpp"

#include <algorithm>
#include <cmath>

#include "catenary/errors.hpp"
#include "catenary/quadrature.hpp"

namespace catenary {

namespace {

constexpr double kScanFloor = 1e-6;
constexpr double kScanCeil = 1e6;
constexpr double kPointsPerDecade = 1000.0;
constexpr double kCriticalTol = 1e-7;
constexpr double kDegenerateLambda = 1e-10;
// |rho(u) - c| below this (times max(1, c)) makes u a turning point.
constexpr double kTurningTol = 1e-12;

void require_symmetric(const SurfaceSpec& spec) {
    if (!spec.rotationally_symmetric()) {
        throw KindError(spec.identifier() + ": operation needs a rotationally symmetric metric");
    }
}

// A v at which the profile a(u) = G(u, v) is read.
double v_ref(const SurfaceSpec& spec) {
    const Domain& d = spec.domain();
    if (d.v_min < 0.0 && d.v_max > 0.0) {
        return 0.0;
    }
    return 0.5 * (d.v_min + d.v_max);
}

Interval scan_range(const SurfaceSpec& spec, std::optional<Interval> range) {
    const Domain& d = spec.domain();
    Interval r = range.value_or(Interval{d.u_min, d.u_max});
    if (!(r.hi > r.lo)) {
        throw ConfigError("scan range must have hi > lo");
    }
    r.lo = std::max(r.lo, d.u_min);
    r.hi = std::min(r.hi, d.u_max);
    if (r.lo <= 0.0) {
        r.lo = kScanFloor;
    } else if (r.lo == d.u_min) {
        r.lo += 1e-9 * std::max(1.0, r.lo);
    }
    if (!std::isfinite(r.hi)) {
        r.hi = std::max(kScanCeil, 10.0 * r.lo);
    } else if (r.hi == d.u_max) {
        r.hi -= 1e-9 * std::max(1.0, r.hi);
    }
    if (!(r.hi > r.lo)) {
        throw ConfigError("scan range is empty after clipping to the domain");
    }
    return r;
}

std::vector<double> log_grid(Interval r) {
    const auto n = static_cast<std::size_t>(
        std::max(2.0, std::ceil(kPointsPerDecade * std::log10(r.hi / r.lo))));
    std::vector<double> g(n + 1);
    const double ratio = std::log(r.hi / r.lo);
    for (std::size_t i = 0; i <= n; ++i) {
        g[i] = r.lo * std::exp(ratio * static_cast<double>(i) / static_cast<double>(n));
    }
    g.front() = r.lo;
    g.back() = r.hi;
    return g;
}

template <class F>
double bisect_root(F&& f, double lo, double hi) {
    double f_lo = f(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const double fm = f(mid);
        if (fm == 0.0) {
            return mid;
        }
        if ((fm > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Sign changes of f on the grid, refined by bisection.
template <class F>
std::vector<double> bracketed_roots(F&& f, const std::vector<double>& grid) {
    std::vector<double> roots;
    double f_prev = f(grid[0]);
    if (f_prev == 0.0) {
        roots.push_back(grid[0]);
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double fi = f(grid[i]);
        if (fi == 0.0) {
            roots.push_back(grid[i]);
        } else if (f_prev != 0.0 && (fi > 0.0) != (f_prev > 0.0)) {
            roots.push_back(bisect_root(f, grid[i - 1], grid[i]));
        }
        f_prev = fi;
    }
    return roots;
}

}  // namespace

std::string_view to_string(Stability s) {
    switch (s) {
        case Stability::stable:
            return "stable";
        case Stability::unstable:
            return "unstable";
        case Stability::degenerate:
            return "degenerate";
    }
    return "unknown";
}

ClairautRadius clairaut_radius(const SurfaceSpec& spec, double alpha, double u) {
    require_symmetric(spec);
    const MetricJet a = spec.patch().jet(u, v_ref(spec));
    const double p = std::pow(u, alpha);
    const double p1 = alpha * std::pow(u, alpha - 1.0);
    const double p2 = alpha * (alpha - 1.0) * std::pow(u, alpha - 2.0);
    return {p * a.g, p1 * a.g + p * a.g_u, p2 * a.g + 2.0 * p1 * a.g_u + p * a.g_uu};
}

ClairautProfile::ClairautProfile(const SurfaceSpec& spec, double alpha,
                                 std::optional<Interval> range)
    : spec_(spec), alpha_(alpha), critical_(catenary::critical_parallels(spec, alpha, range)) {}

double ClairautProfile::rho(double u) const {
    return clairaut_radius(spec_, alpha_, u).rho;
}

double clairaut_constant(const SurfaceSpec& spec, double alpha, const CatenaryState& state) {
    require_symmetric(spec);
    if (!(state.u > 0.0)) {
        throw DomainError("Clairaut constant needs u > 0");
    }
    const MetricValue m = eval_metric(spec, state.u, state.v);
    return std::pow(state.u, alpha) * m.g * std::sin(state.phi);
}

std::vector<CriticalParallel> critical_parallels(const SurfaceSpec& spec, double alpha,
                                                 std::optional<Interval> range) {
    require_symmetric(spec);
    const auto grid = log_grid(scan_range(spec, range));
    const auto roots =
        bracketed_roots([&](double u) { return clairaut_radius(spec, alpha, u).d_rho; }, grid);
    std::vector<CriticalParallel> out;
    for (const double u : roots) {
        const double lambda = stability_exponent(spec, alpha, u);
        out.push_back({u, lambda, classify(lambda)});
    }
    return out;
}

std::vector<double> turning_points(const SurfaceSpec& spec, double alpha, double c) {
    require_symmetric(spec);
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw ConfigError("turning points need a positive Clairaut constant");
    }
    const Interval r = scan_range(spec, std::nullopt);
    const auto grid = log_grid(r);

    // Tangencies: critical parallels sitting exactly on the level c.
    std::vector<double> tangent;
    for (const auto& cp : critical_parallels(spec, alpha, r)) {
        if (std::abs(clairaut_radius(spec, alpha, cp.u).rho - c) <=
            kTurningTol * std::max(1.0, c)) {
            tangent.push_back(cp.u);
        }
    }

    std::vector<double> out = tangent;
    for (const double u :
         bracketed_roots([&](double x) { return clairaut_radius(spec, alpha, x).rho - c; }, grid)) {
        const bool near_tangent = std::any_of(tangent.begin(), tangent.end(), [&](double t) {
            return std::abs(t - u) < 1e-6 * std::max(1.0, t);
        });
        if (!near_tangent) {
            out.push_back(u);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

double quadrature_v(const SurfaceSpec& spec, double alpha, double c, double u0, double u1) {
    require_symmetric(spec);
    if (std::isnan(u0) || std::isnan(u1) || !std::isfinite(u0)) {
        throw ConfigError("quadrature needs a finite lower limit");
    }
    if (u0 == u1 || c == 0.0) {
        return 0.0;
    }
    if (u1 < u0) {
        return -quadrature_v(spec, alpha, c, u1, u0);
    }
    const Domain& d = spec.domain();
    const double vr = v_ref(spec);
    if (!(u0 > d.u_min) || !(u1 < d.u_max || (std::isinf(u1) && std::isinf(d.u_max)))) {
        throw DomainError("quadrature limits must lie inside the domain");
    }

    const double c_abs = std::abs(c);
    auto ratio = [&](double t) {
        const MetricJet a = spec.patch().jet(t, vr);
        return std::pow(t, alpha) * a.g / c_abs;
    };

    // Interior accessibility check.
    const bool infinite = std::isinf(u1);
    constexpr int kChecks = 512;
    for (int k = 1; k < kChecks; ++k) {
        const double t = infinite ? u0 * std::pow(1e6, static_cast<double>(k) / kChecks)
                                  : u0 + (u1 - u0) * static_cast<double>(k) / kChecks;
        if (ratio(t) < 1.0 - 1e-12) {
            throw InaccessibleRegionError(
                "rho < c inside the quadrature interval (u = " + std::to_string(t) + ")");
        }
    }

    auto endpoint = [&](double t) {
        const ClairautRadius r = clairaut_radius(spec, alpha, t);
        return quad::Excess{r.rho - c_abs, r.d_rho, r.dd_rho};
    };
    auto excess = [&](double t) { return std::pow(t, alpha) * spec.patch().jet(t, vr).g - c_abs; };
    // 1 / (a sqrt(rho^2/c^2 - 1)) = [c / (a sqrt(e + 2c))] / sqrt(e), e = rho - c.
    auto weight = [&](double t, double e) {
        return c_abs / (spec.patch().jet(t, vr).g * std::sqrt(e + 2.0 * c_abs));
    };
    return quad::inverse_sqrt_excess(endpoint, excess, weight, u0, u1,
                                     kTurningTol * std::max(1.0, c_abs));
}

double conformal_coordinate(const SurfaceSpec& spec, double u, std::optional<double> u_ref) {
    require_symmetric(spec);
    const double vr = v_ref(spec);
    (void)spec.patch().jet(u, vr);  // domain check
    const double base = u_ref.value_or(spec.anchor());
    return quad::smooth([&](double t) { return 1.0 / spec.patch().jet_unchecked(t, vr).g; }, base,
                        u);
}

double stability_exponent(const SurfaceSpec& spec, double alpha, double u_star) {
    require_symmetric(spec);
    const ClairautRadius r = clairaut_radius(spec, alpha, u_star);
    if (!(std::abs(r.d_rho) < kCriticalTol)) {
        throw NotCriticalError("rho'(u) = " + std::to_string(r.d_rho) +
                               " is not zero: u is not a critical parallel");
    }
    const MetricJet a = spec.patch().jet(u_star, v_ref(spec));
    // d/dz = a(u) d/du.
    const double rho_z = a.g * r.d_rho;
    const double rho_zz = a.g * (a.g_u * r.d_rho + a.g * r.dd_rho);
    const double c = r.rho;
    const double c4 = c * c * c * c;
    return -2.0 * (r.rho * rho_zz + rho_z * rho_z) / c4;
}

Stability classify(double lambda) {
    if (std::abs(lambda) < kDegenerateLambda) {
        return Stability::degenerate;
    }
    return lambda > 0.0 ? Stability::stable : Stability::unstable;
}

std::array<double, 3> embed_revolution(const SurfaceSpec& spec, double u, double v) {
    if (!spec.is_revolution()) {
        throw KindError(spec.identifier() + " is not a surface of revolution in Euclidean space");
    }
    const MetricJet at = spec.patch().jet(u, v);
    const double base = spec.domain().u_min;

    constexpr int kChecks = 2000;
    for (int k = 0; k <= kChecks; ++k) {
        const double t = base + (u - base) * static_cast<double>(k) / kChecks;
        const double slope = spec.patch().jet_unchecked(t, v).g_u;
        if (!(std::abs(slope) <= 1.0 + 1e-12)) {
            throw NotRealizableError(spec.identifier() + ": |a'(" + std::to_string(t) +
                                     ")| > 1, no arc-length profile curve exists");
        }
    }
    const double b = quad::smooth(
        [&](double t) {
            const double s = spec.patch().jet_unchecked(t, v).g_u;
            return std::sqrt(std::max(0.0, 1.0 - s * s));
        },
        base, u);
    return {at.g * std::cos(v), at.g * std::sin(v), b};
}

}  // namespace catenary
