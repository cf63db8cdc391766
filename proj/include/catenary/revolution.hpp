#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "catenary/integrator.hpp"
#include "catenary/metric.hpp"

namespace catenary {

// Rotationally symmetric metrics G = a(u). Every operation here throws
// KindError when G depends on v.

struct Interval {
    double lo;
    double hi;
};

enum class Stability { stable, unstable, degenerate };

[[nodiscard]] std::string_view to_string(Stability s);

struct CriticalParallel {
    double u;
    double lambda;
    Stability classification;
};

// Clairaut radius rho(u) = a(u) u^alpha and its first two derivatives.
struct ClairautRadius {
    double rho;
    double d_rho;
    double dd_rho;
};

[[nodiscard]] ClairautRadius clairaut_radius(const SurfaceSpec& spec, double alpha, double u);

// rho(u) together with its critical parallels on a range.
class ClairautProfile {
public:
    ClairautProfile(const SurfaceSpec& spec, double alpha,
                    std::optional<Interval> range = std::nullopt);

    [[nodiscard]] double alpha() const { return alpha_; }
    [[nodiscard]] double rho(double u) const;
    [[nodiscard]] const std::vector<CriticalParallel>& critical_parallels() const {
        return critical_;
    }

private:
    SurfaceSpec spec_;
    double alpha_;
    std::vector<CriticalParallel> critical_;
};

// u^alpha a(u) sin(phi): conserved along every alpha-catenary (rho cos theta,
// theta the angle with the parallels).
[[nodiscard]] double clairaut_constant(const SurfaceSpec& spec, double alpha,
                                       const CatenaryState& state);

// Roots of rho'(u) = alpha u^(alpha-1) a + u^alpha a' on the range (default:
// the domain, capped at [1e-6, 1e6]), bracketed on a log grid of 1000 points
// per decade and refined by bisection to 1e-12.
[[nodiscard]] std::vector<CriticalParallel> critical_parallels(
    const SurfaceSpec& spec, double alpha, std::optional<Interval> range = std::nullopt);

// All u with rho(u) = c on the (capped) domain, sorted. A tangency at a
// critical parallel counts once. ConfigError for c <= 0.
[[nodiscard]] std::vector<double> turning_points(const SurfaceSpec& spec, double alpha, double c);

// v-advance of the catenary with Clairaut constant c between u0 and u1:
//
//   dv = integral dt / (a(t) sqrt(t^(2 alpha) a(t)^2 / c^2 - 1)),
//
// signed by u1 - u0. u1 may be +infinity. Square-root singularities at
// turning points are allowed at the endpoints (an endpoint with
// |rho - c| <= 1e-12 max(1, c) is taken as the exact turning point);
// InaccessibleRegionError when rho < c strictly inside.
[[nodiscard]] double quadrature_v(const SurfaceSpec& spec, double alpha, double c, double u0,
                                  double u1);

// z(u) = integral from u_ref to u of dt / a(t) (default u_ref: spec.anchor()).
// Metric becomes a(u)^2 (dz^2 + dv^2).
[[nodiscard]] double conformal_coordinate(const SurfaceSpec& spec, double u,
                                          std::optional<double> u_ref = std::nullopt);

// Linear stability exponent of the critical parallel u_star, computed in the
// conformal coordinate: lambda = V''(z*) / c^2 with V = -rhobar^2 / c^2,
// rhobar(z) = rho(u(z)) and c = rho(u_star). lambda > 0 is stable.
// NotCriticalError when |rho'(u_star)| is not small.
[[nodiscard]] double stability_exponent(const SurfaceSpec& spec, double alpha, double u_star);

[[nodiscard]] Stability classify(double lambda);

// psi(u, v) = (a cos v, a sin v, b(u)), b(u) = integral of sqrt(1 - a'^2)
// from the lower end of the domain. KindError for surfaces that are not of
// revolution, NotRealizableError once |a'| > 1 on the way.
[[nodiscard]] std::array<double, 3> embed_revolution(const SurfaceSpec& spec, double u, double v);

}  // namespace catenary
