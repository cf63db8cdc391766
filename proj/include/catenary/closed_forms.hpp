#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "catenary/curvature.hpp"
#include "catenary/metric.hpp"
#include "catenary/revolution.hpp"

namespace catenary {

// Exact solutions used as oracles. Graph families are u = u(t) with v = t;
// grusin_geodesic is parametrized by arc length; hyperbolic_quadrature is
// parametrized by u itself, v = v(u).

enum class FamilyKind { euclidean, cone, grusin_catenary, grusin_geodesic, hyperbolic_quadrature };

[[nodiscard]] std::string_view to_string(FamilyKind kind);

struct GraphJet {
    double u;
    double du;
    double ddu;
};

// u = cosh(mu t + nu) / mu. ConfigError for mu <= 0.
[[nodiscard]] double euclidean_catenary(double mu, double nu, double t);
[[nodiscard]] GraphJet euclidean_catenary_jet(double mu, double nu, double t);

// u = mu / sqrt(cos(sqrt2 v + nu)). DomainError unless |sqrt2 v + nu| < pi/2
// on the branch containing nu.
[[nodiscard]] double cone_catenary(double mu, double nu, double v);
[[nodiscard]] GraphJet cone_catenary_jet(double mu, double nu, double v);

// u = mu sqrt(2v + nu). DomainError for 2v + nu <= 0.
[[nodiscard]] double grusin_catenary(double mu, double nu, double v);
[[nodiscard]] GraphJet grusin_catenary_jet(double mu, double nu, double v);

struct PlaneJet {
    double u, v;
    double du, dv;
    double ddu, ddv;
};

// u = u0 cos(s/u0), v = v0 - (u0^2/2)(s/u0 + sin(2s/u0)/2).
// DomainError when |s/u0| >= pi/2 (u would be <= 0).
[[nodiscard]] std::pair<double, double> grusin_geodesic(double u0, double v0, double s);
[[nodiscard]] PlaneJet grusin_geodesic_jet(double u0, double v0, double s);

// c * integral du / (cosh(u/r) sqrt(u^(2 alpha) cosh^2(u/r) - c^2)), by
// adaptive quadrature with endpoint substitution.
[[nodiscard]] double hyperbolic_quadrature(double r, double alpha, double c, double u0, double u1);

class ClosedFormFamily {
public:
    static ClosedFormFamily euclidean(double mu, double nu);
    static ClosedFormFamily cone(double mu, double nu);
    static ClosedFormFamily grusin_catenary(double mu, double nu);
    static ClosedFormFamily grusin_geodesic(double u0, double v0);
    // alpha >= 0 so that rho is increasing and the accessible region is
    // (u_turn, inf).
    static ClosedFormFamily hyperbolic_quadrature(double r, double alpha, double c);

    [[nodiscard]] FamilyKind kind() const { return kind_; }
    [[nodiscard]] double first() const { return p1_; }
    [[nodiscard]] double second() const { return p2_; }
    // Open interval of the curve parameter (ends may be infinite).
    [[nodiscard]] const Interval& domain() const { return domain_; }

    // n interior parameters, uniform on the domain; infinite ends are cut to
    // a window of a few length scales.
    [[nodiscard]] std::vector<double> grid(std::size_t n) const;

    // Exact position, velocity and acceleration at parameter t.
    // DomainError outside the domain.
    [[nodiscard]] CurveJet2 jet(double t) const;

    // Relative residual of the family's reduced equation: uu'' = 1 + u'^2 in
    // the plane, uu'' = 3u'^2 + u^2 on the cone, uu'' + u'^2 = 0 on the Grusin
    // plane, the Grusin geodesic system, and the hyperbolic catenary equation
    // through its v(u) form.
    [[nodiscard]] double governing_residual(double t) const;

private:
    ClosedFormFamily(FamilyKind kind, double p1, double p2, double p3, Interval domain);

    FamilyKind kind_;
    double p1_;
    double p2_;
    double p3_;  // alpha for hyperbolic_quadrature
    Interval domain_;
};

// Residual of the geodesic equations
//   u'' + G11_22 v'^2,  v'' + 2 G2_12 u'v' + G2_22 v'^2
// (the larger in absolute value).
[[nodiscard]] double geodesic_residual(const SurfaceSpec& spec, const CurveJet2& jet);

// Max |catenary_residual| (or geodesic residual for grusin_geodesic) over the
// exact jets at the grid parameters. ConfigError for an empty grid.
[[nodiscard]] double validate_closed_form(const ClosedFormFamily& family, const SurfaceSpec& spec,
                                          double alpha, std::span<const double> grid);

}  // namespace catenary
