#include "catenary/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "catenary/errors.hpp"
#include "catenary/quadrature.hpp"

namespace catenary {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHalfPi = std::numbers::pi / 2;

double rel(double residual, std::initializer_list<double> terms) {
    double scale = 0.0;
    for (double t : terms) {
        scale += std::abs(t);
    }
    return std::abs(residual) / std::max(scale, 1e-300);
}

// 2 pi k nearest to nu: the branch of the cone solution that contains nu.
double cone_branch(double nu) {
    return 2 * std::numbers::pi * std::round(nu / (2 * std::numbers::pi));
}

double hyperbolic_rho(double r, double alpha, double u) {
    return std::pow(u, alpha) * std::cosh(u / r);
}

double hyperbolic_turn(double r, double alpha, double c) {
    const double target = std::abs(c);
    if (!(hyperbolic_rho(r, alpha, 1e-300) < target)) {
        return 0.0;
    }
    double lo = 0.0, hi = 1.0;
    while (hyperbolic_rho(r, alpha, hi) < target) {
        lo = hi;
        hi *= 2.0;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (hyperbolic_rho(r, alpha, mid) < target ? lo : hi) = mid;
    }
    return hi;
}

}  // namespace

std::string_view to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::euclidean:
            return "euclidean";
        case FamilyKind::cone:
            return "cone";
        case FamilyKind::grusin_catenary:
            return "grusin_catenary";
        case FamilyKind::grusin_geodesic:
            return "grusin_geodesic";
        case FamilyKind::hyperbolic_quadrature:
            return "hyperbolic_quadrature";
    }
    return "unknown";
}

double euclidean_catenary(double mu, double nu, double t) {
    return euclidean_catenary_jet(mu, nu, t).u;
}

GraphJet euclidean_catenary_jet(double mu, double nu, double t) {
    if (!(mu > 0.0)) {
        throw ConfigError("euclidean catenary needs mu > 0");
    }
    const double x = mu * t + nu;
    return {std::cosh(x) / mu, std::sinh(x), mu * std::cosh(x)};
}

double cone_catenary(double mu, double nu, double v) {
    return cone_catenary_jet(mu, nu, v).u;
}

GraphJet cone_catenary_jet(double mu, double nu, double v) {
    if (!(mu > 0.0)) {
        throw ConfigError("cone catenary needs mu > 0");
    }
    const double w = std::numbers::sqrt2 * v + nu;
    if (!(std::abs(w - cone_branch(nu)) < kHalfPi)) {
        throw DomainError("cone catenary: sqrt2 v + nu outside (-pi/2, pi/2)");
    }
    const double cw = std::cos(w), sw = std::sin(w);
    if (!(cw > 0.0)) {
        throw DomainError("cone catenary: blow-up boundary reached");
    }
    return {mu / std::sqrt(cw), mu * std::numbers::sqrt2 / 2 * sw * std::pow(cw, -1.5),
            mu * (std::pow(cw, -0.5) + 1.5 * sw * sw * std::pow(cw, -2.5))};
}

double grusin_catenary(double mu, double nu, double v) {
    return grusin_catenary_jet(mu, nu, v).u;
}

GraphJet grusin_catenary_jet(double mu, double nu, double v) {
    if (!(mu > 0.0)) {
        throw ConfigError("grusin catenary needs mu > 0");
    }
    const double w = 2 * v + nu;
    if (!(w > 0.0)) {
        throw DomainError("grusin catenary needs 2v + nu > 0");
    }
    return {mu * std::sqrt(w), mu / std::sqrt(w), -mu * std::pow(w, -1.5)};
}

std::pair<double, double> grusin_geodesic(double u0, double v0, double s) {
    const PlaneJet j = grusin_geodesic_jet(u0, v0, s);
    return {j.u, j.v};
}

PlaneJet grusin_geodesic_jet(double u0, double v0, double s) {
    if (!(u0 > 0.0)) {
        throw ConfigError("grusin geodesic needs u0 > 0");
    }
    const double x = s / u0;
    if (!(std::abs(x) < kHalfPi)) {
        throw DomainError("grusin geodesic: u <= 0 outside one arch");
    }
    const double cx = std::cos(x), sx = std::sin(x);
    return {u0 * cx,  v0 - u0 * u0 / 2 * (x + 0.5 * std::sin(2 * x)),
            -sx,      -u0 * cx * cx,
            -cx / u0, 2 * cx * sx};
}

double hyperbolic_quadrature(double r, double alpha, double c, double u0, double u1) {
    if (!(r > 0.0) || c == 0.0) {
        throw ConfigError("hyperbolic quadrature needs r > 0 and c != 0");
    }
    if (u0 == u1) {
        return 0.0;
    }
    if (u1 < u0) {
        return -hyperbolic_quadrature(r, alpha, c, u1, u0);
    }
    if (!(u0 > 0.0) || !std::isfinite(u1)) {
        throw DomainError("hyperbolic quadrature needs 0 < u0 and finite u1");
    }
    const double c_abs = std::abs(c);
    constexpr int kChecks = 512;
    for (int k = 1; k < kChecks; ++k) {
        const double t = u0 + (u1 - u0) * k / kChecks;
        if (hyperbolic_rho(r, alpha, t) < c_abs * (1 - 1e-12)) {
            throw InaccessibleRegionError("u^alpha cosh(u/r) < |c| inside the interval");
        }
    }
    auto endpoint = [&](double t) {
        const double ch = std::cosh(t / r), sh = std::sinh(t / r);
        const double p0 = std::pow(t, alpha);
        const double p1 = alpha * std::pow(t, alpha - 1);
        const double p2 = alpha * (alpha - 1) * std::pow(t, alpha - 2);
        return quad::Excess{p0 * ch - c_abs, p1 * ch + p0 * sh / r,
                            p2 * ch + 2 * p1 * sh / r + p0 * ch / (r * r)};
    };
    auto excess = [&](double t) { return hyperbolic_rho(r, alpha, t) - c_abs; };
    auto weight = [&](double t, double e) {
        return c_abs / (std::cosh(t / r) * std::sqrt(e + 2 * c_abs));
    };
    const double integral =
        quad::inverse_sqrt_excess(endpoint, excess, weight, u0, u1, 1e-12 * std::max(1.0, c_abs));
    return std::copysign(integral, c);
}

ClosedFormFamily::ClosedFormFamily(FamilyKind kind, double p1, double p2, double p3,
                                   Interval domain)
    : kind_(kind), p1_(p1), p2_(p2), p3_(p3), domain_(domain) {}

ClosedFormFamily ClosedFormFamily::euclidean(double mu, double nu) {
    if (!(mu > 0.0)) {
        throw ConfigError("euclidean catenary needs mu > 0");
    }
    return {FamilyKind::euclidean, mu, nu, 0.0, {-kInf, kInf}};
}

ClosedFormFamily ClosedFormFamily::cone(double mu, double nu) {
    if (!(mu > 0.0)) {
        throw ConfigError("cone catenary needs mu > 0");
    }
    const double k = cone_branch(nu);
    if (!(std::abs(nu - k) < kHalfPi)) {
        throw ConfigError("cone catenary: nu lies between branches");
    }
    return {FamilyKind::cone,
            mu,
            nu,
            0.0,
            {(k - kHalfPi - nu) / std::numbers::sqrt2, (k + kHalfPi - nu) / std::numbers::sqrt2}};
}

ClosedFormFamily ClosedFormFamily::grusin_catenary(double mu, double nu) {
    if (!(mu > 0.0)) {
        throw ConfigError("grusin catenary needs mu > 0");
    }
    return {FamilyKind::grusin_catenary, mu, nu, 0.0, {-nu / 2, kInf}};
}

ClosedFormFamily ClosedFormFamily::grusin_geodesic(double u0, double v0) {
    if (!(u0 > 0.0)) {
        throw ConfigError("grusin geodesic needs u0 > 0");
    }
    return {FamilyKind::grusin_geodesic, u0, v0, 0.0, {-kHalfPi * u0, kHalfPi * u0}};
}

ClosedFormFamily ClosedFormFamily::hyperbolic_quadrature(double r, double alpha, double c) {
    if (!(r > 0.0) || c == 0.0 || !(alpha >= 0.0)) {
        throw ConfigError("hyperbolic family needs r > 0, alpha >= 0 and c != 0");
    }
    return {FamilyKind::hyperbolic_quadrature, r, c, alpha, {hyperbolic_turn(r, alpha, c), kInf}};
}

std::vector<double> ClosedFormFamily::grid(std::size_t n) const {
    double lo = domain_.lo, hi = domain_.hi;
    switch (kind_) {
        case FamilyKind::euclidean: {
            const double centre = -p2_ / p1_;
            lo = centre - 2.0 / p1_;
            hi = centre + 2.0 / p1_;
            break;
        }
        case FamilyKind::grusin_catenary:
            hi = lo + 4.0;
            break;
        case FamilyKind::hyperbolic_quadrature:
            hi = lo + 4.0 * p1_;
            break;
        default:
            break;
    }
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = lo + (hi - lo) * static_cast<double>(i + 1) / static_cast<double>(n + 1);
    }
    return out;
}

CurveJet2 ClosedFormFamily::jet(double t) const {
    if (!(t > domain_.lo && t < domain_.hi)) {
        throw DomainError("closed-form parameter outside the family domain");
    }
    switch (kind_) {
        case FamilyKind::euclidean: {
            const GraphJet g = euclidean_catenary_jet(p1_, p2_, t);
            return {g.u, t, g.du, 1.0, g.ddu, 0.0};
        }
        case FamilyKind::cone: {
            const GraphJet g = cone_catenary_jet(p1_, p2_, t);
            return {g.u, t, g.du, 1.0, g.ddu, 0.0};
        }
        case FamilyKind::grusin_catenary: {
            const GraphJet g = grusin_catenary_jet(p1_, p2_, t);
            return {g.u, t, g.du, 1.0, g.ddu, 0.0};
        }
        case FamilyKind::grusin_geodesic: {
            const PlaneJet g = grusin_geodesic_jet(p1_, p2_, t);
            return {g.u, g.v, g.du, g.dv, g.ddu, g.ddv};
        }
        case FamilyKind::hyperbolic_quadrature: {
            const double r = p1_, c = p2_, alpha = p3_;
            const double a = std::cosh(t / r), da = std::sinh(t / r) / r;
            const double rho = std::pow(t, alpha) * a;
            const double drho =
                (t > 0.0 ? alpha * std::pow(t, alpha - 1.0) * a : 0.0) + std::pow(t, alpha) * da;
            const double q = rho * rho - c * c;
            const double sq = std::sqrt(q);
            const double dv = c / (a * sq);
            const double dq = 2 * rho * drho;
            const double ddv = -c * (da * sq + a * dq / (2 * sq)) / (a * a * q);
            const double v = catenary::hyperbolic_quadrature(r, alpha, c, domain_.lo, t);
            return {t, v, 1.0, dv, 0.0, ddv};
        }
    }
    throw ConfigError("unknown closed-form family");
}

double ClosedFormFamily::governing_residual(double t) const {
    const CurveJet2 j = jet(t);
    switch (kind_) {
        case FamilyKind::euclidean:
            return rel(j.u * j.ddu - 1.0 - j.du * j.du, {j.u * j.ddu, 1.0, j.du * j.du});
        case FamilyKind::cone:
            return rel(j.u * j.ddu - 3 * j.du * j.du - j.u * j.u,
                       {j.u * j.ddu, 3 * j.du * j.du, j.u * j.u});
        case FamilyKind::grusin_catenary:
            return rel(j.u * j.ddu + j.du * j.du, {j.u * j.ddu, j.du * j.du});
        case FamilyKind::grusin_geodesic: {
            const double u3 = j.u * j.u * j.u;
            const double r1 = rel(j.ddu + j.dv * j.dv / u3, {j.ddu, j.dv * j.dv / u3});
            const double r2 = rel(j.ddv - 2 * j.du * j.dv / j.u, {j.ddv, 2 * j.du * j.dv / j.u});
            return std::max(r1, r2);
        }
        case FamilyKind::hyperbolic_quadrature: {
            // Clairaut relation u^alpha a^2 v' = c sqrt(1 + a^2 v'^2) in the
            // u-parametrization.
            const double a = std::cosh(j.u / p1_);
            const double lhs = std::pow(j.u, p3_) * a * a * j.dv;
            const double rhs = p2_ * std::sqrt(1 + a * a * j.dv * j.dv);
            return rel(lhs - rhs, {lhs, rhs});
        }
    }
    return 0.0;
}

double geodesic_residual(const SurfaceSpec& spec, const CurveJet2& jet) {
    const Christoffel ch = christoffel(spec, jet.u, jet.v);
    const double r1 = jet.ddu + ch.g1_22 * jet.dv * jet.dv;
    const double r2 = jet.ddv + 2 * ch.g2_12 * jet.du * jet.dv + ch.g2_22 * jet.dv * jet.dv;
    return std::max(std::abs(r1), std::abs(r2));
}

double validate_closed_form(const ClosedFormFamily& family, const SurfaceSpec& spec, double alpha,
                            std::span<const double> grid) {
    if (grid.empty()) {
        throw ConfigError("validation grid is empty");
    }
    double worst = 0.0;
    for (const double t : grid) {
        const CurveJet2 j = family.jet(t);
        const double r = family.kind() == FamilyKind::grusin_geodesic
                             ? geodesic_residual(spec, j)
                             : std::abs(catenary_residual(spec, alpha, j));
        worst = std::max(worst, r);
    }
    return worst;
}

}  // namespace catenary
