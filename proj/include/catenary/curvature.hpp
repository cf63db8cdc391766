#pragma once

#include <span>

#include "catenary/metric.hpp"

namespace catenary {

// Position, velocity and acceleration of a curve t -> (u(t), v(t)).
struct CurveJet2 {
    double u;
    double v;
    double du;
    double dv;
    double ddu;
    double ddv;
};

// Signed geodesic curvature in semi-geodesic coordinates,
//
//   kappa = -[v'(G_v u'v' + 2 G_u u'^2 + G^2 G_u v'^2) + G(u'v'' - u''v')]
//           / (u'^2 + G^2 v'^2)^(3/2).
//
// With this sign a unit-speed circle run counterclockwise in the (u, v) plane
// has kappa = -1. SingularJetError for zero velocity.
[[nodiscard]] double geodesic_curvature(const SurfaceSpec& spec, const CurveJet2& jet);

// alpha G v' / (u |gamma'|): the curvature an alpha-catenary must have.
[[nodiscard]] double catenary_target_curvature(const SurfaceSpec& spec, double alpha,
                                               const CurveJet2& jet);

// Euler-Lagrange residual divided by |gamma'|^3, so it does not depend on the
// speed of the parametrization. Equals target - kappa; zero exactly on
// alpha-catenaries.
[[nodiscard]] double catenary_residual(const SurfaceSpec& spec, double alpha, const CurveJet2& jet);

// <n, d/du> = -v' G / |gamma'| for the unit normal n = (-v'G d_u + (u'/G) d_v)/|gamma'|.
[[nodiscard]] double normal_transversality(const SurfaceSpec& spec, const CurveJet2& jet);

// Whether the parallel u = u0 is an alpha-catenary: |alpha G + u0 G_u| < tol at
// every sample v.
[[nodiscard]] bool parallel_catenary_check(const SurfaceSpec& spec, double alpha, double u0,
                                           std::span<const double> v_samples, double tol = 1e-9);

}  // namespace catenary
