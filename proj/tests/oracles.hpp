#pragma once

// Reference computations for the tests. Nothing here calls the library's
// integrators, root finders or quadrature.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 300; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const double fm = f(mid);
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Root of cos u = u sin u on (0, pi/2).
inline double sphere_critical() {
    return bisect([](double u) { return std::cos(u) - u * std::sin(u); }, 0.1, 1.5);
}

inline double central_diff(const std::function<double(double)>& f, double x, double h = 1e-6) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Composite Simpson on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    }
    return sum * h / 3.0;
}

// dv between a simple turning point u0 (rho(u0) = c, rho increasing through
// it) and u1, for rho = u^alpha a(u): substitution u = u0 + x^2 removes the
// inverse square root, then Simpson.
inline double clairaut_dv(const std::function<double(double)>& a, double alpha, double c, double u0,
                          double u1, int n = 20000) {
    const auto f = [&](double x) {
        const double u = u0 + x * x;
        if (x == 0.0) {
            const double h = 1e-7;
            const double rho_p =
                (std::pow(u0 + h, alpha) * a(u0 + h) - std::pow(u0, alpha) * a(u0)) / h;
            return 2.0 / (a(u0) * std::sqrt(2.0 * rho_p / c));
        }
        const double r = std::pow(u, alpha) * a(u) / c;
        return 2.0 * x / (a(u) * std::sqrt(r * r - 1.0));
    };
    return simpson(f, 0.0, std::sqrt(u1 - u0), n);
}

// Geodesics of the conformal metric u^(2 alpha) (du^2 + G^2 dv^2) for G = a(u),
// by classical RK4 in an affine parameter. State (u, v, u', v').
struct ConformalGeodesic {
    std::function<double(double)> a;
    std::function<double(double)> da;
    double alpha;

    using State = std::array<double, 4>;

    State rhs(const State& y) const {
        const double u = y[0];
        const double g = a(u);
        const double gu = da(u);
        const double g111 = alpha / u;
        const double g122 = -(alpha * g * g / u + g * gu);
        const double g212 = alpha / u + gu / g;
        return {y[2], y[3], -g111 * y[2] * y[2] - g122 * y[3] * y[3], -2.0 * g212 * y[2] * y[3]};
    }

    State step(const State& y, double h) const {
        auto add = [](const State& p, const State& q, double k) {
            return State{p[0] + k * q[0], p[1] + k * q[1], p[2] + k * q[2], p[3] + k * q[3]};
        };
        const State k1 = rhs(y);
        const State k2 = rhs(add(y, k1, 0.5 * h));
        const State k3 = rhs(add(y, k2, 0.5 * h));
        const State k4 = rhs(add(y, k3, h));
        State out = y;
        for (int i = 0; i < 4; ++i) {
            out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        return out;
    }

    // Path (v, u) from (u0, v0) with tangent angle phi0, until v passes v_end
    // or u leaves (u_lo, u_hi). Requires v increasing along the path.
    std::vector<std::array<double, 2>> path(double u0, double v0, double phi0, double v_end,
                                            double h, double u_lo = 0.0,
                                            double u_hi = 1e300) const {
        State y{u0, v0, std::cos(phi0), std::sin(phi0) / a(u0)};
        std::vector<std::array<double, 2>> out{{y[1], y[0]}};
        while (y[1] < v_end && y[0] > u_lo && y[0] < u_hi && out.size() < 50'000'000) {
            y = step(y, h);
            out.push_back({y[1], y[0]});
        }
        return out;
    }
};

// Linear interpolation of u at v on a path sorted by v.
inline double u_on_path(const std::vector<std::array<double, 2>>& path, double v) {
    auto it = std::lower_bound(path.begin(), path.end(), v,
                               [](const std::array<double, 2>& p, double x) { return p[0] < x; });
    if (it == path.begin()) {
        return path.front()[1];
    }
    if (it == path.end()) {
        return path.back()[1];
    }
    const auto& q = *it;
    const auto& p = *(it - 1);
    const double w = (v - p[0]) / (q[0] - p[0]);
    return p[1] + w * (q[1] - p[1]);
}

// Signed geodesic curvature of a jet for G = G(u, v), straight from the
// Christoffel form kappa = sqrt(det g) (x' y'' - ...) written out for the
// metric du^2 + G^2 dv^2:
//   kappa = G [u'(v'' + Gamma2(u', v')) - v'(u'' + Gamma1(u', v'))] / |gamma'|^3
// with Gamma1 = -G G_u v'^2, Gamma2 = 2 (G_u/G) u'v' + (G_v/G) v'^2. The
// library uses the opposite orientation, so the result is negated.
inline double kappa(double g, double gu, double gv, double du, double dv, double ddu, double ddv) {
    const double acc_u = ddu - g * gu * dv * dv;
    const double acc_v = ddv + 2.0 * gu / g * du * dv + gv / g * dv * dv;
    const double speed = std::sqrt(du * du + g * g * dv * dv);
    return -g * (du * acc_v - dv * acc_u) / (speed * speed * speed);
}

}  // namespace oracle
