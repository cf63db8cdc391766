#include "catenary/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "catenary/errors.hpp"

namespace catenary::quad {

namespace {

constexpr unsigned kMaxDepth = 15;
// Offsets below this (relative to the endpoint) use the local model of e.
constexpr double kModelReach = 1e-6;

double gk(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) {
        return 0.0;
    }
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, kMaxDepth, tol,
                                                                         &err);
}

// Half interval of length len from endpoint p, walking in direction sigma.
double half(const std::function<Excess(double)>& endpoint,
            const std::function<double(double)>& excess,
            const std::function<double(double, double)>& weight, double p, double sigma, double len,
            double snap_tol, double tol) {
    const Excess j = endpoint(p);
    const double k = sigma * j.d1;
    const bool snap = std::abs(j.e) <= snap_tol && k > 0.0;
    if (!snap && j.e < -snap_tol) {
        throw InaccessibleRegionError("rho < c at the integration limit u = " + std::to_string(p));
    }
    const double eta0 = snap ? -j.e / k : 0.0;
    const double reach = kModelReach * std::max(1.0, std::abs(p));

    const auto f = [&](double xi) {
        const double x2 = xi * xi;
        const double eta = eta0 + x2;
        const double t = p + sigma * eta;
        double q;  // e / xi^2
        double e;
        if (std::abs(eta) < reach) {
            if (snap) {
                q = k + 0.5 * j.d2 * (2.0 * eta0 + x2);
                e = x2 * q;
            } else {
                e = j.e + eta * (k + 0.5 * j.d2 * eta);
                q = e / x2;
            }
        } else {
            e = excess(t);
            q = e / x2;
        }
        if (!(e > 0.0) || !(q > 0.0)) {
            return 0.0;
        }
        return 2.0 * weight(t, e) / std::sqrt(q);
    };
    const double span = len - eta0;
    return span > 0.0 ? gk(f, 0.0, std::sqrt(span), tol) : 0.0;
}

}  // namespace

double smooth(const std::function<double(double)>& f, double a, double b, double tol) {
    return gk(f, a, b, tol);
}

double endpoint_singular(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) {
        return 0.0;
    }
    if (b < a) {
        return -endpoint_singular(f, b, a, tol);
    }
    const double m = 0.5 * (a + b);
    const auto left = [&](double xi) { return 2.0 * xi * f(a + xi * xi); };
    const auto right = [&](double xi) { return 2.0 * xi * f(b - xi * xi); };
    return gk(left, 0.0, std::sqrt(m - a), tol) + gk(right, 0.0, std::sqrt(b - m), tol);
}

double to_infinity(const std::function<double(double)>& f, double a, double tol) {
    const double t_split = 2.0 * std::max(a, 1.0);
    const auto tail = [&](double w) { return f(t_split / w) * t_split / (w * w); };
    return endpoint_singular(f, a, t_split, tol) + gk(tail, 0.0, 1.0, tol);
}

double inverse_sqrt_excess(const std::function<Excess(double)>& endpoint,
                           const std::function<double(double)>& excess,
                           const std::function<double(double, double)>& weight, double a, double b,
                           double snap_tol, double tol) {
    if (!(b > a)) {
        return 0.0;
    }
    if (std::isinf(b)) {
        const double t_split = 2.0 * std::max(a, 1.0);
        const auto tail = [&](double w) {
            const double t = t_split / w;
            const double e = excess(t);
            return e > 0.0 ? weight(t, e) / std::sqrt(e) * t_split / (w * w) : 0.0;
        };
        return inverse_sqrt_excess(endpoint, excess, weight, a, t_split, snap_tol, tol) +
               gk(tail, 0.0, 1.0, tol);
    }
    const double len = 0.5 * (b - a);
    return half(endpoint, excess, weight, a, 1.0, len, snap_tol, tol) +
           half(endpoint, excess, weight, b, -1.0, len, snap_tol, tol);
}

}  // namespace catenary::quad
