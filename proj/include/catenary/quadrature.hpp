#pragma once

#include <functional>

namespace catenary::quad {

// Integral of f over [a, b] where f may have an integrable 1/sqrt singularity
// at either endpoint. The interval is split at its midpoint and each half is
// mapped by t = endpoint +- xi^2, which removes the singularity. Signed:
// b < a gives the negated integral.
[[nodiscard]] double endpoint_singular(const std::function<double(double)>& f, double a, double b,
                                       double tol = 1e-13);

// Integral of f over [a, inf). [a, 2a'] is handled as above (a' = max(a, 1));
// the tail is mapped by t = T / w onto (0, 1].
[[nodiscard]] double to_infinity(const std::function<double(double)>& f, double a,
                                 double tol = 1e-13);

// Plain adaptive Gauss-Kronrod on a smooth integrand. Signed.
[[nodiscard]] double smooth(const std::function<double(double)>& f, double a, double b,
                            double tol = 1e-13);

// e(t) = rho(t) - c and its first two derivatives.
struct Excess {
    double e;
    double d1;
    double d2;
};

// Integral over [a, b] (a < b, b may be +inf) of weight(t, e) / sqrt(e(t))
// for a level-crossing excess e = rho - c >= 0. An endpoint with
// |e| <= snap_tol and e increasing into the interval is a turning point: it is
// moved onto the root of the local quadratic model of e, and near it e is
// evaluated as xi^2 q(xi) from that model, so the result does not inherit the
// sqrt sensitivity to rounding in the endpoint. Samples with e <= 0 add
// nothing. InaccessibleRegionError for an endpoint with e < -snap_tol.
[[nodiscard]] double inverse_sqrt_excess(const std::function<Excess(double)>& endpoint,
                                         const std::function<double(double)>& excess,
                                         const std::function<double(double, double)>& weight,
                                         double a, double b, double snap_tol, double tol = 1e-13);

}  // namespace catenary::quad
