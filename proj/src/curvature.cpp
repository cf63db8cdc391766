#include "catenary/curvature.hpp"

#include <cmath>

#include "catenary/errors.hpp"

namespace catenary {

namespace {

struct JetTerms {
    MetricValue m;
    double speed;      // |gamma'|
    double numerator;  // v'(G_v u'v' + 2G_u u'^2 + G^2 G_u v'^2) + G(u'v'' - u''v')
};

JetTerms evaluate(const SurfaceSpec& spec, const CurveJet2& j) {
    const MetricValue m = eval_metric(spec, j.u, j.v);
    const double speed2 = j.du * j.du + m.g * m.g * j.dv * j.dv;
    if (!(speed2 > 0.0)) {
        throw SingularJetError("curve jet has zero velocity");
    }
    const double transport =
        j.dv * (m.g_v * j.du * j.dv + 2.0 * m.g_u * j.du * j.du + m.g * m.g * m.g_u * j.dv * j.dv);
    const double rotation = m.g * (j.du * j.ddv - j.ddu * j.dv);
    return {m, std::sqrt(speed2), transport + rotation};
}

double target(const JetTerms& t, double alpha, const CurveJet2& j) {
    return alpha * t.m.g * j.dv / (j.u * t.speed);
}

}  // namespace

double geodesic_curvature(const SurfaceSpec& spec, const CurveJet2& jet) {
    const JetTerms t = evaluate(spec, jet);
    return -t.numerator / (t.speed * t.speed * t.speed);
}

double catenary_target_curvature(const SurfaceSpec& spec, double alpha, const CurveJet2& jet) {
    if (!(jet.u > 0.0)) {
        throw DomainError("catenary target curvature needs u > 0");
    }
    return target(evaluate(spec, jet), alpha, jet);
}

double catenary_residual(const SurfaceSpec& spec, double alpha, const CurveJet2& jet) {
    if (!(jet.u > 0.0)) {
        throw DomainError("catenary residual needs u > 0");
    }
    const JetTerms t = evaluate(spec, jet);
    const double s3 = t.speed * t.speed * t.speed;
    return (alpha * jet.dv * t.m.g / jet.u * t.speed * t.speed + t.numerator) / s3;
}

double normal_transversality(const SurfaceSpec& spec, const CurveJet2& jet) {
    const JetTerms t = evaluate(spec, jet);
    return -jet.dv * t.m.g / t.speed;
}

bool parallel_catenary_check(const SurfaceSpec& spec, double alpha, double u0,
                             std::span<const double> v_samples, double tol) {
    if (!(u0 > 0.0)) {
        throw DomainError("parallel check needs u0 > 0");
    }
    if (v_samples.empty()) {
        throw ConfigError("parallel check needs at least one v sample");
    }
    for (const double v : v_samples) {
        const MetricValue m = eval_metric(spec, u0, v);
        if (!(std::abs(alpha * m.g + u0 * m.g_u) < tol)) {
            return false;
        }
    }
    return true;
}

}  // namespace catenary
