#pragma once

#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace catenary {

// Semi-geodesic metrics ds^2 = du^2 + G(u,v)^2 dv^2. The reference curve is
// the coordinate curve u = 0 and u is the intrinsic distance to it.

enum class SurfaceKind {
    plane,
    cylinder,
    sphere,
    hyperbolic,
    cone,
    catenoid,
    helicoid,
    binormal,
    grusin,
    revolution_profile,
    ruled,
};

[[nodiscard]] std::string_view to_string(SurfaceKind kind);
[[nodiscard]] std::optional<SurfaceKind> parse_surface_kind(std::string_view name);

// Kinds that catalog_surface can build without sample tables.
[[nodiscard]] std::vector<SurfaceKind> catalog_kinds();

struct MetricValue {
    double g;
    double g_u;
    double g_v;
};

// MetricValue plus G_uu, which the stability analysis of surfaces of
// revolution needs.
struct MetricJet {
    double g;
    double g_u;
    double g_v;
    double g_uu;
};

// The three Christoffel symbols that do not vanish identically.
struct Christoffel {
    double g1_22;  // -G G_u
    double g2_12;  // G_u / G
    double g2_22;  // G_v / G
};

// Open rectangle (u_min, u_max) x (v_min, v_max), u_min >= 0.
struct Domain {
    double u_min = 0.0;
    double u_max = std::numeric_limits<double>::infinity();
    double v_min = -std::numeric_limits<double>::infinity();
    double v_max = std::numeric_limits<double>::infinity();

    [[nodiscard]] bool contains(double u, double v) const {
        return u > u_min && u < u_max && v > v_min && v < v_max;
    }
};

// Evaluator of G and its partials over a domain. Immutable.
class MetricPatch {
public:
    using Evaluator = std::function<MetricJet(double u, double v)>;

    MetricPatch(std::string identifier, Domain domain, Evaluator evaluator, bool v_independent);

    // Throws DomainError outside the open domain or where G <= 0.
    [[nodiscard]] MetricJet jet(double u, double v) const;
    [[nodiscard]] MetricValue operator()(double u, double v) const;

    // No domain check. Used for limits at the domain boundary (anchors of
    // conformal and embedding integrals) where the formula is still smooth.
    [[nodiscard]] MetricJet jet_unchecked(double u, double v) const { return eval_(u, v); }

    [[nodiscard]] const std::string& identifier() const { return id_; }
    [[nodiscard]] const Domain& domain() const { return domain_; }
    [[nodiscard]] bool v_independent() const { return v_independent_; }

private:
    std::string id_;
    Domain domain_;
    Evaluator eval_;
    bool v_independent_;
};

using ParamMap = std::map<std::string, double, std::less<>>;

class SurfaceSpec {
public:
    SurfaceSpec(SurfaceKind kind, ParamMap params, MetricPatch patch, double anchor,
                bool realizability_warning);

    [[nodiscard]] SurfaceKind kind() const { return kind_; }
    [[nodiscard]] const ParamMap& params() const { return params_; }
    [[nodiscard]] const MetricPatch& patch() const { return patch_; }
    [[nodiscard]] const Domain& domain() const { return patch_.domain(); }
    [[nodiscard]] const std::string& identifier() const { return patch_.identifier(); }

    // G_v == 0 everywhere, so G = a(u) and the Clairaut machinery applies.
    [[nodiscard]] bool rotationally_symmetric() const { return patch_.v_independent(); }

    // Kinds that are surfaces of revolution in Euclidean space (possibly
    // only partly realizable).
    [[nodiscard]] bool is_revolution() const;

    // Base point u_ref for the conformal coordinate and the meridian height.
    [[nodiscard]] double anchor() const { return anchor_; }

    // Set when |a'(u)| > 1 somewhere: the metric is fine, but it is not the
    // induced metric of an arc-length parametrized surface of revolution.
    [[nodiscard]] bool realizability_warning() const { return warn_; }

private:
    SurfaceKind kind_;
    ParamMap params_;
    MetricPatch patch_;
    double anchor_;
    bool warn_;
};

// Returns (G, G_u, G_v). DomainError outside the open domain.
[[nodiscard]] MetricValue eval_metric(const SurfaceSpec& spec, double u, double v);

[[nodiscard]] Christoffel christoffel(const SurfaceSpec& spec, double u, double v);

// Catalog entries. Parameters:
//   hyperbolic: r > 0 (required)
//   cone:       slope > 0, a(u) = slope * u (default 1/sqrt(2))
//   binormal:   tau > 0 (required)
//   sphere:     extended = 1 widens the domain to (0, pi); G <= 0 is still
//               rejected on evaluation.
// Unknown or nonpositive parameters raise ConfigError.
[[nodiscard]] SurfaceSpec catalog_surface(SurfaceKind kind, const ParamMap& params = {});
[[nodiscard]] SurfaceSpec catalog_surface(std::string_view kind, const ParamMap& params = {});

// sqrt(1 + 2u f(v) + u^2 g(v)); DegenerateMetricError when the radicand <= 0.
[[nodiscard]] double ruled_metric(const std::function<double(double)>& f,
                                  const std::function<double(double)>& g, double u, double v);

struct ProfileSample {
    double u;
    double a;
};

// Surface of revolution with a(u) interpolated by a monotone cubic.
// ConfigError for fewer than 4 samples, non-increasing u, u < 0 or a <= 0.
[[nodiscard]] SurfaceSpec tabulated_profile(std::span<const ProfileSample> samples);

struct RuledSample {
    double v;
    double f;  // <c'(v), W'(v)>
    double g;  // |W'(v)|^2
};

// Ruled surface c(v) + u W(v) with tabulated f and g. The u-domain ends at
// the first degeneracy of the radicand found on the v samples.
[[nodiscard]] SurfaceSpec ruled_surface(std::span<const RuledSample> samples);

// Two-column CSV `u,a` with header.
[[nodiscard]] std::vector<ProfileSample> read_profile_csv(const std::filesystem::path& path);
// Three-column CSV `v,f,g` with header.
[[nodiscard]] std::vector<RuledSample> read_ruled_csv(const std::filesystem::path& path);

}  // namespace catenary
