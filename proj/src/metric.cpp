#include "catenary/metric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "catenary/errors.hpp"
#include "catenary/interpolation.hpp"

namespace catenary {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr std::array<std::pair<SurfaceKind, std::string_view>, 11> kKindNames{{
    {SurfaceKind::plane, "plane"},
    {SurfaceKind::cylinder, "cylinder"},
    {SurfaceKind::sphere, "sphere"},
    {SurfaceKind::hyperbolic, "hyperbolic"},
    {SurfaceKind::cone, "cone"},
    {SurfaceKind::catenoid, "catenoid"},
    {SurfaceKind::helicoid, "helicoid"},
    {SurfaceKind::binormal, "binormal"},
    {SurfaceKind::grusin, "grusin"},
    {SurfaceKind::revolution_profile, "revolution_profile"},
    {SurfaceKind::ruled, "ruled"},
}};

std::string format_number(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

std::string make_identifier(SurfaceKind kind, const ParamMap& params) {
    std::string id(to_string(kind));
    if (params.empty()) {
        return id;
    }
    id += '(';
    bool first = true;
    for (const auto& [key, value] : params) {
        if (!first) {
            id += ',';
        }
        first = false;
        id += key + '=' + format_number(value);
    }
    id += ')';
    return id;
}

// G = sqrt(1 + tau2 u^2). Shared by the catenoid, the helicoid and binormal
// surfaces so that isometric entries produce identical bits.
MetricJet unit_radicand_jet(double u, double tau2) {
    const double q = std::sqrt(1.0 + tau2 * (u * u));
    return {q, tau2 * u / q, 0.0, tau2 / (q * q * q)};
}

double require_positive(const ParamMap& params, std::string_view key, SurfaceKind kind) {
    auto it = params.find(key);
    if (it == params.end()) {
        throw ConfigError(std::string(to_string(kind)) + ": missing parameter '" +
                          std::string(key) + "'");
    }
    if (!(it->second > 0.0) || !std::isfinite(it->second)) {
        throw ConfigError(std::string(to_string(kind)) + ": parameter '" + std::string(key) +
                          "' must be positive");
    }
    return it->second;
}

void reject_unknown(const ParamMap& params, std::initializer_list<std::string_view> allowed,
                    SurfaceKind kind) {
    for (const auto& [key, value] : params) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError(std::string(to_string(kind)) + ": unknown parameter '" + key + "'");
        }
    }
}

std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& path,
                                                  std::span<const std::string_view> header) {
    std::ifstream in(path);
    if (!in) {
        throw IOError("cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw ConfigError(path.string() + ": empty file");
    }
    {
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cell.erase(std::remove_if(cell.begin(), cell.end(),
                                      [](unsigned char c) { return std::isspace(c); }),
                       cell.end());
            cols.push_back(cell);
        }
        if (cols.size() != header.size() || !std::equal(cols.begin(), cols.end(), header.begin())) {
            std::string expected;
            for (auto h : header) {
                expected += (expected.empty() ? "" : ",") + std::string(h);
            }
            throw ConfigError(path.string() + ": expected header '" + expected + "'");
        }
    }
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            char* end = nullptr;
            const double x = std::strtod(cell.c_str(), &end);
            while (end && *end && std::isspace(static_cast<unsigned char>(*end))) {
                ++end;
            }
            if (end == cell.c_str() || (end && *end != '\0')) {
                throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                                  ": not a number: '" + cell + "'");
            }
            row.push_back(x);
        }
        if (row.size() != header.size()) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                              std::to_string(header.size()) + " columns");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::string_view to_string(SurfaceKind kind) {
    for (const auto& [k, name] : kKindNames) {
        if (k == kind) {
            return name;
        }
    }
    return "unknown";
}

std::optional<SurfaceKind> parse_surface_kind(std::string_view name) {
    for (const auto& [k, n] : kKindNames) {
        if (n == name) {
            return k;
        }
    }
    return std::nullopt;
}

std::vector<SurfaceKind> catalog_kinds() {
    return {SurfaceKind::plane,      SurfaceKind::cylinder, SurfaceKind::sphere,
            SurfaceKind::hyperbolic, SurfaceKind::cone,     SurfaceKind::catenoid,
            SurfaceKind::helicoid,   SurfaceKind::binormal, SurfaceKind::grusin};
}

MetricPatch::MetricPatch(std::string identifier, Domain domain, Evaluator evaluator,
                         bool v_independent)
    : id_(std::move(identifier)),
      domain_(domain),
      eval_(std::move(evaluator)),
      v_independent_(v_independent) {
    if (!(domain_.u_min >= 0.0)) {
        throw ConfigError("metric patch domain must have u_min >= 0");
    }
    if (!(domain_.u_max > domain_.u_min) || !(domain_.v_max > domain_.v_min)) {
        throw ConfigError("metric patch domain is empty");
    }
}

MetricJet MetricPatch::jet(double u, double v) const {
    if (!domain_.contains(u, v)) {
        std::ostringstream os;
        os.precision(17);
        os << id_ << ": (u, v) = (" << u << ", " << v << ") outside the open domain";
        throw DomainError(os.str());
    }
    MetricJet j = eval_(u, v);
    if (!(j.g > 0.0)) {
        std::ostringstream os;
        os.precision(17);
        os << id_ << ": G <= 0 at (u, v) = (" << u << ", " << v << ")";
        throw DomainError(os.str());
    }
    return j;
}

MetricValue MetricPatch::operator()(double u, double v) const {
    const MetricJet j = jet(u, v);
    return {j.g, j.g_u, j.g_v};
}

SurfaceSpec::SurfaceSpec(SurfaceKind kind, ParamMap params, MetricPatch patch, double anchor,
                         bool realizability_warning)
    : kind_(kind),
      params_(std::move(params)),
      patch_(std::move(patch)),
      anchor_(anchor),
      warn_(realizability_warning) {}

bool SurfaceSpec::is_revolution() const {
    switch (kind_) {
        case SurfaceKind::cylinder:
        case SurfaceKind::sphere:
        case SurfaceKind::hyperbolic:
        case SurfaceKind::cone:
        case SurfaceKind::catenoid:
        case SurfaceKind::revolution_profile:
            return true;
        default:
            return false;
    }
}

MetricValue eval_metric(const SurfaceSpec& spec, double u, double v) {
    return spec.patch()(u, v);
}

Christoffel christoffel(const SurfaceSpec& spec, double u, double v) {
    const MetricValue m = spec.patch()(u, v);
    return {-m.g * m.g_u, m.g_u / m.g, m.g_v / m.g};
}

SurfaceSpec catalog_surface(SurfaceKind kind, const ParamMap& params) {
    using std::numbers::pi;
    const std::string id = make_identifier(kind, params);
    const auto revolution = [&](Domain d, MetricPatch::Evaluator e, double anchor, bool warn) {
        return SurfaceSpec(kind, params, MetricPatch(id, d, std::move(e), true), anchor, warn);
    };

    switch (kind) {
        case SurfaceKind::plane:
        case SurfaceKind::cylinder:
            reject_unknown(params, {}, kind);
            return revolution(
                {}, [](double, double) { return MetricJet{1.0, 0.0, 0.0, 0.0}; }, 0.0, false);
        case SurfaceKind::sphere: {
            reject_unknown(params, {"extended"}, kind);
            double u_max = pi / 2;
            if (auto it = params.find("extended"); it != params.end()) {
                if (it->second != 0.0 && it->second != 1.0) {
                    throw ConfigError("sphere: 'extended' must be 0 or 1");
                }
                if (it->second == 1.0) {
                    u_max = pi;
                }
            }
            return revolution(
                {0.0, u_max},
                [](double u, double) {
                    const double c = std::cos(u);
                    return MetricJet{c, -std::sin(u), 0.0, -c};
                },
                0.0, false);
        }
        case SurfaceKind::hyperbolic: {
            reject_unknown(params, {"r"}, kind);
            const double r = require_positive(params, "r", kind);
            return revolution(
                {},
                [r](double u, double) {
                    const double ch = std::cosh(u / r);
                    return MetricJet{ch, std::sinh(u / r) / r, 0.0, ch / (r * r)};
                },
                0.0, true);
        }
        case SurfaceKind::cone: {
            reject_unknown(params, {"slope"}, kind);
            double k = 1.0 / std::numbers::sqrt2;
            if (params.contains("slope")) {
                k = require_positive(params, "slope", kind);
            }
            return revolution(
                {}, [k](double u, double) { return MetricJet{k * u, k, 0.0, 0.0}; }, 1.0, k > 1.0);
        }
        case SurfaceKind::catenoid:
        case SurfaceKind::helicoid:
            reject_unknown(params, {}, kind);
            return revolution(
                {}, [](double u, double) { return unit_radicand_jet(u, 1.0); }, 0.0, false);
        case SurfaceKind::binormal: {
            reject_unknown(params, {"tau"}, kind);
            const double tau = require_positive(params, "tau", kind);
            const double tau2 = tau * tau;
            return revolution(
                {}, [tau2](double u, double) { return unit_radicand_jet(u, tau2); }, 0.0, false);
        }
        case SurfaceKind::grusin:
            reject_unknown(params, {}, kind);
            return revolution(
                {},
                [](double u, double) {
                    return MetricJet{1.0 / u, -1.0 / (u * u), 0.0, 2.0 / (u * u * u)};
                },
                0.0, true);
        case SurfaceKind::revolution_profile:
            throw ConfigError("revolution_profile needs (u, a) samples; use tabulated_profile");
        case SurfaceKind::ruled:
            throw ConfigError("ruled needs (v, f, g) samples; use ruled_surface");
    }
    throw ConfigError("unknown surface kind");
}

SurfaceSpec catalog_surface(std::string_view kind, const ParamMap& params) {
    auto k = parse_surface_kind(kind);
    if (!k) {
        throw ConfigError("unknown surface kind '" + std::string(kind) + "'");
    }
    return catalog_surface(*k, params);
}

double ruled_metric(const std::function<double(double)>& f, const std::function<double(double)>& g,
                    double u, double v) {
    const double radicand = 1.0 + 2.0 * u * f(v) + u * u * g(v);
    if (!(radicand > 0.0)) {
        throw DegenerateMetricError(
            "ruled surface parametrization degenerates: 1 + 2uf + u^2 g = " +
            format_number(radicand));
    }
    return std::sqrt(radicand);
}

SurfaceSpec tabulated_profile(std::span<const ProfileSample> samples) {
    if (samples.size() < 4) {
        throw ConfigError("tabulated profile needs at least 4 samples");
    }
    std::vector<double> us, as;
    us.reserve(samples.size());
    as.reserve(samples.size());
    for (const auto& s : samples) {
        if (!std::isfinite(s.u) || !std::isfinite(s.a)) {
            throw ConfigError("tabulated profile: non-finite sample");
        }
        if (!(s.a > 0.0)) {
            throw ConfigError("tabulated profile: a(u) must be positive (a(" + format_number(s.u) +
                              ") = " + format_number(s.a) + ")");
        }
        if (!us.empty() && !(s.u > us.back())) {
            throw ConfigError("tabulated profile: u must be strictly increasing");
        }
        us.push_back(s.u);
        as.push_back(s.a);
    }
    if (us.front() < 0.0) {
        throw ConfigError("tabulated profile: u must be nonnegative");
    }

    auto cubic = std::make_shared<const MonotoneCubic>(us, as);

    // |a'| > 1 anywhere: the cubic's derivative is quadratic per interval, so
    // a dense check per interval is enough.
    bool warn = false;
    for (std::size_t i = 0; i + 1 < us.size() && !warn; ++i) {
        for (int k = 0; k <= 8; ++k) {
            const double t = us[i] + (us[i + 1] - us[i]) * k / 8.0;
            if (std::abs(cubic->eval(t).df) > 1.0) {
                warn = true;
                break;
            }
        }
    }

    const Domain d{us.front(), us.back()};
    auto eval = [cubic](double u, double) {
        const auto v = cubic->eval(u);
        return MetricJet{v.f, v.df, 0.0, v.d2f};
    };
    ParamMap params{{"samples", static_cast<double>(us.size())}};
    return SurfaceSpec(
        SurfaceKind::revolution_profile, params,
        MetricPatch(make_identifier(SurfaceKind::revolution_profile, params), d, eval, true),
        us.front(), warn);
}

SurfaceSpec ruled_surface(std::span<const RuledSample> samples) {
    if (samples.size() < 4) {
        throw ConfigError("ruled surface needs at least 4 samples");
    }
    std::vector<double> vs, fs, gs;
    for (const auto& s : samples) {
        if (!std::isfinite(s.v) || !std::isfinite(s.f) || !std::isfinite(s.g)) {
            throw ConfigError("ruled surface: non-finite sample");
        }
        if (s.g < 0.0) {
            throw ConfigError("ruled surface: g = |W'|^2 must be nonnegative");
        }
        if (!vs.empty() && !(s.v > vs.back())) {
            throw ConfigError("ruled surface: v must be strictly increasing");
        }
        vs.push_back(s.v);
        fs.push_back(s.f);
        gs.push_back(s.g);
    }
    auto f = std::make_shared<const MonotoneCubic>(vs, fs);
    auto g = std::make_shared<const MonotoneCubic>(vs, gs);

    // First positive root of 1 + 2uf + u^2 g over a dense v grid.
    double u_max = kInf;
    const std::size_t per_interval = 16;
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
        for (std::size_t k = 0; k <= per_interval; ++k) {
            const double v = vs[i] + (vs[i + 1] - vs[i]) * static_cast<double>(k) / per_interval;
            const double fv = f->eval(v).f;
            const double gv = std::max(0.0, g->eval(v).f);
            double root = kInf;
            if (gv > 0.0) {
                const double disc = fv * fv - gv;
                if (disc >= 0.0 && fv < 0.0) {
                    root = (-fv - std::sqrt(disc)) / gv;
                }
            } else if (fv < 0.0) {
                root = -1.0 / (2.0 * fv);
            }
            u_max = std::min(u_max, root);
        }
    }

    const bool constant = std::all_of(fs.begin(), fs.end(), [&](double x) { return x == fs[0]; }) &&
                          std::all_of(gs.begin(), gs.end(), [&](double x) { return x == gs[0]; });

    auto eval = [f, g](double u, double v) {
        const auto fv = f->eval(v);
        const auto gv = g->eval(v);
        const double radicand = 1.0 + 2.0 * u * fv.f + u * u * gv.f;
        if (!(radicand > 0.0)) {
            throw DegenerateMetricError("ruled surface parametrization degenerates at u = " +
                                        format_number(u));
        }
        const double G = std::sqrt(radicand);
        const double g_u = (fv.f + u * gv.f) / G;
        const double g_v = (u * fv.df + 0.5 * u * u * gv.df) / G;
        return MetricJet{G, g_u, g_v, (gv.f - g_u * g_u) / G};
    };
    ParamMap params{{"samples", static_cast<double>(vs.size())}};
    const Domain d{0.0, u_max, vs.front(), vs.back()};
    return SurfaceSpec(SurfaceKind::ruled, params,
                       MetricPatch(make_identifier(SurfaceKind::ruled, params), d, eval, constant),
                       0.0, false);
}

std::vector<ProfileSample> read_profile_csv(const std::filesystem::path& path) {
    constexpr std::array<std::string_view, 2> header{"u", "a"};
    std::vector<ProfileSample> out;
    for (const auto& row : read_numeric_csv(path, header)) {
        out.push_back({row[0], row[1]});
    }
    return out;
}

std::vector<RuledSample> read_ruled_csv(const std::filesystem::path& path) {
    constexpr std::array<std::string_view, 3> header{"v", "f", "g"};
    std::vector<RuledSample> out;
    for (const auto& row : read_numeric_csv(path, header)) {
        out.push_back({row[0], row[1], row[2]});
    }
    return out;
}

}  // namespace catenary
