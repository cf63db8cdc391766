#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "catenary/closed_forms.hpp"
#include "catenary/curvature.hpp"
#include "catenary/errors.hpp"
#include "catenary/integrator.hpp"
#include "catenary/metric.hpp"
#include "catenary/revolution.hpp"
#include "catenary/trace_io.hpp"
#include "catenary/validation.hpp"

namespace py = pybind11;
using namespace catenary;

namespace {

SurfaceSpec surface(const std::string& kind, const ParamMap& params) {
    return catalog_surface(kind, params);
}

py::dict trace_dict(const Trace& t) {
    py::list s, u, v, phi, kappa, residual;
    for (const auto& x : t.samples) {
        s.append(x.s);
        u.append(x.u);
        v.append(x.v);
        phi.append(x.phi);
        kappa.append(x.kappa);
        residual.append(x.residual);
    }
    py::dict d;
    d["s"] = s;
    d["u"] = u;
    d["v"] = v;
    d["phi"] = phi;
    d["kappa"] = kappa;
    d["residual"] = residual;
    d["termination"] = std::string(to_string(t.termination));
    d["vertical_tangent"] = t.vertical_tangent;
    d["accepted_steps"] = t.stats.accepted_steps;
    d["max_abs_residual"] = t.stats.max_abs_residual;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Weighted catenaries on semi-geodesic surface patches";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<DegenerateMetricError>(m, "DegenerateMetricError", base.ptr());
    py::register_exception<SingularJetError>(m, "SingularJetError", base.ptr());
    py::register_exception<KindError>(m, "KindError", base.ptr());
    py::register_exception<InaccessibleRegionError>(m, "InaccessibleRegionError", base.ptr());
    py::register_exception<NotCriticalError>(m, "NotCriticalError", base.ptr());
    py::register_exception<NotRealizableError>(m, "NotRealizableError", base.ptr());
    py::register_exception<IOError>(m, "IOError", base.ptr());

    m.def("catalog_kinds", [] {
        std::vector<std::string> out;
        for (auto k : catalog_kinds()) {
            out.emplace_back(to_string(k));
        }
        return out;
    });

    m.def(
        "eval_metric",
        [](const std::string& kind, double u, double v, const ParamMap& params) {
            const MetricValue g = eval_metric(surface(kind, params), u, v);
            return py::make_tuple(g.g, g.g_u, g.g_v);
        },
        py::arg("surface"), py::arg("u"), py::arg("v"), py::arg("params") = ParamMap{});

    m.def(
        "christoffel",
        [](const std::string& kind, double u, double v, const ParamMap& params) {
            const Christoffel c = christoffel(surface(kind, params), u, v);
            return py::make_tuple(c.g1_22, c.g2_12, c.g2_22);
        },
        py::arg("surface"), py::arg("u"), py::arg("v"), py::arg("params") = ParamMap{});

    m.def(
        "geodesic_curvature",
        [](const std::string& kind, std::array<double, 6> jet, const ParamMap& params) {
            return geodesic_curvature(surface(kind, params),
                                      {jet[0], jet[1], jet[2], jet[3], jet[4], jet[5]});
        },
        py::arg("surface"), py::arg("jet"), py::arg("params") = ParamMap{},
        "jet = (u, v, u', v', u'', v'')");

    m.def(
        "catenary_residual",
        [](const std::string& kind, double alpha, std::array<double, 6> jet,
           const ParamMap& params) {
            return catenary_residual(surface(kind, params), alpha,
                                     {jet[0], jet[1], jet[2], jet[3], jet[4], jet[5]});
        },
        py::arg("surface"), py::arg("alpha"), py::arg("jet"), py::arg("params") = ParamMap{});

    m.def(
        "trace",
        [](const std::string& kind, double alpha, double u0, double v0, double phi0, double s_max,
           double tol, double max_step, const ParamMap& params) {
            TraceOptions opt;
            opt.max_step = max_step;
            return trace_dict(
                trace_catenary(surface(kind, params), alpha, {u0, v0, phi0, 0.0}, s_max, tol, opt));
        },
        py::arg("surface"), py::arg("alpha"), py::arg("u0"), py::arg("v0"), py::arg("phi0"),
        py::arg("s_max"), py::arg("tol") = 1e-10,
        py::arg("max_step") = std::numeric_limits<double>::infinity(),
        py::arg("params") = ParamMap{});

    m.def(
        "trace_graph",
        [](const std::string& kind, double alpha, double u0, double du0, double v_start,
           double v_end, double tol, const ParamMap& params) {
            return trace_dict(
                trace_graph(surface(kind, params), alpha, u0, du0, {v_start, v_end}, tol));
        },
        py::arg("surface"), py::arg("alpha"), py::arg("u0"), py::arg("du0"), py::arg("v_start"),
        py::arg("v_end"), py::arg("tol") = 1e-10, py::arg("params") = ParamMap{});

    m.def(
        "clairaut_constant",
        [](const std::string& kind, double alpha, double u, double v, double phi,
           const ParamMap& params) {
            return clairaut_constant(surface(kind, params), alpha, {u, v, phi, 0.0});
        },
        py::arg("surface"), py::arg("alpha"), py::arg("u"), py::arg("v"), py::arg("phi"),
        py::arg("params") = ParamMap{});

    m.def(
        "critical_parallels",
        [](const std::string& kind, double alpha, const ParamMap& params) {
            py::list out;
            for (const auto& cp : critical_parallels(surface(kind, params), alpha)) {
                py::dict d;
                d["u"] = cp.u;
                d["lambda"] = cp.lambda;
                d["classification"] = std::string(to_string(cp.classification));
                out.append(d);
            }
            return out;
        },
        py::arg("surface"), py::arg("alpha"), py::arg("params") = ParamMap{});

    m.def(
        "turning_points",
        [](const std::string& kind, double alpha, double c, const ParamMap& params) {
            return turning_points(surface(kind, params), alpha, c);
        },
        py::arg("surface"), py::arg("alpha"), py::arg("c"), py::arg("params") = ParamMap{});

    m.def(
        "quadrature_v",
        [](const std::string& kind, double alpha, double c, double u0, double u1,
           const ParamMap& params) {
            return quadrature_v(surface(kind, params), alpha, c, u0, u1);
        },
        py::arg("surface"), py::arg("alpha"), py::arg("c"), py::arg("u0"), py::arg("u1"),
        py::arg("params") = ParamMap{});

    m.def(
        "stability_exponent",
        [](const std::string& kind, double alpha, double u_star, const ParamMap& params) {
            const double lambda = stability_exponent(surface(kind, params), alpha, u_star);
            return py::make_tuple(lambda, std::string(to_string(classify(lambda))));
        },
        py::arg("surface"), py::arg("alpha"), py::arg("u_star"), py::arg("params") = ParamMap{});

    m.def(
        "conformal_coordinate",
        [](const std::string& kind, double u, std::optional<double> u_ref, const ParamMap& params) {
            return conformal_coordinate(surface(kind, params), u, u_ref);
        },
        py::arg("surface"), py::arg("u"), py::arg("u_ref") = std::nullopt,
        py::arg("params") = ParamMap{});

    m.def(
        "embed_revolution",
        [](const std::string& kind, double u, double v, const ParamMap& params) {
            return embed_revolution(surface(kind, params), u, v);
        },
        py::arg("surface"), py::arg("u"), py::arg("v"), py::arg("params") = ParamMap{});

    m.def("euclidean_catenary", &euclidean_catenary, py::arg("mu"), py::arg("nu"), py::arg("t"));
    m.def("cone_catenary", &cone_catenary, py::arg("mu"), py::arg("nu"), py::arg("v"));
    m.def("grusin_catenary", &grusin_catenary, py::arg("mu"), py::arg("nu"), py::arg("v"));
    m.def("grusin_geodesic", &grusin_geodesic, py::arg("u0"), py::arg("v0"), py::arg("s"));

    m.def(
        "validate",
        [](bool parallel) {
            const ValidationReport r = run_validation(parallel);
            py::list items;
            for (const auto& it : r.items) {
                py::dict d;
                d["group"] = it.group;
                d["name"] = it.name;
                d["value"] = it.value;
                d["threshold"] = it.threshold;
                d["passed"] = it.passed;
                items.append(d);
            }
            return py::make_tuple(r.passed, items);
        },
        py::arg("parallel") = true);
}
